use std::io;
use std::process::ExitCode;

use stekbound_cli::{fault_from_env_value, run, FAULT_ENV};

fn main() -> ExitCode {
    let fault = fault_from_env_value(std::env::var(FAULT_ENV).ok().as_deref());
    let code = run(std::env::args_os(), fault, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
