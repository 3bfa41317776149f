//! Command-line front end: direct access to the width, ball and collar
//! solvers, bound reports over a manifold descriptor, and the built-in
//! verification suites.

pub mod json;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use stekbound::bounds::{stekdir_floor, CollarRequest};
use stekbound::hypgeom::{PinchedClass, QuadratureSpec, RootFindSpec};
use stekbound::sturm::{
    dirichlet_ball_full_spectrum, shell_sigma_mu0_closed_form, shell_steklov_dirichlet_with, Fault, ShellProblem,
    DEFAULT_GRID_POINTS,
};
use stekbound::tube::{disjointness_gap, width, width_closed_form_lower};

use crate::json::format_f64;
use crate::report::{load_constants, load_descriptor, ReportDocument, WhatIf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Environment variable that injects a fault into the collar solver so the
/// verification harness can be shown to fail.
pub const FAULT_ENV: &str = "STEKBOUND_FAULT";

/// A user-facing failure, reported on one line with exit code 2.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct CliError(pub String);

impl CliError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}

/// Reads the fault toggle value (`shell-sign` flips the collar potential).
pub fn fault_from_env_value(value: Option<&str>) -> Fault {
    match value {
        Some("shell-sign") => Fault::FlipShellPotential,
        _ => Fault::None,
    }
}

#[derive(Debug, Parser)]
#[command(name = "stekbound", version, about = "Width function, collar and ball spectra, and Steklov eigenvalue bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Width of a totally geodesic hypersurface and its explicit lower bound
    Width(WidthArgs),
    /// Dirichlet eigenvalues of a geodesic ball in hyperbolic space
    Ball(BallArgs),
    /// Steklov–Dirichlet eigenvalues of a pinched collar
    Shell(ShellArgs),
    /// Bound report for a manifold descriptor
    Report(ReportArgs),
    /// Run the built-in verification suites
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct WidthArgs {
    /// Ambient dimension (>= 3)
    #[arg(long, value_parser = dimension)]
    n: usize,
    /// Pinching constant in (0, 1]
    #[arg(long, value_parser = kappa)]
    kappa: f64,
    /// (n-1)-volume of the hypersurface
    #[arg(long, value_parser = positive)]
    area: f64,
    /// Volume of a second hypersurface for the disjointness gap (defaults to --area)
    #[arg(long, value_parser = positive)]
    other_area: Option<f64>,
    /// Print only the explicit lower bound
    #[arg(long)]
    closed_form: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct BallArgs {
    /// Ball dimension (>= 2)
    #[arg(long, value_parser = ball_dimension)]
    m: usize,
    /// Curvature is -kappa^2
    #[arg(long, value_parser = positive)]
    kappa: f64,
    #[arg(long, value_parser = positive)]
    radius: f64,
    /// Number of eigenvalues (with multiplicity)
    #[arg(long, value_parser = at_least_one)]
    k: usize,
    /// Largest spherical-harmonic degree (defaults to k, always sufficient)
    #[arg(long)]
    l_max: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS, value_parser = grid)]
    grid: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct ShellArgs {
    #[arg(long, value_parser = dimension)]
    n: usize,
    #[arg(long, value_parser = kappa)]
    kappa: f64,
    /// Collar depth; `inf` is capped at 40/kappa
    #[arg(long, value_parser = depth)]
    delta: f64,
    /// Cross-section Laplace eigenvalues (0 is always included)
    #[arg(long, value_delimiter = ',', value_parser = non_negative)]
    mu: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS, value_parser = grid)]
    grid: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Manifold descriptor (JSON)
    #[arg(long)]
    input: PathBuf,
    /// Constant provider (JSON); omitted constants are placeholders equal to 1
    #[arg(long)]
    constants: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Add the collar test-function bound for sigma_k with this k
    #[arg(long, requires = "collar_epsilon", value_parser = at_least_one)]
    collar_k: Option<usize>,
    /// Length of the orthogonal arc for the collar bound
    #[arg(long, requires = "collar_k", value_parser = positive)]
    collar_epsilon: Option<f64>,
    /// Add the glued-family bounds with arms of this many blocks
    #[arg(long, value_parser = at_least_one)]
    glued_j: Option<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Hypgeom,
    Tube,
    Sturm,
    Bounds,
    #[default]
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t)]
    suite: Suite,
}

fn positive(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err("must be finite and > 0".into())
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if x >= 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err("must be finite and >= 0".into())
    }
}

fn depth(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err("must be > 0 (or inf)".into())
    }
}

fn kappa(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if x > 0.0 && x <= 1.0 {
        Ok(x)
    } else {
        Err("must lie in (0, 1]".into())
    }
}

fn int_at_least(s: &str, min: usize) -> Result<usize, String> {
    let x: usize = s.parse().map_err(|_| format!("'{s}' is not a non-negative integer"))?;
    if x >= min {
        Ok(x)
    } else {
        Err(format!("must be >= {min}"))
    }
}

fn dimension(s: &str) -> Result<usize, String> {
    int_at_least(s, 3)
}

fn ball_dimension(s: &str) -> Result<usize, String> {
    int_at_least(s, 2)
}

fn at_least_one(s: &str) -> Result<usize, String> {
    int_at_least(s, 1)
}

fn grid(s: &str) -> Result<usize, String> {
    int_at_least(s, 16)
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, fault: Fault, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            let _ = writeln!(err, "{line}");
            return EXIT_INPUT;
        }
    };
    let result = match cli.command {
        Command::Width(a) => cmd_width(&a),
        Command::Ball(a) => cmd_ball(&a),
        Command::Shell(a) => cmd_shell(&a, fault),
        Command::Report(a) => cmd_report(&a),
        Command::Verify(a) => {
            let outcome = verify::run_suite(a.suite, fault, out);
            return if outcome.all_passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
        }
    };
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.0.replace('\n', " "));
            EXIT_INPUT
        }
    }
}

fn class_of(n: usize, kappa: f64) -> Result<PinchedClass, CliError> {
    PinchedClass::new(n, kappa).map_err(|e| CliError::new(format!("--n/--kappa: {e}")))
}

fn cmd_width(a: &WidthArgs) -> Result<String, CliError> {
    let class = class_of(a.n, a.kappa)?;
    let (quad, root) = (QuadratureSpec::default(), RootFindSpec::default());
    let lower = width_closed_form_lower(&class, a.area).map_err(|e| CliError::new(format!("--area: {e}")))?;
    if a.closed_form {
        return Ok(match a.format {
            Format::Json => json::to_string_pretty(&json!({ "closed_form_lower": lower })).expect("json"),
            Format::Text => format!("closed_form_lower = {}\n", format_f64(lower)),
        });
    }
    let w = width(&class, a.area, &quad, &root).map_err(|e| CliError::new(format!("--area: {e}")))?;
    let other = a.other_area.unwrap_or(a.area);
    let gap = disjointness_gap(&class, a.area, other, &quad, &root)
        .map_err(|e| CliError::new(format!("--other-area: {e}")))?;
    let ratio = lower / w.width;
    Ok(match a.format {
        Format::Json => json::to_string_pretty(&json!({
            "n": a.n,
            "kappa": a.kappa,
            "area": a.area,
            "width": w.width,
            "residual": w.residual,
            "closed_form_lower": lower,
            "ratio": ratio,
            "disjointness_gap": gap,
        }))
        .expect("json"),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "width             = {}", format_f64(w.width));
            let _ = writeln!(s, "closed_form_lower = {}", format_f64(lower));
            let _ = writeln!(s, "ratio             = {}", format_f64(ratio));
            let _ = writeln!(s, "disjointness_gap  = {}", format_f64(gap));
            let _ = writeln!(s, "residual          = {}", format_f64(w.residual));
            s
        }
    })
}

fn cmd_ball(a: &BallArgs) -> Result<String, CliError> {
    let l_max = a.l_max.unwrap_or(a.k);
    let spectrum = dirichlet_ball_full_spectrum(a.m, a.kappa, a.radius, a.k, l_max, a.grid)
        .map_err(|e| CliError::new(e.to_string()))?;
    let bottom = (a.m as f64 - 1.0).powi(2) * a.kappa * a.kappa / 4.0;
    let mut warnings = Vec::new();
    for (i, line) in spectrum.lines.iter().enumerate() {
        if !line.converged {
            warnings.push(format!("lambda_{} not converged: grids disagree by more than 1%; raise --grid", i + 1));
        }
    }
    Ok(match a.format {
        Format::Json => {
            let eigs: Vec<_> = spectrum
                .lines
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    json!({
                        "k": i + 1,
                        "value": l.value,
                        "error_estimate": l.error_estimate,
                        "angular_index": l.angular_index,
                        "converged": l.converged,
                    })
                })
                .collect();
            json::to_string_pretty(&json!({
                "m": a.m,
                "kappa": a.kappa,
                "radius": a.radius,
                "l_max": l_max,
                "grid_points": a.grid,
                "eigenvalues": eigs,
                "bottom_of_spectrum": bottom,
                "diagnostics": warnings,
            }))
            .expect("json")
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "Dirichlet eigenvalues of B(R = {}) in H^{} (curvature -{}^2), l <= {l_max}, grid {}",
                a.radius, a.m, a.kappa, a.grid
            );
            let _ = writeln!(s, "{:>4}  {:<24}  {:<24}  {:>3}", "k", "value", "error_estimate", "l");
            for (i, l) in spectrum.lines.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{:>4}  {:<24}  {:<24}  {:>3}",
                    i + 1,
                    format_f64(l.value),
                    format_f64(l.error_estimate),
                    l.angular_index.unwrap_or(0)
                );
            }
            let _ = writeln!(s, "bottom_of_spectrum (m-1)^2 kappa^2/4 = {}", format_f64(bottom));
            for w in warnings {
                let _ = writeln!(s, "warning: {w}");
            }
            s
        }
    })
}

fn cmd_shell(a: &ShellArgs, fault: Fault) -> Result<String, CliError> {
    let class = class_of(a.n, a.kappa)?;
    let mut mu = vec![0.0];
    mu.extend(a.mu.iter().copied().filter(|&m| m > 0.0));
    mu.sort_by(f64::total_cmp);
    mu.dedup();
    let mut problem = ShellProblem::new(class, a.delta, mu).map_err(|e| CliError::new(e.to_string()))?;
    problem.grid_points = a.grid;
    let sol = shell_steklov_dirichlet_with(&problem, fault).map_err(|e| CliError::new(e.to_string()))?;
    let quad = QuadratureSpec::default();
    let closed = shell_sigma_mu0_closed_form(&class, sol.effective_delta, &quad).map_err(|e| CliError::new(e.to_string()))?;
    let floor = stekdir_floor(&class, &quad).map_err(|e| CliError::new(e.to_string()))?;
    let mut warnings = Vec::new();
    if sol.truncated {
        warnings.push(format!(
            "depth {} truncated to {}; the neglected tail is below 1e-17 relative",
            a.delta,
            sol.effective_delta
        ));
    }
    for e in &sol.entries {
        if !e.converged {
            warnings.push(format!("sigma(mu = {}) not converged: raise --grid", e.mu));
        }
    }
    Ok(match a.format {
        Format::Json => {
            let rows: Vec<_> = sol
                .entries
                .iter()
                .map(|e| json!({"mu": e.mu, "sigma": e.sigma, "error_estimate": e.error_estimate, "converged": e.converged}))
                .collect();
            json::to_string_pretty(&json!({
                "n": a.n,
                "kappa": a.kappa,
                "delta": sol.effective_delta,
                "truncated": sol.truncated,
                "entries": rows,
                "sigma_mu0_closed_form": closed,
                "floor": floor.closed,
                "floor_integral": floor.sharper,
                "diagnostics": warnings,
            }))
            .expect("json")
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "collar [0, {}] (n = {}, kappa = {}){}",
                sol.effective_delta,
                a.n,
                a.kappa,
                if sol.truncated { ", truncated" } else { "" }
            );
            let _ = writeln!(s, "{:<24}  {:<24}  {:<24}", "mu", "sigma", "error_estimate");
            for e in &sol.entries {
                let _ = writeln!(
                    s,
                    "{:<24}  {:<24}  {:<24}",
                    format_f64(e.mu),
                    format_f64(e.sigma),
                    format_f64(e.error_estimate)
                );
            }
            let _ = writeln!(s, "sigma_mu0_closed_form = {}", format_f64(closed));
            let _ = writeln!(s, "floor kappa(n-1)/2^(n-1) = {}", format_f64(floor.closed));
            let _ = writeln!(s, "floor_integral = {}", format_f64(floor.sharper));
            for w in warnings {
                let _ = writeln!(s, "warning: {w}");
            }
            s
        }
    })
}

fn cmd_report(a: &ReportArgs) -> Result<String, CliError> {
    let descriptor = load_descriptor(&a.input)?;
    let constants = load_constants(a.constants.as_deref())?;
    let collar = match (a.collar_k, a.collar_epsilon) {
        (Some(k), Some(epsilon)) => Some(CollarRequest { k, epsilon }),
        _ => None,
    };
    let doc = ReportDocument::build(descriptor, constants, WhatIf { collar, glued_j: a.glued_j })?;
    Ok(match a.format {
        Format::Json => doc.to_json(),
        Format::Text => doc.to_text(),
    })
}
