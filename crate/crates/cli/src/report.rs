use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use stekbound::bounds::{
    assemble_report, BoundItem, CollarRequest, ConstantTable, Diagnostic, ItemRigor, ManifoldDescriptor,
    ReportOptions,
};

use crate::json::format_f64;
use crate::CliError;

pub const SCHEMA_VERSION: &str = "1";

/// What-if entries requested on the command line.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct WhatIf {
    pub collar: Option<CollarRequest>,
    pub glued_j: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportInputs {
    pub descriptor: ManifoldDescriptor,
    /// Constants as supplied; absent entries were placeholders equal to 1.
    pub constants: ConstantTable,
    pub what_if: WhatIf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub inputs: ReportInputs,
    pub items: Vec<BoundItem>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ReportDocument {
    pub fn build(descriptor: ManifoldDescriptor, constants: ConstantTable, what_if: WhatIf) -> Result<Self, CliError> {
        descriptor.validate().map_err(|e| CliError::new(format!("--input: {e}")))?;
        constants.validate().map_err(|e| CliError::new(format!("--constants: {e}")))?;
        let opts = ReportOptions {
            collar: what_if.collar,
            glued_j: what_if.glued_j,
            ..Default::default()
        };
        let report = assemble_report(&descriptor, &constants, &opts).map_err(|e| CliError::new(e.to_string()))?;
        Ok(Self {
            schema_version: SCHEMA_VERSION.to_string(),
            inputs: ReportInputs {
                descriptor,
                constants,
                what_if,
            },
            items: report.items,
            diagnostics: report.diagnostics,
        })
    }

    pub fn to_json(&self) -> String {
        crate::json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let d = &self.inputs.descriptor;
        let _ = writeln!(
            s,
            "report (schema {}): n = {}, kappa = {}, b = {}, A = {}, V = {}",
            self.schema_version,
            d.n,
            d.kappa,
            d.components(),
            d.max_boundary_volume(),
            d.total_volume
        );
        for item in &self.items {
            let rigor = match item.rigor {
                ItemRigor::Explicit => "explicit".to_string(),
                ItemRigor::ConstantDependent if item.placeholders.is_empty() => "constant-dependent".to_string(),
                ItemRigor::ConstantDependent => format!("constant-dependent; placeholders: {}", item.placeholders.join(", ")),
            };
            let op = match item.kind {
                stekbound::bounds::Kind::Lower => ">=",
                stekbound::bounds::Kind::Upper => "<=",
            };
            let _ = writeln!(
                s,
                "{:<8} {op} {:<24} {:<26} [{rigor}]",
                item.target.to_string(),
                format_f64(item.value),
                item.name
            );
        }
        if !self.diagnostics.is_empty() {
            let _ = writeln!(s, "diagnostics:");
            for diag in &self.diagnostics {
                let level = serde_json::to_value(diag.level)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default();
                let _ = writeln!(s, "  {level}: {}: {}", diag.subject, diag.message);
            }
        }
        s
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path, flag: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(format!("{flag}: cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::new(format!("{flag}: {}: {e}", path.display())))
}

pub fn load_descriptor(path: &Path) -> Result<ManifoldDescriptor, CliError> {
    read_json(path, "--input")
}

pub fn load_constants(path: Option<&Path>) -> Result<ConstantTable, CliError> {
    match path {
        Some(p) => read_json(p, "--constants"),
        None => Ok(ConstantTable::default()),
    }
}
