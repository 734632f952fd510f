//! Machine-readable and human-readable rendering. Machine formats are
//! deterministic: object keys are sorted, list orders are fixed by the
//! producing command, and no timestamps appear anywhere.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit codes, stable across releases.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE_LIMIT: i32 = 3;
pub const EXIT_DISAGREEMENT: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
    Bfile,
}

/// The single machine-readable object emitted per invocation. Fields are
/// declared in key order so the emitted JSON is a reparse fixpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub methods_used: Vec<String>,
    pub parameters: BTreeMap<String, String>,
    pub results: serde_json::Value,
    pub version: String,
}

impl OutputRecord {
    pub fn new(
        command: &str,
        parameters: Vec<(&str, String)>,
        results: serde_json::Value,
        methods_used: Vec<String>,
    ) -> Self {
        OutputRecord {
            command: command.to_string(),
            parameters: parameters
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            results,
            methods_used,
            version: VERSION.to_string(),
        }
    }
}

/// Everything a command produces: the record plus pre-rendered
/// command-specific formats and the exit status.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub record: OutputRecord,
    pub table: String,
    pub csv: Option<String>,
    pub bfile: Option<String>,
    pub exit: i32,
}

/// Renders the requested format; unsupported combinations are usage
/// errors (distinct from computation failures).
pub fn render(format: Format, out: &CommandOutput) -> Result<String, String> {
    match format {
        Format::Table => Ok(out.table.clone()),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.record)
                .expect("records always serialize");
            s.push('\n');
            Ok(s)
        }
        Format::Csv => out.csv.clone().ok_or_else(|| {
            format!("csv output is not supported for `{}`", out.record.command)
        }),
        Format::Bfile => out.bfile.clone().ok_or_else(|| {
            format!("b-file output is not supported for `{}`", out.record.command)
        }),
    }
}
