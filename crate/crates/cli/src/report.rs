//! Report envelope and JSON/CSV emission.

use std::fmt::Display;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::args::{CommonArgs, Format};

/// Bumped whenever a JSON field or CSV column changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// `=`, `<=` or `info`.
    pub relation: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn eq(name: impl Into<String>, lhs: impl Display, rhs: impl Display, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
            relation: "=",
            lhs: Some(lhs.to_string()),
            rhs: Some(rhs.to_string()),
            detail: None,
        }
    }

    pub fn le(name: impl Into<String>, lhs: impl Display, rhs: impl Display, passed: bool) -> Self {
        Check {
            relation: "<=",
            ..Check::eq(name, lhs, rhs, passed)
        }
    }

    pub fn flag(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            relation: "holds",
            lhs: None,
            rhs: None,
            detail: Some(detail.into()),
        }
    }

}

/// Rows for CSV output. Every cell is already formatted.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// What a subcommand hands back before formatting.
#[derive(Debug, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub data: Value,
    pub table: Table,
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    schema_version: u32,
    command: &'a str,
    config: &'a Value,
    passed: bool,
    checks_total: usize,
    checks_failed: usize,
    checks: &'a [Check],
    data: &'a Value,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self, command: &str, config: &Value, format: Format) -> Vec<u8> {
        match format {
            Format::Json => {
                let env = Envelope {
                    tool: "hayes",
                    version: env!("CARGO_PKG_VERSION"),
                    schema_version: SCHEMA_VERSION,
                    command,
                    config,
                    passed: self.passed(),
                    checks_total: self.checks.len(),
                    checks_failed: self.checks.iter().filter(|c| !c.passed).count(),
                    checks: &self.checks,
                    data: &self.data,
                };
                let mut out = serde_json::to_vec_pretty(&env).expect("report serializes");
                out.push(b'\n');
                out
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.header).expect("in-memory write");
                for row in &self.table.rows {
                    w.write_record(row).expect("in-memory write");
                }
                w.into_inner().expect("in-memory flush")
            }
        }
    }
}

pub fn emit(bytes: &[u8], common: &CommonArgs) -> std::io::Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}
