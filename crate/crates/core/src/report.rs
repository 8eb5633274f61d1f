//! Report documents and their JSON / text renderings.
//!
//! JSON keys are emitted in sorted order on a single line, so identical runs
//! give byte-identical output.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::theorems::CheckReport;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifold: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance_default: Option<f64>,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn empty(seed: u64) -> Self {
        Self {
            seed,
            manifold: None,
            samples: None,
            tolerance_default: None,
            checks: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Single-line JSON with `", "` and `": "` separators.
struct SpacedFormatter;

impl Formatter for SpacedFormatter {
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }
}

pub fn to_json(report: &Report) -> String {
    // Going through `Value` sorts every object's keys.
    let value = serde_json::to_value(report).expect("report is always serializable");
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SpacedFormatter);
    value.serialize(&mut ser).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn from_json(text: &str) -> serde_json::Result<Report> {
    serde_json::from_str(text)
}

/// One line per check.
pub fn to_text(report: &Report) -> String {
    let id_w = report.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
    let field_w = report.checks.iter().map(|c| c.field.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in &report.checks {
        let verdict = if c.verdict.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{verdict}  {:id_w$}  {:field_w$}  residual {:.3e}  tol {:.0e}  samples {}\n",
            c.id, c.field, c.max_residual, c.tolerance, c.samples
        ));
    }
    out
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => to_json(report) + "\n",
        Format::Text => to_text(report),
    }
}
