//! The machine report: one JSON document per run, with sorted keys so that
//! the bytes depend only on the problem, the options and the version.

use serde::Serialize;
use serde_json::Value;

pub const REPORT_FORMAT: &str = "hochschild-report/1";

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format: &'static str,
    pub version: &'static str,
    pub problem: String,
    pub command: String,
    pub field: String,
    pub max_degree: usize,
    pub result: Value,
}

impl Report {
    pub fn new(problem: &str, command: &str, field: &str, max_degree: usize, result: Value) -> Self {
        Report {
            format: REPORT_FORMAT,
            version: env!("CARGO_PKG_VERSION"),
            problem: problem.to_string(),
            command: command.to_string(),
            field: field.to_string(),
            max_degree,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        // round trip through Value to sort every object's keys
        let v = serde_json::to_value(self).expect("reports serialize");
        let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Plain text table with a header row and left-aligned columns.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{:<w$}", c, w = *w)).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(header.iter().map(|s| s.to_string()).collect())];
    out.push(line(widths.iter().map(|w| "-".repeat(*w)).collect()));
    out.extend(rows.iter().map(|r| line(r.clone())));
    out.join("\n")
}
