use std::fmt::Write as _;

use serde::Serialize;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Info,
    /// Reported, not required (e.g. a map that is not injective).
    Finding,
    Inapplicable,
    Unknown,
    Fail,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Info => "info",
            Status::Finding => "finding",
            Status::Inapplicable => "inapplicable",
            Status::Unknown => "unknown",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub check: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

impl Finding {
    pub fn new(check: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Finding { check: check.into(), status, detail: detail.into(), witnesses: Vec::new() }
    }

    pub fn with_witnesses(mut self, w: Vec<String>) -> Self {
        self.witnesses = w;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportBounds {
    pub search: usize,
    pub rewrite_states: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_sha256: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monoid: Option<String>,
    pub mode: String,
    pub bounds: ReportBounds,
    pub seed: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub findings: Vec<Finding>,
    pub status: Status,
    pub exit_code: i32,
}

impl Report {
    /// Overall status and exit code: any failure gives 1, otherwise any
    /// undecided check gives 3.
    pub fn conclude(&mut self) {
        let has = |s: Status| self.findings.iter().any(|f| f.status == s);
        (self.status, self.exit_code) = if has(Status::Fail) {
            (Status::Fail, 1)
        } else if has(Status::Unknown) {
            (Status::Unknown, 3)
        } else {
            (Status::Pass, 0)
        };
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.tool, self.version, self.command);
        if let Some(d) = &self.input_sha256 {
            let _ = writeln!(s, "input sha256 {d}");
        }
        if let Some(m) = &self.monoid {
            let _ = writeln!(s, "monoid {m}");
        }
        let _ = writeln!(
            s,
            "mode {}, bound {}, rewrite states {}, seed {}",
            self.mode, self.bounds.search, self.bounds.rewrite_states, self.seed
        );
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        for f in &self.findings {
            let _ = write!(s, "[{}] {}: {}", f.status.label(), f.check, f.detail);
            if !f.witnesses.is_empty() {
                let _ = write!(s, " (witness: {})", f.witnesses.join(", "));
            }
            s.push('\n');
        }
        let _ = writeln!(s, "status: {}", self.status.label());
        s
    }
}
