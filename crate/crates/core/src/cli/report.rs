//! Verification reports and their JSON, CSV and text renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::Config;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub case_id: String,
    pub anchor: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime_ms: Option<u64>,
}

impl Case {
    pub fn check(id: impl Into<String>, ok: bool, expected: impl ToString, actual: impl ToString, tolerance: Option<f64>) -> Case {
        Case {
            case_id: id.into(),
            anchor: String::new(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: expected.to_string(),
            actual: actual.to_string(),
            tolerance,
            runtime_ms: None,
        }
    }

    /// A case whose value is reported without an expectation.
    pub fn info(id: impl Into<String>, actual: impl ToString) -> Case {
        Case::check(id, true, "-", actual, None)
    }

    pub fn error(id: impl Into<String>, err: impl ToString) -> Case {
        Case::check(id, false, "no error", format!("error: {}", err.to_string()), None)
    }

    /// `|actual - expected| <= tol · max(1, |expected|)`.
    pub fn close(id: impl Into<String>, expected: f64, actual: f64, tol: f64) -> Case {
        let ok = (actual - expected).abs() <= tol * expected.abs().max(1.0);
        Case::check(id, ok, format!("{expected:.12e}"), format!("{actual:.12e}"), Some(tol))
    }

    /// `value <= tol`.
    pub fn below(id: impl Into<String>, value: f64, tol: f64) -> Case {
        Case::check(id, value <= tol, format!("<= {tol:e}"), format!("{value:.3e}"), Some(tol))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: u32,
    pub suite: String,
    pub anchor: String,
    pub cases: Vec<Case>,
    pub config: Config,
    pub seed: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> usize {
        self.count(Status::Pass)
    }

    pub fn failed(&self) -> usize {
        self.count(Status::Fail)
    }

    fn count(&self, s: Status) -> usize {
        self.cases.iter().filter(|c| c.status == s).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn emit_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("suite,case_id,anchor,status,expected,actual,tolerance,runtime_ms\n");
            for c in &report.cases {
                let tol = c.tolerance.map(|t| format!("{t:e}")).unwrap_or_default();
                let ms = c.runtime_ms.map(|t| t.to_string()).unwrap_or_default();
                let fields = [&report.suite, &c.case_id, &c.anchor, c.status.as_str(), &c.expected, &c.actual, &tol, &ms];
                let line: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
                s.push_str(&line.join(","));
                s.push('\n');
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "suite {} ({}) seed {}", report.suite, report.anchor, report.seed);
            for c in &report.cases {
                let _ = write!(s, "  {:4} {}: {}", c.status.as_str(), c.case_id, c.actual);
                if c.expected != "-" {
                    let _ = write!(s, " (expected {})", c.expected);
                }
                if let Some(ms) = c.runtime_ms {
                    let _ = write!(s, " [{ms} ms]");
                }
                s.push('\n');
            }
            let skipped = report.cases.len() - report.passed() - report.failed();
            let _ = writeln!(s, "{} passed, {} failed, {} skipped", report.passed(), report.failed(), skipped);
            s
        }
    }
}
