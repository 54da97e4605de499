//! The JSON report emitted by every `verify` and `scan` run.

use chrono::{SecondsFormat, Utc};
use gammalcm::certify::{Certificate, Classification, Direction, ScanCell, SurfaceCertificate, Verdict};
use gammalcm::ineq::CheckResult;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Failed,
    Undecided,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Passed => "passed",
            Status::Failed => "failed",
            Status::Undecided => "undecided",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportEntry {
    Check {
        status: Status,
        check: CheckResult,
    },
    Certificate {
        status: Status,
        /// The verdict the suite expects; necessity probes expect FAIL.
        expected: Verdict,
        certificate: Certificate,
    },
    Surface {
        status: Status,
        certificate: SurfaceCertificate,
    },
    Cell {
        status: Status,
        cell: ScanCell,
    },
}

impl ReportEntry {
    pub fn check(check: CheckResult) -> Self {
        let status = if check.holds { Status::Passed } else { Status::Failed };
        ReportEntry::Check { status, check }
    }

    pub fn certificate(certificate: Certificate, expected: Verdict) -> Self {
        let status = match certificate.verdict {
            Verdict::Undecided => Status::Undecided,
            v if v == expected => Status::Passed,
            _ => Status::Failed,
        };
        ReportEntry::Certificate { status, expected, certificate }
    }

    pub fn surface(certificate: SurfaceCertificate) -> Self {
        let status = match certificate.verdict {
            Verdict::Pass => Status::Passed,
            Verdict::Fail => Status::Failed,
            Verdict::Undecided => Status::Undecided,
        };
        ReportEntry::Surface { status, certificate }
    }

    /// Scan cells are observations; only an undecided cell is flagged.
    pub fn cell(cell: ScanCell) -> Self {
        let status = match cell.classification {
            Classification::Undecided => Status::Undecided,
            _ => Status::Passed,
        };
        ReportEntry::Cell { status, cell }
    }

    pub fn status(&self) -> Status {
        match self {
            ReportEntry::Check { status, .. }
            | ReportEntry::Certificate { status, .. }
            | ReportEntry::Surface { status, .. }
            | ReportEntry::Cell { status, .. } => *status,
        }
    }

    pub fn name(&self) -> String {
        match self {
            ReportEntry::Check { check, .. } => check.name.clone(),
            ReportEntry::Certificate { certificate, .. } => match certificate.direction {
                Direction::Lcm => "certify_lcm".to_string(),
                Direction::Reciprocal => "certify_reciprocal".to_string(),
            },
            ReportEntry::Surface { .. } => "verify_thm3".to_string(),
            ReportEntry::Cell { .. } => "scan_cell".to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub undecided: usize,
}

impl Summary {
    pub fn tally(results: &[ReportEntry]) -> Self {
        let mut s = Summary { total: results.len(), passed: 0, failed: 0, undecided: 0 };
        for r in results {
            match r.status() {
                Status::Passed => s.passed += 1,
                Status::Failed => s.failed += 1,
                Status::Undecided => s.undecided += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub timestamp: String,
    pub suite: String,
    pub results: Vec<ReportEntry>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: &str, results: Vec<ReportEntry>) -> Self {
        Report {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
            suite: suite.to_string(),
            summary: Summary::tally(&results),
            results,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.summary.failed == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per result: `kind,name,status,margin`. The margin column is
    /// empty for certificates and cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,name,status,margin\n");
        for r in &self.results {
            let (kind, margin) = match r {
                ReportEntry::Check { check, .. } => ("check", fmt_f64(check.margin)),
                ReportEntry::Certificate { .. } => ("certificate", String::new()),
                ReportEntry::Surface { .. } => ("surface", String::new()),
                ReportEntry::Cell { .. } => ("cell", String::new()),
            };
            out.push_str(&format!("{kind},{},{},{margin}\n", r.name(), r.status().as_str()));
        }
        out
    }
}

/// Shortest decimal that parses back to the same binary64 value.
pub fn fmt_f64(v: f64) -> String {
    serde_json::to_string(&v).unwrap_or_else(|_| "NaN".to_string())
}

/// CSV body of a scan: header `alpha,y,classification`, one row per cell.
pub fn scan_csv(cells: &[ScanCell]) -> String {
    let mut out = String::from("alpha,y,classification\n");
    for c in cells {
        out.push_str(&format!("{},{},{}\n", fmt_f64(c.alpha), fmt_f64(c.y), c.classification));
    }
    out
}
