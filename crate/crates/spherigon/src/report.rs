//! Verification reports: canonical JSON with sorted keys, plus a CSV summary.

use serde::Serialize;

use crate::grid::SweepGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// How an observed quantity `q` is judged against the tolerance `tol`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    /// `q < tol`, where `q` is an error magnitude; margin `tol - q`.
    Within,
    /// `q >= -tol`; margin `q + tol`.
    AtLeast,
    /// `q > tol`; margin `q - tol`.
    Exceeds,
}

impl Sense {
    pub fn margin(self, observed: f64, tolerance: f64) -> f64 {
        let m = match self {
            Sense::Within => tolerance - observed,
            Sense::AtLeast => observed + tolerance,
            Sense::Exceeds => observed - tolerance,
        };
        if m.is_nan() {
            f64::NEG_INFINITY
        } else {
            m
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Sense::Within => "observed < tolerance",
            Sense::AtLeast => "observed >= -tolerance",
            Sense::Exceeds => "observed > tolerance",
        }
    }
}

/// Value written in place of a non-finite margin so every record stays
/// representable in JSON.
pub const FAILED_MARGIN: f64 = -1.0e300;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub reference: String,
    pub status: Status,
    /// Worst margin over all cases; positive means pass.
    pub margin: f64,
    /// Observed quantity at the worst case.
    pub observed: f64,
    pub tolerance: f64,
    pub sense: Sense,
    pub rule: String,
    pub cases: usize,
    pub runtime_s: f64,
    /// Description of the worst case.
    pub worst_case: String,
}

/// Aggregated observations of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub margin: f64,
    pub observed: f64,
    pub cases: usize,
    pub runtime_s: f64,
    pub worst_case: String,
}

impl CheckRecord {
    pub fn new(id: &str, reference: &str, sense: Sense, tolerance: f64, outcome: Outcome) -> Self {
        let Outcome {
            margin,
            observed,
            cases,
            runtime_s,
            worst_case,
        } = outcome;
        let pass = margin.is_finite() && margin > 0.0 && cases > 0;
        CheckRecord {
            id: id.to_string(),
            reference: reference.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            margin: if margin.is_finite() { margin } else { FAILED_MARGIN },
            observed: if observed.is_finite() { observed } else { FAILED_MARGIN },
            tolerance,
            sense,
            rule: sense.describe().to_string(),
            cases,
            runtime_s,
            worst_case,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub grid: SweepGrid,
    pub rng: String,
    pub threads: usize,
    pub records: Vec<CheckRecord>,
    pub pass: bool,
    pub runtime_s: f64,
}

impl VerificationReport {
    pub fn new(suite: &str, grid: SweepGrid, threads: usize, mut records: Vec<CheckRecord>, runtime_s: f64) -> Self {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        let pass = !records.is_empty() && records.iter().all(CheckRecord::passed);
        VerificationReport {
            suite: suite.to_string(),
            grid,
            rng: sphere_core::sample::RNG_ALGORITHM.to_string(),
            threads,
            records,
            pass,
            runtime_s,
        }
    }

    pub fn record(&self, id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    /// Pretty JSON with object keys in sorted order.
    pub fn to_canonical_json(&self) -> String {
        // serde_json's Map is a BTreeMap, so going through Value sorts keys
        let value = serde_json::to_value(self).expect("report is serializable");
        let mut text = serde_json::to_string_pretty(&value).expect("value is serializable");
        text.push('\n');
        text
    }

    /// One CSV row per check.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "id",
            "status",
            "margin",
            "observed",
            "tolerance",
            "cases",
            "runtime_s",
            "reference",
        ])
        .expect("in-memory write");
        for r in &self.records {
            let status = if r.passed() { "pass" } else { "fail" };
            w.write_record([
                r.id.as_str(),
                status,
                &format!("{:e}", r.margin),
                &format!("{:e}", r.observed),
                &format!("{:e}", r.tolerance),
                &r.cases.to_string(),
                &format!("{:.3}", r.runtime_s),
                r.reference.as_str(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: &str, margin: f64) -> CheckRecord {
        let outcome = Outcome {
            margin,
            observed: 0.0,
            cases: 1,
            runtime_s: 0.0,
            worst_case: String::new(),
        };
        CheckRecord::new(id, "ref", Sense::Within, 1e-9, outcome)
    }

    #[test]
    fn margins() {
        assert_eq!(Sense::Within.margin(0.25, 1.0), 0.75);
        assert_eq!(Sense::AtLeast.margin(-0.5, 1.0), 0.5);
        assert_eq!(Sense::Exceeds.margin(3.0, 1.0), 2.0);
        assert_eq!(Sense::Within.margin(f64::NAN, 1.0), f64::NEG_INFINITY);
    }

    #[test]
    fn overall_pass_needs_every_record() {
        let r = VerificationReport::new("all", SweepGrid::default(), 1, vec![rec("b", 1.0), rec("a", 1.0)], 0.0);
        assert!(r.pass);
        assert_eq!(r.records[0].id, "a");
        let r = VerificationReport::new("all", SweepGrid::default(), 1, vec![rec("b", 1.0), rec("a", -1.0)], 0.0);
        assert!(!r.pass);
        assert_eq!(r.failures().count(), 1);
        let r = VerificationReport::new("all", SweepGrid::default(), 1, vec![], 0.0);
        assert!(!r.pass);
    }

    #[test]
    fn non_finite_margin_fails_but_serializes() {
        let r = rec("x", f64::NEG_INFINITY);
        assert!(!r.passed());
        assert_eq!(r.margin, FAILED_MARGIN);
        let report = VerificationReport::new("all", SweepGrid::default(), 1, vec![r], 0.0);
        let v: serde_json::Value = serde_json::from_str(&report.to_canonical_json()).unwrap();
        assert!(v["records"][0]["margin"].is_number());
    }

    #[test]
    fn canonical_keys_are_sorted() {
        let report = VerificationReport::new("all", SweepGrid::default(), 1, vec![rec("a", 1.0)], 0.0);
        let text = report.to_canonical_json();
        let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
        assert!(pos("grid") < pos("pass") && pos("pass") < pos("records") && pos("records") < pos("rng"));
        assert!(pos("rng") < pos("suite"));
    }

    #[test]
    fn csv_rows() {
        let report = VerificationReport::new("all", SweepGrid::default(), 1, vec![rec("a", 1.0), rec("b", -1.0)], 0.0);
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("id,status"));
        assert!(lines[1].starts_with("a,pass"));
        assert!(lines[2].starts_with("b,fail"));
    }
}
