//! Line-oriented verification reports.
//!
//! One JSON object per line with a fixed field order and 17-significant-digit
//! floats, so identical runs produce byte-identical artifacts. Batch files are
//! concatenations of lines; merging orders records by `(check, seed, trial)`.
//! The schema is documented in `docs/report-schema.md`.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::Error;
use crate::polynomial::format_f64;

/// Schema tag carried by every record.
pub const SCHEMA_VERSION: &str = "monconv-report/v1";

/// Ternary verification outcome.
///
/// `Verified` means the left side is at or below the certified lower estimate
/// of the right side (up to a `1e-9` relative roundoff allowance); `Violated`
/// means it strictly exceeds the certified upper estimate; anything between
/// is `Inconclusive`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum InequalityStatus {
    Verified,
    Inconclusive,
    Violated,
}

impl InequalityStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            InequalityStatus::Verified => "Verified",
            InequalityStatus::Inconclusive => "Inconclusive",
            InequalityStatus::Violated => "Violated",
        }
    }
}

/// Relative roundoff allowance separating Verified from Inconclusive and
/// Inconclusive from Violated.
pub const STATUS_TOLERANCE: f64 = 1e-9;

/// Decides the ternary status from the left side and certified bounds on the
/// right side. For exact (norm-free) checks pass `rhs_lower == rhs_upper`;
/// the result is then never `Inconclusive`.
pub fn decide_status(lhs: f64, rhs_lower: f64, rhs_upper: f64) -> InequalityStatus {
    debug_assert!(rhs_lower <= rhs_upper * (1.0 + 1e-12));
    if lhs <= rhs_lower * (1.0 + STATUS_TOLERANCE) {
        InequalityStatus::Verified
    } else if lhs > rhs_upper * (1.0 + STATUS_TOLERANCE) {
        InequalityStatus::Violated
    } else {
        InequalityStatus::Inconclusive
    }
}

/// One verification outcome.
#[derive(Debug, Clone, Deserialize)]
pub struct InequalityReport {
    pub schema: String,
    pub check: String,
    /// Named scalar parameters of the instance (integers stored exactly).
    pub params: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    /// The assembled constant factor inside `rhs`, with its provenance.
    pub constant: f64,
    pub constant_note: String,
    /// Certified polynomial-norm interval when one participates.
    pub norm_lower: Option<f64>,
    pub norm_upper: Option<f64>,
    pub status: InequalityStatus,
    /// Serialized inputs for replay, when small enough to keep.
    pub witness: Option<String>,
    pub seed: u64,
    pub trial: u64,
}

impl InequalityReport {
    /// Canonical single-line JSON encoding (fixed field order, 17-digit
    /// floats).
    pub fn to_json_line(&self) -> String {
        let mut out = String::with_capacity(256);
        out.push_str(&format!("{{\"schema\": {:?}", self.schema));
        out.push_str(&format!(", \"check\": {:?}", self.check));
        out.push_str(", \"params\": {");
        for (i, (k, v)) in self.params.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("{:?}: {}", k, format_f64(*v)));
        }
        out.push('}');
        out.push_str(&format!(", \"lhs\": {}", format_f64(self.lhs)));
        out.push_str(&format!(", \"rhs\": {}", format_f64(self.rhs)));
        out.push_str(&format!(", \"constant\": {}", format_f64(self.constant)));
        out.push_str(&format!(", \"constant_note\": {:?}", self.constant_note));
        match self.norm_lower {
            Some(v) => out.push_str(&format!(", \"norm_lower\": {}", format_f64(v))),
            None => out.push_str(", \"norm_lower\": null"),
        }
        match self.norm_upper {
            Some(v) => out.push_str(&format!(", \"norm_upper\": {}", format_f64(v))),
            None => out.push_str(", \"norm_upper\": null"),
        }
        out.push_str(&format!(", \"status\": \"{}\"", self.status.as_str()));
        match &self.witness {
            Some(w) => out.push_str(&format!(", \"witness\": {w:?}")),
            None => out.push_str(", \"witness\": null"),
        }
        out.push_str(&format!(", \"seed\": {}", self.seed));
        out.push_str(&format!(", \"trial\": {}}}", self.trial));
        out
    }

    pub fn from_json_line(line: &str) -> Result<Self, Error> {
        let report: InequalityReport =
            serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))?;
        if report.schema != SCHEMA_VERSION {
            return Err(Error::SchemaMismatch {
                expected: SCHEMA_VERSION.to_string(),
                got: report.schema,
            });
        }
        Ok(report)
    }
}

/// Parses a batch (one record per nonempty line).
pub fn parse_batch(text: &str) -> Result<Vec<InequalityReport>, Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(InequalityReport::from_json_line)
        .collect()
}

/// Merges batches into one, ordered by `(check, seed, trial)`; the sort is
/// stable so records agreeing on the full key keep their input order.
pub fn merge_reports(batches: Vec<Vec<InequalityReport>>) -> Vec<InequalityReport> {
    let mut all: Vec<InequalityReport> = batches.into_iter().flatten().collect();
    all.sort_by(|a, b| {
        a.check
            .cmp(&b.check)
            .then(a.seed.cmp(&b.seed))
            .then(a.trial.cmp(&b.trial))
    });
    all
}

/// A plot-ready table row for the asymptotics commands.
#[derive(Debug, Clone, Copy)]
pub struct TrendRow {
    pub n: usize,
    pub estimate: f64,
    pub fitted_exponent: f64,
    pub predicted_exponent: f64,
}

/// CSV encoding of trend rows: header plus one line per row, floats with 17
/// significant digits.
pub fn trend_rows_to_csv(rows: &[TrendRow]) -> String {
    let mut out = String::from("n,estimate,fitted_exponent,predicted_exponent\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.n,
            format_f64(row.estimate),
            format_f64(row.fitted_exponent),
            format_f64(row.predicted_exponent)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(check: &str, seed: u64, trial: u64) -> InequalityReport {
        let mut params = BTreeMap::new();
        params.insert("m".to_string(), 3.0);
        params.insert("r".to_string(), 1.5);
        InequalityReport {
            schema: SCHEMA_VERSION.to_string(),
            check: check.to_string(),
            params,
            lhs: 1.0 / 3.0,
            rhs: 2.0,
            constant: 2.0,
            constant_note: "test".to_string(),
            norm_lower: Some(0.9),
            norm_upper: Some(1.1),
            status: InequalityStatus::Verified,
            witness: None,
            seed,
            trial,
        }
    }

    #[test]
    fn json_line_round_trip() {
        let report = sample("tetra", 42, 7);
        let line = report.to_json_line();
        let back = InequalityReport::from_json_line(&line).unwrap();
        assert_eq!(back.to_json_line(), line);
        assert_eq!(back.lhs.to_bits(), report.lhs.to_bits());
    }

    #[test]
    fn schema_mismatch_rejected() {
        let mut report = sample("tetra", 1, 1);
        report.schema = "other/v9".to_string();
        let line = report.to_json_line();
        assert!(matches!(
            InequalityReport::from_json_line(&line),
            Err(Error::SchemaMismatch { .. })
        ));
    }

    #[test]
    fn status_decision_logic() {
        assert_eq!(decide_status(1.0, 2.0, 3.0), InequalityStatus::Verified);
        assert_eq!(decide_status(2.5, 2.0, 3.0), InequalityStatus::Inconclusive);
        assert_eq!(decide_status(3.5, 2.0, 3.0), InequalityStatus::Violated);
        // exact checks never come out Inconclusive
        assert_eq!(decide_status(2.0, 2.0, 2.0), InequalityStatus::Verified);
        assert_eq!(decide_status(2.1, 2.0, 2.0), InequalityStatus::Violated);
    }

    #[test]
    fn merge_sorts_and_preserves_counts() {
        let a = vec![sample("tetra", 2, 0), sample("bds", 1, 1)];
        let b = vec![sample("bds", 1, 0), sample("tetra", 1, 5)];
        let merged = merge_reports(vec![a, b]);
        assert_eq!(merged.len(), 4);
        let keys: Vec<(String, u64, u64)> = merged
            .iter()
            .map(|r| (r.check.clone(), r.seed, r.trial))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);

        // idempotent on a single input
        let single = vec![sample("even", 1, 0)];
        let merged = merge_reports(vec![single.clone()]);
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].to_json_line(), single[0].to_json_line());
    }

    #[test]
    fn csv_rows() {
        let rows = vec![TrendRow {
            n: 8,
            estimate: 2.5,
            fitted_exponent: 1.5,
            predicted_exponent: 1.5,
        }];
        let csv = trend_rows_to_csv(&rows);
        assert!(csv.starts_with("n,estimate,fitted_exponent,predicted_exponent\n"));
        assert!(csv.contains("8,2.5"));
    }
}
