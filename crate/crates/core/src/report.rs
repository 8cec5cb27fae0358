//! Structured outcome of a verification run.

use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One row of a side-by-side count table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: i64,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<String>,
    pub status: Status,
    /// Present exactly when `status` is `Fail`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub counts: Vec<CountRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub wall_ms: u128,
}

impl VerificationReport {
    pub fn pass(check: impl Into<String>) -> Self {
        VerificationReport {
            check: check.into(),
            params: None,
            status: Status::Pass,
            counterexample: None,
            counts: Vec::new(),
            notes: Vec::new(),
            wall_ms: 0,
        }
    }

    pub fn fail(check: impl Into<String>, counterexample: impl Into<String>) -> Self {
        VerificationReport {
            status: Status::Fail,
            counterexample: Some(counterexample.into()),
            ..Self::pass(check)
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_params(mut self, params: impl ToString) -> Self {
        self.params = Some(params.to_string());
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.wall_ms = start.elapsed().as_millis();
        self
    }

    /// Combines sub-reports: fails at the first failing part.
    pub fn all(check: impl Into<String>, parts: Vec<VerificationReport>) -> Self {
        let check = check.into();
        let wall_ms = parts.iter().map(|p| p.wall_ms).sum();
        let notes: Vec<String> = parts
            .iter()
            .map(|p| {
                let params = p.params.as_deref().map(|s| format!(" {s}")).unwrap_or_default();
                format!("{}{}: {:?}", p.check, params, p.status)
            })
            .collect();
        let mut out = match parts.iter().find(|p| !p.passed()) {
            Some(bad) => {
                let params = bad.params.as_deref().map(|s| format!(" {s}")).unwrap_or_default();
                Self::fail(
                    check,
                    format!("{}{}: {}", bad.check, params, bad.counterexample.clone().unwrap_or_default()),
                )
            }
            None => Self::pass(check),
        };
        out.notes = notes;
        out.wall_ms = wall_ms;
        out
    }

    /// Compares two count columns indexed from `n = 0`.
    pub fn compare_counts<T: PartialEq + ToString>(check: impl Into<String>, left: &[T], right: &[T]) -> Self {
        let counts: Vec<CountRow> = left
            .iter()
            .zip(right)
            .enumerate()
            .map(|(n, (l, r))| CountRow { n: n as i64, left: l.to_string(), right: r.to_string() })
            .collect();
        let mut rep = if left.len() != right.len() {
            Self::fail(check, format!("column lengths differ: {} vs {}", left.len(), right.len()))
        } else {
            match counts.iter().find(|row| row.left != row.right) {
                Some(row) => Self::fail(check, format!("n={}: {} vs {}", row.n, row.left, row.right)),
                None => Self::pass(check),
            }
        };
        rep.counts = counts;
        rep
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_mismatch_points_at_first_row() {
        let r = VerificationReport::compare_counts("x", &[1, 2, 3], &[1, 2, 4]);
        assert!(!r.passed());
        assert_eq!(r.counterexample.as_deref(), Some("n=2: 3 vs 4"));
        assert!(VerificationReport::compare_counts("x", &[1u64], &[1u64]).passed());
    }

    #[test]
    fn fail_carries_counterexample() {
        let all = VerificationReport::all(
            "both",
            vec![VerificationReport::pass("a"), VerificationReport::fail("b", "at 3")],
        );
        assert!(!all.passed());
        assert!(all.counterexample.unwrap().contains("at 3"));
        let json = VerificationReport::pass("a").to_json();
        assert!(json.contains("\"status\": \"pass\""));
    }
}
