//! Named matrices with known status, and the regression suite over them.

use std::fmt;

use serde::Serialize;

use crate::matrix::BistochasticMatrix;
use crate::unistochastic::{certify_with, Certificate, HeuristicConfig, Verdict};

/// `Q = ½ [[0,1,1],[1,0,1],[1,1,0]]`: bistochastic, not bracelet.
pub fn q_matrix() -> BistochasticMatrix {
    BistochasticMatrix::from_rows(&[vec![0.0, 0.5, 0.5], vec![0.5, 0.0, 0.5], vec![0.5, 0.5, 0.0]])
        .expect("Q is bistochastic")
}

/// A unistochastic 4x4 matrix whose square is not unistochastic.
pub fn b_matrix() -> BistochasticMatrix {
    let rows = [[24.0, 16.0, 35.0, 25.0], [38.0, 21.0, 12.0, 29.0], [23.0, 24.0, 14.0, 39.0], [15.0, 39.0, 39.0, 7.0]];
    let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|x| x / 100.0).collect()).collect();
    BistochasticMatrix::from_rows(&rows).expect("B is bistochastic")
}

pub fn b_squared() -> BistochasticMatrix {
    let b = b_matrix();
    b.multiply(&b).expect("product of bistochastic matrices")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureStatus {
    Pass,
    Fail,
    /// Undecided, which is all a heuristic can say about a matrix believed to be
    /// non-unistochastic.
    Consistent,
    /// A witness for a matrix believed to be non-unistochastic.
    Finding,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureOutcome {
    pub name: &'static str,
    pub verdict: Verdict,
    pub residual: f64,
    pub status: FixtureStatus,
    pub note: String,
}

impl fmt::Display for FixtureOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<4} {:<18} residual {:<10.3e} {:?}: {}", self.name, self.verdict.as_str(), self.residual, self.status, self.note)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureSummary {
    pub outcomes: Vec<FixtureOutcome>,
}

impl FixtureSummary {
    /// No fixture failed and nothing contradicts the known status.
    pub fn all_consistent(&self) -> bool {
        self.outcomes.iter().all(|o| matches!(o.status, FixtureStatus::Pass | FixtureStatus::Consistent))
    }
}

/// Certifies `Q`, `B` and `B²` under the given heuristic budget.
///
/// A witness for `B²` is flagged as [`FixtureStatus::Finding`] and printed to
/// stderr. `Unknown` for `B²` is evidence only: no heuristic run proves
/// non-unistochasticity.
pub fn regression_fixtures(config: &HeuristicConfig) -> crate::Result<FixtureSummary> {
    let mut outcomes = Vec::new();

    let q = certify_with(&q_matrix(), config)?;
    let (status, note) = match &q {
        Certificate::NotUnistochastic(_) => (FixtureStatus::Pass, "bracelet violation found".to_string()),
        _ => (FixtureStatus::Fail, "expected a bracelet violation".to_string()),
    };
    outcomes.push(outcome("Q", &q, status, note));

    let b = certify_with(&b_matrix(), config)?;
    let (status, note) = match &b {
        Certificate::Unistochastic(w) if w.unitarity_residual() < 1e-8 => (FixtureStatus::Pass, "witness found".to_string()),
        _ => (FixtureStatus::Fail, "expected a witness with residual below 1e-8".to_string()),
    };
    outcomes.push(outcome("B", &b, status, note));

    let b2 = certify_with(&b_squared(), config)?;
    let (status, note) = match &b2 {
        Certificate::Unknown { .. } => (FixtureStatus::Consistent, "unknown (consistent with the expected status)".to_string()),
        Certificate::NotUnistochastic(_) => (FixtureStatus::Pass, "bracelet violation found".to_string()),
        Certificate::Unistochastic(w) => {
            let note = format!("FINDING: witness for B^2 with residual {:e}", w.unitarity_residual());
            eprintln!("{note}");
            (FixtureStatus::Finding, note)
        }
    };
    outcomes.push(outcome("B^2", &b2, status, note));

    Ok(FixtureSummary { outcomes })
}

fn outcome(name: &'static str, c: &Certificate, status: FixtureStatus, note: String) -> FixtureOutcome {
    FixtureOutcome { name, verdict: c.verdict(), residual: c.residual(), status, note }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracelet::is_bracelet;

    #[test]
    fn fixtures_are_valid() {
        assert_eq!(q_matrix().dim(), 3);
        assert!(is_bracelet(&b_matrix()).holds);
        assert!(is_bracelet(&b_squared()).holds);
    }
}
