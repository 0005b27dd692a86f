//! Unistochasticity: unitary witnesses, exact constructions in low dimension,
//! a heuristic search, and the certificate that wraps their verdicts.
//!
//! A bistochastic `B` is unistochastic when `B_jk = |U_jk|^2` for a unitary `U`.
//! A bracelet violation proves it is not. Exact constructions cover `d <= 3`
//! and circulant `d = 4`; everything else goes through alternating projections,
//! which can fail to decide and then says so.

mod circulant4;
mod exact;
mod heuristic;

pub use circulant4::{solve_d4_phases, witness_d4_circulant, CirculantPhaseSolution};
pub use exact::{witness_d2, witness_d3, witness_d3_circulant};
pub use heuristic::{heuristic_witness, HeuristicConfig};

use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use crate::bracelet::{is_bracelet, Axis, BraceletReport};
use crate::complex::ComplexSquareMatrix;
use crate::error::{Error, Result};
use crate::matrix::BistochasticMatrix;
use crate::tolerance;

/// A unitary `U` proposed for `B`, with its measured unitarity residual.
#[derive(Debug, Clone)]
pub struct UnitaryWitness {
    matrix: ComplexSquareMatrix,
    unitarity_residual: f64,
    target: BistochasticMatrix,
}

impl UnitaryWitness {
    /// Wraps `matrix`, computing `||U U^† - 1||_F` on the spot.
    pub fn new(matrix: ComplexSquareMatrix, target: BistochasticMatrix) -> Result<Self> {
        if matrix.dim() != target.dim() {
            return Err(Error::DimMismatch { left: matrix.dim(), right: target.dim() });
        }
        let unitarity_residual = matrix.unitarity_residual();
        Ok(Self { matrix, unitarity_residual, target })
    }

    pub fn matrix(&self) -> &ComplexSquareMatrix {
        &self.matrix
    }

    pub fn unitarity_residual(&self) -> f64 {
        self.unitarity_residual
    }

    pub fn target(&self) -> &BistochasticMatrix {
        &self.target
    }

    /// `max_jk | |U_jk|^2 - B_jk |`.
    pub fn moduli_error(&self) -> f64 {
        self.matrix
            .moduli_squared()
            .iter()
            .zip(self.target.entries())
            .map(|(u, b)| (u - b).abs())
            .fold(0.0, f64::max)
    }

    /// Phases `arg U_jk`, row-major.
    pub fn phases(&self) -> Vec<f64> {
        self.matrix.entries().iter().map(|z| z.arg()).collect()
    }

    pub fn is_certified(&self) -> bool {
        self.is_certified_with(tolerance::UNITARY, tolerance::WITNESS)
    }

    pub fn is_certified_with(&self, unitary: f64, witness: f64) -> bool {
        self.unitarity_residual <= unitary && self.moduli_error() <= witness
    }
}

#[derive(Debug, Clone)]
pub enum Certificate {
    Unistochastic(UnitaryWitness),
    NotUnistochastic(BraceletReport),
    /// Only the heuristic path produces this.
    Unknown { best_residual: f64, restarts_used: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Unistochastic,
    NotUnistochastic,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Unistochastic => "unistochastic",
            Verdict::NotUnistochastic => "not_unistochastic",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationRecord {
    pub axis: Axis,
    pub k: usize,
    pub l: usize,
    pub j: usize,
}

/// JSON form of a certificate.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateRecord {
    pub verdict: Verdict,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationRecord>,
}

impl Certificate {
    pub fn verdict(&self) -> Verdict {
        match self {
            Certificate::Unistochastic(_) => Verdict::Unistochastic,
            Certificate::NotUnistochastic(_) => Verdict::NotUnistochastic,
            Certificate::Unknown { .. } => Verdict::Unknown,
        }
    }

    pub fn is_unistochastic(&self) -> bool {
        matches!(self, Certificate::Unistochastic(_))
    }

    pub fn witness(&self) -> Option<&UnitaryWitness> {
        match self {
            Certificate::Unistochastic(w) => Some(w),
            _ => None,
        }
    }

    /// Unitarity residual of the witness, best residual when unknown, and the
    /// size of the bracelet violation (`-worst_margin`) when refuted.
    pub fn residual(&self) -> f64 {
        match self {
            Certificate::Unistochastic(w) => w.unitarity_residual(),
            Certificate::NotUnistochastic(r) => -r.worst_margin,
            Certificate::Unknown { best_residual, .. } => *best_residual,
        }
    }

    pub fn to_record(&self, witness_file: Option<&Path>) -> CertificateRecord {
        let violation = match self {
            Certificate::NotUnistochastic(r) => {
                r.violation.map(|v| ViolationRecord { axis: v.axis, k: v.k, l: v.l, j: v.j })
            }
            _ => None,
        };
        CertificateRecord {
            verdict: self.verdict(),
            residual: self.residual(),
            witness_file: witness_file.map(|p| p.display().to_string()),
            violation,
        }
    }

    pub fn to_json(&self, witness_file: Option<&Path>) -> String {
        serde_json::to_string(&self.to_record(witness_file)).expect("certificate record serializes")
    }
}

/// Default-budget certification.
pub fn certify(b: &BistochasticMatrix) -> Result<Certificate> {
    certify_with(b, &HeuristicConfig::default())
}

/// Exact construction when one applies, the heuristic otherwise.
pub fn certify_with(b: &BistochasticMatrix, config: &HeuristicConfig) -> Result<Certificate> {
    match certify_exact(b)? {
        Some(c) => Ok(c),
        None => heuristic_witness(b, config),
    }
}

/// Runs only the exact paths: `d <= 3` and circulant `d = 4`. Returns `None`
/// when neither applies and the bracelet conditions hold.
pub fn certify_exact(b: &BistochasticMatrix) -> Result<Option<Certificate>> {
    match b.dim() {
        1 => {
            let u = ComplexSquareMatrix::identity(1);
            Ok(Some(Certificate::Unistochastic(UnitaryWitness::new(u, b.clone())?)))
        }
        2 => Ok(Some(Certificate::Unistochastic(witness_d2(b)?))),
        3 => witness_d3(b).map(Some),
        4 => match b.as_circulant(tolerance::BISTOCHASTIC) {
            Some(c) => witness_d4_circulant(&c).map(Some),
            None => refute(b),
        },
        _ => refute(b),
    }
}

fn refute(b: &BistochasticMatrix) -> Result<Option<Certificate>> {
    let report = is_bracelet(b);
    Ok(if report.holds { None } else { Some(Certificate::NotUnistochastic(report)) })
}

/// `sqrt(B_jk) e^{i phi_jk}` for row-major `phases`.
pub(crate) fn with_phases(b: &BistochasticMatrix, phase: impl Fn(usize, usize) -> Complex64) -> ComplexSquareMatrix {
    ComplexSquareMatrix::from_fn(b.dim(), |r, c| phase(r, c) * b.get(r, c).sqrt())
}
