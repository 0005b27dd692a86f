//! Numerical tolerances shared across the crate.
//!
//! All comparisons against exact algebraic conditions go through one of these
//! thresholds. The defaults are tuned for double precision at `d <= 8`.

use serde::{Deserialize, Serialize};

/// Row/column sum and negativity slack for bistochastic validation.
pub const BISTOCHASTIC: f64 = 1e-12;
/// Frobenius bound on `U U^† - 1` for a certified witness.
pub const UNITARY: f64 = 1e-9;
/// Max-norm bound on `|U_jk|^2 - B_jk` for a witness.
pub const WITNESS: f64 = 1e-10;
/// Slack below zero still accepted as a satisfied bracelet condition.
pub const BRACELET: f64 = 1e-12;
/// Slack on `|lambda| <= 1` for spectra of bistochastic matrices.
pub const SPECTRUM: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub bistochastic: f64,
    pub unitary: f64,
    pub witness: f64,
    pub bracelet: f64,
    pub spectrum: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            bistochastic: BISTOCHASTIC,
            unitary: UNITARY,
            witness: WITNESS,
            bracelet: BRACELET,
            spectrum: SPECTRUM,
        }
    }
}
