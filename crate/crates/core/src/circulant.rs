//! Circulant bistochastic matrices and their spectra.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::BistochasticMatrix;
use crate::tolerance;

/// Probability vector `alpha` defining `C = Σ_j alpha_j Π_d^j`.
///
/// `alpha` is also the first row of the expanded matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantVector {
    alpha: Vec<f64>,
}

impl CirculantVector {
    pub fn new(mut alpha: Vec<f64>, tolerance: f64) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::Range { name: "dimension", value: 0.0, range: ">= 1" });
        }
        for (index, a) in alpha.iter_mut().enumerate() {
            if !a.is_finite() {
                return Err(Error::NonFinite { index, value: *a });
            }
            if *a < 0.0 {
                if *a < -tolerance {
                    return Err(Error::NegativeVectorEntry { index, value: *a });
                }
                *a = 0.0;
            }
        }
        let sum: f64 = alpha.iter().sum();
        if (sum - 1.0).abs() > tolerance * alpha.len() as f64 {
            return Err(Error::VectorSum { sum });
        }
        Ok(Self { alpha })
    }

    /// Validates with the default tolerance.
    pub fn from_slice(alpha: &[f64]) -> Result<Self> {
        Self::new(alpha.to_vec(), tolerance::BISTOCHASTIC)
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// Expands to the full matrix; entry `(r, c)` is `alpha[(c - r) mod d]`.
    pub fn to_matrix(&self) -> BistochasticMatrix {
        let d = self.dim();
        let mut entries = vec![0.0; d * d];
        for r in 0..d {
            for c in 0..d {
                entries[r * d + c] = self.alpha[(c + d - r) % d];
            }
        }
        BistochasticMatrix::from_trusted(d, entries)
    }

    /// `b_j = Σ_k alpha_k ω^{kj}` with `ω = exp(2πi/d)`, by direct summation.
    pub fn eigenvalues(&self) -> SpectrumSet {
        SpectrumSet { values: dft(&self.alpha) }
    }
}

/// `Σ_k x_k exp(2πi kj/d)` for every `j`, computed in `O(d^2)`.
pub fn dft(x: &[f64]) -> Vec<Complex64> {
    let d = x.len();
    (0..d)
        .map(|j| {
            x.iter()
                .enumerate()
                .map(|(k, &a)| {
                    // reduce kj mod d first so large products keep full precision
                    let phase = 2.0 * PI * ((k * j) % d) as f64 / d as f64;
                    Complex64::from_polar(a, phase)
                })
                .sum()
        })
        .collect()
}

pub fn circulant_eigenvalues(c: &CirculantVector) -> SpectrumSet {
    c.eigenvalues()
}

/// Eigenvalues of a matrix, in the order produced by the computing routine.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSet {
    pub values: Vec<Complex64>,
}

impl SpectrumSet {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// The bistochastic spectral invariants: every `|b| <= 1 + eps` and `1` present.
    pub fn is_bistochastic_spectrum(&self, eps: f64) -> bool {
        self.max_modulus() <= 1.0 + eps && self.values.iter().any(|z| (z - 1.0).norm() <= eps)
    }
}
