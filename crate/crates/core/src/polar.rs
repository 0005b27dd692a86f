//! Unitary polar factor by Newton iteration.
//!
//! For nonsingular `A = Q H` (Q unitary, H Hermitian positive definite) the
//! iteration `X <- (X + X^{-†}) / 2` converges quadratically to `Q`, the
//! nearest unitary matrix in Frobenius norm. While far from convergence each
//! step is preceded by the Frobenius-norm scaling `X <- ζ X`,
//! `ζ = sqrt(||X^{-1}||_F / ||X||_F)`, which does not change the limit.

use num_complex::Complex64;

use crate::complex::ComplexSquareMatrix;
use crate::error::{Error, Result};

/// Residual above which scaled steps are used.
const SCALING_THRESHOLD: f64 = 1e-2;

#[derive(Debug, Clone)]
pub struct PolarOutcome {
    pub unitary: ComplexSquareMatrix,
    pub iterations: usize,
    pub residual: f64,
}

pub fn polar_unitary_factor(a: &ComplexSquareMatrix, max_iters: usize, tolerance: f64) -> Result<ComplexSquareMatrix> {
    polar_newton(a, max_iters, tolerance).map(|o| o.unitary)
}

pub fn polar_newton(a: &ComplexSquareMatrix, max_iters: usize, tolerance: f64) -> Result<PolarOutcome> {
    let mut x = a.clone();
    let mut residual = x.unitarity_residual();
    if !residual.is_finite() {
        return Err(Error::SingularInput);
    }
    let mut iterations = 0;
    while residual > tolerance {
        if iterations == max_iters {
            return Err(Error::Convergence { what: "polar newton", iterations, residual });
        }
        let inv = x.inverse()?;
        let zeta = if residual > SCALING_THRESHOLD {
            (inv.frobenius_norm() / x.frobenius_norm()).sqrt()
        } else {
            1.0
        };
        let d = x.dim();
        let mut next = ComplexSquareMatrix::zeros(d);
        for r in 0..d {
            for c in 0..d {
                // (X^{-1})^† has entry (r, c) = conj(inv[c, r])
                next[(r, c)] = Complex64::new(0.5, 0.0) * (x[(r, c)] * zeta + inv[(c, r)].conj() / zeta);
            }
        }
        x = next;
        residual = x.unitarity_residual();
        if !residual.is_finite() {
            return Err(Error::SingularInput);
        }
        iterations += 1;
    }
    Ok(PolarOutcome { unitary: x, iterations, residual })
}
