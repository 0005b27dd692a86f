//! Random bistochastic matrices by Sinkhorn scaling.
//!
//! Starting from i.i.d. uniform(0, 1) entries, rows and columns are normalized
//! alternately until every sum is within tolerance of one. The induced measure
//! on the Birkhoff polytope is not uniform; the fuzz harnesses only need
//! coverage, not uniformity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::BistochasticMatrix;
use crate::tolerance;

pub const DEFAULT_MAX_ITERS: usize = 10_000;
pub const DEFAULT_TOLERANCE: f64 = 1e-13;

/// Deterministic sample for a given seed.
pub fn sinkhorn_sample(d: usize, rng_seed: u64, max_iters: usize, tolerance: f64) -> Result<BistochasticMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    sinkhorn_sample_with(d, &mut rng, max_iters, tolerance)
}

pub fn sinkhorn_sample_with<R: Rng + ?Sized>(
    d: usize,
    rng: &mut R,
    max_iters: usize,
    tolerance: f64,
) -> Result<BistochasticMatrix> {
    if d == 0 {
        return Err(Error::Range { name: "dimension", value: 0.0, range: ">= 1" });
    }
    // uniform(0,1) may return exactly 0; nudge into the open interval
    let raw: Vec<f64> = (0..d * d).map(|_| rng.gen::<f64>().max(f64::MIN_POSITIVE)).collect();
    let (entries, _) = sinkhorn_normalize(d, raw, max_iters, tolerance)?;
    BistochasticMatrix::from_entries(d, entries, tolerance.max(tolerance::BISTOCHASTIC))
}

/// Alternating row/column normalization of a positive matrix.
///
/// Returns the normalized entries and the number of sweeps (one sweep is a row
/// pass followed by a column pass).
pub fn sinkhorn_normalize(d: usize, mut m: Vec<f64>, max_iters: usize, tolerance: f64) -> Result<(Vec<f64>, usize)> {
    assert_eq!(m.len(), d * d);
    let mut deviation = f64::INFINITY;
    for sweep in 1..=max_iters {
        for r in 0..d {
            let s: f64 = m[r * d..(r + 1) * d].iter().sum();
            m[r * d..(r + 1) * d].iter_mut().for_each(|x| *x /= s);
        }
        for c in 0..d {
            let s: f64 = (0..d).map(|r| m[r * d + c]).sum();
            (0..d).for_each(|r| m[r * d + c] /= s);
        }
        deviation = max_sum_deviation(d, &m);
        if deviation <= tolerance {
            return Ok((m, sweep));
        }
    }
    Err(Error::Convergence { what: "sinkhorn", iterations: max_iters, residual: deviation })
}

fn max_sum_deviation(d: usize, m: &[f64]) -> f64 {
    let rows = (0..d).map(|r| (m[r * d..(r + 1) * d].iter().sum::<f64>() - 1.0).abs());
    let cols = (0..d).map(|c| ((0..d).map(|r| m[r * d + c]).sum::<f64>() - 1.0).abs());
    rows.chain(cols).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_one_is_trivial() {
        for seed in 0..5 {
            assert_eq!(sinkhorn_sample(1, seed, 100, 1e-12).unwrap().entries(), &[1.0]);
        }
    }

    #[test]
    fn seeded_sample_meets_postcondition() {
        let b = sinkhorn_sample(3, 42, DEFAULT_MAX_ITERS, 1e-12).unwrap();
        for i in 0..3 {
            let row: f64 = b.row(i).iter().sum();
            let col: f64 = b.column(i).iter().sum();
            assert!((row - 1.0).abs() <= 3e-12 && (col - 1.0).abs() <= 3e-12);
        }
        assert_eq!(b, sinkhorn_sample(3, 42, DEFAULT_MAX_ITERS, 1e-12).unwrap());
    }

    #[test]
    fn flat_matrix_is_a_fixed_point() {
        let w = BistochasticMatrix::flat(4);
        let (out, sweeps) = sinkhorn_normalize(4, w.entries().to_vec(), 10, 1e-14).unwrap();
        assert_eq!(sweeps, 1);
        assert_eq!(out, w.entries());
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let err = sinkhorn_sample(6, 1, 1, 1e-15).unwrap_err();
        assert!(matches!(err, Error::Convergence { what: "sinkhorn", .. }));
    }
}
