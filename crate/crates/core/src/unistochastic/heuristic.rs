//! Alternating projections between the unitary group and the set of matrices
//! with moduli `sqrt(B)`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{with_phases, Certificate, UnitaryWitness};
use crate::bracelet::is_bracelet;
use crate::complex::ComplexSquareMatrix;
use crate::error::Result;
use crate::matrix::BistochasticMatrix;
use crate::polar::polar_newton;
use crate::tolerance;

/// Iterations between stagnation checks.
const STAGNATION_WINDOW: usize = 100;
/// A restart is dropped when a window improves the residual by less than this factor.
const STAGNATION_RATIO: f64 = 0.99;
const POLAR_ITERS: usize = 100;
const POLAR_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeuristicConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Acceptance bound on the unitarity residual, further capped by [`tolerance::UNITARY`].
    pub tol: f64,
    /// Restart `r` draws its initial phases from stream `r` of this seed.
    pub seed: u64,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        Self { restarts: 100, max_iters: 2000, tol: 1e-8, seed: 0 }
    }
}

enum Attempt {
    Found(ComplexSquareMatrix),
    Failed(f64),
}

/// Searches for a unitary with `|U_jk|^2 = B_jk`. Returns `NotUnistochastic`
/// only on a bracelet violation and `Unknown` when the budget runs out.
pub fn heuristic_witness(b: &BistochasticMatrix, config: &HeuristicConfig) -> Result<Certificate> {
    let report = is_bracelet(b);
    if !report.holds {
        return Ok(Certificate::NotUnistochastic(report));
    }
    let accept = config.tol.min(tolerance::UNITARY);
    let batch = rayon::current_num_threads().max(1);
    let mut best = f64::INFINITY;
    let mut start = 0;
    while start < config.restarts {
        let end = (start + batch).min(config.restarts);
        let attempts: Vec<Attempt> =
            (start..end).into_par_iter().map(|r| attempt(b, config, r as u64, accept)).collect();
        for a in attempts {
            match a {
                Attempt::Found(u) => {
                    let w = UnitaryWitness::new(u, b.clone())?;
                    debug_assert!(w.unitarity_residual() <= accept);
                    return Ok(Certificate::Unistochastic(w));
                }
                Attempt::Failed(r) => best = best.min(r),
            }
        }
        start = end;
    }
    Ok(Certificate::Unknown { best_residual: best, restarts_used: config.restarts })
}

fn attempt(b: &BistochasticMatrix, config: &HeuristicConfig, restart: u64, accept: f64) -> Attempt {
    let d = b.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(restart);
    let phases: Vec<Complex64> = (0..d * d).map(|_| Complex64::from_polar(1.0, rng.gen::<f64>() * TAU)).collect();
    let mut u = with_phases(b, |r, c| phases[r * d + c]);
    let mut best = f64::INFINITY;
    let mut checkpoint = f64::INFINITY;
    for iter in 0..=config.max_iters {
        let residual = u.unitarity_residual();
        if !residual.is_finite() {
            break;
        }
        best = best.min(residual);
        if residual <= accept {
            return Attempt::Found(u);
        }
        if iter == config.max_iters {
            break;
        }
        if iter % STAGNATION_WINDOW == 0 {
            if residual > STAGNATION_RATIO * checkpoint {
                break;
            }
            checkpoint = residual;
        }
        let x = match polar_newton(&u, POLAR_ITERS, POLAR_TOLERANCE) {
            Ok(out) => out.unitary,
            Err(_) => break,
        };
        u = with_phases(b, |r, c| {
            let z = x[(r, c)];
            let n = z.norm();
            if n > 0.0 {
                z / n
            } else {
                Complex64::new(1.0, 0.0)
            }
        });
    }
    Attempt::Failed(best)
}
