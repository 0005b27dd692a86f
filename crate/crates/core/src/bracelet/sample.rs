//! Random members of the bracelet and factorisable sets, for fuzzing.

use rand::Rng;

use crate::bracelet::{compose_factors, is_bracelet, ElementaryFactor};
use crate::error::Result;
use crate::matrix::BistochasticMatrix;
use crate::sinkhorn::{sinkhorn_sample_with, DEFAULT_MAX_ITERS, DEFAULT_TOLERANCE};

/// Sinkhorn sample, pulled toward `W_d` by the smallest `λ` on a 0.01 grid that
/// makes it bracelet. `λ = 1` always succeeds because `W_d` is bracelet.
pub fn random_bracelet<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<BistochasticMatrix> {
    let b = sinkhorn_sample_with(d, rng, DEFAULT_MAX_ITERS, DEFAULT_TOLERANCE)?;
    if is_bracelet(&b).holds {
        return Ok(b);
    }
    for step in 1..=100 {
        let shrunk = b.toward_flat(step as f64 / 100.0)?;
        if is_bracelet(&shrunk).holds {
            return Ok(shrunk);
        }
    }
    Ok(BistochasticMatrix::flat(d))
}

pub fn random_factor<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<ElementaryFactor> {
    let i = rng.gen_range(0..d);
    let mut j = rng.gen_range(0..d - 1);
    if j >= i {
        j += 1;
    }
    ElementaryFactor::new(d, i, j, rng.gen::<f64>())
}

pub fn random_factor_sequence<R: Rng + ?Sized>(d: usize, len: usize, rng: &mut R) -> Result<Vec<ElementaryFactor>> {
    (0..len).map(|_| random_factor(d, rng)).collect()
}

/// Product of between 1 and `max_len` random elementary factors.
pub fn random_factorisable<R: Rng + ?Sized>(d: usize, max_len: usize, rng: &mut R) -> Result<BistochasticMatrix> {
    let len = rng.gen_range(1..=max_len.max(1));
    compose_factors(d, &random_factor_sequence(d, len, rng)?)
}
