//! The ray `C_d(λ) = (1-λ) 1_d + λ W_d` from the identity to the flat matrix,
//! its product approximation by elementary factors, and star-shape scans.
//!
//! Writing `G_d = W_d - 1_d`, one has `C_d(λ) = exp(t G_d)` with
//! `t = -ln(1-λ)`, and
//!
//! ```text
//! G_d = (d-1) / ((d-2) d) · Σ_p (G_{d-1} ⊕ 0)_p
//! ```
//!
//! where `p` runs over the `d` positions of the zero block. Each summand
//! exponentiates to a `(d-1)`-dimensional ray embedded next to a `1`, so a
//! Lie–Trotter product of those embedded rays converges to `C_d(λ)`. The
//! recursion bottoms out at `d = 2`, where `C_2(λ)` is a single T-transform
//! with `t' = 1 - λ/2`. Only the outermost level is split into `steps` slices;
//! the embedded rays it calls are already close to the identity and get a
//! single slice each, which keeps the factor count at `steps · d!/2` with the
//! same first-order error.

use crate::bracelet::{is_bracelet, BraceletReport, ElementaryFactor};
use crate::error::{Error, Result};
use crate::matrix::BistochasticMatrix;

pub fn center_ray(d: usize, lambda: f64) -> Result<BistochasticMatrix> {
    if d == 0 {
        return Err(Error::Range { name: "dimension", value: 0.0, range: ">= 1" });
    }
    BistochasticMatrix::identity(d).toward_flat(lambda)
}

/// Elementary factors whose left-to-right product approximates `C_d(λ)`.
///
/// `λ = 1` is rejected because the generator time `-ln(1-λ)` diverges.
pub fn trotter_factorise_center_ray(d: usize, lambda: f64, steps: usize) -> Result<Vec<ElementaryFactor>> {
    if d == 0 {
        return Err(Error::Range { name: "dimension", value: 0.0, range: ">= 1" });
    }
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::Range { name: "lambda", value: lambda, range: "[0, 1)" });
    }
    if steps == 0 {
        return Err(Error::Range { name: "steps", value: 0.0, range: ">= 1" });
    }
    let time = -(1.0 - lambda).ln();
    let coords: Vec<usize> = (0..d).collect();
    let mut out = Vec::new();
    push_ray(d, &coords, time, steps, &mut out)?;
    Ok(out)
}

/// Appends factors approximating `exp(time · G)` acting on `coords`.
fn push_ray(d: usize, coords: &[usize], time: f64, steps: usize, out: &mut Vec<ElementaryFactor>) -> Result<()> {
    match coords.len() {
        0 | 1 => Ok(()),
        2 => {
            // exp(time G_2) = C_2(1 - e^{-time}) = E(t') with t' = (1 + e^{-time}) / 2
            let t = 0.5 * (1.0 + (-time).exp());
            out.push(ElementaryFactor::new(d, coords[0], coords[1], t)?);
            Ok(())
        }
        m => {
            let weight = (m - 1) as f64 / ((m - 2) * m) as f64;
            let slice = time * weight / steps as f64;
            let mut sub = Vec::with_capacity(m - 1);
            for _ in 0..steps {
                for p in 0..m {
                    sub.clear();
                    sub.extend(coords.iter().enumerate().filter(|&(q, _)| q != p).map(|(_, &c)| c));
                    push_ray(d, &sub, slice, 1, out)?;
                }
            }
            Ok(())
        }
    }
}

/// Bracelet reports along `B'(λ) = (1-λ) B + λ W_d`.
pub fn star_ray_scan(b: &BistochasticMatrix, lambdas: &[f64]) -> Result<Vec<BraceletReport>> {
    lambdas.iter().map(|&l| Ok(is_bracelet(&b.toward_flat(l)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracelet::compose_factors;
    use crate::fixtures;

    fn error(d: usize, lambda: f64, steps: usize) -> f64 {
        let factors = trotter_factorise_center_ray(d, lambda, steps).unwrap();
        compose_factors(d, &factors).unwrap().frobenius_distance(&center_ray(d, lambda).unwrap())
    }

    #[test]
    fn ray_endpoints() {
        assert_eq!(center_ray(4, 0.0).unwrap(), BistochasticMatrix::identity(4));
        assert!(center_ray(4, 1.0).unwrap().max_abs_difference(&BistochasticMatrix::flat(4)) < 1e-16);
        assert_eq!(center_ray(2, 0.5).unwrap().to_rows(), vec![vec![0.75, 0.25], vec![0.25, 0.75]]);
        assert!(matches!(center_ray(3, 1.2), Err(Error::Range { .. })));
    }

    #[test]
    fn two_dimensional_ray_is_one_exact_factor() {
        for lambda in [0.0, 0.1, 0.5, 0.9, 0.999] {
            let f = trotter_factorise_center_ray(2, lambda, 1).unwrap();
            assert_eq!(f.len(), 1);
            assert!((f[0].t() - (1.0 - lambda / 2.0)).abs() < 1e-15);
            assert!(error(2, lambda, 1) < 1e-15);
        }
    }

    #[test]
    fn refinement_reduces_error() {
        assert!(error(3, 0.5, 64) < error(3, 0.5, 8));
    }

    #[test]
    fn deep_ray_composition_is_bracelet() {
        let factors = trotter_factorise_center_ray(4, 0.9, 256).unwrap();
        assert!(is_bracelet(&compose_factors(4, &factors).unwrap()).holds);
    }

    #[test]
    fn lambda_one_is_rejected() {
        assert!(matches!(trotter_factorise_center_ray(3, 1.0, 8), Err(Error::Range { .. })));
        assert!(matches!(trotter_factorise_center_ray(3, 0.5, 0), Err(Error::Range { .. })));
    }

    #[test]
    fn factor_count() {
        assert_eq!(trotter_factorise_center_ray(1, 0.5, 4).unwrap().len(), 0);
        assert_eq!(trotter_factorise_center_ray(3, 0.5, 4).unwrap().len(), 4 * 3);
        assert_eq!(trotter_factorise_center_ray(4, 0.5, 4).unwrap().len(), 4 * 4 * 3);
    }

    #[test]
    fn star_scan_on_q() {
        let q = fixtures::q_matrix();
        let reports = star_ray_scan(&q, &[0.0, 1.0]).unwrap();
        assert!(!reports[0].holds);
        assert!(reports[1].holds);
    }
}
