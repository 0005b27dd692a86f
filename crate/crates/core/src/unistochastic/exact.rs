//! Closed-form witnesses for `d = 2` and `d = 3`.

use num_complex::Complex64;

use super::{with_phases, Certificate, UnitaryWitness};
use crate::bracelet::is_bracelet;
use crate::circulant::CirculantVector;
use crate::complex::ComplexSquareMatrix;
use crate::error::{Error, Result};
use crate::matrix::BistochasticMatrix;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `U = [[i sqrt(a), sqrt(1-a)], [sqrt(1-a), i sqrt(a)]]` with `a = B_00`.
/// Every 2x2 bistochastic matrix is unistochastic.
pub fn witness_d2(b: &BistochasticMatrix) -> Result<UnitaryWitness> {
    if b.dim() != 2 {
        return Err(Error::Dim { expected: 2, found: b.dim() });
    }
    let a = b.get(0, 0);
    let (s, c) = (a.sqrt(), (1.0 - a).max(0.0).sqrt());
    let u = ComplexSquareMatrix::new(2, vec![I * s, c.into(), c.into(), I * s])?;
    UnitaryWitness::new(u, b.clone())
}

/// Exact witness for `d = 3`, where the bracelet conditions are sufficient.
///
/// The first column is `sqrt(B_j0)`. The second column carries phases that
/// close the three segments `sqrt(B_j0 B_j1)` into a triangle, which makes it
/// orthogonal to the first. The third column takes its phases from the
/// conjugated cross product of the first two. Both orientations of the
/// triangle are tried and the better residual is kept.
pub fn witness_d3(b: &BistochasticMatrix) -> Result<Certificate> {
    if b.dim() != 3 {
        return Err(Error::Dim { expected: 3, found: b.dim() });
    }
    let report = is_bracelet(b);
    if !report.holds {
        return Ok(Certificate::NotUnistochastic(report));
    }
    let best = d3_candidates(b)?
        .into_iter()
        .min_by(|x, y| x.unitarity_residual().total_cmp(&y.unitarity_residual()))
        .expect("two candidates");
    if best.is_certified() {
        Ok(Certificate::Unistochastic(best))
    } else {
        Err(Error::Internal(format!(
            "d=3 construction failed for bracelet input {:?} (worst margin {:e}): residual {:e}, moduli error {:e}",
            b,
            report.worst_margin,
            best.unitarity_residual(),
            best.moduli_error()
        )))
    }
}

/// The two dephased candidates, one per triangle orientation.
fn d3_candidates(b: &BistochasticMatrix) -> Result<Vec<UnitaryWitness>> {
    let s: Vec<f64> = (0..3).map(|j| (b.get(j, 0) * b.get(j, 1)).sqrt()).collect();
    let cos = if s[0] > 0.0 && s[1] > 0.0 {
        ((s[2] * s[2] - s[0] * s[0] - s[1] * s[1]) / (2.0 * s[0] * s[1])).clamp(-1.0, 1.0)
    } else {
        1.0
    };
    let theta = cos.acos();
    [theta, -theta]
        .into_iter()
        .map(|t1| {
            let t2 = (-(s[0] + s[1] * Complex64::from_polar(1.0, t1))).arg();
            let second = [Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, t1), Complex64::from_polar(1.0, t2)];
            let c0: Vec<Complex64> = (0..3).map(|j| Complex64::new(b.get(j, 0).sqrt(), 0.0)).collect();
            let c1: Vec<Complex64> = (0..3).map(|j| second[j] * b.get(j, 1).sqrt()).collect();
            let cross = [
                (c0[1] * c1[2] - c0[2] * c1[1]).conj(),
                (c0[2] * c1[0] - c0[0] * c1[2]).conj(),
                (c0[0] * c1[1] - c0[1] * c1[0]).conj(),
            ];
            // rephase the third column so its first entry is real
            let shift = unit(cross[0]).conj();
            let u = with_phases(b, |r, c| match c {
                0 => Complex64::new(1.0, 0.0),
                1 => second[r],
                _ => unit(cross[r]) * shift,
            });
            UnitaryWitness::new(u, b.clone())
        })
        .collect()
}

fn unit(z: Complex64) -> Complex64 {
    let n = z.norm();
    if n > 0.0 {
        z / n
    } else {
        Complex64::new(1.0, 0.0)
    }
}

/// Circulant unitary witness for a circulant `d = 3` matrix.
///
/// With `x = arg U_11`, `y = arg U_21` read from a dephased witness, the
/// circulant with first row `(e^{2ix/3} sqrt(a), e^{i(x-y)/3} sqrt(b), e^{iy/3} sqrt(c))`
/// is unitary and has the same moduli.
pub fn witness_d3_circulant(c: &CirculantVector) -> Result<Certificate> {
    if c.dim() != 3 {
        return Err(Error::Dim { expected: 3, found: c.dim() });
    }
    let b = c.to_matrix();
    let report = is_bracelet(&b);
    if !report.holds {
        return Ok(Certificate::NotUnistochastic(report));
    }
    let al = c.alpha();
    let mut best: Option<UnitaryWitness> = None;
    for u in d3_candidates(&b)? {
        let (x, y) = (u.matrix()[(1, 1)].arg(), u.matrix()[(2, 1)].arg());
        let row = [
            Complex64::from_polar(al[0].sqrt(), 2.0 * x / 3.0),
            Complex64::from_polar(al[1].sqrt(), (x - y) / 3.0),
            Complex64::from_polar(al[2].sqrt(), y / 3.0),
        ];
        let v = UnitaryWitness::new(ComplexSquareMatrix::circulant(&row), b.clone())?;
        if v.is_certified() {
            return Ok(Certificate::Unistochastic(v));
        }
        if best.as_ref().is_none_or(|w| v.unitarity_residual() < w.unitarity_residual()) {
            best = Some(v);
        }
    }
    let best = best.expect("two candidates");
    Err(Error::Internal(format!(
        "circulant d=3 construction failed for {:?}: residual {:e}",
        al,
        best.unitarity_residual()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracelet::{random_bracelet, Axis};
    use crate::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn certified(cert: Certificate) -> UnitaryWitness {
        match cert {
            Certificate::Unistochastic(w) => {
                assert!(w.is_certified());
                w
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn d2_examples() {
        let w = witness_d2(&BistochasticMatrix::identity(2)).unwrap();
        assert_eq!(w.unitarity_residual(), 0.0);
        assert_eq!(w.matrix()[(0, 0)], I);

        let w = witness_d2(&BistochasticMatrix::flat(2)).unwrap();
        assert!(w.unitarity_residual() < 1e-15);
        for z in w.matrix().entries() {
            assert!((z.norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        }

        let w = witness_d2(&BistochasticMatrix::cyclic_permutation(2, 1)).unwrap();
        assert_eq!(w.unitarity_residual(), 0.0);
        assert_eq!(w.matrix()[(0, 1)], Complex64::new(1.0, 0.0));
        assert!(matches!(witness_d2(&BistochasticMatrix::identity(3)), Err(Error::Dim { .. })));
    }

    #[test]
    fn d3_examples() {
        match witness_d3(&fixtures::q_matrix()).unwrap() {
            Certificate::NotUnistochastic(r) => {
                let v = r.violation.unwrap();
                assert_eq!((v.axis, v.k, v.l), (Axis::Column, 0, 1));
            }
            other => panic!("{other:?}"),
        }
        let w = certified(witness_d3(&BistochasticMatrix::flat(3)).unwrap());
        assert!(w.unitarity_residual() < 1e-12);
        for perm in [[0, 1, 2], [1, 2, 0], [2, 1, 0], [0, 2, 1]] {
            let w = certified(witness_d3(&BistochasticMatrix::permutation(&perm).unwrap()).unwrap());
            assert!(w.matrix().entries().iter().all(|z| z.im.abs() < 1e-15));
        }
    }

    #[test]
    fn d3_witness_is_dephased() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = random_bracelet(3, &mut rng).unwrap();
        let w = certified(witness_d3(&b).unwrap());
        for k in 0..3 {
            assert!(w.matrix()[(0, k)].im.abs() < 1e-15 && w.matrix()[(0, k)].re >= 0.0);
            assert!(w.matrix()[(k, 0)].im.abs() < 1e-15 && w.matrix()[(k, 0)].re >= 0.0);
        }
    }

    #[test]
    fn d3_on_random_bracelet_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let b = random_bracelet(3, &mut rng).unwrap();
            certified(witness_d3(&b).unwrap());
        }
    }

    #[test]
    fn d3_circulant_examples() {
        let id = certified(witness_d3_circulant(&CirculantVector::from_slice(&[1.0, 0.0, 0.0]).unwrap()).unwrap());
        assert!(id.matrix().frobenius_distance(&ComplexSquareMatrix::identity(3)) < 1e-15);

        let third = 1.0 / 3.0;
        let w = certified(witness_d3_circulant(&CirculantVector::from_slice(&[third; 3]).unwrap()).unwrap());
        assert!(w.unitarity_residual() < 1e-10);
        assert!(w.matrix().circulant_defect() < 1e-12);

        let c = CirculantVector::from_slice(&[0.0, 0.5, 0.5]).unwrap();
        assert!(matches!(witness_d3_circulant(&c).unwrap(), Certificate::NotUnistochastic(_)));
    }

    #[test]
    fn d3_circulant_grid() {
        let n = 50;
        for i in 0..=n {
            for j in 0..=n - i {
                let al = [i as f64 / n as f64, j as f64 / n as f64, (n - i - j) as f64 / n as f64];
                let c = CirculantVector::from_slice(&al).unwrap();
                if let Certificate::Unistochastic(w) = witness_d3_circulant(&c).unwrap() {
                    assert!(w.is_certified());
                    assert!(w.matrix().circulant_defect() < 1e-12);
                }
            }
        }
    }
}
