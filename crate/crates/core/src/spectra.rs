//! The region `H_d` bounded by the `d`-hypocycloid, and spectra measured against it.
//!
//! The boundary is traced by
//!
//! ```text
//! x(θ) = (d-1)/d cos θ + cos((d-1)θ)/d
//! y(θ) = (d-1)/d sin θ - sin((d-1)θ)/d
//! ```
//!
//! with cusps at the `d`-th roots of unity. Along one arc `θ ∈ [0, 2π/d]` the
//! polar angle `φ(θ)` increases monotonically, so the boundary radius at a
//! given argument is found by bisection. `H_1` is the point `1` and `H_2` the
//! segment `[-1, 1]`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::circulant::CirculantVector;
use crate::error::{Error, Result};

pub type ComplexPoint = Complex64;

const BISECTION_STEPS: usize = 100;
const CUSP_ANGLE: f64 = 1e-15;
const SAMPLE_CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypocycloidRegion {
    d: usize,
}

impl HypocycloidRegion {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Range { name: "d", value: 0.0, range: ">= 1" });
        }
        Ok(Self { d })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    fn df(&self) -> f64 {
        self.d as f64
    }

    /// Angular width `2π/d` of one arc.
    pub fn arc(&self) -> f64 {
        TAU / self.df()
    }

    pub fn boundary(&self, theta: f64) -> ComplexPoint {
        let d = self.df();
        let x = (d - 1.0) / d * theta.cos() + ((d - 1.0) * theta).cos() / d;
        let y = (d - 1.0) / d * theta.sin() - ((d - 1.0) * theta).sin() / d;
        Complex64::new(x, y)
    }

    /// `sqrt(d^2 r(θ)^2) / d` in closed form.
    pub fn radius(&self, theta: f64) -> f64 {
        self.radius_numerator(theta).max(0.0).sqrt() / self.df()
    }

    /// `2 + (d-2)d + 2(d-1) cos(dθ)`, equal to `d^2 r(θ)^2`.
    fn radius_numerator(&self, theta: f64) -> f64 {
        let d = self.df();
        2.0 + (d - 2.0) * d + 2.0 * (d - 1.0) * (d * theta).cos()
    }

    /// Polar angle of the boundary point.
    pub fn angle(&self, theta: f64) -> f64 {
        self.boundary(theta).arg()
    }

    /// `dφ/dθ = 2(d-2)(d-1) sin^2(dθ/2) / (2 + (d-2)d + 2(d-1) cos dθ)`; zero for `d <= 2`.
    pub fn angular_rate(&self, theta: f64) -> f64 {
        if self.d <= 2 {
            return 0.0;
        }
        let d = self.df();
        let s = (d * theta / 2.0).sin();
        2.0 * (d - 2.0) * (d - 1.0) * s * s / self.radius_numerator(theta)
    }

    /// Smallest boundary radius, `(d-2)/d`, reached midway between cusps.
    pub fn inradius(&self) -> f64 {
        if self.d <= 2 {
            0.0
        } else {
            (self.df() - 2.0) / self.df()
        }
    }

    /// Boundary radius in direction `arg`, for `d >= 3`.
    pub fn boundary_radius_at(&self, arg: f64) -> f64 {
        assert!(self.d >= 3, "boundary radius is defined for d >= 3");
        let arc = self.arc();
        let psi = arg.rem_euclid(arc);
        if psi < CUSP_ANGLE || arc - psi < CUSP_ANGLE {
            return 1.0;
        }
        let (mut lo, mut hi) = (0.0, arc);
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if self.angle(mid) < psi {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.radius(0.5 * (lo + hi))
    }

    /// Signed distance-like excess: positive outside, at most zero inside.
    pub fn excess(&self, z: ComplexPoint) -> f64 {
        match self.d {
            1 => (z - 1.0).norm(),
            2 => z.im.abs().max(z.re.abs() - 1.0),
            _ => z.norm() - self.boundary_radius_at(z.arg()),
        }
    }

    /// Boundary-inclusive membership with slack `tolerance`.
    pub fn contains(&self, z: ComplexPoint, tolerance: f64) -> bool {
        match self.d {
            1 => (z - 1.0).norm() <= tolerance,
            2 => z.im.abs() <= tolerance && z.re.abs() <= 1.0 + tolerance,
            _ => {
                let m = z.norm();
                if m <= self.inradius() {
                    return true;
                }
                if m > 1.0 + tolerance {
                    return false;
                }
                m <= self.boundary_radius_at(z.arg()) + tolerance
            }
        }
    }

    /// Second derivative of `-log r` with respect to the polar angle,
    ///
    /// ```text
    /// -d^2 (2 + (d-2)d + 2(d-1) cos dθ) / (4 (d-2)^2 (d-1) sin^4(dθ/2)),
    /// ```
    ///
    /// which is never positive. Undefined at cusps.
    pub fn neg_log_r_second_derivative(&self, theta: f64) -> Result<f64> {
        if self.d < 3 {
            return Err(Error::Range { name: "d", value: self.df(), range: ">= 3" });
        }
        let d = self.df();
        let s = (d * theta / 2.0).sin();
        if s.abs() < 1e-12 {
            return Err(Error::CuspSingularity { theta });
        }
        Ok(-d * d * self.radius_numerator(theta) / (4.0 * (d - 2.0).powi(2) * (d - 1.0) * s.powi(4)))
    }

    /// `n` boundary samples at `θ_k = 2πk/n`, returned as `(θ, point)`.
    pub fn boundary_points(&self, n: usize) -> Vec<(f64, ComplexPoint)> {
        (0..n)
            .map(|k| {
                let theta = TAU * k as f64 / n as f64;
                (theta, self.boundary(theta))
            })
            .collect()
    }

    /// Uniform sample from `H_d`, by rejection from the unit disk for `d >= 3`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ComplexPoint {
        match self.d {
            1 => Complex64::new(1.0, 0.0),
            2 => Complex64::new(rng.gen_range(-1.0..=1.0), 0.0),
            _ => loop {
                let z = Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen::<f64>() * TAU);
                if self.contains(z, 0.0) {
                    return z;
                }
            },
        }
    }
}

/// Whether all eigenvalues of the circulant lie in `H_d`, and the largest excess.
pub fn spectrum_in_hypocycloid(c: &CirculantVector, tolerance: f64) -> (bool, f64) {
    let region = HypocycloidRegion::new(c.dim()).expect("circulant vectors are nonempty");
    points_in_hypocycloid(&region, &c.eigenvalues().values, tolerance)
}

pub fn points_in_hypocycloid(region: &HypocycloidRegion, points: &[ComplexPoint], tolerance: f64) -> (bool, f64) {
    let mut all = true;
    let mut worst = f64::NEG_INFINITY;
    for &z in points {
        all &= region.contains(z, tolerance);
        worst = worst.max(region.excess(z));
    }
    (all, worst)
}

/// Multiplies `n_pairs` pairs of random points of `H_d` and counts products
/// falling outside. Returns `(violations, worst_excess)`.
///
/// Chunk `k` of the pairs draws from stream `k` of `rng_seed`, so the result
/// does not depend on the thread count.
pub fn minkowski_closure_sample(d: usize, n_pairs: usize, rng_seed: u64, tolerance: f64) -> Result<(usize, f64)> {
    let region = HypocycloidRegion::new(d)?;
    let chunks = n_pairs.div_ceil(SAMPLE_CHUNK);
    let per_chunk: Vec<(usize, f64)> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            rng.set_stream(k as u64);
            let count = SAMPLE_CHUNK.min(n_pairs - k * SAMPLE_CHUNK);
            let mut violations = 0;
            let mut worst = f64::NEG_INFINITY;
            for _ in 0..count {
                let z = region.sample(&mut rng) * region.sample(&mut rng);
                if !region.contains(z, tolerance) {
                    violations += 1;
                }
                worst = worst.max(region.excess(z));
            }
            (violations, worst)
        })
        .collect();
    Ok(per_chunk.into_iter().fold((0, f64::NEG_INFINITY), |(v, w), (cv, cw)| (v + cv, w.max(cw))))
}

/// Distance in the parameter `θ` to the nearest cusp.
pub fn distance_to_cusp(d: usize, theta: f64) -> f64 {
    let arc = TAU / d as f64;
    let t = theta.rem_euclid(arc);
    t.min(arc - t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;
    use proptest::prelude::*;

    fn region(d: usize) -> HypocycloidRegion {
        HypocycloidRegion::new(d).unwrap()
    }

    #[test]
    fn boundary_examples() {
        let h3 = region(3);
        assert!((h3.boundary(0.0) - 1.0).norm() < 1e-15);
        assert!((h3.boundary(PI / 3.0).norm() - 1.0 / 3.0).abs() < 1e-15);
        assert!((h3.radius(PI / 3.0) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(h3.radius(0.0), 1.0);
        let h4 = region(4);
        for k in 0..4 {
            let cusp = h4.boundary(k as f64 * PI / 2.0);
            assert!((cusp - Complex64::from_polar(1.0, k as f64 * PI / 2.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn containment_examples() {
        let h3 = region(3);
        assert!(h3.contains(Complex64::new(0.0, 0.0), 0.0));
        assert!(!h3.contains(Complex64::new(-0.34, 0.0), 1e-9));
        assert!(h3.contains(Complex64::new(-1.0 / 3.0, 0.0), 1e-12));
        assert!(region(4).contains(Complex64::new(1.0, 0.0), 0.0));
        assert!(region(1).contains(Complex64::new(1.0, 0.0), 0.0));
        assert!(!region(1).contains(Complex64::new(0.9, 0.0), 1e-9));
        assert!(region(2).contains(Complex64::new(-1.0, 0.0), 0.0));
        assert!(!region(2).contains(Complex64::new(0.0, 0.1), 1e-9));
    }

    #[test]
    fn curvature_examples() {
        assert!((region(3).neg_log_r_second_derivative(PI / 3.0).unwrap() + 9.0 / 8.0).abs() < 1e-14);
        assert!(region(4).neg_log_r_second_derivative(PI / 4.0).unwrap() < 0.0);
        assert!(matches!(region(3).neg_log_r_second_derivative(0.0), Err(Error::CuspSingularity { .. })));
        assert!(region(2).neg_log_r_second_derivative(1.0).is_err());
    }

    #[test]
    fn spectra_of_distinguished_circulants() {
        for d in 2..=8 {
            let mut unit = vec![0.0; d];
            unit[1] = 1.0;
            let (inside, excess) = spectrum_in_hypocycloid(&CirculantVector::from_slice(&unit).unwrap(), 1e-9);
            assert!(inside && excess <= 1e-9, "d={d}");
            let flat = vec![1.0 / d as f64; d];
            assert!(spectrum_in_hypocycloid(&CirculantVector::from_slice(&flat).unwrap(), 1e-9).0);
        }
    }

    #[test]
    fn degenerate_minkowski_samples() {
        assert_eq!(minkowski_closure_sample(1, 100, 0, 1e-9).unwrap().0, 0);
        assert_eq!(minkowski_closure_sample(2, 1000, 0, 1e-9).unwrap().0, 0);
        assert_eq!(minkowski_closure_sample(3, 5000, 0, 1e-9).unwrap().0, 0);
    }

    #[test]
    fn boundary_points_lie_on_the_boundary() {
        for d in 3..=8 {
            let h = region(d);
            for (theta, z) in h.boundary_points(1000) {
                assert!((z.norm_sqr() - h.radius(theta).powi(2)).abs() < 1e-13);
                assert!(h.contains(z, 1e-9), "d={d} theta={theta}");
            }
        }
    }

    #[test]
    fn angular_rate_matches_finite_difference() {
        for d in 3..=8 {
            let h = region(d);
            for k in 1..1000 {
                let theta = h.arc() * k as f64 / 1000.0;
                let rate = h.angular_rate(theta);
                assert!(rate >= 0.0);
                let step = 1e-6;
                let fd = (h.angle(theta + step) - h.angle(theta - step)) / (2.0 * step);
                assert!((rate - fd).abs() < 1e-6, "d={d} theta={theta}: {rate} vs {fd}");
            }
        }
    }

    proptest! {
        #[test]
        fn rotational_symmetry(d in 3usize..=8, theta in 0.0..TAU) {
            let h = region(d);
            let rotated = h.boundary(theta) * Complex64::from_polar(1.0, h.arc());
            prop_assert!((h.boundary(theta + h.arc()) - rotated).norm() < 1e-14);
        }

        #[test]
        fn radius_matches_parametrization(d in 3usize..=8, theta in 0.0..TAU) {
            let h = region(d);
            prop_assert!((h.boundary(theta).norm_sqr() - h.radius(theta).powi(2)).abs() < 1e-13);
        }

        #[test]
        fn scaled_boundary_points(d in 3usize..=8, theta in 0.0..TAU, s in 0.0..0.999f64) {
            let h = region(d);
            let z = h.boundary(theta);
            prop_assert!(h.contains(z * s, 0.0));
            prop_assert!(!h.contains(z * (1.0 + 1e-6 + s * 1e-3), 1e-9));
        }
    }
}
