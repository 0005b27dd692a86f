//! Circulant unitary witnesses for circulant bracelet matrices at `d = 4`.
//!
//! For first row `(a, b, c, d)` the candidate is the circulant with first row
//! `(sqrt(a), e^{iα} sqrt(b), e^{iβ} sqrt(c), e^{iγ} sqrt(d))`. Unitarity reduces
//! to two complex equations in the three phases. With `η = -sqrt(ac/(bd))`
//! and `f(β) = arccos(η cos β)`, choosing `α - γ = f(β)` solves the first; the
//! second then asks for a root of
//!
//! ```text
//! G(β) = |sqrt(ab) + e^{i(β+f)} sqrt(cd)| - |sqrt(bc) + e^{i(β-f)} sqrt(ad)|
//! ```
//!
//! which changes sign on `[π/2, 3π/2]` whenever the matrix is bracelet and
//! `ac <= bd`. Given the root, `e^{2iγ} = -(e^{-if} sqrt(ab) + e^{iβ} sqrt(cd)) /
//! (e^{i(f-β)} sqrt(bc) + sqrt(ad))`. Inputs with `ac > bd` are cyclically
//! shifted to `(d, a, b, c)`, which swaps the two products; the witness is
//! shifted back at the end.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use super::{Certificate, UnitaryWitness};
use crate::bracelet::is_bracelet;
use crate::circulant::CirculantVector;
use crate::complex::ComplexSquareMatrix;
use crate::error::{Error, Result};
use crate::tolerance;

const ROOT_TOLERANCE: f64 = 1e-12;
const BISECTION_STEPS: usize = 200;
const DEGENERATE: f64 = 1e-12;

/// Phases of the circulant witness for the (possibly shifted) first row.
#[derive(Debug, Clone, Serialize)]
pub struct CirculantPhaseSolution {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub eta: f64,
    pub beta_bracket: (f64, f64),
    /// Whether the row was rotated to `(d, a, b, c)` to get `ac <= bd`.
    pub shifted: bool,
    /// `|G(β)|` at the returned root.
    pub root_residual: f64,
    /// Modulus of the right-hand side of the `e^{2iγ}` equation; `None` when
    /// numerator and denominator both vanish and any `γ` works.
    pub rhs_modulus: Option<f64>,
}

#[derive(Clone, Copy)]
struct Row {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Row {
    fn f(&self, eta: f64, beta: f64) -> f64 {
        (eta * beta.cos()).clamp(-1.0, 1.0).acos()
    }

    fn g(&self, eta: f64, beta: f64) -> f64 {
        let f = self.f(eta, beta);
        let Row { a, b, c, d } = *self;
        let left = (a * b).sqrt() + Complex64::from_polar((c * d).sqrt(), beta + f);
        let right = (b * c).sqrt() + Complex64::from_polar((a * d).sqrt(), beta - f);
        left.norm() - right.norm()
    }

    /// Numerator and denominator of the `e^{2iγ}` equation.
    fn gamma_terms(&self, f: f64, beta: f64) -> (Complex64, Complex64) {
        let Row { a, b, c, d } = *self;
        let num = -(Complex64::from_polar((a * b).sqrt(), -f) + Complex64::from_polar((c * d).sqrt(), beta));
        let den = Complex64::from_polar((b * c).sqrt(), f - beta) + (a * d).sqrt();
        (num, den)
    }
}

/// Solves for the phases of a circulant witness. The input must be bracelet
/// with `ac` and `bd` not both zero.
pub fn solve_d4_phases(c: &CirculantVector) -> Result<CirculantPhaseSolution> {
    if c.dim() != 4 {
        return Err(Error::Dim { expected: 4, found: c.dim() });
    }
    let al = c.alpha();
    let mut row = Row { a: al[0], b: al[1], c: al[2], d: al[3] };
    let shifted = row.a * row.c > row.b * row.d;
    if shifted {
        row = Row { a: row.d, b: row.a, c: row.b, d: row.c };
    }
    if row.b * row.d == 0.0 {
        return Err(Error::Internal(format!("no phase equation for {al:?}: ac = bd = 0")));
    }
    let eta = -(row.a * row.c / (row.b * row.d)).sqrt().min(1.0);
    let bracket = (FRAC_PI_2, 3.0 * FRAC_PI_2);
    let (g_lo, g_hi) = (row.g(eta, bracket.0), row.g(eta, bracket.1));
    if g_lo > ROOT_TOLERANCE || g_hi < -ROOT_TOLERANCE {
        return Err(Error::Internal(format!(
            "root bracket has no sign change for {al:?}: G(pi/2) = {g_lo:e}, G(3pi/2) = {g_hi:e}"
        )));
    }
    let beta = if g_lo.abs() <= ROOT_TOLERANCE {
        bracket.0
    } else if g_hi.abs() <= ROOT_TOLERANCE {
        bracket.1
    } else {
        let (mut lo, mut hi) = bracket;
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if row.g(eta, mid) <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };

    // the denominator can vanish at an isolated β; nudge inside the bracket
    let mut chosen = None;
    for nudge in [0.0, 10.0 * ROOT_TOLERANCE, -10.0 * ROOT_TOLERANCE] {
        let beta = (beta + nudge).clamp(bracket.0, bracket.1);
        let f = row.f(eta, beta);
        let (num, den) = row.gamma_terms(f, beta);
        if den.norm() >= DEGENERATE {
            chosen = Some((beta, f, 0.5 * (num / den).arg(), Some((num / den).norm())));
            break;
        }
        if num.norm() < DEGENERATE {
            chosen = Some((beta, f, 0.0, None));
            break;
        }
    }
    let (beta, f, gamma, rhs_modulus) = match chosen {
        Some(x) => x,
        None => {
            let (_, den) = row.gamma_terms(row.f(eta, beta), beta);
            return Err(Error::DegenerateDenominator { modulus: den.norm() });
        }
    };
    Ok(CirculantPhaseSolution {
        alpha: (gamma + f).rem_euclid(TAU),
        beta,
        gamma: gamma.rem_euclid(TAU),
        eta,
        beta_bracket: bracket,
        shifted,
        root_residual: row.g(eta, beta).abs(),
        rhs_modulus,
    })
}

/// Exact verdict for a circulant `d = 4` matrix; bracelet circulants always
/// get a circulant unitary witness.
pub fn witness_d4_circulant(c: &CirculantVector) -> Result<Certificate> {
    if c.dim() != 4 {
        return Err(Error::Dim { expected: 4, found: c.dim() });
    }
    let target = c.to_matrix();
    let report = is_bracelet(&target);
    if !report.holds {
        return Ok(Certificate::NotUnistochastic(report));
    }
    let al = c.alpha();
    let moduli: Vec<f64> = al.iter().map(|x| x.sqrt()).collect();
    if al[0] * al[2] == 0.0 && al[1] * al[3] == 0.0 {
        // a bracelet circulant with both products zero is a permutation
        let w = UnitaryWitness::new(ComplexSquareMatrix::circulant(&real(&moduli)), target)?;
        return certified(w, al);
    }
    let sol = solve_d4_phases(c)?;
    let mut best: Option<UnitaryWitness> = None;
    // e^{2iγ} fixes γ only up to π
    for gamma in [sol.gamma, sol.gamma + PI] {
        let alpha = gamma + (sol.alpha - sol.gamma);
        let phases = [0.0, alpha, sol.beta, gamma];
        let mut row: Vec<f64> = al.to_vec();
        if sol.shifted {
            row.rotate_right(1);
        }
        let mut first: Vec<Complex64> =
            row.iter().zip(phases).map(|(x, p)| Complex64::from_polar(x.sqrt(), p)).collect();
        if sol.shifted {
            first.rotate_left(1);
        }
        let w = UnitaryWitness::new(ComplexSquareMatrix::circulant(&first), target.clone())?;
        if best.as_ref().is_none_or(|b| w.unitarity_residual() < b.unitarity_residual()) {
            best = Some(w);
        }
    }
    certified(best.expect("two branches"), al)
}

fn real(x: &[f64]) -> Vec<Complex64> {
    x.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}

fn certified(w: UnitaryWitness, al: &[f64]) -> Result<Certificate> {
    if w.is_certified_with(tolerance::UNITARY, tolerance::WITNESS) {
        Ok(Certificate::Unistochastic(w))
    } else {
        Err(Error::Internal(format!(
            "circulant d=4 construction failed for bracelet input {al:?}: residual {:e}, moduli error {:e}",
            w.unitarity_residual(),
            w.moduli_error()
        )))
    }
}
