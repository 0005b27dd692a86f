//! Bracelet conditions and the factorisable-matrix algebra built on them.
//!
//! For a pair of nonnegative vectors `p, q` the segments are `s_m = sqrt(p_m q_m)`.
//! The pair satisfies the bracelet condition when no segment is longer than the
//! sum of all the others, i.e. when the signed margin `Σ s_m - 2 max s_m` is
//! nonnegative. A bistochastic matrix is a bracelet matrix when every pair of
//! its columns and every pair of its rows satisfies the condition. This is
//! necessary for unistochasticity: the corresponding rows of a unitary must be
//! orthogonal, so the segments must close into a polygon.

mod factor;
mod ray;
mod sample;

pub use factor::{compose_factors, ElementaryFactor};
pub use ray::{center_ray, star_ray_scan, trotter_factorise_center_ray};
pub use sample::{random_bracelet, random_factor, random_factor_sequence, random_factorisable};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::BistochasticMatrix;
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Row,
    Column,
}

impl Axis {
    pub fn as_str(self) -> &'static str {
        match self {
            Axis::Row => "row",
            Axis::Column => "column",
        }
    }
}

/// A failed bracelet condition. Indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub axis: Axis,
    /// The pair of rows or columns compared.
    pub k: usize,
    pub l: usize,
    /// Position of the longest segment.
    pub j: usize,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BraceletReport {
    pub holds: bool,
    /// Minimum over all `d(d-1)` conditions of `Σ s - 2 max s`.
    pub worst_margin: f64,
    /// First violated condition, columns scanned before rows.
    pub violation: Option<Violation>,
}

impl BraceletReport {
    pub const CSV_HEADER: &'static str = "holds,worst_margin,axis,k,l";

    pub fn to_csv_row(&self) -> String {
        match &self.violation {
            Some(v) => format!("{},{:?},{},{},{}", self.holds, self.worst_margin, v.axis.as_str(), v.k, v.l),
            None => format!("{},{:?},,,", self.holds, self.worst_margin),
        }
    }
}

/// Margin `Σ s - 2 max s` and the argmax, without validation.
#[inline]
fn segment_margin(mut segment: impl FnMut(usize) -> f64, len: usize) -> (f64, usize) {
    let mut sum = 0.0;
    let mut max = 0.0;
    let mut arg = 0;
    for m in 0..len {
        let s = segment(m);
        sum += s;
        if s > max {
            max = s;
            arg = m;
        }
    }
    (sum - 2.0 * max, arg)
}

/// Bracelet condition for a pair of nonnegative vectors with the default slack.
pub fn bracelet_pair(p: &[f64], q: &[f64]) -> Result<(bool, f64)> {
    bracelet_pair_with(p, q, tolerance::BRACELET)
}

pub fn bracelet_pair_with(p: &[f64], q: &[f64], eps: f64) -> Result<(bool, f64)> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: q.len() });
    }
    for (index, &value) in p.iter().chain(q).enumerate() {
        if value < 0.0 || value.is_nan() {
            return Err(Error::NegativeVectorEntry { index: index % p.len().max(1), value });
        }
    }
    let (margin, _) = segment_margin(|m| (p[m] * q[m]).sqrt(), p.len());
    Ok((margin >= -eps, margin))
}

pub fn is_bracelet(b: &BistochasticMatrix) -> BraceletReport {
    is_bracelet_with(b, tolerance::BRACELET)
}

pub fn is_bracelet_with(b: &BistochasticMatrix, eps: f64) -> BraceletReport {
    let d = b.dim();
    let e = b.entries();
    let mut worst = f64::INFINITY;
    let mut violation = None;
    for axis in [Axis::Column, Axis::Row] {
        for k in 0..d {
            for l in k + 1..d {
                let (margin, j) = match axis {
                    Axis::Column => segment_margin(|m| (e[m * d + k] * e[m * d + l]).sqrt(), d),
                    Axis::Row => segment_margin(|m| (e[k * d + m] * e[l * d + m]).sqrt(), d),
                };
                worst = worst.min(margin);
                if margin < -eps && violation.is_none() {
                    violation = Some(Violation { axis, k, l, j, margin });
                }
            }
        }
    }
    if d < 2 {
        worst = 0.0;
    }
    BraceletReport { holds: violation.is_none(), worst_margin: worst, violation }
}
