use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::BistochasticMatrix;
use crate::tolerance;

/// A T-transform: identity except on the `{i, j}` block, which is
/// `[[t, 1-t], [1-t, t]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElementaryFactor {
    dim: usize,
    i: usize,
    j: usize,
    t: f64,
}

impl ElementaryFactor {
    pub fn new(dim: usize, i: usize, j: usize, t: f64) -> Result<Self> {
        if i == j || i >= dim || j >= dim {
            return Err(Error::Internal(format!("invalid index pair ({i}, {j}) for dimension {dim}")));
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Range { name: "t", value: t, range: "[0, 1]" });
        }
        Ok(Self { dim, i, j, t })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn to_matrix(&self) -> BistochasticMatrix {
        let mut m = BistochasticMatrix::identity(self.dim).entries().to_vec();
        self.apply_right(self.dim, &mut m);
        BistochasticMatrix::from_trusted(self.dim, m)
    }

    /// `M <- M E` on a row-major buffer: mixes columns `i` and `j`.
    pub fn apply_right(&self, d: usize, m: &mut [f64]) {
        let (t, s) = (self.t, 1.0 - self.t);
        for r in 0..d {
            let a = m[r * d + self.i];
            let b = m[r * d + self.j];
            m[r * d + self.i] = t * a + s * b;
            m[r * d + self.j] = s * a + t * b;
        }
    }

    /// `v <- E v`.
    pub fn apply_vector(&self, v: &mut [f64]) {
        let (a, b) = (v[self.i], v[self.j]);
        v[self.i] = self.t * a + (1.0 - self.t) * b;
        v[self.j] = (1.0 - self.t) * a + self.t * b;
    }
}

/// Left-to-right product `factors[0] · factors[1] · …`; empty gives `1_d`.
pub fn compose_factors(dim: usize, factors: &[ElementaryFactor]) -> Result<BistochasticMatrix> {
    let mut m = BistochasticMatrix::identity(dim).entries().to_vec();
    for f in factors {
        if f.dim != dim {
            return Err(Error::DimMismatch { left: dim, right: f.dim });
        }
        f.apply_right(dim, &mut m);
    }
    BistochasticMatrix::from_entries(dim, m, tolerance::BISTOCHASTIC)
}
