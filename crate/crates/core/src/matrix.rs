//! Validated bistochastic matrices and the distinguished members of the
//! Birkhoff polytope: identity, cyclic permutations and the flat matrix.

use std::fmt;

use crate::circulant::CirculantVector;
use crate::error::{Error, Result};
use crate::tolerance;

/// A `d x d` matrix with nonnegative entries whose rows and columns each sum to one.
///
/// Entries are stored row-major. Construction goes through [`make_bistochastic`]
/// (or [`BistochasticMatrix::from_entries`]), which clamps negatives inside the
/// tolerance band to zero and rejects anything else.
#[derive(Clone, PartialEq)]
pub struct BistochasticMatrix {
    dim: usize,
    entries: Vec<f64>,
}

/// Validates a square array of reals as a bistochastic matrix.
///
/// Entries in `[-tolerance, 0)` are clamped to zero; row and column sums must
/// lie within `tolerance * d` of one.
pub fn make_bistochastic(raw: &[Vec<f64>], tolerance: f64) -> Result<BistochasticMatrix> {
    let d = raw.len();
    let mut entries = Vec::with_capacity(d * d);
    for (row, values) in raw.iter().enumerate() {
        if values.len() != d {
            return Err(Error::Shape { row, len: values.len(), expected: d });
        }
        entries.extend_from_slice(values);
    }
    BistochasticMatrix::from_entries(d, entries, tolerance)
}

impl BistochasticMatrix {
    /// Validating constructor over a row-major buffer.
    pub fn from_entries(dim: usize, mut entries: Vec<f64>, tolerance: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Range { name: "dimension", value: 0.0, range: ">= 1" });
        }
        if entries.len() != dim * dim {
            return Err(Error::Shape { row: 0, len: entries.len(), expected: dim * dim });
        }
        for (index, v) in entries.iter_mut().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { index, value: *v });
            }
            if *v < 0.0 {
                if *v < -tolerance {
                    return Err(Error::NegativeEntry { row: index / dim, col: index % dim, value: *v });
                }
                *v = 0.0;
            }
        }
        let band = tolerance * dim as f64;
        for row in 0..dim {
            let sum: f64 = entries[row * dim..(row + 1) * dim].iter().sum();
            if (sum - 1.0).abs() > band {
                return Err(Error::RowSum { row, sum });
            }
        }
        for col in 0..dim {
            let sum: f64 = (0..dim).map(|r| entries[r * dim + col]).sum();
            if (sum - 1.0).abs() > band {
                return Err(Error::ColumnSum { col, sum });
            }
        }
        Ok(Self { dim, entries })
    }

    /// Validates with the default tolerance.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        make_bistochastic(rows, tolerance::BISTOCHASTIC)
    }

    pub fn identity(dim: usize) -> Self {
        Self::cyclic_permutation(dim, 0)
    }

    /// The van der Waerden matrix `W_d` with every entry `1/d`.
    pub fn flat(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        Self { dim, entries: vec![1.0 / dim as f64; dim * dim] }
    }

    /// `Π_d^power`, where `Π_d` has ones at `(j, j+1 mod d)`.
    pub fn cyclic_permutation(dim: usize, power: i64) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        let shift = power.rem_euclid(dim as i64) as usize;
        let mut entries = vec![0.0; dim * dim];
        for r in 0..dim {
            entries[r * dim + (r + shift) % dim] = 1.0;
        }
        Self { dim, entries }
    }

    /// Permutation matrix with ones at `(r, perm[r])`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let d = perm.len();
        let mut seen = vec![false; d];
        let mut entries = vec![0.0; d * d];
        for (r, &c) in perm.iter().enumerate() {
            if c >= d || seen[c] {
                return Err(Error::Internal(format!("{perm:?} is not a permutation")));
            }
            seen[c] = true;
            entries[r * d + c] = 1.0;
        }
        Self::from_entries(d, entries, 0.0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![0.0; d * d];
        for r in 0..d {
            for c in 0..d {
                entries[c * d + r] = self.entries[r * d + c];
            }
        }
        Self { dim: d, entries }
    }

    /// Ordinary matrix product, revalidated as bistochastic.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch { left: self.dim, right: other.dim });
        }
        let d = self.dim;
        let mut entries = vec![0.0; d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.entries[r * d + k];
                if a == 0.0 {
                    continue;
                }
                for c in 0..d {
                    entries[r * d + c] += a * other.entries[k * d + c];
                }
            }
        }
        Self::from_entries(d, entries, tolerance::BISTOCHASTIC)
    }

    /// `B v` for a column vector `v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim).map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Kronecker product with row/column index `(j, k) -> j * d2 + k`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (d1, d2) = (self.dim, other.dim);
        let d = d1 * d2;
        let mut entries = vec![0.0; d * d];
        for i1 in 0..d1 {
            for j1 in 0..d1 {
                let a = self.get(i1, j1);
                for i2 in 0..d2 {
                    for j2 in 0..d2 {
                        entries[(i1 * d2 + i2) * d + (j1 * d2 + j2)] = a * other.get(i2, j2);
                    }
                }
            }
        }
        Self { dim: d, entries }
    }

    /// `(1 - lambda) B + lambda W_d`; `lambda` must lie in `[0, 1]`.
    pub fn toward_flat(&self, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::Range { name: "lambda", value: lambda, range: "[0, 1]" });
        }
        let w = 1.0 / self.dim as f64;
        let entries = self.entries.iter().map(|b| (1.0 - lambda) * b + lambda * w).collect();
        Ok(Self { dim: self.dim, entries })
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_difference(&self, other: &Self) -> f64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Returns the first row as a circulant vector when every row is the
    /// previous one shifted right by one, within `tolerance`.
    pub fn as_circulant(&self, tolerance: f64) -> Option<CirculantVector> {
        let d = self.dim;
        for r in 1..d {
            for c in 0..d {
                if (self.get(r, c) - self.get(0, (c + d - r) % d)).abs() > tolerance {
                    return None;
                }
            }
        }
        CirculantVector::new(self.row(0).to_vec(), tolerance::BISTOCHASTIC).ok()
    }

    pub(crate) fn from_trusted(dim: usize, entries: Vec<f64>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }
}

impl fmt::Debug for BistochasticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.dim).map(|r| self.row(r))).finish()
    }
}
