//! Small dense complex matrices.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A `d x d` complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSquareMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexSquareMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::LengthMismatch { left: entries.len(), right: dim * dim });
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds the circulant matrix whose `r`-th row is `first_row` shifted right by `r`.
    pub fn circulant(first_row: &[Complex64]) -> Self {
        let d = first_row.len();
        let mut m = Self::zeros(d);
        for r in 0..d {
            for c in 0..d {
                m[(r, c)] = first_row[(c + d - r) % d];
            }
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [Complex64] {
        &mut self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)])
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.entries[r * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..d {
                    out.entries[r * d + c] += a * other.entries[k * d + c];
                }
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|z| z * s).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `||U U^† - 1||_F`.
    pub fn unitarity_residual(&self) -> f64 {
        let d = self.dim;
        let mut acc = 0.0;
        for r in 0..d {
            for c in 0..d {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    s += self.entries[r * d + k] * self.entries[c * d + k].conj();
                }
                if r == c {
                    s -= 1.0;
                }
                acc += s.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Entrywise squared moduli, row-major.
    pub fn moduli_squared(&self) -> Vec<f64> {
        self.entries.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Largest `|M_{j+l,k} - M_{j,k-l}|` over all index triples.
    pub fn circulant_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    let a = self[((j + l) % d, k)];
                    let b = self[(j, (k + d - l) % d)];
                    worst = worst.max((a - b).norm());
                }
            }
        }
        worst
    }

    /// Inverse by Gaussian elimination with partial pivoting.
    ///
    /// A pivot below `1e-14` times the largest entry magnitude is treated as singular.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.dim;
        let scale = self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 || !scale.is_finite() {
            return Err(Error::SingularInput);
        }
        let mut a = self.entries.clone();
        let mut inv = Self::identity(d).entries;
        for col in 0..d {
            let (pivot_row, pivot_abs) = (col..d)
                .map(|r| (r, a[r * d + col].norm()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_abs <= 1e-14 * scale {
                return Err(Error::SingularInput);
            }
            if pivot_row != col {
                for c in 0..d {
                    a.swap(col * d + c, pivot_row * d + c);
                    inv.swap(col * d + c, pivot_row * d + c);
                }
            }
            let p = a[col * d + col].inv();
            for c in 0..d {
                a[col * d + c] *= p;
                inv[col * d + c] *= p;
            }
            for r in 0..d {
                if r == col {
                    continue;
                }
                let factor = a[r * d + col];
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..d {
                    let ac = a[col * d + c];
                    let ic = inv[col * d + c];
                    a[r * d + c] -= factor * ac;
                    inv[r * d + c] -= factor * ic;
                }
            }
        }
        Ok(Self { dim: d, entries: inv })
    }
}

impl Index<(usize, usize)> for ComplexSquareMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexSquareMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r * self.dim + c]
    }
}
