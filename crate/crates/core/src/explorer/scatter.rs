use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::grid::{simplex_grid, DEFAULT_GRID_CAP};
use crate::bracelet::is_bracelet;
use crate::circulant::CirculantVector;
use crate::error::Result;
use crate::spectra::{ComplexPoint, HypocycloidRegion};
use crate::tolerance;

/// Nominal number of boundary samples.
pub const BOUNDARY_SAMPLES: usize = 1000;

/// Eigenvalues of every bracelet circulant on a simplex grid, with the
/// hypocycloid boundary they are measured against.
#[derive(Debug, Clone)]
pub struct EigenvalueScatter {
    pub d: usize,
    pub step: f64,
    pub grid_points: usize,
    pub bracelet_points: usize,
    pub eigenvalues: Vec<ComplexPoint>,
    /// `(θ, point)` samples; the count is rounded up to a multiple of `2d`
    /// so that every cusp and every innermost point is sampled exactly.
    pub boundary: Vec<(f64, ComplexPoint)>,
    /// Eigenvalues failing `contains` at the requested tolerance.
    pub failures: usize,
    pub worst_excess: f64,
    /// `d` outside `{3, 4}`.
    pub experimental: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScatterSummary {
    pub d: usize,
    pub step: f64,
    pub grid_points: usize,
    pub bracelet_points: usize,
    pub eigenvalues: usize,
    pub failures: usize,
    pub worst_excess: f64,
    pub experimental: bool,
}

pub fn boundary_sample_count(d: usize) -> usize {
    let m = 2 * d;
    BOUNDARY_SAMPLES.div_ceil(m) * m
}

pub fn eigenvalue_scatter(d: usize, step: f64, tolerance: f64) -> Result<EigenvalueScatter> {
    let region = HypocycloidRegion::new(d)?;
    let grid = simplex_grid(d, step, DEFAULT_GRID_CAP)?;
    let per_point: Vec<Option<Vec<ComplexPoint>>> = grid
        .par_iter()
        .map(|alpha| {
            let c = CirculantVector::new(alpha.clone(), tolerance::BISTOCHASTIC).expect("grid points are probability vectors");
            is_bracelet(&c.to_matrix()).holds.then(|| c.eigenvalues().values)
        })
        .collect();
    let bracelet_points = per_point.iter().flatten().count();
    let eigenvalues: Vec<ComplexPoint> = per_point.into_iter().flatten().flatten().collect();
    let mut failures = 0;
    let mut worst_excess = f64::NEG_INFINITY;
    for &z in &eigenvalues {
        if !region.contains(z, tolerance) {
            failures += 1;
        }
        worst_excess = worst_excess.max(region.excess(z));
    }
    Ok(EigenvalueScatter {
        d,
        step,
        grid_points: grid.len(),
        bracelet_points,
        eigenvalues,
        boundary: region.boundary_points(boundary_sample_count(d)),
        failures,
        worst_excess,
        experimental: !(3..=4).contains(&d),
    })
}

impl EigenvalueScatter {
    pub fn summary(&self) -> ScatterSummary {
        ScatterSummary {
            d: self.d,
            step: self.step,
            grid_points: self.grid_points,
            bracelet_points: self.bracelet_points,
            eigenvalues: self.eigenvalues.len(),
            failures: self.failures,
            worst_excess: self.worst_excess,
            experimental: self.experimental,
        }
    }

    pub fn points_csv(&self) -> String {
        let mut s = String::from("re,im\n");
        for z in &self.eigenvalues {
            writeln!(s, "{:?},{:?}", z.re, z.im).unwrap();
        }
        s
    }

    pub fn boundary_csv(&self) -> String {
        let mut s = String::from("re,im,theta\n");
        for (theta, z) in &self.boundary {
            writeln!(s, "{:?},{:?},{:?}", z.re, z.im, theta).unwrap();
        }
        s
    }

    /// Writes `<prefix>_points.csv` and `<prefix>_boundary.csv`.
    pub fn write(&self, prefix: &Path) -> Result<(PathBuf, PathBuf)> {
        let points = with_suffix(prefix, "_points.csv");
        let boundary = with_suffix(prefix, "_boundary.csv");
        fs::write(&points, self.points_csv())?;
        fs::write(&boundary, self.boundary_csv())?;
        Ok((points, boundary))
    }
}

pub(crate) fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn sample_counts() {
        assert_eq!(boundary_sample_count(3), 1002);
        assert_eq!(boundary_sample_count(4), 1000);
    }

    #[test]
    fn coarse_grid_contains_quarter() {
        let s = eigenvalue_scatter(3, 0.25, 1e-9).unwrap();
        assert_eq!(s.failures, 0);
        // α = (½, ¼, ¼) has b_1 = ¼
        assert!(s.eigenvalues.iter().any(|z| (z - Complex64::new(0.25, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn csv_headers() {
        let s = eigenvalue_scatter(3, 0.5, 1e-9).unwrap();
        assert!(s.points_csv().starts_with("re,im\n1.0,0.0\n"));
        assert!(s.boundary_csv().starts_with("re,im,theta\n1.0,0.0,0.0\n"));
        assert!(!s.experimental);
    }
}
