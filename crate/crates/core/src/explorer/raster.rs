use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::scatter::with_suffix;
use crate::bracelet::is_bracelet;
use crate::circulant::CirculantVector;
use crate::error::{Error, Result};
use crate::matrix::BistochasticMatrix;
use crate::tolerance;
use crate::unistochastic::{certify_exact, certify_with, witness_d4_circulant, Certificate, HeuristicConfig};

const COLLINEAR: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PixelClass {
    /// Some entry is negative: not a bistochastic matrix.
    Outside,
    BistoOnly,
    /// Bracelet, but no witness was produced.
    Bracelet,
    Unistochastic,
}

impl PixelClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PixelClass::Outside => "OUTSIDE",
            PixelClass::BistoOnly => "BISTO_ONLY",
            PixelClass::Bracelet => "BRACELET",
            PixelClass::Unistochastic => "UNISTOCHASTIC",
        }
    }

    /// White, red, yellow, green.
    pub fn rgb(self) -> [u8; 3] {
        match self {
            PixelClass::Outside => [255, 255, 255],
            PixelClass::BistoOnly => [255, 0, 0],
            PixelClass::Bracelet => [255, 255, 0],
            PixelClass::Unistochastic => [0, 160, 0],
        }
    }

    /// Whether the bracelet conditions hold.
    pub fn is_bracelet(self) -> bool {
        matches!(self, PixelClass::Bracelet | PixelClass::Unistochastic)
    }
}

/// A plane through three bistochastic matrices.
#[derive(Debug, Clone)]
pub struct CrossSectionSpec {
    /// `anchors[0]` sits at the centre pixel.
    pub anchors: [BistochasticMatrix; 3],
    pub resolution: usize,
    /// Half-width of the chart in Frobenius units.
    pub extent: f64,
    /// Heuristic budget per pixel where no exact construction applies; `None`
    /// leaves such pixels as [`PixelClass::Bracelet`].
    pub heuristic: Option<HeuristicConfig>,
}

/// A classified square image, row-major from the top-left pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    pub resolution: usize,
    pub classes: Vec<PixelClass>,
    /// Chart coordinates `(s, t)` per pixel.
    pub coords: Vec<(f64, f64)>,
}

impl Raster {
    /// Class at column `i`, row `j`.
    pub fn class(&self, i: usize, j: usize) -> PixelClass {
        self.classes[j * self.resolution + i]
    }

    pub fn count(&self, class: PixelClass) -> usize {
        self.classes.iter().filter(|&&c| c == class).count()
    }

    pub fn to_ppm(&self) -> Vec<u8> {
        self.ppm_with(|k| self.classes[k].rgb())
    }

    fn ppm_with(&self, color: impl Fn(usize) -> [u8; 3]) -> Vec<u8> {
        let n = self.resolution;
        let mut out = format!("P6\n{n} {n}\n255\n").into_bytes();
        out.reserve(3 * n * n);
        for k in 0..n * n {
            out.extend_from_slice(&color(k));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("s,t,class\n");
        for (k, (x, y)) in self.coords.iter().enumerate() {
            writeln!(s, "{x:?},{y:?},{}", self.classes[k].as_str()).unwrap();
        }
        s
    }

    /// Writes `<prefix>.ppm` and `<prefix>.csv`.
    pub fn write(&self, prefix: &Path) -> Result<(PathBuf, PathBuf)> {
        write_pair(prefix, &self.to_ppm(), &self.to_csv())
    }

    /// Pixels classified as bracelet whose lattice segment toward `center`
    /// contains a pixel that is not.
    pub fn star_shape_violations(&self, center: (usize, usize)) -> Vec<(usize, usize)> {
        let n = self.resolution;
        (0..n * n)
            .into_par_iter()
            .filter_map(|k| {
                let (i, j) = (k % n, k / n);
                if !self.class(i, j).is_bracelet() {
                    return None;
                }
                let bad = lattice_segment((i, j), center).into_iter().any(|(a, b)| !self.class(a, b).is_bracelet());
                bad.then_some((i, j))
            })
            .collect()
    }
}

fn write_pair(prefix: &Path, ppm: &[u8], csv: &str) -> Result<(PathBuf, PathBuf)> {
    let (p, c) = (with_suffix(prefix, ".ppm"), with_suffix(prefix, ".csv"));
    fs::write(&p, ppm)?;
    fs::write(&c, csv)?;
    Ok((p, c))
}

/// Pixels lying exactly on the segment between two pixels, endpoints included.
pub fn lattice_segment(from: (usize, usize), to: (usize, usize)) -> Vec<(usize, usize)> {
    if from == to {
        return vec![from];
    }
    let dx = to.0 as i64 - from.0 as i64;
    let dy = to.1 as i64 - from.1 as i64;
    let g = gcd(dx.unsigned_abs(), dy.unsigned_abs()) as i64;
    (0..=g)
        .map(|k| ((from.0 as i64 + k * dx / g) as usize, (from.1 as i64 + k * dy / g) as usize))
        .collect()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Orthonormal basis of `span(P1 - P0, P2 - P0)` in the entrywise inner product.
fn frame(anchors: &[BistochasticMatrix; 3]) -> Result<(Vec<f64>, Vec<f64>)> {
    let d = anchors[0].dim();
    if anchors.iter().any(|a| a.dim() != d) {
        return Err(Error::DimMismatch { left: d, right: anchors.iter().map(|a| a.dim()).find(|&x| x != d).unwrap() });
    }
    let diff = |k: usize| -> Vec<f64> { anchors[k].entries().iter().zip(anchors[0].entries()).map(|(a, b)| a - b).collect() };
    let dot = |x: &[f64], y: &[f64]| -> f64 { x.iter().zip(y).map(|(a, b)| a * b).sum() };
    let mut u = diff(1);
    let nu = dot(&u, &u).sqrt();
    if nu < COLLINEAR {
        return Err(Error::CollinearAnchors);
    }
    u.iter_mut().for_each(|x| *x /= nu);
    let mut v = diff(2);
    let proj = dot(&v, &u);
    v.iter_mut().zip(&u).for_each(|(x, y)| *x -= proj * y);
    let nv = dot(&v, &v).sqrt();
    if nv < COLLINEAR {
        return Err(Error::CollinearAnchors);
    }
    v.iter_mut().for_each(|x| *x /= nv);
    Ok((u, v))
}

/// Classifies every pixel of the chart `P0 + s u + t v`, with
/// `s_i = (i - N/2) 2E/N` and `t_j = (N/2 - j) 2E/N`.
pub fn raster_cross_section(spec: &CrossSectionSpec) -> Result<Raster> {
    let (u, v) = frame(&spec.anchors)?;
    let n = spec.resolution;
    if n == 0 {
        return Err(Error::Range { name: "resolution", value: 0.0, range: ">= 1" });
    }
    let p0 = spec.anchors[0].entries();
    let d = spec.anchors[0].dim();
    let scale = 2.0 * spec.extent / n as f64;
    let half = (n / 2) as f64;
    let coords: Vec<(f64, f64)> =
        (0..n * n).map(|k| (((k % n) as f64 - half) * scale, (half - (k / n) as f64) * scale)).collect();
    let classes = coords
        .par_iter()
        .map(|&(s, t)| {
            let entries: Vec<f64> = (0..d * d).map(|e| p0[e] + s * u[e] + t * v[e]).collect();
            classify(d, entries, spec.heuristic.as_ref())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Raster { resolution: n, classes, coords })
}

/// Pixel coordinates of `anchors[0]` in a cross-section raster.
pub fn center_pixel(resolution: usize) -> (usize, usize) {
    (resolution / 2, resolution / 2)
}

fn classify(d: usize, entries: Vec<f64>, heuristic: Option<&HeuristicConfig>) -> Result<PixelClass> {
    if entries.iter().any(|&x| x < -tolerance::BISTOCHASTIC) {
        return Ok(PixelClass::Outside);
    }
    let b = BistochasticMatrix::from_entries(d, entries, tolerance::BISTOCHASTIC)?;
    if !is_bracelet(&b).holds {
        return Ok(PixelClass::BistoOnly);
    }
    let cert = match certify_exact(&b)? {
        Some(c) => Some(c),
        None => heuristic.map(|h| certify_with(&b, h)).transpose()?,
    };
    Ok(match cert {
        Some(Certificate::Unistochastic(_)) => PixelClass::Unistochastic,
        _ => PixelClass::Bracelet,
    })
}

/// A plane through three points of the circulant tetrahedron, each given by
/// its coordinates `α` over `(1, Π, Π², Π³)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TetraPlane {
    pub points: [[f64; 4]; 3],
}

impl TetraPlane {
    pub fn new(a: &[f64], b: &[f64], c: &[f64]) -> Result<Self> {
        let mut points = [[0.0; 4]; 3];
        for (k, p) in [a, b, c].into_iter().enumerate() {
            if p.len() != 4 {
                return Err(Error::InvalidPlane(format!("point {k} has {} coordinates, expected 4", p.len())));
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidPlane(format!("point {k} is not finite")));
            }
            points[k].copy_from_slice(p);
        }
        let e1: Vec<f64> = (0..4).map(|i| points[1][i] - points[0][i]).collect();
        let e2: Vec<f64> = (0..4).map(|i| points[2][i] - points[0][i]).collect();
        let dot = |x: &[f64], y: &[f64]| -> f64 { x.iter().zip(y).map(|(p, q)| p * q).sum() };
        let gram = dot(&e1, &e1) * dot(&e2, &e2) - dot(&e1, &e2).powi(2);
        if gram < COLLINEAR * COLLINEAR {
            return Err(Error::InvalidPlane("points are collinear".into()));
        }
        Ok(Self { points })
    }

    /// `a + s (b - a) + t (c - a)`.
    pub fn at(&self, s: f64, t: f64) -> [f64; 4] {
        let [a, b, c] = &self.points;
        std::array::from_fn(|k| a[k] + s * (b[k] - a[k]) + t * (c[k] - a[k]))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TetraSlice {
    pub raster: Raster,
    pub alphas: Vec<[f64; 4]>,
    /// Pixels on the edge `1–Π²` or `Π–Π³`.
    pub edges: Vec<bool>,
}

impl TetraSlice {
    pub fn to_ppm(&self) -> Vec<u8> {
        self.raster.ppm_with(|k| {
            let class = self.raster.classes[k];
            if self.edges[k] && class != PixelClass::Outside {
                [0, 0, 0]
            } else {
                class.rgb()
            }
        })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("s,t,a0,a1,a2,a3,class,edge\n");
        for (k, (x, y)) in self.raster.coords.iter().enumerate() {
            let a = self.alphas[k];
            writeln!(
                s,
                "{x:?},{y:?},{:?},{:?},{:?},{:?},{},{}",
                a[0],
                a[1],
                a[2],
                a[3],
                self.raster.classes[k].as_str(),
                self.edges[k]
            )
            .unwrap();
        }
        s
    }

    pub fn write(&self, prefix: &Path) -> Result<(PathBuf, PathBuf)> {
        write_pair(prefix, &self.to_ppm(), &self.to_csv())
    }
}

/// Samples the plane at `s = i/(N-1)`, `t = (N-1-j)/(N-1)` and classifies each
/// point with the exact circulant construction.
pub fn raster_tetrahedron_slice(plane: &TetraPlane, resolution: usize) -> Result<TetraSlice> {
    if resolution < 2 {
        return Err(Error::Range { name: "resolution", value: resolution as f64, range: ">= 2" });
    }
    let n = resolution;
    let last = (n - 1) as f64;
    // half a pixel, measured in α coordinates
    let [a, b, c] = &plane.points;
    let pixel = (0..4).map(|k| (b[k] - a[k]).abs() + (c[k] - a[k]).abs()).fold(0.0, f64::max) / last;
    let edge_band = 0.5 * pixel + 1e-12;
    let coords: Vec<(f64, f64)> = (0..n * n).map(|k| ((k % n) as f64 / last, (last - (k / n) as f64) / last)).collect();
    let alphas: Vec<[f64; 4]> = coords.iter().map(|&(s, t)| plane.at(s, t)).collect();
    let classes = alphas
        .par_iter()
        .map(|alpha| {
            if alpha.iter().any(|&x| x < -tolerance::BISTOCHASTIC) {
                return Ok(PixelClass::Outside);
            }
            let c = match CirculantVector::new(alpha.to_vec(), tolerance::BISTOCHASTIC) {
                Ok(c) => c,
                Err(_) => return Ok(PixelClass::Outside),
            };
            Ok(match witness_d4_circulant(&c)? {
                Certificate::Unistochastic(_) => PixelClass::Unistochastic,
                Certificate::NotUnistochastic(_) => PixelClass::BistoOnly,
                Certificate::Unknown { .. } => PixelClass::Bracelet,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let edges = alphas
        .iter()
        .map(|a| (a[1].abs() + a[3].abs()) <= edge_band || (a[0].abs() + a[2].abs()) <= edge_band)
        .collect();
    Ok(TetraSlice { raster: Raster { resolution: n, classes, coords }, alphas, edges })
}
