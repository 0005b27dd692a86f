use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bracelet::{is_bracelet, random_bracelet};
use crate::error::{Error, Result};
use crate::io;
use crate::matrix::BistochasticMatrix;

pub const DEFAULT_FUZZ_SEED: u64 = 7;

/// Outcome of a search for bracelet pairs whose product is not bracelet.
#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    pub violation_count: usize,
    /// Files written for each violation, when an output directory was given.
    pub violations: Vec<PathBuf>,
    /// Smallest bracelet margin over all products.
    pub worst_margin: f64,
    pub wall_time_secs: f64,
}

struct Found {
    trial: usize,
    a: BistochasticMatrix,
    b: BistochasticMatrix,
}

/// Multiplies `trials` pairs of random bracelet matrices and checks each
/// product. Trial `k` draws from stream `k` of `seed`. Violations are written
/// to `out_dir` as the two factors followed by their product.
pub fn fuzz_monoid_conjecture(d: usize, trials: usize, seed: u64, out_dir: Option<&Path>) -> Result<FuzzReport> {
    if d < 3 {
        return Err(Error::Range { name: "d", value: d as f64, range: ">= 3" });
    }
    let start = Instant::now();
    let results: Vec<(f64, Option<Found>)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let a = random_bracelet(d, &mut rng)?;
            let b = random_bracelet(d, &mut rng)?;
            let report = is_bracelet(&a.multiply(&b)?);
            Ok((report.worst_margin, (!report.holds).then_some(Found { trial, a, b })))
        })
        .collect::<Result<_>>()?;
    let worst_margin = results.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let found: Vec<Found> = results.into_iter().filter_map(|r| r.1).collect();
    let mut violations = Vec::new();
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        for f in &found {
            let path = dir.join(format!("violation_d{d}_seed{seed}_trial{}.txt", f.trial));
            write_violation(&path, &f.a, &f.b)?;
            violations.push(path);
        }
    }
    Ok(FuzzReport {
        d,
        trials,
        seed,
        violation_count: found.len(),
        violations,
        worst_margin,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

/// Writes `a`, `b` and `a · b` in the matrix format.
pub fn write_violation(path: &Path, a: &BistochasticMatrix, b: &BistochasticMatrix) -> Result<()> {
    io::write_matrices(path, &[a, b, &a.multiply(b)?])
}

/// Reloads a violation file and recomputes the product from the two factors.
/// Returns whether the product indeed fails the bracelet conditions.
pub fn revalidate_violation(path: &Path) -> Result<bool> {
    let ms = io::read_matrices(path)?;
    if ms.len() < 2 {
        return Err(Error::Parse { path: path.to_path_buf(), line: 1, message: "expected two matrices".into() });
    }
    Ok(!is_bracelet(&ms[0].multiply(&ms[1])?).holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn empty_run() {
        let r = fuzz_monoid_conjecture(3, 0, 1, None).unwrap();
        assert_eq!((r.trials, r.violation_count), (0, 0));
        assert!(r.violations.is_empty());
    }

    #[test]
    fn small_run_is_deterministic() {
        let a = fuzz_monoid_conjecture(4, 200, 3, None).unwrap();
        let b = fuzz_monoid_conjecture(4, 200, 3, None).unwrap();
        assert_eq!(a.worst_margin, b.worst_margin);
        assert!(a.violation_count <= a.trials);
    }

    #[test]
    fn small_dimensions_are_rejected() {
        assert!(fuzz_monoid_conjecture(2, 10, 0, None).is_err());
    }

    #[test]
    fn violation_files_revalidate() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.txt");
        write_violation(&path, &BistochasticMatrix::identity(3), &fixtures::q_matrix()).unwrap();
        assert!(revalidate_violation(&path).unwrap());
        write_violation(&path, &BistochasticMatrix::identity(3), &BistochasticMatrix::flat(3)).unwrap();
        assert!(!revalidate_violation(&path).unwrap());
    }
}
