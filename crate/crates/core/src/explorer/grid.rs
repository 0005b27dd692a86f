use crate::error::{Error, Result};

/// Largest grid enumerated unless the caller raises it.
pub const DEFAULT_GRID_CAP: u128 = 5_000_000;

/// `n = round(1/step)`, rejecting steps that do not divide one.
pub fn grid_divisions(step: f64) -> Result<usize> {
    if !(step.is_finite() && step > 0.0 && step <= 1.0) {
        return Err(Error::InvalidStep { step });
    }
    let n = (1.0 / step).round();
    if (n * step - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidStep { step });
    }
    Ok(n as usize)
}

/// Number of compositions of `n` into `d` nonnegative parts, `C(n+d-1, d-1)`,
/// saturating at `u128::MAX`.
pub fn composition_count(n: usize, d: usize) -> u128 {
    if d == 0 {
        return u128::from(n == 0);
    }
    let mut count: u128 = 1;
    for k in 1..d as u128 {
        count = match count.checked_mul(n as u128 + k) {
            Some(c) => c / k,
            None => return u128::MAX,
        };
    }
    count
}

/// All probability vectors of length `d` with entries in `step · Z`, in
/// lexicographic order of their integer numerators.
pub fn simplex_grid(d: usize, step: f64, cap: u128) -> Result<Vec<Vec<f64>>> {
    if d == 0 {
        return Err(Error::Range { name: "d", value: 0.0, range: ">= 1" });
    }
    let n = grid_divisions(step)?;
    let count = composition_count(n, d);
    if count > cap {
        return Err(Error::StepTooSmall { count, cap });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut parts = vec![0usize; d];
    compositions(n, 0, &mut parts, &mut |p| out.push(p.iter().map(|&k| k as f64 / n as f64).collect()));
    Ok(out)
}

fn compositions(remaining: usize, index: usize, parts: &mut [usize], emit: &mut impl FnMut(&[usize])) {
    if index + 1 == parts.len() {
        parts[index] = remaining;
        emit(parts);
        return;
    }
    for k in 0..=remaining {
        parts[index] = k;
        compositions(remaining - k, index + 1, parts, emit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(composition_count(50, 4), 23_426);
        assert_eq!(composition_count(50, 3), 1_326);
        assert_eq!(simplex_grid(4, 0.02, DEFAULT_GRID_CAP).unwrap().len(), 23_426);
        assert_eq!(simplex_grid(3, 0.5, DEFAULT_GRID_CAP).unwrap().len(), 6);
        assert_eq!(simplex_grid(1, 0.1, DEFAULT_GRID_CAP).unwrap(), vec![vec![1.0]]);
    }

    #[test]
    fn points_are_probability_vectors() {
        for p in simplex_grid(4, 0.1, DEFAULT_GRID_CAP).unwrap() {
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn step_validation() {
        assert!(matches!(grid_divisions(0.03), Err(Error::InvalidStep { .. })));
        assert!(matches!(grid_divisions(0.0), Err(Error::InvalidStep { .. })));
        assert_eq!(grid_divisions(0.02).unwrap(), 50);
        assert!(matches!(simplex_grid(8, 1e-4, DEFAULT_GRID_CAP), Err(Error::StepTooSmall { .. })));
    }
}
