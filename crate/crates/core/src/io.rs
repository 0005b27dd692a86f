//! Plain-text formats.
//!
//! * Matrix: a line with `d`, then `d` lines of `d` whitespace-separated reals.
//!   A file may hold several matrices back to back.
//! * Circulant vector: a line with `d`, then one line of `d` reals.
//! * Complex matrix: `d` lines of `d` whitespace-separated `re,im` pairs.
//! * Factor sequence: a line `n d`, then `n` lines `i j t`; the sequence
//!   composes as `factors[0] · factors[1] · …`.
//!
//! Reals are written in shortest round-trip form. Blank lines and lines
//! starting with `#` are ignored on input.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;

use crate::bracelet::ElementaryFactor;
use crate::circulant::CirculantVector;
use crate::complex::ComplexSquareMatrix;
use crate::error::{Error, Result};
use crate::matrix::BistochasticMatrix;
use crate::tolerance;

struct Reader<'a> {
    path: PathBuf,
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(path: &Path, text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Self { path: path.to_path_buf(), lines, pos: 0 }
    }

    fn done(&self) -> bool {
        self.pos >= self.lines.len()
    }

    fn error(&self, line: usize, message: impl Into<String>) -> Error {
        Error::Parse { path: self.path.clone(), line, message: message.into() }
    }

    /// Next line split into exactly `n` tokens (any count when `n` is `None`).
    fn tokens(&mut self, n: Option<usize>, what: &str) -> Result<(usize, Vec<&'a str>)> {
        let last = self.lines.last().map_or(1, |l| l.0);
        let (line, text) = *self.lines.get(self.pos).ok_or_else(|| self.error(last, format!("missing {what}")))?;
        self.pos += 1;
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if let Some(n) = n {
            if tokens.len() != n {
                return Err(self.error(line, format!("expected {n} values in {what}, found {}", tokens.len())));
            }
        }
        Ok((line, tokens))
    }

    fn parse<T: FromStr>(&self, line: usize, token: &str) -> Result<T> {
        token.parse().map_err(|_| self.error(line, format!("cannot parse {token:?}")))
    }

    fn dimension(&mut self) -> Result<usize> {
        let (line, t) = self.tokens(Some(1), "dimension line")?;
        let d: usize = self.parse(line, t[0])?;
        if d == 0 {
            return Err(self.error(line, "dimension must be positive"));
        }
        Ok(d)
    }

    fn reals(&mut self, n: usize, what: &str) -> Result<Vec<f64>> {
        let (line, tokens) = self.tokens(Some(n), what)?;
        tokens.iter().map(|t| self.parse(line, t)).collect()
    }

    fn matrix(&mut self) -> Result<BistochasticMatrix> {
        let start = self.lines.get(self.pos).map_or(1, |l| l.0);
        let d = self.dimension()?;
        let mut entries = Vec::with_capacity(d * d);
        for r in 0..d {
            entries.extend(self.reals(d, &format!("matrix row {r}"))?);
        }
        BistochasticMatrix::from_entries(d, entries, tolerance::BISTOCHASTIC)
            .map_err(|e| self.error(start, e.to_string()))
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

pub fn format_matrix(b: &BistochasticMatrix) -> String {
    let mut s = format!("{}\n", b.dim());
    for r in 0..b.dim() {
        let row: Vec<String> = b.row(r).iter().map(|x| format!("{x:?}")).collect();
        writeln!(s, "{}", row.join(" ")).unwrap();
    }
    s
}

pub fn parse_matrix(path: &Path, text: &str) -> Result<BistochasticMatrix> {
    let mut reader = Reader::new(path, text);
    let m = reader.matrix()?;
    if !reader.done() {
        return Err(reader.error(reader.lines[reader.pos].0, "trailing content after matrix"));
    }
    Ok(m)
}

/// All matrices stored back to back in `text`.
pub fn parse_matrices(path: &Path, text: &str) -> Result<Vec<BistochasticMatrix>> {
    let mut reader = Reader::new(path, text);
    let mut out = Vec::new();
    while !reader.done() {
        out.push(reader.matrix()?);
    }
    Ok(out)
}

pub fn read_matrix(path: &Path) -> Result<BistochasticMatrix> {
    parse_matrix(path, &read(path)?)
}

pub fn read_matrices(path: &Path) -> Result<Vec<BistochasticMatrix>> {
    parse_matrices(path, &read(path)?)
}

pub fn write_matrix(path: &Path, b: &BistochasticMatrix) -> Result<()> {
    Ok(fs::write(path, format_matrix(b))?)
}

pub fn write_matrices(path: &Path, matrices: &[&BistochasticMatrix]) -> Result<()> {
    Ok(fs::write(path, matrices.iter().map(|m| format_matrix(m)).collect::<String>())?)
}

pub fn format_circulant(c: &CirculantVector) -> String {
    let row: Vec<String> = c.alpha().iter().map(|x| format!("{x:?}")).collect();
    format!("{}\n{}\n", c.dim(), row.join(" "))
}

pub fn parse_circulant(path: &Path, text: &str) -> Result<CirculantVector> {
    let mut reader = Reader::new(path, text);
    let d = reader.dimension()?;
    let line = reader.lines.get(reader.pos).map_or(1, |l| l.0);
    let alpha = reader.reals(d, "circulant row")?;
    CirculantVector::new(alpha, tolerance::BISTOCHASTIC).map_err(|e| reader.error(line, e.to_string()))
}

pub fn read_circulant(path: &Path) -> Result<CirculantVector> {
    parse_circulant(path, &read(path)?)
}

pub fn write_circulant(path: &Path, c: &CirculantVector) -> Result<()> {
    Ok(fs::write(path, format_circulant(c))?)
}

pub fn format_complex_matrix(m: &ComplexSquareMatrix) -> String {
    let d = m.dim();
    let mut s = String::new();
    for r in 0..d {
        let row: Vec<String> = (0..d).map(|c| format!("{:?},{:?}", m[(r, c)].re, m[(r, c)].im)).collect();
        writeln!(s, "{}", row.join(" ")).unwrap();
    }
    s
}

pub fn parse_complex_matrix(path: &Path, text: &str) -> Result<ComplexSquareMatrix> {
    let mut reader = Reader::new(path, text);
    let d = reader.lines.len();
    if d == 0 {
        return Err(reader.error(1, "empty complex matrix"));
    }
    let mut entries = Vec::with_capacity(d * d);
    for r in 0..d {
        let (line, tokens) = reader.tokens(Some(d), &format!("complex row {r}"))?;
        for t in tokens {
            let (re, im) = t.split_once(',').ok_or_else(|| reader.error(line, format!("expected re,im in {t:?}")))?;
            entries.push(Complex64::new(reader.parse(line, re)?, reader.parse(line, im)?));
        }
    }
    ComplexSquareMatrix::new(d, entries)
}

pub fn read_complex_matrix(path: &Path) -> Result<ComplexSquareMatrix> {
    parse_complex_matrix(path, &read(path)?)
}

pub fn write_complex_matrix(path: &Path, m: &ComplexSquareMatrix) -> Result<()> {
    Ok(fs::write(path, format_complex_matrix(m))?)
}

pub fn format_factors(dim: usize, factors: &[ElementaryFactor]) -> String {
    let mut s = format!("{} {}\n", factors.len(), dim);
    for f in factors {
        let (i, j) = f.indices();
        writeln!(s, "{} {} {:?}", i, j, f.t()).unwrap();
    }
    s
}

/// Returns the dimension and the factors.
pub fn parse_factors(path: &Path, text: &str) -> Result<(usize, Vec<ElementaryFactor>)> {
    let mut reader = Reader::new(path, text);
    let (line, header) = reader.tokens(Some(2), "header `n d`")?;
    let n: usize = reader.parse(line, header[0])?;
    let d: usize = reader.parse(line, header[1])?;
    let mut factors = Vec::with_capacity(n);
    for k in 0..n {
        let (line, t) = reader.tokens(Some(3), &format!("factor {k}"))?;
        let f = ElementaryFactor::new(d, reader.parse(line, t[0])?, reader.parse(line, t[1])?, reader.parse(line, t[2])?)
            .map_err(|e| reader.error(line, e.to_string()))?;
        factors.push(f);
    }
    Ok((d, factors))
}

pub fn read_factors(path: &Path) -> Result<(usize, Vec<ElementaryFactor>)> {
    parse_factors(path, &read(path)?)
}

pub fn write_factors(path: &Path, dim: usize, factors: &[ElementaryFactor]) -> Result<()> {
    Ok(fs::write(path, format_factors(dim, factors))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn p() -> &'static Path {
        Path::new("test.txt")
    }

    #[test]
    fn matrix_round_trip() {
        let b = fixtures::b_matrix();
        assert_eq!(parse_matrix(p(), &format_matrix(&b)).unwrap(), b);
        let text = format_matrix(&fixtures::q_matrix());
        assert_eq!(text, "3\n0.0 0.5 0.5\n0.5 0.0 0.5\n0.5 0.5 0.0\n");
    }

    #[test]
    fn several_matrices() {
        let text = format_matrix(&fixtures::q_matrix()) + "\n# second\n" + &format_matrix(&fixtures::b_matrix());
        let ms = parse_matrices(p(), &text).unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[1], fixtures::b_matrix());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_matrix(p(), "2\n0.5 0.5\n0.5 x\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_matrix(p(), "2\n0.5 0.6\n0.5 0.4\n") {
            Err(Error::Parse { line: 1, message, .. }) => assert!(message.contains("row 0")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_matrix(p(), "2\n0.5 0.5\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix(p(), "2\n0.5 0.5 0.0\n0.5 0.5\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn circulant_round_trip() {
        let c = CirculantVector::from_slice(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        assert_eq!(parse_circulant(p(), &format_circulant(&c)).unwrap(), c);
        assert!(parse_circulant(p(), "3\n0.5 0.5 0.5\n").is_err());
    }

    #[test]
    fn complex_round_trip() {
        let m = ComplexSquareMatrix::from_fn(3, |r, c| Complex64::new(r as f64 + 0.1, -(c as f64) / 7.0));
        assert_eq!(parse_complex_matrix(p(), &format_complex_matrix(&m)).unwrap(), m);
        assert!(parse_complex_matrix(p(), "1,0 0\n0,0 1,0\n").is_err());
    }

    #[test]
    fn factor_round_trip() {
        let fs = vec![ElementaryFactor::new(4, 0, 3, 0.25).unwrap(), ElementaryFactor::new(4, 2, 1, 1.0).unwrap()];
        let text = format_factors(4, &fs);
        assert_eq!(text, "2 4\n0 3 0.25\n2 1 1.0\n");
        assert_eq!(parse_factors(p(), &text).unwrap(), (4, fs));
        assert!(parse_factors(p(), "1 3\n0 0 0.5\n").is_err());
    }

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("b.txt");
        write_matrix(&path, &fixtures::b_matrix()).unwrap();
        assert_eq!(read_matrix(&path).unwrap(), fixtures::b_matrix());
        assert!(matches!(read_matrix(&dir.path().join("missing")), Err(Error::Io(_))));
    }

    proptest! {
        #[test]
        fn sinkhorn_matrices_round_trip_exactly(d in 1usize..=6, seed in any::<u64>()) {
            let b = crate::sinkhorn::sinkhorn_sample(d, seed, 10_000, 1e-13).unwrap();
            prop_assert_eq!(parse_matrix(p(), &format_matrix(&b)).unwrap(), b);
        }
    }
}
