use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::query::Pos;
use crate::error::{Error, Result};

/// An `m × n` grid holding each of `0..m·n` exactly once.
///
/// Only the relative order of cells matters to every query, so real-valued
/// inputs are represented by their ranks.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RankMatrix {
    m: usize,
    n: usize,
    cells: Vec<u32>,
}

fn checked_area(m: usize, n: usize) -> Result<usize> {
    if m == 0 || n == 0 {
        return Err(Error::Size(format!("dimensions must be positive, got {m}x{n}")));
    }
    let area = m.checked_mul(n).ok_or_else(|| Error::Size(format!("{m}x{n} overflows the index type")))?;
    if area > u32::MAX as usize {
        return Err(Error::Size(format!("{m}x{n} has more than 2^32 cells")));
    }
    Ok(area)
}

impl RankMatrix {
    /// Builds a matrix from row-major ranks, checking the permutation property.
    pub fn new(m: usize, n: usize, cells: Vec<u32>) -> Result<Self> {
        let area = checked_area(m, n)?;
        if cells.len() != area {
            return Err(Error::Format(format!("expected {area} cells for a {m}x{n} matrix, got {}", cells.len())));
        }
        let mut seen = vec![false; area];
        for &v in &cells {
            let v = v as usize;
            if v >= area {
                return Err(Error::Format(format!("rank {v} outside 0..{area}")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Format(format!("rank {v} appears twice")));
            }
        }
        Ok(RankMatrix { m, n, cells })
    }

    /// Ranks the given values; ties are rejected.
    pub fn from_values<T: Ord>(m: usize, n: usize, values: &[T]) -> Result<Self> {
        let area = checked_area(m, n)?;
        if values.len() != area {
            return Err(Error::Format(format!("expected {area} values, got {}", values.len())));
        }
        let mut order: Vec<usize> = (0..area).collect();
        order.sort_by(|&a, &b| values[a].cmp(&values[b]));
        if order.windows(2).any(|w| values[w[0]] == values[w[1]]) {
            return Err(Error::Domain("values must be distinct".into()));
        }
        let mut cells = vec![0u32; area];
        for (rank, &idx) in order.iter().enumerate() {
            cells[idx] = rank as u32;
        }
        Ok(RankMatrix { m, n, cells })
    }

    /// Convenience for tests and examples: rows of distinct values.
    pub fn from_rows<T: Ord + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Format("ragged rows".into()));
        }
        let flat: Vec<T> = rows.iter().flat_map(|r| r.iter().cloned()).collect();
        Self::from_values(m, n, &flat)
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Rank at 0-based `(row, col)`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.cells[row * self.n + col]
    }

    pub fn at(&self, p: Pos) -> u32 {
        self.get(p.row - 1, p.col - 1)
    }

    pub fn row(&self, row: usize) -> &[u32] {
        &self.cells[row * self.n..(row + 1) * self.n]
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    /// Parses the text format: a header line `m n`, then `m` lines of `n` ranks.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Format("empty input".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Format(format!("bad dimension {t:?}"))))
            .collect::<Result<_>>()?;
        let [m, n] = dims[..] else {
            return Err(Error::Format(format!("header must be `m n`, got {header:?}")));
        };
        checked_area(m, n)?;
        let mut cells = Vec::with_capacity(m * n);
        for (r, line) in lines.enumerate() {
            if r >= m {
                return Err(Error::Format(format!("more than {m} rows")));
            }
            let before = cells.len();
            for t in line.split_whitespace() {
                cells.push(t.parse().map_err(|_| Error::Format(format!("bad rank {t:?}")))?);
            }
            if cells.len() - before != n {
                return Err(Error::Format(format!("row {} has {} values, expected {n}", r + 1, cells.len() - before)));
            }
        }
        RankMatrix::new(m, n, cells)
    }
}

impl fmt::Display for RankMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.m, self.n)?;
        for r in 0..self.m {
            writeln!(f)?;
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for RankMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RankMatrix::parse(s)
    }
}

/// Uniformly random rank matrix: a Fisher–Yates shuffle driven by ChaCha20
/// seeded from `seed`.
pub fn gen_random_matrix(m: usize, n: usize, seed: u64) -> Result<RankMatrix> {
    let area = checked_area(m, n)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut cells: Vec<u32> = (0..area as u32).collect();
    cells.shuffle(&mut rng);
    Ok(RankMatrix { m, n, cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell() {
        for seed in [0, 1, 99] {
            let a = gen_random_matrix(1, 1, seed).unwrap();
            assert_eq!(a.cells(), &[0]);
        }
    }

    #[test]
    fn permutation_and_determinism() {
        let a = gen_random_matrix(2, 3, 7).unwrap();
        let mut v = a.cells().to_vec();
        v.sort_unstable();
        assert_eq!(v, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(a, gen_random_matrix(2, 3, 7).unwrap());
    }

    #[test]
    fn size_errors() {
        assert!(matches!(gen_random_matrix(0, 3, 1), Err(Error::Size(_))));
        assert!(matches!(gen_random_matrix(usize::MAX, 2, 1), Err(Error::Size(_))));
    }

    #[test]
    fn uniform_over_permutations() {
        // 10^5 draws of a 1x3 matrix: each of the 6 orders at 1/6 ± 0.01,
        // and a chi-square statistic below the 0.999 quantile for 5 dof.
        let draws = 100_000;
        let mut counts = std::collections::HashMap::new();
        for seed in 0..draws {
            let a = gen_random_matrix(1, 3, seed).unwrap();
            *counts.entry(a.cells().to_vec()).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 6);
        let expected = draws as f64 / 6.0;
        let mut chi2 = 0.0;
        for &c in counts.values() {
            let freq = c as f64 / draws as f64;
            assert!((freq - 1.0 / 6.0).abs() < 0.01, "frequency {freq}");
            chi2 += (c as f64 - expected).powi(2) / expected;
        }
        assert!(chi2 < 20.52, "chi2 = {chi2}");
    }

    #[test]
    fn text_roundtrip() {
        let a = gen_random_matrix(3, 4, 11).unwrap();
        assert_eq!(a.to_string().parse::<RankMatrix>().unwrap(), a);
        assert_eq!(gen_random_matrix(1, 1, 5).unwrap().to_string(), "1 1\n0");
    }

    #[test]
    fn strict_parse() {
        assert!(RankMatrix::parse("2 2\n0 1\n2 2").is_err());
        assert!(RankMatrix::parse("2 2\n0 1\n2").is_err());
        assert!(RankMatrix::parse("2 2\n0 1\n2 3\n0 1").is_err());
        assert!(RankMatrix::parse("1 2\n0 2").is_err());
        assert!(RankMatrix::parse("").is_err());
    }

    #[test]
    fn ranking_values() {
        let a = RankMatrix::from_rows(&[vec![2, 4, 1], vec![3, 5, 6]]).unwrap();
        assert_eq!(a.cells(), &[1, 3, 0, 2, 4, 5]);
        assert!(RankMatrix::from_rows(&[vec![1, 1]]).is_err());
    }
}
