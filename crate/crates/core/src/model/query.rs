use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A cell position, 1-based, row first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Pos {
    pub row: usize,
    pub col: usize,
}

impl Pos {
    pub const fn new(row: usize, col: usize) -> Self {
        Pos { row, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.row, self.col)
    }
}

/// How many sides of a query rectangle are free.
///
/// The classes nest: every 1-sided query is also 2-sided, every 2-sided
/// query is 3-sided, and so on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sidedness {
    /// `[1..m] × [1..j]`
    One,
    /// `[1..i] × [1..j]`
    Two,
    /// `[1..i] × [j1..j2]`
    Three,
    /// `[i1..i2] × [j1..j2]`
    Four,
}

impl Sidedness {
    pub const ALL: [Sidedness; 4] = [Sidedness::One, Sidedness::Two, Sidedness::Three, Sidedness::Four];

    /// Number of distinct queries of this class on an `m × n` array.
    pub fn query_count(self, m: usize, n: usize) -> usize {
        match self {
            Sidedness::One => n,
            Sidedness::Two => m * n,
            Sidedness::Three => m * n * (n + 1) / 2,
            Sidedness::Four => m * (m + 1) / 2 * (n * (n + 1) / 2),
        }
    }
}

impl fmt::Display for Sidedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self {
            Sidedness::One => 1,
            Sidedness::Two => 2,
            Sidedness::Three => 3,
            Sidedness::Four => 4,
        };
        write!(f, "{k}-sided")
    }
}

/// Inclusive, 1-based query rectangle `[i1..i2] × [j1..j2]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QueryRect {
    pub i1: usize,
    pub i2: usize,
    pub j1: usize,
    pub j2: usize,
}

impl QueryRect {
    pub const fn new(i1: usize, i2: usize, j1: usize, j2: usize) -> Self {
        QueryRect { i1, i2, j1, j2 }
    }

    /// The whole `m × n` array.
    pub const fn full(m: usize, n: usize) -> Self {
        QueryRect::new(1, m, 1, n)
    }

    pub fn contains(&self, p: Pos) -> bool {
        self.i1 <= p.row && p.row <= self.i2 && self.j1 <= p.col && p.col <= self.j2
    }

    pub fn height(&self) -> usize {
        self.i2 + 1 - self.i1
    }

    pub fn width(&self) -> usize {
        self.j2 + 1 - self.j1
    }

    pub fn area(&self) -> usize {
        self.height() * self.width()
    }

    /// Checks `1 ≤ i1 ≤ i2 ≤ m` and `1 ≤ j1 ≤ j2 ≤ n`.
    pub fn validate(&self, m: usize, n: usize) -> Result<()> {
        if self.i1 >= 1 && self.i1 <= self.i2 && self.i2 <= m && self.j1 >= 1 && self.j1 <= self.j2 && self.j2 <= n {
            Ok(())
        } else {
            Err(Error::Range(format!("query {self} outside a {m}x{n} array")))
        }
    }

    /// The most restrictive class this rectangle belongs to.
    pub fn sidedness(&self, m: usize) -> Sidedness {
        match (self.i1 == 1, self.j1 == 1, self.i2 == m) {
            (true, true, true) => Sidedness::One,
            (true, true, false) => Sidedness::Two,
            (true, false, _) => Sidedness::Three,
            _ => Sidedness::Four,
        }
    }

    /// Validates bounds and that the rectangle is a query of class `s`.
    pub fn validate_for(&self, s: Sidedness, m: usize, n: usize) -> Result<()> {
        self.validate(m, n)?;
        if self.sidedness(m) > s {
            return Err(Error::Domain(format!("query {self} is not {s}")));
        }
        Ok(())
    }
}

impl fmt::Display for QueryRect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}..{}]x[{}..{}]", self.i1, self.i2, self.j1, self.j2)
    }
}

/// Parses `i1,i2,j1,j2`.
impl FromStr for QueryRect {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| Error::Format(format!("bad query component {t:?}"))))
            .collect::<Result<_>>()?;
        let [i1, i2, j1, j2] = parts[..] else {
            return Err(Error::Format(format!("query must be i1,i2,j1,j2, got {s:?}")));
        };
        Ok(QueryRect::new(i1, i2, j1, j2))
    }
}
