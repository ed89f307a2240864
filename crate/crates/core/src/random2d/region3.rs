//! Regions for 3-sided queries `[1..i] × [j1..j2]`.
//!
//! Only cells that are the maximum of their column prefix can answer. For
//! such a cell `p = (i, j)` the region extends down to just above the next
//! bigger cell in column `j`. To the right, columns `l = j+1, …` are scanned
//! with a row bound `B`: the topmost bigger cell `(k, l)` with `k ≤ B` is a
//! delimiter; if `k ≤ i` no query reaching column `l` is answered by `p` and
//! the scan stops, otherwise `B` drops to `k − 1`. A scan that runs off the
//! array ends with the virtual delimiter `(1, n+1)` (or `(1, 0)` on the left).
//!
//! Payload, per column `j`: `γ(pairs + 1)`, then per pair `γ(i)`, a side bit
//! (1 = right), `γ(k)` and `γ(|j − l|)`.

use bitvec::prelude::*;

use crate::bitkit::{gamma_decode, gamma_encode, BitReader, BitWriter, Bits};
use crate::error::{format_err, Error, Result};
use crate::model::{Pos, QueryRect, RankMatrix, Sidedness};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Pair {
    /// row of the answering cell (1-based)
    row: usize,
    right: bool,
    /// delimiter row (1-based)
    k: usize,
    /// delimiter column, 0 and n+1 are virtual
    l: usize,
}

fn side_scan(a: &RankMatrix, row: usize, j: usize, bottom: usize, right: bool) -> Vec<Pair> {
    let (m, n) = (a.rows(), a.cols());
    let v = a.get(row - 1, j - 1);
    let mut bound = bottom - 1;
    let mut out = Vec::new();
    let cols: Box<dyn Iterator<Item = usize>> = if right { Box::new(j + 1..=n) } else { Box::new((1..j).rev()) };
    for l in cols {
        let Some(k) = (1..=bound.min(m)).find(|&k| a.get(k - 1, l - 1) > v) else { continue };
        out.push(Pair { row, right, k, l });
        if k <= row {
            return out;
        }
        bound = k - 1;
    }
    out.push(Pair { row, right, k: 1, l: if right { n + 1 } else { 0 } });
    out
}

/// All pairs of column `j` (1-based), grouped by answering cell from the top.
fn column_pairs(a: &RankMatrix, j: usize) -> Vec<Pair> {
    let m = a.rows();
    let mut maxima = Vec::new();
    for r in 1..=m {
        if maxima.last().is_none_or(|&p: &usize| a.get(r - 1, j - 1) > a.get(p - 1, j - 1)) {
            maxima.push(r);
        }
    }
    let mut out = Vec::new();
    for (t, &row) in maxima.iter().enumerate() {
        let bottom = maxima.get(t + 1).copied().unwrap_or(m + 1);
        out.extend(side_scan(a, row, j, bottom, true));
        out.extend(side_scan(a, row, j, bottom, false));
    }
    out
}

pub fn encode_3sided(a: &RankMatrix) -> Bits {
    let mut out = BitWriter::new();
    for j in 1..=a.cols() {
        let pairs = column_pairs(a, j);
        gamma_encode(&mut out, pairs.len() as u64 + 1).expect("positive");
        for p in pairs {
            gamma_encode(&mut out, p.row as u64).expect("positive");
            out.push(p.right);
            gamma_encode(&mut out, p.k as u64).expect("positive");
            gamma_encode(&mut out, p.l.abs_diff(j) as u64).expect("positive");
        }
    }
    out.finish()
}

/// One answering cell with its bottom limit and side delimiters.
#[derive(Clone, Debug)]
struct Cell {
    row: usize,
    bottom: usize,
    delimiters: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct Region3Index {
    m: usize,
    n: usize,
    /// per column, answering cells from the top
    columns: Vec<Vec<Cell>>,
}

impl Region3Index {
    pub fn decode(bits: &BitSlice<u64, Lsb0>, m: usize, n: usize) -> Result<Self> {
        let mut r = BitReader::new(bits);
        let mut columns = Vec::with_capacity(n);
        let limit = |v: u64, max: usize, what: &str| -> Result<usize> {
            if v as usize > max {
                Err(Error::Format(format!("{what} {v} out of range")))
            } else {
                Ok(v as usize)
            }
        };
        for j in 1..=n {
            let count = gamma_decode(&mut r)? - 1;
            let count = limit(count, 2 * m * (n + 1), "pair count")?;
            let mut cells: Vec<Cell> = Vec::new();
            for _ in 0..count {
                let row = limit(gamma_decode(&mut r)?, m, "row")?;
                let right = r.read_bit()?;
                let k = limit(gamma_decode(&mut r)?, m, "delimiter row")?;
                let dist = gamma_decode(&mut r)? as usize;
                let l =
                    if right { j + dist } else { j.checked_sub(dist).ok_or_else(|| Error::Format("column".into()))? };
                if l > n + 1 {
                    return format_err("delimiter column beyond the frame");
                }
                match cells.last_mut() {
                    Some(c) if c.row == row => c.delimiters.push((k, l)),
                    Some(c) if c.row > row => return format_err("answering cells out of order"),
                    _ => cells.push(Cell { row, bottom: m + 1, delimiters: vec![(k, l)] }),
                }
            }
            for t in 1..cells.len() {
                cells[t - 1].bottom = cells[t].row;
            }
            columns.push(cells);
        }
        r.expect_end()?;
        Ok(Region3Index { m, n, columns })
    }

    /// Cells of column `j` (1-based) that answer some query.
    pub fn answering_rows(&self, j: usize) -> Vec<usize> {
        self.columns[j - 1].iter().map(|c| c.row).collect()
    }

    pub fn query(&self, q: &QueryRect) -> Result<Pos> {
        q.validate_for(Sidedness::Three, self.m, self.n)?;
        for j in q.j1..=q.j2 {
            for cell in &self.columns[j - 1] {
                if cell.row > q.i2 {
                    break;
                }
                if cell.bottom > q.i2 && !cell.delimiters.iter().any(|&(k, l)| k <= q.i2 && (q.j1..=q.j2).contains(&l))
                {
                    return Ok(Pos::new(cell.row, j));
                }
            }
        }
        Err(Error::Internal(format!("no region contains {q}")))
    }
}
