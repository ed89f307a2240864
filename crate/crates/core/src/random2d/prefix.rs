//! Prefix maxima, each stored as a row-major cell index in
//! `⌈log₂(nm+1)⌉` bits. The list length follows from the payload length.

use bitvec::prelude::*;

use crate::bitkit::{ceil_log2, BitReader, BitWriter, Bits};
use crate::error::{format_err, Result};
use crate::model::{Pos, QueryRect, RankMatrix, Sidedness};

pub fn position_width(m: usize, n: usize) -> u32 {
    ceil_log2((m * n) as u64 + 1)
}

fn write_positions(m: usize, n: usize, positions: &[Pos]) -> Bits {
    let width = position_width(m, n);
    let mut out = BitWriter::new();
    for p in positions {
        out.write_bits(((p.row - 1) * n + p.col - 1) as u64, width);
    }
    out.finish()
}

fn read_positions(bits: &BitSlice<u64, Lsb0>, m: usize, n: usize) -> Result<Vec<Pos>> {
    let width = position_width(m, n) as usize;
    if !bits.len().is_multiple_of(width) {
        return format_err(format!("{} bits is not a multiple of the {width}-bit field", bits.len()));
    }
    let mut r = BitReader::new(bits);
    let mut out = Vec::with_capacity(bits.len() / width);
    while !r.is_at_end() {
        let idx = r.read_bits(width as u32)? as usize;
        if idx >= m * n {
            return format_err(format!("cell index {idx} outside a {m}x{n} array"));
        }
        out.push(Pos::new(idx / n + 1, idx % n + 1));
    }
    Ok(out)
}

/// Positions of the maxima of `[1..m] × [1..j]` that change with `j`, by
/// increasing column.
pub fn one_sided_maxima(a: &RankMatrix) -> Vec<Pos> {
    let mut out: Vec<Pos> = Vec::new();
    let mut best = None;
    for c in 0..a.cols() {
        let r = (0..a.rows()).max_by_key(|&r| a.get(r, c)).unwrap();
        if best.is_none_or(|b| a.get(r, c) > b) {
            best = Some(a.get(r, c));
            out.push(Pos::new(r + 1, c + 1));
        }
    }
    out
}

/// Cells that are the maximum of `[1..i] × [1..j]` for their own `(i, j)`,
/// by decreasing value.
pub fn two_sided_maxima(a: &RankMatrix) -> Vec<Pos> {
    let (m, n) = (a.rows(), a.cols());
    let mut prefix = vec![0u32; n];
    let mut out: Vec<(u32, Pos)> = Vec::new();
    for r in 0..m {
        let mut row_best = 0u32;
        for c in 0..n {
            let v = a.get(r, c);
            let above = if r > 0 { prefix[c] } else { 0 };
            let left = if c > 0 { row_best } else { 0 };
            let here_max = (r == 0 || v > above) && (c == 0 || v > left);
            if here_max {
                out.push((v, Pos::new(r + 1, c + 1)));
            }
            // prefix[c] becomes the max of [0..=r] x [0..=c]
            let mx = v.max(if r > 0 { above } else { 0 }).max(if c > 0 { left } else { 0 });
            prefix[c] = mx;
            row_best = mx;
        }
    }
    out.sort_by_key(|x| std::cmp::Reverse(x.0));
    out.into_iter().map(|x| x.1).collect()
}

pub fn encode_1sided(a: &RankMatrix) -> Bits {
    write_positions(a.rows(), a.cols(), &one_sided_maxima(a))
}

pub fn encode_2sided(a: &RankMatrix) -> Bits {
    write_positions(a.rows(), a.cols(), &two_sided_maxima(a))
}

#[derive(Clone, Debug)]
pub struct OneSidedIndex {
    m: usize,
    n: usize,
    positions: Vec<Pos>,
}

impl OneSidedIndex {
    pub fn decode(bits: &BitSlice<u64, Lsb0>, m: usize, n: usize) -> Result<Self> {
        let positions = read_positions(bits, m, n)?;
        if positions.first().map(|p| p.col) != Some(1) || positions.windows(2).any(|w| w[0].col >= w[1].col) {
            return format_err("prefix maxima must start in column 1 with increasing columns");
        }
        Ok(OneSidedIndex { m, n, positions })
    }

    pub fn positions(&self) -> &[Pos] {
        &self.positions
    }

    pub fn query(&self, q: &QueryRect) -> Result<Pos> {
        q.validate_for(Sidedness::One, self.m, self.n)?;
        let k = self.positions.partition_point(|p| p.col <= q.j2);
        Ok(self.positions[k - 1])
    }
}

#[derive(Clone, Debug)]
pub struct TwoSidedIndex {
    m: usize,
    n: usize,
    positions: Vec<Pos>,
}

impl TwoSidedIndex {
    pub fn decode(bits: &BitSlice<u64, Lsb0>, m: usize, n: usize) -> Result<Self> {
        let positions = read_positions(bits, m, n)?;
        if !positions.contains(&Pos::new(1, 1)) {
            return format_err("the top-left cell is always a prefix maximum");
        }
        Ok(TwoSidedIndex { m, n, positions })
    }

    pub fn positions(&self) -> &[Pos] {
        &self.positions
    }

    pub fn query(&self, q: &QueryRect) -> Result<Pos> {
        q.validate_for(Sidedness::Two, self.m, self.n)?;
        Ok(*self.positions.iter().find(|p| q.contains(**p)).expect("(1,1) is listed"))
    }
}
