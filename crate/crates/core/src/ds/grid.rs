//! Grid structure for random inputs.
//!
//! Cell labels grow with value: a cell of rank `z` among `N` gets the
//! smallest `x` with `2^x·(N − z) ≥ N`, capped at `λ = ⌈2 log₂ log₂ N⌉ + 1`
//! and raised to at least 1. The payload has four parts:
//!
//! - (a) the labels in unary, `1^x 0`, row-major;
//! - (b) for each label `x < λ` and each of four grids of boxes with side
//!   `r = 4^x`, shifted by `(0,0), (0,r/2), (r/2,0), (r/2,r/2)`: the rank of
//!   every label-`x` cell among the label-`x` cells of its box, in
//!   `⌈log₂ t⌉` bits where the box holds `t` of them;
//! - (c) the rank of every label-`λ` cell among all of them;
//! - (d) the answers to queries whose top label is below `λ` but that fit
//!   in no box of that label's grids, grouped by area.

use bitvec::prelude::*;

use super::label_index::LabelIndex;
use crate::bitkit::{ceil_log2, gamma_decode, gamma_encode, BitReader, BitWriter, Bits};
use crate::error::{format_err, Error, Result};
use crate::model::{Pos, QueryRect, RankMatrix, Sidedness};

/// `⌈2 log₂ log₂ N⌉ + 1`, at least 1.
pub fn grid_lambda(cells: usize) -> u8 {
    if cells < 2 {
        return 1;
    }
    let v = 2.0 * (cells as f64).log2().log2();
    let lam = (v - 1e-9).ceil() as i64 + 1;
    lam.max(1) as u8
}

/// Label of the cell with rank `z` among `cells`.
pub fn label_of(z: u32, cells: usize, lambda: u8) -> u8 {
    let (z, n) = (z as u128, cells as u128);
    debug_assert!(z < n);
    let mut x = 0u8;
    while (n - z) << x < n {
        x += 1;
    }
    x.clamp(1, lambda)
}

const SHIFTS: [(bool, bool); 4] = [(false, false), (false, true), (true, false), (true, true)];

#[derive(Clone, Copy, Debug)]
struct Grid {
    side: usize,
    shift_row: usize,
    shift_col: usize,
}

impl Grid {
    fn new(label: u8, g: usize) -> Self {
        let side = 1usize << (2 * label as u32);
        let (sr, sc) = SHIFTS[g];
        Grid { side, shift_row: if sr { side / 2 } else { 0 }, shift_col: if sc { side / 2 } else { 0 } }
    }

    fn box_of(&self, r: usize, c: usize, n: usize) -> usize {
        let box_cols = (n - 1 + self.shift_col) / self.side + 1;
        ((r + self.shift_row) / self.side) * box_cols + (c + self.shift_col) / self.side
    }

    fn fits(&self, r1: usize, r2: usize, c1: usize, c2: usize) -> bool {
        (r1 + self.shift_row) / self.side == (r2 + self.shift_row) / self.side
            && (c1 + self.shift_col) / self.side == (c2 + self.shift_col) / self.side
    }
}

/// Bits per component.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct GridSpace {
    pub labels: usize,
    pub box_ranks: usize,
    pub top_ranks: usize,
    pub fail_table: usize,
    pub directory: usize,
}

impl GridSpace {
    pub fn payload(&self) -> usize {
        self.labels + self.box_ranks + self.top_ranks + self.fail_table
    }

    pub fn total(&self) -> usize {
        self.payload() + self.directory
    }

    pub fn rows(&self) -> [(&'static str, usize); 6] {
        [
            ("labels", self.labels),
            ("box_ranks", self.box_ranks),
            ("top_ranks", self.top_ranks),
            ("fail_table", self.fail_table),
            ("directory", self.directory),
            ("total", self.total()),
        ]
    }
}

/// Failing queries of one area, sorted by key `topleft·area + (width − 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct FailGroup {
    area: usize,
    keys: Vec<u64>,
    answers: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridStructure {
    m: usize,
    n: usize,
    lambda: u8,
    labels: Vec<u8>,
    /// per cell, rank within its box in each of the four grids (label < λ)
    /// or its rank among label-λ cells (slot 0)
    ranks: Vec<[u32; 4]>,
    fails: Vec<FailGroup>,
    index: LabelIndex,
    space: GridSpace,
}

/// For each box (in box order) the label-`x` cells it holds, row-major.
fn box_members(labels: &[u8], m: usize, n: usize, x: u8, grid: Grid) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> =
        (0..m * n).filter(|&k| labels[k] == x).map(|k| (grid.box_of(k / n, k % n, n), k)).collect();
    out.sort_unstable();
    out
}

fn group_runs(members: &[(usize, usize)]) -> impl Iterator<Item = &[(usize, usize)]> {
    members.chunk_by(|a, b| a.0 == b.0)
}

impl GridStructure {
    pub fn build(a: &RankMatrix) -> Self {
        let (m, n) = (a.rows(), a.cols());
        let cells = m * n;
        let lambda = grid_lambda(cells);
        let labels: Vec<u8> = a.cells().iter().map(|&z| label_of(z, cells, lambda)).collect();
        let mut ranks = vec![[0u32; 4]; cells];
        for x in 1..lambda {
            for g in 0..4 {
                let members = box_members(&labels, m, n, x, Grid::new(x, g));
                for run in group_runs(&members) {
                    let mut by_value: Vec<usize> = run.iter().map(|p| p.1).collect();
                    by_value.sort_unstable_by_key(|&k| a.cells()[k]);
                    for (rank, k) in by_value.into_iter().enumerate() {
                        ranks[k][g] = rank as u32;
                    }
                }
            }
        }
        let mut top: Vec<usize> = (0..cells).filter(|&k| labels[k] == lambda).collect();
        top.sort_unstable_by_key(|&k| a.cells()[k]);
        for (rank, k) in top.into_iter().enumerate() {
            ranks[k][0] = rank as u32;
        }
        let fails = failing_queries(a, &labels, lambda);
        let index = LabelIndex::new(&labels, m, n);
        let mut s = GridStructure { m, n, lambda, labels, ranks, fails, index, space: GridSpace::default() };
        s.space = s.write().1;
        s
    }

    pub fn lambda(&self) -> u8 {
        self.lambda
    }

    pub fn label(&self, p: Pos) -> u8 {
        self.labels[(p.row - 1) * self.n + p.col - 1]
    }

    pub fn space(&self) -> GridSpace {
        self.space
    }

    /// Number of stored failing queries per area.
    pub fn fail_counts(&self) -> Vec<(usize, usize)> {
        self.fails.iter().map(|g| (g.area, g.keys.len())).collect()
    }

    pub fn encode(&self) -> Bits {
        self.write().0
    }

    fn write(&self) -> (Bits, GridSpace) {
        let (m, n) = (self.m, self.n);
        let mut out = BitWriter::new();
        let mut space = GridSpace { directory: self.index.bits(), ..GridSpace::default() };
        for &x in &self.labels {
            for _ in 0..x {
                out.push(true);
            }
            out.push(false);
        }
        space.labels = out.len();
        for x in 1..self.lambda {
            for g in 0..4 {
                let members = box_members(&self.labels, m, n, x, Grid::new(x, g));
                for run in group_runs(&members) {
                    let width = ceil_log2(run.len() as u64);
                    for &(_, k) in run {
                        out.write_bits(self.ranks[k][g] as u64, width);
                    }
                }
            }
        }
        space.box_ranks = out.len() - space.labels;
        let top_count = self.labels.iter().filter(|&&x| x == self.lambda).count();
        let width = ceil_log2(top_count as u64);
        for k in (0..m * n).filter(|&k| self.labels[k] == self.lambda) {
            out.write_bits(self.ranks[k][0] as u64, width);
        }
        space.top_ranks = out.len() - space.labels - space.box_ranks;
        let before = out.len();
        gamma_encode(&mut out, self.fails.len() as u64 + 1).expect("positive");
        let mut prev_area = 0;
        for group in &self.fails {
            gamma_encode(&mut out, (group.area - prev_area) as u64).expect("areas increase");
            prev_area = group.area;
            gamma_encode(&mut out, group.keys.len() as u64).expect("groups are nonempty");
            let mut prev = None;
            for &key in &group.keys {
                let delta = match prev {
                    None => key + 1,
                    Some(p) => key - p,
                };
                gamma_encode(&mut out, delta).expect("keys increase");
                prev = Some(key);
            }
            let width = ceil_log2(group.area as u64);
            for &ans in &group.answers {
                out.write_bits(ans as u64, width);
            }
        }
        space.fail_table = out.len() - before;
        (out.finish(), space)
    }

    pub fn decode(bits: &BitSlice<u64, Lsb0>, m: usize, n: usize) -> Result<Self> {
        let cells = m.checked_mul(n).filter(|&c| c > 0).ok_or_else(|| Error::Size(format!("{m}x{n}")))?;
        let lambda = grid_lambda(cells);
        let mut r = BitReader::new(bits);
        let mut labels = Vec::with_capacity(cells);
        for _ in 0..cells {
            let mut x = 0u8;
            while r.read_bit()? {
                x += 1;
                if x > lambda {
                    return format_err(format!("label above λ = {lambda}"));
                }
            }
            if x == 0 {
                return format_err("labels start at 1");
            }
            labels.push(x);
        }
        let mut ranks = vec![[0u32; 4]; cells];
        let read_rank = |r: &mut BitReader<'_>, t: usize| -> Result<u32> {
            let v = r.read_bits(ceil_log2(t as u64))?;
            if v as usize >= t {
                return format_err(format!("rank {v} among {t}"));
            }
            Ok(v as u32)
        };
        for x in 1..lambda {
            for g in 0..4 {
                let members = box_members(&labels, m, n, x, Grid::new(x, g));
                for run in group_runs(&members) {
                    for &(_, k) in run {
                        ranks[k][g] = read_rank(&mut r, run.len())?;
                    }
                }
            }
        }
        let top_count = labels.iter().filter(|&&x| x == lambda).count();
        for k in 0..cells {
            if labels[k] == lambda {
                ranks[k][0] = read_rank(&mut r, top_count)?;
            }
        }
        let groups = gamma_decode(&mut r)? - 1;
        let mut fails = Vec::new();
        let mut area = 0usize;
        for _ in 0..groups {
            area += gamma_decode(&mut r)? as usize;
            if area > cells {
                return format_err("fail-table area beyond the array");
            }
            let count = gamma_decode(&mut r)? as usize;
            if count > cells * area {
                return format_err("fail-table group too large");
            }
            let mut keys = Vec::with_capacity(count);
            let mut key = 0u64;
            for i in 0..count {
                let d = gamma_decode(&mut r)?;
                key = if i == 0 { d - 1 } else { key.checked_add(d).ok_or_else(|| Error::Format("key".into()))? };
                keys.push(key);
            }
            let width = ceil_log2(area as u64);
            let mut answers = Vec::with_capacity(count);
            for _ in 0..count {
                let v = r.read_bits(width)?;
                if v as usize >= area {
                    return format_err("fail-table answer outside its query");
                }
                answers.push(v as u32);
            }
            fails.push(FailGroup { area, keys, answers });
        }
        r.expect_end()?;
        let index = LabelIndex::new(&labels, m, n);
        let mut s = GridStructure { m, n, lambda, labels, ranks, fails, index, space: GridSpace::default() };
        s.space = s.write().1;
        Ok(s)
    }

    pub fn query(&self, q: &QueryRect) -> Result<Pos> {
        q.validate_for(Sidedness::Four, self.m, self.n)?;
        let (r1, r2, c1, c2) = (q.i1 - 1, q.i2 - 1, q.j1 - 1, q.j2 - 1);
        let x = self.index.max_label(&self.labels, r1, r2, c1, c2);
        let best_by = |slot: usize| {
            let mut best: Option<(u32, usize)> = None;
            for r in r1..=r2 {
                for c in c1..=c2 {
                    let k = r * self.n + c;
                    if self.labels[k] == x && best.is_none_or(|b| self.ranks[k][slot] > b.0) {
                        best = Some((self.ranks[k][slot], k));
                    }
                }
            }
            let k = best.expect("the top label occurs in the query").1;
            Pos::new(k / self.n + 1, k % self.n + 1)
        };
        if x == self.lambda {
            return Ok(best_by(0));
        }
        for g in 0..4 {
            if Grid::new(x, g).fits(r1, r2, c1, c2) {
                return Ok(best_by(g));
            }
        }
        let (h, w) = (r2 - r1 + 1, c2 - c1 + 1);
        let area = h * w;
        let key = ((r1 * self.n + c1) * area + w - 1) as u64;
        let group = self
            .fails
            .binary_search_by_key(&area, |g| g.area)
            .map_err(|_| Error::Internal(format!("{q} missing from the fail table")))?;
        let group = &self.fails[group];
        let i =
            group.keys.binary_search(&key).map_err(|_| Error::Internal(format!("{q} missing from the fail table")))?;
        let off = group.answers[i] as usize;
        Ok(Pos::new(q.i1 + off / w, q.j1 + off % w))
    }
}

/// Smallest label whose boxes cover the whole array in the unshifted grid.
fn covering_label(m: usize, n: usize, lambda: u8) -> u8 {
    let mut x = 0u8;
    while x < lambda && (1usize << (2 * x as u32)) < m.max(n) {
        x += 1;
    }
    x
}

/// Every query whose top label is below `λ` and that fits no box of its
/// label's grids, with its answer.
fn failing_queries(a: &RankMatrix, labels: &[u8], lambda: u8) -> Vec<FailGroup> {
    let (m, n) = (a.rows(), a.cols());
    let limit = covering_label(m, n, lambda);
    let mut found: Vec<(usize, u64, u32)> = Vec::new();
    // column maxima over rows r1..=r2 as (value, row)
    let mut col_max = vec![(0u32, 0usize); n];
    for r1 in 0..m {
        for (c, slot) in col_max.iter_mut().enumerate() {
            *slot = (a.get(r1, c), r1);
        }
        for r2 in r1..m {
            if r2 > r1 {
                for (c, slot) in col_max.iter_mut().enumerate() {
                    if a.get(r2, c) > slot.0 {
                        *slot = (a.get(r2, c), r2);
                    }
                }
            }
            let h = r2 - r1 + 1;
            let mut any = false;
            for c1 in 0..n {
                let mut best = col_max[c1];
                let mut best_col = c1;
                for c2 in c1..n {
                    if col_max[c2].0 > best.0 {
                        best = col_max[c2];
                        best_col = c2;
                    }
                    let x = labels[best.1 * n + best_col];
                    if x >= limit {
                        break;
                    }
                    any = true;
                    if (0..4).any(|g| Grid::new(x, g).fits(r1, r2, c1, c2)) {
                        continue;
                    }
                    let w = c2 - c1 + 1;
                    let area = h * w;
                    let key = ((r1 * n + c1) * area + w - 1) as u64;
                    let off = (best.1 - r1) * w + (best_col - c1);
                    found.push((area, key, off as u32));
                }
            }
            if !any {
                break;
            }
        }
    }
    found.sort_unstable();
    let mut groups: Vec<FailGroup> = Vec::new();
    for (area, key, ans) in found {
        match groups.last_mut() {
            Some(g) if g.area == area => {
                g.keys.push(key);
                g.answers.push(ans);
            }
            _ => groups.push(FailGroup { area, keys: vec![key], answers: vec![ans] }),
        }
    }
    groups
}

pub fn encode_grid(a: &RankMatrix) -> Bits {
    GridStructure::build(a).encode()
}
