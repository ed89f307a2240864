//! Two structures for `2 × n` arrays.
//!
//! `Seven`: both row parenthesis strings, the parenthesis string of the
//! column-maximum tree, and one bit per column that is 1 when the bottom
//! row holds the column maximum (`7n` bits). `Five`: both row strings and
//! the `n` merge bits (`5n` bits); a two-row query replays the merge from
//! the root until the deciding comparison falls inside the query.

use bitvec::prelude::*;

use crate::bitkit::{BitReader, BitWriter, Bits};
use crate::cartesian::{encode_bp, BpIndex, CartesianTree};
use crate::error::{format_err, Error, Result};
use crate::merge::JointCt;
use crate::model::{Pos, QueryRect, RankMatrix, Sidedness};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TwoRowVariant {
    Seven,
    Five,
}

impl TwoRowVariant {
    pub fn payload_bits(self, n: usize) -> usize {
        match self {
            TwoRowVariant::Seven => 7 * n,
            TwoRowVariant::Five => 5 * n,
        }
    }
}

fn check_rows(a: &RankMatrix) -> Result<()> {
    if a.rows() != 2 {
        return Err(Error::Domain(format!("2 x n structure needs m = 2, got {}", a.rows())));
    }
    Ok(())
}

pub fn encode_2xn(a: &RankMatrix, variant: TwoRowVariant) -> Result<Bits> {
    check_rows(a)?;
    let n = a.cols();
    let rows: Vec<JointCt> = (0..2)
        .map(|r| JointCt::single_row(r, CartesianTree::from_values(a.row(r)).expect("ranks are distinct")))
        .collect();
    let mut out = BitWriter::new();
    out.extend(&encode_bp(rows[0].tree()));
    out.extend(&encode_bp(rows[1].tree()));
    match variant {
        TwoRowVariant::Seven => {
            out.extend(&encode_bp(JointCt::from_matrix(a, 0, 1).tree()));
            for c in 0..n {
                out.push(a.get(1, c) > a.get(0, c));
            }
        }
        TwoRowVariant::Five => {
            let (_, bits) = JointCt::merge_build(a, &rows[0], &rows[1]);
            out.extend(&bits);
        }
    }
    Ok(out.finish())
}

#[derive(Clone, Debug)]
pub struct TwoRowIndex {
    variant: TwoRowVariant,
    n: usize,
    rows: [BpIndex; 2],
    joint: Option<BpIndex>,
    /// indicator bits (`Seven`) or merge bits (`Five`)
    extra: Bits,
}

impl TwoRowIndex {
    pub fn decode(bits: &BitSlice<u64, Lsb0>, n: usize, variant: TwoRowVariant) -> Result<Self> {
        if n == 0 || bits.len() != variant.payload_bits(n) {
            return format_err(format!("expected {} bits, got {}", variant.payload_bits(n), bits.len()));
        }
        let mut r = BitReader::new(bits);
        let bp = |r: &mut BitReader<'_>| -> Result<BpIndex> {
            let s = r.take(2 * n)?;
            crate::cartesian::decode_bp(s, n)?;
            Ok(BpIndex::new(s.iter().by_vals().collect()))
        };
        let rows = [bp(&mut r)?, bp(&mut r)?];
        let joint = match variant {
            TwoRowVariant::Seven => Some(bp(&mut r)?),
            TwoRowVariant::Five => None,
        };
        let extra: Bits = r.take(n)?.iter().by_vals().collect();
        r.expect_end()?;
        Ok(TwoRowIndex { variant, n, rows, joint, extra })
    }

    /// Directory size in bits beyond the payload.
    pub fn overhead_bits(&self) -> usize {
        self.rows.iter().chain(self.joint.iter()).map(BpIndex::overhead_bits).sum()
    }

    /// `(row, col)` of the maximum of both rows over `l..=r`, 0-based.
    fn both_rows(&self, l: usize, r: usize) -> (usize, usize) {
        match &self.joint {
            Some(joint) => {
                let c = joint.rmq(l, r);
                (self.extra[c] as usize, c)
            }
            None => {
                let (mut lo, mut hi, mut b) = (0, self.n, 0);
                loop {
                    let bottom = self.extra[b];
                    let row = bottom as usize;
                    let c = self.rows[row].rmq(lo, hi - 1);
                    if c < l {
                        b += 1 + (c - lo);
                        lo = c + 1;
                    } else if c > r {
                        b += 1;
                        hi = c;
                    } else {
                        return (row, c);
                    }
                }
            }
        }
    }

    pub fn variant(&self) -> TwoRowVariant {
        self.variant
    }

    pub fn query(&self, q: &QueryRect) -> Result<Pos> {
        q.validate_for(Sidedness::Four, 2, self.n)?;
        let (l, r) = (q.j1 - 1, q.j2 - 1);
        let (row, col) = if q.i1 == q.i2 { (q.i1 - 1, self.rows[q.i1 - 1].rmq(l, r)) } else { self.both_rows(l, r) };
        Ok(Pos::new(row + 1, col + 1))
    }
}
