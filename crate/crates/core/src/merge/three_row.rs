//! Encoding for `3 × n` arrays with rows T, M, B.
//!
//! Payload: the three row parenthesis strings, `γ(cntM + 1)`,
//! `γ(len + 1)` and the `len`-bit arithmetic code of the TMB winner rows
//! (pre-order), then the TM and MB merge bits that the TMB structure cannot
//! deduce.
//!
//! For a TM range `I` with row maxima at columns `t` and `u`, both lie in
//! `J = [min(t,u)..max(t,u)] ⊆ I`, so the TM winner on `I` is the TM winner
//! on `J`. When the TMB answer on `J` lies in T or M it is that winner and no
//! bit is stored. MB is symmetric.

use bitvec::prelude::*;

use super::joint::JointCt;
use crate::bitkit::{arith_decode, arith_encode, gamma_decode, gamma_encode, BitReader, BitWriter, Bits, StaticModel};
use crate::cartesian::{decode_bp, encode_bp, CartesianTree};
use crate::error::{format_err, Error, Result};
use crate::model::{Pos, QueryRect, RankMatrix, Sidedness};

const T: usize = 0;
const M: usize = 1;
const B: usize = 2;

/// Extra bits per column beyond the row trees, as a function of the
/// fraction `x` of TMB winners in the middle row:
/// `2(1−x) − x log₂ x − (1−x) log₂(1−x)`.
pub fn three_row_rate(x: f64) -> f64 {
    let h = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    2.0 * (1.0 - x) + h(x) + h(1.0 - x)
}

/// Label model over the rows that can occur, with its symbol ↔ row maps.
fn label_model(n: usize, cnt_m: usize) -> (StaticModel, Vec<usize>) {
    let weights = [(n - cnt_m) as u64, 2 * cnt_m as u64, (n - cnt_m) as u64];
    let rows: Vec<usize> = (0..3).filter(|&r| weights[r] > 0).collect();
    let w: Vec<u64> = rows.iter().map(|&r| weights[r]).collect();
    (StaticModel::new(&w).expect("positive weights"), rows)
}

fn row_tree(a: &RankMatrix, r: usize) -> JointCt {
    JointCt::single_row(r, CartesianTree::from_values(a.row(r)).expect("ranks are distinct"))
}

/// Decides a TM or MB comparison from the TMB structure when possible.
fn deduce(tmb: &JointCt, u: (usize, usize), d: (usize, usize), rows: (usize, usize)) -> Option<bool> {
    let (lo, hi) = (u.1.min(d.1), u.1.max(d.1));
    let (row, _) = tmb.query(lo, hi);
    if row == rows.0 {
        Some(false)
    } else if row == rows.1 {
        Some(true)
    } else {
        None
    }
}

pub fn encode_3rows(a: &RankMatrix) -> Result<Bits> {
    if a.rows() != 3 {
        return Err(Error::Domain(format!("three-row encoding needs m = 3, got {}", a.rows())));
    }
    let n = a.cols();
    let rows: Vec<JointCt> = (0..3).map(|r| row_tree(a, r)).collect();
    let tmb = JointCt::from_matrix(a, 0, 2);
    let labels: Vec<usize> = tmb.tree().preorder().into_iter().map(|c| tmb.winner(c)).collect();
    let cnt_m = labels.iter().filter(|&&r| r == M).count();
    let (model, symbol_rows) = label_model(n, cnt_m);
    let symbols: Vec<usize> = labels.iter().map(|r| symbol_rows.iter().position(|x| x == r).unwrap()).collect();
    let code = arith_encode(&symbols, &model)?;

    let mut out = BitWriter::new();
    for r in &rows {
        out.extend(&encode_bp(r.tree()));
    }
    gamma_encode(&mut out, cnt_m as u64 + 1)?;
    gamma_encode(&mut out, code.len() as u64 + 1)?;
    out.extend(&code);
    for (up, low) in [(T, M), (M, B)] {
        JointCt::merge_with(&rows[up], &rows[low], |u, d| {
            Some(deduce(&tmb, u, d, (up, low)).unwrap_or_else(|| {
                let lower_wins = a.get(d.0, d.1) > a.get(u.0, u.1);
                out.push(lower_wins);
                lower_wins
            }))
        })
        .expect("values decide every comparison");
    }
    Ok(out.finish())
}

/// Bit accounting of a decoded three-row payload.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ThreeRowParts {
    pub cnt_m: usize,
    pub tree_bits: usize,
    pub header_bits: usize,
    pub label_bits: usize,
    pub tm_bits: usize,
    pub mb_bits: usize,
}

impl ThreeRowParts {
    /// Everything beyond the three row trees.
    pub fn extra_bits(&self) -> usize {
        self.header_bits + self.label_bits + self.tm_bits + self.mb_bits
    }
}

#[derive(Clone, Debug)]
pub struct ThreeRowIndex {
    n: usize,
    rows: Vec<JointCt>,
    tm: JointCt,
    mb: JointCt,
    tmb: JointCt,
    parts: ThreeRowParts,
}

impl ThreeRowIndex {
    pub fn decode(bits: &BitSlice<u64, Lsb0>, n: usize) -> Result<Self> {
        if n == 0 {
            return format_err("empty array");
        }
        let mut r = BitReader::new(bits);
        let mut rows = Vec::with_capacity(3);
        for k in 0..3 {
            rows.push(JointCt::single_row(k, decode_bp(r.take(2 * n)?, n)?));
        }
        let tree_bits = r.position();
        let cnt_m = gamma_decode(&mut r)? - 1;
        if cnt_m > n as u64 {
            return format_err(format!("{cnt_m} middle-row winners among {n} columns"));
        }
        let cnt_m = cnt_m as usize;
        let code_len = gamma_decode(&mut r)? - 1;
        let header_bits = r.position() - tree_bits;
        let code = r.take(usize::try_from(code_len).map_err(|_| Error::Format("code length".into()))?)?;
        let (model, symbol_rows) = label_model(n, cnt_m);
        let symbols = arith_decode(code, n, &model)?;
        if arith_encode(&symbols, &model)? != *code {
            return format_err("label code is not in canonical form");
        }
        let labels: Vec<usize> = symbols.iter().map(|&s| symbol_rows[s]).collect();
        if labels.iter().filter(|&&x| x == M).count() != cnt_m {
            return format_err("middle-row count disagrees with the labels");
        }
        let mut winner = vec![0u32; n];
        let mut next = labels.iter();
        let tree = CartesianTree::from_splits(n, |lo, hi| {
            let row = *next.next().unwrap();
            let col = rows[row].tree().lca(lo, hi - 1);
            winner[col] = row as u32;
            col
        });
        let tmb = JointCt::from_parts(0, 2, tree, winner);

        let mut merged = Vec::with_capacity(2);
        let mut counts = [0usize; 2];
        for (k, (up, low)) in [(T, M), (M, B)].into_iter().enumerate() {
            let start = r.position();
            let joint = JointCt::merge_with(&rows[up], &rows[low], |u, d| {
                deduce(&tmb, u, d, (up, low)).or_else(|| r.read_bit().ok())
            });
            match joint {
                Some(j) => merged.push(j),
                None => return format_err("merge bits run out"),
            }
            counts[k] = r.position() - start;
        }
        r.expect_end()?;
        let mb = merged.pop().unwrap();
        let tm = merged.pop().unwrap();
        let parts = ThreeRowParts {
            cnt_m,
            tree_bits,
            header_bits,
            label_bits: code.len(),
            tm_bits: counts[0],
            mb_bits: counts[1],
        };
        Ok(ThreeRowIndex { n, rows, tm, mb, tmb, parts })
    }

    pub fn parts(&self) -> ThreeRowParts {
        self.parts
    }

    pub fn structure(&self, top: usize, bottom: usize) -> &JointCt {
        match (top, bottom) {
            (t, b) if t == b => &self.rows[t],
            (0, 1) => &self.tm,
            (1, 2) => &self.mb,
            _ => &self.tmb,
        }
    }

    pub fn query(&self, q: &QueryRect) -> Result<Pos> {
        q.validate_for(Sidedness::Four, 3, self.n)?;
        let (row, col) = self.structure(q.i1 - 1, q.i2 - 1).query(q.j1 - 1, q.j2 - 1);
        Ok(Pos::new(row + 1, col + 1))
    }
}
