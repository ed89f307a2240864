//! Stacked encoding: for each row `k`, its parenthesis string, then the
//! merge bits for every row range `[i..k]`, `i` ascending.

use bitvec::prelude::*;

use super::joint::JointCt;
use crate::bitkit::{BitReader, BitWriter, Bits};
use crate::cartesian::{decode_bp, encode_bp, CartesianTree};
use crate::error::{Error, Result};
use crate::model::{Pos, QueryRect, RankMatrix, Sidedness};

/// Payload length `n·m(m+3)/2`.
pub fn stacked_bits(m: usize, n: usize) -> usize {
    n * m * (m + 3) / 2
}

pub fn encode_stacked(a: &RankMatrix) -> Bits {
    let (m, n) = (a.rows(), a.cols());
    let mut out = BitWriter::new();
    // joints[i] covers rows i..=k after level k
    let mut joints: Vec<JointCt> = Vec::with_capacity(m);
    for k in 0..m {
        let row = JointCt::single_row(k, CartesianTree::from_values(a.row(k)).expect("ranks are distinct"));
        out.extend(&encode_bp(row.tree()));
        for joint in joints.iter_mut() {
            let (merged, bits) = JointCt::merge_build(a, joint, &row);
            out.extend(&bits);
            *joint = merged;
        }
        joints.push(row);
    }
    debug_assert_eq!(out.len(), stacked_bits(m, n));
    out.finish()
}

/// Every row range's joint tree, rebuilt from a stacked payload.
#[derive(Clone, Debug)]
pub struct StackedIndex {
    m: usize,
    n: usize,
    /// `joints[i][k − i]` covers rows `i..=k`
    joints: Vec<Vec<JointCt>>,
}

impl StackedIndex {
    pub fn decode(bits: &BitSlice<u64, Lsb0>, m: usize, n: usize) -> Result<Self> {
        if bits.len() != stacked_bits(m, n) {
            return Err(Error::Format(format!(
                "stacked payload for {m}x{n} has {} bits, got {}",
                stacked_bits(m, n),
                bits.len()
            )));
        }
        let mut r = BitReader::new(bits);
        let mut joints: Vec<Vec<JointCt>> = vec![Vec::new(); m];
        for k in 0..m {
            let row = JointCt::single_row(k, decode_bp(r.take(2 * n)?, n)?);
            for i in 0..k {
                let merged = JointCt::merge_decode(joints[i].last().unwrap(), &row, r.take(n)?)?;
                joints[i].push(merged);
            }
            joints[k].push(row);
        }
        r.expect_end()?;
        Ok(StackedIndex { m, n, joints })
    }

    pub fn joint(&self, top: usize, bottom: usize) -> &JointCt {
        &self.joints[top][bottom - top]
    }

    pub fn query(&self, q: &QueryRect) -> Result<Pos> {
        q.validate_for(Sidedness::Four, self.m, self.n)?;
        let (row, col) = self.joint(q.i1 - 1, q.i2 - 1).query(q.j1 - 1, q.j2 - 1);
        Ok(Pos::new(row + 1, col + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{answer_signature, enumerate_queries, gen_random_matrix};
    use itertools::Itertools;

    fn check(a: &RankMatrix) {
        let bits = encode_stacked(a);
        assert_eq!(bits.len(), stacked_bits(a.rows(), a.cols()));
        let idx = StackedIndex::decode(&bits, a.rows(), a.cols()).unwrap();
        let got: Vec<Pos> =
            enumerate_queries(a.rows(), a.cols(), Sidedness::Four).iter().map(|q| idx.query(q).unwrap()).collect();
        assert_eq!(got, answer_signature(a, Sidedness::Four));
    }

    #[test]
    fn budgets() {
        assert_eq!(stacked_bits(1, 7), 14);
        assert_eq!(stacked_bits(2, 3), 15);
        assert_eq!(stacked_bits(3, 4), 36);
    }

    #[test]
    fn hand_queries() {
        let a = RankMatrix::from_rows(&[vec![2, 4, 1], vec![3, 5, 6]]).unwrap();
        let idx = StackedIndex::decode(&encode_stacked(&a), 2, 3).unwrap();
        assert_eq!(idx.query(&QueryRect::new(1, 2, 1, 2)).unwrap(), Pos::new(2, 2));
        assert_eq!(idx.query(&QueryRect::new(1, 1, 1, 3)).unwrap(), Pos::new(1, 2));
        assert_eq!(idx.query(&QueryRect::new(1, 2, 3, 3)).unwrap(), Pos::new(2, 3));
        assert!(idx.query(&QueryRect::new(1, 3, 1, 1)).is_err());
    }

    #[test]
    fn exhaustive_small() {
        for (m, n) in [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3), (1, 8), (4, 2)] {
            let k = m * n;
            if k > 8 && (m, n) != (3, 3) {
                continue;
            }
            for perm in (0..k as u32).permutations(k) {
                check(&RankMatrix::new(m, n, perm).unwrap());
            }
        }
    }

    #[test]
    fn random_larger() {
        for m in 1..=6 {
            for s in 0..20 {
                check(&gen_random_matrix(m, 64, 1000 * m as u64 + s).unwrap());
            }
        }
    }

    #[test]
    fn wrong_length_rejected() {
        let a = gen_random_matrix(2, 5, 1).unwrap();
        let mut bits = encode_stacked(&a);
        bits.push(false);
        assert!(StackedIndex::decode(&bits, 2, 5).is_err());
    }
}
