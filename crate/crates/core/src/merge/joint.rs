use bitvec::prelude::*;

use crate::bitkit::{BitWriter, Bits};
use crate::cartesian::CartesianTree;
use crate::error::{format_err, Result};
use crate::model::RankMatrix;

/// Cartesian tree of the column maxima over rows `top..=bottom` (0-based),
/// with the row holding each node's maximum.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JointCt {
    top: usize,
    bottom: usize,
    tree: CartesianTree,
    winner: Vec<u32>,
}

impl JointCt {
    pub fn single_row(row: usize, tree: CartesianTree) -> Self {
        let winner = vec![row as u32; tree.len()];
        JointCt { top: row, bottom: row, tree, winner }
    }

    /// Direct construction from the matrix.
    pub fn from_matrix(a: &RankMatrix, top: usize, bottom: usize) -> Self {
        let n = a.cols();
        let mut best = vec![(0u32, top as u32); n];
        for (c, slot) in best.iter_mut().enumerate() {
            let r = (top..=bottom).max_by_key(|&r| a.get(r, c)).unwrap();
            *slot = (a.get(r, c), r as u32);
        }
        let values: Vec<u32> = best.iter().map(|b| b.0).collect();
        let tree = CartesianTree::from_values(&values).expect("ranks are distinct");
        JointCt { top, bottom, tree, winner: best.iter().map(|b| b.1).collect() }
    }

    pub fn rows(&self) -> (usize, usize) {
        (self.top, self.bottom)
    }

    pub fn tree(&self) -> &CartesianTree {
        &self.tree
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    /// Row of the maximum of the subtree rooted at column `c`.
    pub fn winner(&self, c: usize) -> usize {
        self.winner[c] as usize
    }

    /// `(row, col)` of the maximum of columns `l..=r`, 0-based.
    #[inline]
    pub fn query(&self, l: usize, r: usize) -> (usize, usize) {
        let c = self.tree.lca(l, r);
        (self.winner[c] as usize, c)
    }

    /// Merges `upper` with the adjacent structure `lower` below it, emitting
    /// one bit per range in pre-order (1: the lower part wins).
    pub fn merge_build(a: &RankMatrix, upper: &JointCt, lower: &JointCt) -> (JointCt, Bits) {
        assert_eq!(upper.bottom + 1, lower.top, "structures must be adjacent");
        let mut bits = BitWriter::new();
        let joint = Self::merge_with(upper, lower, |u, d| {
            let lower_wins = a.get(d.0, d.1) > a.get(u.0, u.1);
            bits.push(lower_wins);
            Some(lower_wins)
        })
        .expect("values decide every comparison");
        (joint, bits.finish())
    }

    /// Rebuilds the merge from its bits alone.
    pub fn merge_decode(upper: &JointCt, lower: &JointCt, bits: &BitSlice<u64, Lsb0>) -> Result<JointCt> {
        if bits.len() != upper.len() {
            return format_err(format!("expected {} merge bits, got {}", upper.len(), bits.len()));
        }
        let mut it = bits.iter().by_vals();
        Ok(Self::merge_with(upper, lower, |_, _| it.next()).expect("one bit per column"))
    }

    /// Generic merge: `decide(upper_answer, lower_answer)` says whether the
    /// lower answer wins for the current range, in pre-order. `None` from
    /// `decide` aborts the merge.
    pub(crate) fn merge_with(
        upper: &JointCt,
        lower: &JointCt,
        mut decide: impl FnMut((usize, usize), (usize, usize)) -> Option<bool>,
    ) -> Option<JointCt> {
        let n = upper.len();
        let mut winner = vec![0u32; n];
        let mut failed = false;
        let tree = CartesianTree::from_splits(n, |lo, hi| {
            if failed {
                return lo;
            }
            let u = upper.query(lo, hi - 1);
            let d = lower.query(lo, hi - 1);
            let (row, col) = match decide(u, d) {
                Some(true) => d,
                Some(false) => u,
                None => {
                    failed = true;
                    return lo;
                }
            };
            winner[col] = row as u32;
            col
        });
        (!failed).then_some(JointCt { top: upper.top, bottom: lower.bottom, tree, winner })
    }

    pub(crate) fn from_parts(top: usize, bottom: usize, tree: CartesianTree, winner: Vec<u32>) -> Self {
        JointCt { top, bottom, tree, winner }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitkit::bits_to_string;
    use crate::model::{oracle_rmq, QueryRect};
    use itertools::Itertools;
    use std::collections::HashMap;

    fn rows_ct(a: &RankMatrix, r: usize) -> JointCt {
        JointCt::single_row(r, CartesianTree::from_values(a.row(r)).unwrap())
    }

    fn check_all(a: &RankMatrix, j: &JointCt) {
        let (t, b) = j.rows();
        for l in 0..a.cols() {
            for r in l..a.cols() {
                let p = oracle_rmq(a, &QueryRect::new(t + 1, b + 1, l + 1, r + 1)).unwrap();
                assert_eq!(j.query(l, r), (p.row - 1, p.col - 1));
            }
        }
    }

    #[test]
    fn hand_examples() {
        let a = RankMatrix::from_rows(&[vec![2, 4, 1], vec![3, 5, 6]]).unwrap();
        let (j, bits) = JointCt::merge_build(&a, &rows_ct(&a, 0), &rows_ct(&a, 1));
        assert_eq!(bits_to_string(&bits), "111");
        check_all(&a, &j);
        assert_eq!(JointCt::merge_decode(&rows_ct(&a, 0), &rows_ct(&a, 1), &bits).unwrap(), j);

        let a = RankMatrix::from_rows(&[vec![6, 5, 4], vec![1, 2, 3]]).unwrap();
        let (j, bits) = JointCt::merge_build(&a, &rows_ct(&a, 0), &rows_ct(&a, 1));
        assert_eq!(bits_to_string(&bits), "000");
        assert_eq!(JointCt::merge_decode(&rows_ct(&a, 0), &rows_ct(&a, 1), &bits).unwrap(), j);

        let a = RankMatrix::from_rows(&[vec![1], vec![2]]).unwrap();
        let (_, bits) = JointCt::merge_build(&a, &rows_ct(&a, 0), &rows_ct(&a, 1));
        assert_eq!(bits_to_string(&bits), "1");
        assert!(JointCt::merge_decode(&rows_ct(&a, 0), &rows_ct(&a, 1), &Bits::new()).is_err());
    }

    #[test]
    fn exhaustive_two_rows() {
        for n in 1..=4usize {
            // (row CTs, bits) -> joint; distinct bits must give distinguishable joints
            let mut seen: HashMap<(Bits, Bits), HashMap<Bits, JointCt>> = HashMap::new();
            for perm in (0..2 * n as u32).permutations(2 * n) {
                let a = RankMatrix::new(2, n, perm).unwrap();
                let (up, low) = (rows_ct(&a, 0), rows_ct(&a, 1));
                let (j, bits) = JointCt::merge_build(&a, &up, &low);
                assert_eq!(bits.len(), n);
                assert_eq!(j, JointCt::from_matrix(&a, 0, 1));
                assert_eq!(
                    j.tree(),
                    &CartesianTree::from_values(&(0..n).map(|c| a.get(0, c).max(a.get(1, c))).collect_vec()).unwrap()
                );
                check_all(&a, &j);
                assert_eq!(JointCt::merge_decode(&up, &low, &bits).unwrap(), j);
                let key = (crate::cartesian::encode_bp(up.tree()), crate::cartesian::encode_bp(low.tree()));
                seen.entry(key).or_default().insert(bits, j);
            }
            for joints in seen.values() {
                let js: Vec<&JointCt> = joints.values().collect();
                for (x, y) in js.iter().tuple_combinations() {
                    let differs = (0..n).any(|l| (l..n).any(|r| x.query(l, r) != y.query(l, r)));
                    assert!(differs);
                }
            }
        }
    }
}
