//! Balanced-parentheses form of a binary tree: `BP(v) = 1 BP(left) 0 BP(right)`.
//!
//! The closing bits appear in in-order, so the `k`-th zero is array
//! position `k`.

use bitvec::prelude::*;

use super::tree::{CartesianTree, NONE};
use crate::bitkit::{Bits, IndexedBitvector};
use crate::error::{format_err, Result};

pub fn encode_bp(t: &CartesianTree) -> Bits {
    let mut out = Bits::with_capacity(2 * t.len());
    let mut stack: Vec<usize> = Vec::new();
    let mut cur = Some(t.root());
    loop {
        while let Some(v) = cur {
            out.push(true);
            stack.push(v);
            cur = t.left(v);
        }
        match stack.pop() {
            Some(v) => {
                out.push(false);
                cur = t.right(v);
            }
            None => break,
        }
    }
    out
}

pub fn decode_bp(bits: &BitSlice<u64, Lsb0>, n: usize) -> Result<CartesianTree> {
    if n == 0 || bits.len() != 2 * n {
        return format_err(format!("expected {} parenthesis bits, got {}", 2 * n, bits.len()));
    }
    // Nodes get pre-order ids on their open bit and in-order ids on their close bit.
    let mut inorder = vec![NONE; n];
    let mut left_pre = vec![NONE; n];
    let mut right_pre = vec![NONE; n];
    let mut open: Vec<u32> = Vec::new();
    let mut opened = 0u32;
    let mut closed = 0u32;
    // where the next opened node hangs: (pre-order parent, is_left)
    let mut slot: Option<(u32, bool)> = None;
    for b in bits.iter().by_vals() {
        if b {
            if opened as usize == n {
                return format_err("too many open parentheses");
            }
            let id = opened;
            opened += 1;
            match slot {
                Some((p, true)) => left_pre[p as usize] = id,
                Some((p, false)) => right_pre[p as usize] = id,
                None if id != 0 => return format_err("parenthesis sequence is not a single tree"),
                None => {}
            }
            open.push(id);
            slot = Some((id, true));
        } else {
            let Some(id) = open.pop() else {
                return format_err("unbalanced parentheses");
            };
            inorder[id as usize] = closed;
            closed += 1;
            slot = Some((id, false));
        }
    }
    if !open.is_empty() || closed as usize != n {
        return format_err("unbalanced parentheses");
    }
    let map = |x: u32| if x == NONE { NONE } else { inorder[x as usize] };
    let mut left = vec![NONE; n];
    let mut right = vec![NONE; n];
    for id in 0..n {
        left[inorder[id] as usize] = map(left_pre[id]);
        right[inorder[id] as usize] = map(right_pre[id]);
    }
    Ok(CartesianTree::from_children(inorder[0], left, right))
}

/// Range-maximum index over a parenthesis string without the pointer tree.
///
/// The maximum of columns `l..=r` is the node whose closing bit has the
/// leftmost minimum excess between the closing bits of `l` and `r`.
#[derive(Clone, Debug)]
pub struct BpIndex {
    bv: IndexedBitvector,
    /// excess before each 64-bit word
    word_base: Vec<i32>,
    /// minimum excess reached inside each word (absolute)
    word_min: Vec<i32>,
    /// sparse table of leftmost argmin words
    table: Vec<Vec<u32>>,
}

impl BpIndex {
    pub fn new(bits: Bits) -> Self {
        let bv = IndexedBitvector::new(bits);
        let words = bv.words();
        let nwords = words.len();
        let mut word_base = Vec::with_capacity(nwords);
        let mut word_min = Vec::with_capacity(nwords);
        let mut e = 0i32;
        for (w, &word) in words.iter().enumerate() {
            word_base.push(e);
            let valid = (bv.len() - w * 64).min(64);
            let mut lo = i32::MAX;
            for k in 0..valid {
                e += if (word >> k) & 1 == 1 { 1 } else { -1 };
                lo = lo.min(e);
            }
            word_min.push(lo);
        }
        let mut table = vec![(0..nwords as u32).collect::<Vec<_>>()];
        let mut span = 1;
        while 2 * span <= nwords {
            let prev = table.last().unwrap();
            let next = (0..=nwords - 2 * span)
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + span]);
                    if word_min[b as usize] < word_min[a as usize] {
                        b
                    } else {
                        a
                    }
                })
                .collect();
            table.push(next);
            span *= 2;
        }
        BpIndex { bv, word_base, word_min, table }
    }

    pub fn nodes(&self) -> usize {
        self.bv.len() / 2
    }

    pub fn bits(&self) -> &BitSlice<u64, Lsb0> {
        self.bv.bits()
    }

    /// Directory size in bits.
    pub fn overhead_bits(&self) -> usize {
        self.bv.overhead_bits() + 64 * self.word_base.len() + 32 * self.table.iter().map(Vec::len).sum::<usize>()
    }

    /// Bit position (0-based) of the closing bit of column `v`.
    pub fn close_of(&self, v: usize) -> usize {
        self.bv.select0(v + 1).expect("column in range") - 1
    }

    fn excess_at(&self, p: usize) -> i32 {
        let ones = self.bv.rank1(p + 1) as i32;
        2 * ones - (p as i32 + 1)
    }

    fn scan(&self, from: usize, to: usize, mut best: (i32, usize)) -> (i32, usize) {
        let mut e = self.excess_at(from) - if self.bv.get(from) { 1 } else { -1 };
        for p in from..=to {
            e += if self.bv.get(p) { 1 } else { -1 };
            if e < best.0 {
                best = (e, p);
            }
        }
        best
    }

    fn words_argmin(&self, a: usize, b: usize) -> usize {
        let k = (usize::BITS - 1 - (b - a + 1).leading_zeros()) as usize;
        let (x, y) = (self.table[k][a], self.table[k][b + 1 - (1 << k)]);
        if self.word_min[y as usize] < self.word_min[x as usize] {
            y as usize
        } else {
            x as usize
        }
    }

    /// Maximum column in `l..=r` (0-based, `l ≤ r < nodes`).
    pub fn rmq(&self, l: usize, r: usize) -> usize {
        debug_assert!(l <= r && r < self.nodes());
        let (a, b) = (self.close_of(l), self.close_of(r));
        let (wa, wb) = (a / 64, b / 64);
        let mut best = (i32::MAX, a);
        if wa == wb || wa + 1 == wb {
            best = self.scan(a, b, best);
        } else {
            best = self.scan(a, wa * 64 + 63, best);
            let w = self.words_argmin(wa + 1, wb - 1);
            if self.word_min[w] < best.0 {
                best = self.scan(w * 64, w * 64 + 63, best);
            }
            best = self.scan(wb * 64, b, best);
        }
        self.bv.rank(false, best.1 + 1) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitkit::{bits_from_str, bits_to_string};
    use itertools::Itertools;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_codes() {
        let t = CartesianTree::from_values(&[1]).unwrap();
        assert_eq!(bits_to_string(&encode_bp(&t)), "10");
        let t = CartesianTree::from_values(&[3, 1, 2]).unwrap();
        let bits = encode_bp(&t);
        assert_eq!(bits.len(), 6);
        assert_eq!(decode_bp(&bits, 3).unwrap(), t);
    }

    #[test]
    fn shapes_have_distinct_codes() {
        for n in 1..=10 {
            let shapes = CartesianTree::all_shapes(n);
            let codes: Vec<Bits> = shapes.iter().map(encode_bp).collect();
            if n == 4 {
                assert_eq!(codes.iter().unique().count(), 14);
            }
            for (t, c) in shapes.iter().zip(&codes) {
                assert_eq!(c.len(), 2 * n);
                assert_eq!(&decode_bp(c, n).unwrap(), t);
            }
        }
    }

    #[test]
    fn malformed_codes() {
        for (s, n) in [("01", 1), ("11", 1), ("00", 1), ("1001", 2), ("1110", 2), ("10", 2), ("", 0)] {
            assert!(decode_bp(&bits_from_str(s), n).is_err(), "{s}");
        }
        assert!(decode_bp(&bits_from_str("1010"), 2).is_ok());
    }

    #[test]
    fn index_matches_tree() {
        for n in 1..=7u32 {
            for perm in (0..n).permutations(n as usize) {
                let t = CartesianTree::from_values(&perm).unwrap();
                let idx = BpIndex::new(encode_bp(&t));
                for l in 0..n as usize {
                    for r in l..n as usize {
                        assert_eq!(idx.rmq(l, r), t.lca(l, r));
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [100u32, 700, 3000] {
            let mut values: Vec<u32> = (0..n).collect();
            values.shuffle(&mut rng);
            let t = CartesianTree::from_values(&values).unwrap();
            let idx = BpIndex::new(encode_bp(&t));
            for l in (0..n as usize).step_by(7) {
                for r in (l..n as usize).step_by(5) {
                    assert_eq!(idx.rmq(l, r), t.lca(l, r));
                }
            }
        }
        let sorted: Vec<u32> = (0..500).collect();
        let t = CartesianTree::from_values(&sorted).unwrap();
        let idx = BpIndex::new(encode_bp(&t));
        assert_eq!(idx.rmq(3, 400), 400);
    }
}
