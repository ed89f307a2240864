//! Node-type encoding: the pre-order sequence of child configurations,
//! arithmetic-coded under the fixed model (1/3, 1/3, 1/6, 1/6).

use bitvec::prelude::*;

use super::tree::{CartesianTree, NONE};
use crate::bitkit::{arith_decode, arith_encode, Bits, StaticModel};
use crate::error::{format_err, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum NodeType {
    /// Leaf.
    Zero,
    /// Two children.
    Two,
    /// Only a left child.
    L,
    /// Only a right child.
    R,
}

/// Model weights indexed by [`NodeType::symbol`].
pub const TYPE_MODEL_WEIGHTS: [u64; 4] = [2, 2, 1, 1];

impl NodeType {
    pub const ALL: [NodeType; 4] = [NodeType::Zero, NodeType::Two, NodeType::L, NodeType::R];

    pub fn from_children(has_left: bool, has_right: bool) -> Self {
        match (has_left, has_right) {
            (false, false) => NodeType::Zero,
            (true, true) => NodeType::Two,
            (true, false) => NodeType::L,
            (false, true) => NodeType::R,
        }
    }

    pub fn symbol(self) -> usize {
        self as usize
    }

    pub fn has_left(self) -> bool {
        matches!(self, NodeType::Two | NodeType::L)
    }

    pub fn has_right(self) -> bool {
        matches!(self, NodeType::Two | NodeType::R)
    }
}

fn model() -> StaticModel {
    StaticModel::new(&TYPE_MODEL_WEIGHTS).expect("valid weights")
}

/// Types in pre-order.
pub fn node_types(t: &CartesianTree) -> Vec<NodeType> {
    t.preorder().into_iter().map(|v| NodeType::from_children(t.left(v).is_some(), t.right(v).is_some())).collect()
}

/// Types by array position, from neighbour comparisons with `+∞` beyond
/// both ends: position `i` has a left child iff `A[i−1] < A[i]`.
pub fn types_by_neighbors<T: Ord>(values: &[T]) -> Vec<NodeType> {
    let n = values.len();
    (0..n)
        .map(|i| {
            let l = i > 0 && values[i - 1] < values[i];
            let r = i + 1 < n && values[i + 1] < values[i];
            NodeType::from_children(l, r)
        })
        .collect()
}

pub fn encode_types(t: &CartesianTree) -> Bits {
    let symbols: Vec<usize> = node_types(t).into_iter().map(NodeType::symbol).collect();
    arith_encode(&symbols, &model()).expect("types are in the model")
}

pub fn decode_types(bits: &BitSlice<u64, Lsb0>, n: usize) -> Result<CartesianTree> {
    if n == 0 {
        return format_err("a tree has at least one node");
    }
    let m = model();
    let symbols = arith_decode(bits, n, &m)?;
    if arith_encode(&symbols, &m)? != *bits {
        return format_err("type code is not in canonical form");
    }
    // Pre-order ids; `pending` holds nodes still waiting for a right child.
    let mut left_pre = vec![NONE; n];
    let mut right_pre = vec![NONE; n];
    let mut pending: Vec<u32> = Vec::new();
    let mut slot: Option<(u32, bool)> = None;
    for (id, &s) in symbols.iter().enumerate() {
        let ty = NodeType::ALL[s];
        let id = id as u32;
        match slot {
            Some((p, true)) => left_pre[p as usize] = id,
            Some((p, false)) => right_pre[p as usize] = id,
            None if id != 0 => return format_err("type sequence closes the tree early"),
            None => {}
        }
        if ty.has_right() {
            pending.push(id);
        }
        slot = if ty.has_left() { Some((id, true)) } else { pending.pop().map(|p| (p, false)) };
    }
    if slot.is_some() {
        return format_err("type sequence leaves children unfilled");
    }
    Ok(from_preorder(&left_pre, &right_pre))
}

/// Relabels a pre-order-numbered tree to in-order numbering.
fn from_preorder(left_pre: &[u32], right_pre: &[u32]) -> CartesianTree {
    let n = left_pre.len();
    let mut inorder = vec![NONE; n];
    let mut next = 0u32;
    let mut stack: Vec<u32> = Vec::new();
    let mut cur = 0u32;
    loop {
        while cur != NONE {
            stack.push(cur);
            cur = left_pre[cur as usize];
        }
        let Some(v) = stack.pop() else { break };
        inorder[v as usize] = next;
        next += 1;
        cur = right_pre[v as usize];
    }
    let map = |x: u32| if x == NONE { NONE } else { inorder[x as usize] };
    let mut left = vec![NONE; n];
    let mut right = vec![NONE; n];
    for id in 0..n {
        left[inorder[id] as usize] = map(left_pre[id]);
        right[inorder[id] as usize] = map(right_pre[id]);
    }
    CartesianTree::from_children(inorder[0], left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_sequences() {
        let t = CartesianTree::from_values(&[5]).unwrap();
        assert_eq!(node_types(&t), [NodeType::Zero]);
        let bits = encode_types(&t);
        assert!(bits.len() <= 4);
        assert_eq!(decode_types(&bits, 1).unwrap(), t);

        let t = CartesianTree::from_values(&[2, 3, 1]).unwrap();
        assert_eq!(node_types(&t), [NodeType::Two, NodeType::Zero, NodeType::Zero]);
        assert_eq!(decode_types(&encode_types(&t), 3).unwrap(), t);
    }

    #[test]
    fn neighbour_rule_matches_children() {
        for n in 1..=7u32 {
            for perm in (0..n).permutations(n as usize) {
                let t = CartesianTree::from_values(&perm).unwrap();
                let by_tree: Vec<NodeType> = (0..n as usize)
                    .map(|v| NodeType::from_children(t.left(v).is_some(), t.right(v).is_some()))
                    .collect();
                assert_eq!(types_by_neighbors(&perm), by_tree);
            }
        }
    }

    #[test]
    fn all_shapes_roundtrip() {
        for n in 1..=10 {
            for t in CartesianTree::all_shapes(n) {
                assert_eq!(decode_types(&encode_types(&t), n).unwrap(), t);
            }
        }
    }

    #[test]
    fn random_frequencies_and_rate() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let n = 100_000;
        let mut values: Vec<u32> = (0..n as u32).collect();
        values.shuffle(&mut rng);
        let types = types_by_neighbors(&values);
        let expected = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0];
        for ty in NodeType::ALL {
            let f = types.iter().filter(|&&x| x == ty).count() as f64 / n as f64;
            assert!((f - expected[ty.symbol()]).abs() < 0.01, "{ty:?} {f}");
        }
        let t = CartesianTree::from_values(&values).unwrap();
        let bits = encode_types(&t);
        let rate = bits.len() as f64 / n as f64;
        assert!(rate <= 1.92, "{rate}");
        assert_eq!(decode_types(&bits, n).unwrap(), t);
    }

    #[test]
    fn malformed_codes() {
        let t = CartesianTree::from_values(&[2, 3, 1]).unwrap();
        let bits = encode_types(&t);
        assert!(decode_types(&bits, 2).is_err());
        assert!(decode_types(&bits, 5).is_err());
    }
}
