use crate::error::{Error, Result};

/// Missing link marker.
pub const NONE: u32 = u32::MAX;

/// Shape of a Cartesian tree. Node `v` is array position `v` (0-based), so
/// in-order traversal visits `0..n` in order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CartesianTree {
    root: u32,
    parent: Vec<u32>,
    left: Vec<u32>,
    right: Vec<u32>,
    size: Vec<u32>,
}

fn link(x: u32) -> Option<usize> {
    (x != NONE).then_some(x as usize)
}

impl CartesianTree {
    /// Builds the max-heap Cartesian tree with the rightmost-spine stack.
    pub fn from_values<T: Ord>(values: &[T]) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::Size("a Cartesian tree needs at least one value".into()));
        }
        let mut sorted: Vec<&T> = values.iter().collect();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain("values must be distinct".into()));
        }
        let mut left = vec![NONE; n];
        let mut right = vec![NONE; n];
        let mut spine: Vec<u32> = Vec::new();
        for i in 0..n {
            let mut last = NONE;
            while let Some(&top) = spine.last() {
                if values[top as usize] > values[i] {
                    break;
                }
                last = spine.pop().unwrap();
            }
            left[i] = last;
            if let Some(&top) = spine.last() {
                right[top as usize] = i as u32;
            }
            spine.push(i as u32);
        }
        Ok(Self::from_children(spine[0], left, right))
    }

    /// Builds from child links, filling parents and subtree sizes.
    /// The links must describe a binary tree whose in-order is `0..n`.
    pub(crate) fn from_children(root: u32, left: Vec<u32>, right: Vec<u32>) -> Self {
        let n = left.len();
        let mut parent = vec![NONE; n];
        for v in 0..n {
            for c in [left[v], right[v]] {
                if c != NONE {
                    parent[c as usize] = v as u32;
                }
            }
        }
        let mut t = CartesianTree { root, parent, left, right, size: vec![1; n] };
        for v in t.postorder() {
            let s = 1 + t.left(v).map_or(0, |c| t.size[c]) + t.right(v).map_or(0, |c| t.size[c]);
            t.size[v] = s;
        }
        t
    }

    /// Builds by recursive splitting: `pick(lo, hi)` returns the root column
    /// of the half-open range `lo..hi`. Ranges are visited in pre-order, left
    /// part first.
    pub fn from_splits(n: usize, mut pick: impl FnMut(usize, usize) -> usize) -> Self {
        assert!(n > 0);
        let mut left = vec![NONE; n];
        let mut right = vec![NONE; n];
        let mut root = NONE;
        // (lo, hi, parent, is_left)
        let mut stack = vec![(0usize, n, NONE, false)];
        while let Some((lo, hi, p, is_left)) = stack.pop() {
            if lo == hi {
                continue;
            }
            let v = pick(lo, hi);
            debug_assert!((lo..hi).contains(&v));
            if p == NONE {
                root = v as u32;
            } else if is_left {
                left[p as usize] = v as u32;
            } else {
                right[p as usize] = v as u32;
            }
            stack.push((v + 1, hi, v as u32, false));
            stack.push((lo, v, v as u32, true));
        }
        Self::from_children(root, left, right)
    }

    /// Every tree shape on `n` nodes, in a fixed order.
    pub fn all_shapes(n: usize) -> Vec<CartesianTree> {
        fn picks(lo: usize, hi: usize, memo: &mut Vec<Vec<Vec<Vec<usize>>>>) -> Vec<Vec<usize>> {
            if lo == hi {
                return vec![vec![]];
            }
            if !memo[lo][hi].is_empty() {
                return memo[lo][hi].clone();
            }
            let mut out = Vec::new();
            for v in lo..hi {
                let ls = picks(lo, v, memo);
                let rs = picks(v + 1, hi, memo);
                for l in &ls {
                    for r in &rs {
                        let mut seq = Vec::with_capacity(hi - lo);
                        seq.push(v);
                        seq.extend_from_slice(l);
                        seq.extend_from_slice(r);
                        out.push(seq);
                    }
                }
            }
            memo[lo][hi] = out.clone();
            out
        }
        if n == 0 {
            return Vec::new();
        }
        let mut memo = vec![vec![Vec::new(); n + 1]; n + 1];
        picks(0, n, &mut memo)
            .into_iter()
            .map(|seq| {
                let mut it = seq.into_iter();
                Self::from_splits(n, |_, _| it.next().unwrap())
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root as usize
    }

    pub fn left(&self, v: usize) -> Option<usize> {
        link(self.left[v])
    }

    pub fn right(&self, v: usize) -> Option<usize> {
        link(self.right[v])
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        link(self.parent[v])
    }

    pub fn size(&self, v: usize) -> usize {
        self.size[v] as usize
    }

    /// Size of the left subtree of `v` (its relative offset).
    pub fn offset(&self, v: usize) -> usize {
        self.left(v).map_or(0, |c| self.size(c))
    }

    /// First column covered by the subtree of `v`.
    pub fn span_start(&self, v: usize) -> usize {
        v - self.offset(v)
    }

    /// Last column covered by the subtree of `v`.
    pub fn span_end(&self, v: usize) -> usize {
        v + self.right(v).map_or(0, |c| self.size(c))
    }

    /// Position of the maximum in `l..=r` (0-based): the lowest common
    /// ancestor, found by climbing from `l`.
    pub fn rmq(&self, l: usize, r: usize) -> Result<usize> {
        if l > r || r >= self.len() {
            return Err(Error::Range(format!("range {l}..={r} outside 0..{}", self.len())));
        }
        Ok(self.lca(l, r))
    }

    #[inline]
    pub(crate) fn lca(&self, l: usize, r: usize) -> usize {
        let mut v = l;
        while self.span_end(v) < r {
            v = self.parent[v] as usize;
        }
        v
    }

    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v as usize);
            if self.right[v as usize] != NONE {
                stack.push(self.right[v as usize]);
            }
            if self.left[v as usize] != NONE {
                stack.push(self.left[v as usize]);
            }
        }
        out
    }

    pub fn postorder(&self) -> Vec<usize> {
        let mut out = self.reverse_postorder();
        out.reverse();
        out
    }

    /// Root, then right subtree, then left subtree; reversed this is post-order.
    fn reverse_postorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v as usize);
            if self.left[v as usize] != NONE {
                stack.push(self.left[v as usize]);
            }
            if self.right[v as usize] != NONE {
                stack.push(self.right[v as usize]);
            }
        }
        out
    }

    pub fn depth(&self, mut v: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent(v) {
            v = p;
            d += 1;
        }
        d
    }

    /// A rank sequence whose Cartesian tree is this shape.
    pub fn to_values(&self) -> Vec<u32> {
        let n = self.len() as u32;
        let mut values = vec![0; self.len()];
        for (k, v) in self.preorder().into_iter().enumerate() {
            values[v] = n - 1 - k as u32;
        }
        values
    }

    /// Checks the heap and in-order invariants against source values.
    pub fn check_against<T: Ord>(&self, values: &[T]) -> bool {
        if values.len() != self.len() {
            return false;
        }
        (0..self.len()).all(|v| {
            let ok_l = self.left(v).is_none_or(|c| c < v && values[c] < values[v]);
            let ok_r = self.right(v).is_none_or(|c| c > v && values[c] < values[v]);
            ok_l && ok_r && self.span_end(v) - self.span_start(v) + 1 == self.size(v)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute_max(values: &[u32], l: usize, r: usize) -> usize {
        (l..=r).max_by_key(|&i| values[i]).unwrap()
    }

    #[test]
    fn single_node() {
        let t = CartesianTree::from_values(&[7]).unwrap();
        assert_eq!(t.root(), 0);
        assert_eq!((t.size(0), t.offset(0)), (1, 0));
    }

    #[test]
    fn three_one_two() {
        let t = CartesianTree::from_values(&[3, 1, 2]).unwrap();
        assert_eq!(t.root(), 0);
        assert_eq!(t.right(0), Some(2));
        assert_eq!(t.left(2), Some(1));
        assert_eq!((0..3).map(|v| t.size(v)).collect_vec(), [3, 1, 2]);
        assert_eq!((0..3).map(|v| t.offset(v)).collect_vec(), [0, 0, 1]);
        assert_eq!(t.rmq(0, 0).unwrap(), 0);
        assert_eq!(t.rmq(1, 2).unwrap(), 2);
        assert_eq!(t.rmq(0, 2).unwrap(), 0);
        assert!(t.rmq(2, 1).is_err());
        assert!(t.rmq(0, 3).is_err());
    }

    #[test]
    fn duplicates_rejected() {
        assert!(matches!(CartesianTree::from_values(&[1, 2, 1]), Err(Error::Domain(_))));
    }

    #[test]
    fn exhaustive_rmq_up_to_eight() {
        for n in 1..=8u32 {
            for perm in (0..n).permutations(n as usize) {
                let t = CartesianTree::from_values(&perm).unwrap();
                assert!(t.check_against(&perm));
                for l in 0..n as usize {
                    for r in l..n as usize {
                        assert_eq!(t.lca(l, r), brute_max(&perm, l, r));
                    }
                }
            }
        }
    }

    #[test]
    fn random_rmq_large() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 1 << 10;
        let mut values: Vec<u32> = (0..n).collect();
        for _ in 0..20 {
            values.shuffle(&mut rng);
            let t = CartesianTree::from_values(&values).unwrap();
            for l in 0..n as usize {
                let mut best = l;
                for r in l..n as usize {
                    if values[r] > values[best] {
                        best = r;
                    }
                    assert_eq!(t.lca(l, r), best);
                }
            }
        }
    }

    #[test]
    fn shapes_are_catalan_and_distinct() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for n in 1..=10 {
            let shapes = CartesianTree::all_shapes(n);
            assert_eq!(shapes.len(), catalan[n]);
            assert_eq!(shapes.iter().unique().count(), catalan[n]);
            for t in shapes.iter().take(50) {
                assert_eq!(&CartesianTree::from_values(&t.to_values()).unwrap(), t);
            }
        }
    }

    #[test]
    fn splits_match_values() {
        let values = [4u32, 9, 2, 7, 8, 1, 0, 5, 3, 6];
        let t = CartesianTree::from_values(&values).unwrap();
        let s = CartesianTree::from_splits(values.len(), |lo, hi| brute_max(&values, lo, hi - 1));
        assert_eq!(t, s);
        assert_eq!(t.preorder().len(), 10);
        assert_eq!(t.postorder().last(), Some(&t.root()));
    }
}
