//! Mixed-radix offset encoding.
//!
//! Every node contributes its offset `o_v` as a digit of radix `s_v`; the
//! subtree value is `e_v = o_v + s_v·(e_l + w_l·e_r)` with weight
//! `w_v = s_v·w_l·w_r`, and an absent child has `e = 0, w = 1`. The payload
//! is `e_root` in exactly `⌈log₂ w_root⌉` bits.

use std::sync::{OnceLock, RwLock};

use bitvec::prelude::*;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::tree::{CartesianTree, NONE};
use crate::bitkit::{read_biguint, width_of, write_biguint, BitReader, BitWriter, Bits};
use crate::error::{format_err, Result};

/// `w_root = Π_v s_v`.
pub fn offset_weight(t: &CartesianTree) -> BigUint {
    let sizes: Vec<u64> = (0..t.len()).map(|v| t.size(v) as u64).collect();
    product(&sizes)
}

fn product(xs: &[u64]) -> BigUint {
    let mut level: Vec<BigUint> = Vec::new();
    let mut acc = 1u64;
    for &x in xs {
        match acc.checked_mul(x) {
            Some(p) => acc = p,
            None => {
                level.push(BigUint::from(acc));
                acc = x;
            }
        }
    }
    level.push(BigUint::from(acc));
    while level.len() > 1 {
        level = level.chunks(2).map(|c| if c.len() == 2 { &c[0] * &c[1] } else { c[0].clone() }).collect();
    }
    level.pop().unwrap()
}

pub fn encode_offsets(t: &CartesianTree) -> Bits {
    let mut stack: Vec<(BigUint, BigUint)> = Vec::new();
    for v in t.postorder() {
        let (e_r, w_r) = if t.right(v).is_some() { stack.pop().unwrap() } else { (BigUint::zero(), BigUint::one()) };
        let (e_l, w_l) = if t.left(v).is_some() { stack.pop().unwrap() } else { (BigUint::zero(), BigUint::one()) };
        let s = t.size(v) as u64;
        let mut e = if e_r.is_zero() { e_l } else { e_l + &w_l * e_r };
        e *= s;
        e += t.offset(v) as u64;
        let w = w_l * w_r * s;
        stack.push((e, w));
    }
    let (e, w) = stack.pop().unwrap();
    let mut out = BitWriter::new();
    write_biguint(&mut out, &e, width_of(&w));
    out.finish()
}

fn factorials() -> &'static RwLock<Vec<BigUint>> {
    static CACHE: OnceLock<RwLock<Vec<BigUint>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigUint::one()]))
}

fn factorial(k: usize) -> BigUint {
    if let Some(f) = factorials().read().unwrap().get(k) {
        return f.clone();
    }
    let mut cache = factorials().write().unwrap();
    while cache.len() <= k {
        let next = cache.last().unwrap() * cache.len();
        cache.push(next);
    }
    cache[k].clone()
}

enum Task {
    Visit { x: BigUint, lo: usize, s: usize, parent: u32, is_left: bool },
    AfterLeft { v: usize, q: BigUint, s: usize, o: usize },
    AfterRight { s: usize, w_l: BigUint },
}

/// Decodes a tree of `n` nodes; the payload must be exactly as produced by
/// [`encode_offsets`].
///
/// A left child only sees its value modulo `o!`: its weight divides `o!`
/// (the hook-length formula), so this keeps working values small.
pub fn decode_offsets(bits: &BitSlice<u64, Lsb0>, n: usize) -> Result<CartesianTree> {
    if n == 0 {
        return format_err("a tree has at least one node");
    }
    let x = read_biguint(&mut BitReader::new(bits), bits.len() as u64)?;
    // log₂ k! for deciding when truncation pays off
    let mut log_fact = vec![0f64; n + 1];
    for k in 2..=n {
        log_fact[k] = log_fact[k - 1] + (k as f64).log2();
    }
    let mut left = vec![NONE; n];
    let mut right = vec![NONE; n];
    let mut root = NONE;
    let mut last_w = BigUint::one();
    let mut tasks = vec![Task::Visit { x: x.clone(), lo: 0, s: n, parent: NONE, is_left: false }];
    while let Some(task) = tasks.pop() {
        match task {
            Task::Visit { x, lo, s, parent, is_left } => {
                if s == 0 {
                    last_w = BigUint::one();
                    continue;
                }
                let (o, q) = crate::bitkit::mixed_radix::pop(&x, s as u64);
                let o = o as usize;
                let v = lo + o;
                if parent == NONE {
                    root = v as u32;
                } else if is_left {
                    left[parent as usize] = v as u32;
                } else {
                    right[parent as usize] = v as u32;
                }
                let x_left = if o <= 1 {
                    BigUint::zero()
                } else if log_fact[o] + 1.0 < q.bits() as f64 {
                    &q % factorial(o)
                } else {
                    q.clone()
                };
                tasks.push(Task::AfterLeft { v, q, s, o });
                tasks.push(Task::Visit { x: x_left, lo, s: o, parent: v as u32, is_left: true });
            }
            Task::AfterLeft { v, q, s, o } => {
                let w_l = std::mem::replace(&mut last_w, BigUint::one());
                let x_right = if w_l.is_one() { q } else { q / &w_l };
                tasks.push(Task::AfterRight { s, w_l });
                tasks.push(Task::Visit { x: x_right, lo: v + 1, s: s - 1 - o, parent: v as u32, is_left: false });
            }
            Task::AfterRight { s, w_l } => {
                let w_r = std::mem::replace(&mut last_w, BigUint::one());
                last_w = w_l * w_r * s as u64;
            }
        }
    }
    let w = last_w;
    if x >= w {
        return format_err("offset value is not below the tree weight");
    }
    if bits.len() as u64 != width_of(&w) {
        return format_err(format!("offset payload has {} bits, tree needs {}", bits.len(), width_of(&w)));
    }
    Ok(CartesianTree::from_children(root, left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitkit::bits_to_string;
    use itertools::Itertools;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_payloads() {
        let t = CartesianTree::from_values(&[1]).unwrap();
        assert!(encode_offsets(&t).is_empty());
        assert_eq!(decode_offsets(&Bits::new(), 1).unwrap(), t);

        let t = CartesianTree::from_values(&[3, 1, 2]).unwrap();
        let bits = encode_offsets(&t);
        assert_eq!(bits_to_string(&bits), "110");
        assert_eq!(offset_weight(&t), BigUint::from(6u32));
        assert_eq!(decode_offsets(&bits, 3).unwrap(), t);
    }

    #[test]
    fn three_element_widths() {
        let widths: Vec<usize> = (0..3u32)
            .permutations(3)
            .map(|p| {
                let t = CartesianTree::from_values(&p).unwrap();
                let w = encode_offsets(&t).len();
                assert_eq!(w, if t.root() == 1 { 2 } else { 3 });
                w
            })
            .collect();
        assert_eq!(widths.iter().sum::<usize>(), 16);
    }

    #[test]
    fn all_shapes_roundtrip() {
        for n in 1..=10 {
            for t in CartesianTree::all_shapes(n) {
                let bits = encode_offsets(&t);
                assert_eq!(bits.len() as u64, width_of(&offset_weight(&t)));
                assert_eq!(decode_offsets(&bits, n).unwrap(), t);
            }
        }
    }

    #[test]
    fn large_and_degenerate_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [100usize, 1000, 1 << 13] {
            let mut values: Vec<u32> = (0..n as u32).collect();
            values.shuffle(&mut rng);
            let t = CartesianTree::from_values(&values).unwrap();
            assert_eq!(decode_offsets(&encode_offsets(&t), n).unwrap(), t);
        }
        let sorted: Vec<u32> = (0..2000).collect();
        let t = CartesianTree::from_values(&sorted).unwrap();
        assert_eq!(decode_offsets(&encode_offsets(&t), 2000).unwrap(), t);
        let rev: Vec<u32> = (0..2000).rev().collect();
        let t = CartesianTree::from_values(&rev).unwrap();
        assert_eq!(decode_offsets(&encode_offsets(&t), 2000).unwrap(), t);
    }

    #[test]
    fn rejects_out_of_range_values() {
        // width 3 fits 6 and 7, both at least w_root = 6 for every 3-node shape of width 3
        for v in [6u64, 7] {
            let mut w = BitWriter::new();
            w.write_bits(v, 3);
            assert!(decode_offsets(&w.finish(), 3).is_err());
        }
        let mut w = BitWriter::new();
        w.write_bits(1, 4);
        assert!(decode_offsets(&w.finish(), 3).is_err());
        assert!(decode_offsets(&Bits::new(), 0).is_err());
    }
}
