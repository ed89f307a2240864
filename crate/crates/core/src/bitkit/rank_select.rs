use bitvec::prelude::*;

use super::bits::Bits;
use crate::error::{Error, Result};

const SUPER: usize = 4096;
const BLOCK: usize = 512;
const WORDS_PER_BLOCK: usize = BLOCK / 64;
const BLOCKS_PER_SUPER: usize = SUPER / BLOCK;

/// Plain bitvector with a two-level rank directory.
///
/// Positions are 1-based as in the usual definitions: `rank(x, i)` counts
/// occurrences of `x` in the first `i` bits and `select(x, k)` is the
/// position of the `k`-th occurrence. Select binary-searches the directory.
#[derive(Clone, Debug)]
pub struct IndexedBitvector {
    bits: Bits,
    supers: Vec<u64>,
    blocks: Vec<u16>,
    ones: usize,
}

impl IndexedBitvector {
    pub fn new(mut bits: Bits) -> Self {
        // word-level counting needs bit 0 at the start of word 0 and a clear tail
        bits.force_align();
        bits.set_uninitialized(false);
        let words = bits.as_raw_slice();
        let mut supers = Vec::with_capacity(bits.len() / SUPER + 1);
        let mut blocks = Vec::with_capacity(bits.len() / BLOCK + 1);
        let mut total = 0u64;
        let mut in_super = 0u64;
        for (b, chunk) in words.chunks(WORDS_PER_BLOCK).enumerate() {
            if b % BLOCKS_PER_SUPER == 0 {
                supers.push(total);
                in_super = 0;
            }
            blocks.push(in_super as u16);
            let c: u64 = chunk.iter().map(|w| w.count_ones() as u64).sum();
            total += c;
            in_super += c;
        }
        let ones = bits.count_ones();
        debug_assert_eq!(total as usize, ones, "bits past the end must be clear");
        IndexedBitvector { bits, supers, blocks, ones }
    }

    pub fn from_bits(bits: &BitSlice<u64, Lsb0>) -> Self {
        Self::new(bits.to_bitvec())
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &BitSlice<u64, Lsb0> {
        &self.bits
    }

    /// Backing words; bits past the end are zero.
    pub fn words(&self) -> &[u64] {
        self.bits.as_raw_slice()
    }

    /// 0-based bit access.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn count(&self, x: bool) -> usize {
        if x {
            self.ones
        } else {
            self.len() - self.ones
        }
    }

    /// Number of ones among the first `i` bits.
    pub fn rank1(&self, i: usize) -> usize {
        assert!(i <= self.len(), "rank position {i} beyond length {}", self.len());
        let b = i / BLOCK;
        if b == self.blocks.len() {
            return self.ones;
        }
        let mut r = self.supers[i / SUPER] as usize + self.blocks[b] as usize;
        let words = self.bits.as_raw_slice();
        let w = i / 64;
        for word in &words[b * WORDS_PER_BLOCK..w] {
            r += word.count_ones() as usize;
        }
        let rem = i % 64;
        if rem > 0 {
            r += (words[w] & ((1u64 << rem) - 1)).count_ones() as usize;
        }
        r
    }

    pub fn rank(&self, x: bool, i: usize) -> usize {
        let r = self.rank1(i);
        if x {
            r
        } else {
            i - r
        }
    }

    /// Position (1-based) of the `k`-th occurrence of `x`.
    pub fn select(&self, x: bool, k: usize) -> Result<usize> {
        if k == 0 || k > self.count(x) {
            return Err(Error::Range(format!("select ordinal {k} outside 1..={}", self.count(x))));
        }
        let count_before = |base: usize, ones: usize| if x { ones } else { base - ones };
        // last superblock whose prefix count is below k
        let (mut lo, mut hi) = (0, self.supers.len());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if count_before(mid * SUPER, self.supers[mid] as usize) < k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let s = lo;
        let mut b = s * BLOCKS_PER_SUPER;
        let b_end = ((s + 1) * BLOCKS_PER_SUPER).min(self.blocks.len());
        let base = self.supers[s] as usize;
        while b + 1 < b_end && count_before((b + 1) * BLOCK, base + self.blocks[b + 1] as usize) < k {
            b += 1;
        }
        let mut seen = count_before(b * BLOCK, base + self.blocks[b] as usize);
        let words = self.bits.as_raw_slice();
        let mut w = b * WORDS_PER_BLOCK;
        loop {
            let word = if x { words[w] } else { !words[w] };
            let c = word.count_ones() as usize;
            if seen + c >= k {
                let mut word = word;
                for _ in 0..(k - seen - 1) {
                    word &= word - 1;
                }
                return Ok(w * 64 + word.trailing_zeros() as usize + 1);
            }
            seen += c;
            w += 1;
        }
    }

    pub fn select1(&self, k: usize) -> Result<usize> {
        self.select(true, k)
    }

    pub fn select0(&self, k: usize) -> Result<usize> {
        self.select(false, k)
    }

    /// Directory size in bits, excluding the bits themselves.
    pub fn overhead_bits(&self) -> usize {
        self.supers.len() * 64 + self.blocks.len() * 16
    }
}
