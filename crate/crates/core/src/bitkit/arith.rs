//! Static-model binary arithmetic coder.
//!
//! Integer implementation in the Witten–Neal–Cleary style with a 62-bit
//! register. Termination writes the fewest bits that pin the final interval,
//! assuming the decoder pads the stream with zeros.

use bitvec::prelude::*;

use super::bits::Bits;
use crate::error::{format_err, Error, Result};

const PRECISION: u32 = 62;
const TOP: u64 = 1 << PRECISION;
const HALF: u64 = TOP >> 1;
const QUARTER: u64 = TOP >> 2;
const MAX_TOTAL: u64 = 1 << 32;

/// A fixed distribution over symbols `0..k`, given by exact integer weights.
/// Symbol `s` has probability `freq[s] / total`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticModel {
    cum: Vec<u64>,
}

impl StaticModel {
    pub fn new(freqs: &[u64]) -> Result<Self> {
        if freqs.is_empty() {
            return Err(Error::Domain("empty alphabet".into()));
        }
        if freqs.contains(&0) {
            return Err(Error::Domain("symbol weights must be positive".into()));
        }
        let mut cum = Vec::with_capacity(freqs.len() + 1);
        cum.push(0u64);
        for &f in freqs {
            let next = cum.last().unwrap().checked_add(f).filter(|&t| t <= MAX_TOTAL);
            match next {
                Some(t) => cum.push(t),
                None => return Err(Error::Domain("total weight exceeds 2^32".into())),
            }
        }
        Ok(StaticModel { cum })
    }

    pub fn symbols(&self) -> usize {
        self.cum.len() - 1
    }

    pub fn total(&self) -> u64 {
        *self.cum.last().unwrap()
    }

    pub fn freq(&self, s: usize) -> u64 {
        self.cum[s + 1] - self.cum[s]
    }

    pub fn probability(&self, s: usize) -> f64 {
        self.freq(s) as f64 / self.total() as f64
    }

    /// `Σ −log₂ p(sᵢ)` over the sequence.
    pub fn ideal_bits(&self, symbols: &[usize]) -> f64 {
        let mut counts = vec![0u64; self.symbols()];
        for &s in symbols {
            counts[s] += 1;
        }
        counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(s, &c)| -(c as f64) * self.probability(s).log2()).sum()
    }

    fn check(&self, s: usize) -> Result<()> {
        if s < self.symbols() {
            Ok(())
        } else {
            Err(Error::Domain(format!("symbol {s} outside alphabet of {}", self.symbols())))
        }
    }
}

#[inline]
fn narrow(low: u64, high: u64, lo: u64, hi: u64, total: u64) -> (u64, u64) {
    let range = (high - low) as u128 + 1;
    let new_high = low + (range * hi as u128 / total as u128) as u64 - 1;
    let new_low = low + (range * lo as u128 / total as u128) as u64;
    (new_low, new_high)
}

struct Emitter {
    out: Bits,
    pending: u64,
}

impl Emitter {
    fn emit(&mut self, bit: bool) {
        self.out.push(bit);
        for _ in 0..self.pending {
            self.out.push(!bit);
        }
        self.pending = 0;
    }
}

pub fn arith_encode(symbols: &[usize], model: &StaticModel) -> Result<Bits> {
    let total = model.total();
    let mut low = 0u64;
    let mut high = TOP - 1;
    let mut e = Emitter { out: Bits::new(), pending: 0 };
    for &s in symbols {
        model.check(s)?;
        (low, high) = narrow(low, high, model.cum[s], model.cum[s + 1], total);
        loop {
            if high < HALF {
                e.emit(false);
            } else if low >= HALF {
                e.emit(true);
                low -= HALF;
                high -= HALF;
            } else if low >= QUARTER && high < HALF + QUARTER {
                e.pending += 1;
                low -= QUARTER;
                high -= QUARTER;
            } else {
                break;
            }
            low <<= 1;
            high = (high << 1) | 1;
        }
    }
    let first = if e.pending > 0 { 1 } else { 0 };
    for j in first..=PRECISION {
        let unit = 1u64 << (PRECISION - j);
        let c = low.div_ceil(unit);
        if c * unit <= high {
            for k in (0..j).rev() {
                e.emit((c >> k) & 1 == 1);
            }
            break;
        }
    }
    debug_assert_eq!(e.pending, 0);
    debug_assert!(e.out.len() as f64 <= (model.ideal_bits(symbols) + 1e-9).ceil() + 2.0);
    Ok(e.out)
}

struct PaddedReader<'a> {
    bits: &'a BitSlice<u64, Lsb0>,
    pos: usize,
}

impl PaddedReader<'_> {
    fn next(&mut self) -> Result<u64> {
        let b = self.bits.get(self.pos).map_or(0, |b| *b as u64);
        self.pos += 1;
        if self.pos > self.bits.len() + PRECISION as usize {
            return format_err("arithmetic code runs past its payload");
        }
        Ok(b)
    }
}

pub fn arith_decode(bits: &BitSlice<u64, Lsb0>, count: usize, model: &StaticModel) -> Result<Vec<usize>> {
    let total = model.total();
    let mut r = PaddedReader { bits, pos: 0 };
    let mut value = 0u64;
    for _ in 0..PRECISION {
        value = (value << 1) | r.next()?;
    }
    let mut low = 0u64;
    let mut high = TOP - 1;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        if value < low || value > high {
            return format_err("arithmetic code left its interval");
        }
        let range = (high - low) as u128 + 1;
        let target = (((value - low) as u128 + 1) * total as u128 - 1) / range;
        let target = target as u64;
        let s = model.cum.partition_point(|&c| c <= target) - 1;
        if s >= model.symbols() {
            return format_err("arithmetic code outside the model");
        }
        out.push(s);
        (low, high) = narrow(low, high, model.cum[s], model.cum[s + 1], total);
        loop {
            if high < HALF {
            } else if low >= HALF {
                low -= HALF;
                high -= HALF;
                value -= HALF;
            } else if low >= QUARTER && high < HALF + QUARTER {
                low -= QUARTER;
                high -= QUARTER;
                value -= QUARTER;
            } else {
                break;
            }
            low <<= 1;
            high = (high << 1) | 1;
            value = (value << 1) | r.next()?;
        }
    }
    Ok(out)
}
