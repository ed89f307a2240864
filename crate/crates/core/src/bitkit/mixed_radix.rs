//! Arbitrary-precision mixed-radix integers.
//!
//! Digits are pushed least significant first; each push multiplies the
//! weight by the digit's radix.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::bits::{BitReader, BitWriter};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedRadixAccumulator {
    value: BigUint,
    weight: BigUint,
}

impl Default for MixedRadixAccumulator {
    fn default() -> Self {
        Self::new()
    }
}

impl MixedRadixAccumulator {
    pub fn new() -> Self {
        MixedRadixAccumulator { value: BigUint::zero(), weight: BigUint::one() }
    }

    pub fn from_parts(value: BigUint, weight: BigUint) -> Result<Self> {
        if weight.is_zero() || value >= weight {
            return Err(Error::Domain(format!("value {value} not below weight {weight}")));
        }
        Ok(MixedRadixAccumulator { value, weight })
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn weight(&self) -> &BigUint {
        &self.weight
    }

    pub fn into_parts(self) -> (BigUint, BigUint) {
        (self.value, self.weight)
    }

    /// Appends `digit` as the new most significant digit.
    pub fn push(&mut self, digit: u64, radix: u64) -> Result<()> {
        if radix == 0 || digit >= radix {
            return Err(Error::Domain(format!("digit {digit} not below radix {radix}")));
        }
        if digit != 0 {
            self.value += &self.weight * digit;
        }
        if radix != 1 {
            self.weight *= radix;
        }
        Ok(())
    }

    /// Width of the serialized value: `⌈log₂ weight⌉`.
    pub fn width(&self) -> u64 {
        width_of(&self.weight)
    }

    pub fn serialize(&self, w: &mut BitWriter) {
        write_biguint(w, &self.value, self.width());
    }
}

/// `⌈log₂ w⌉` for `w ≥ 1`.
pub fn width_of(weight: &BigUint) -> u64 {
    debug_assert!(!weight.is_zero());
    if weight.is_one() {
        0
    } else {
        (weight - 1u32).bits()
    }
}

/// Splits off the least significant digit: `(value mod radix, value div radix)`.
pub fn pop(value: &BigUint, radix: u64) -> (u64, BigUint) {
    debug_assert!(radix >= 1);
    let q = value / radix;
    let r = value - &q * radix;
    (r.to_u64().expect("remainder below radix"), q)
}

/// Writes `value` as a little-endian field of `width` bits.
pub fn write_biguint(w: &mut BitWriter, value: &BigUint, width: u64) {
    debug_assert!(value.bits() <= width);
    let digits = value.to_u64_digits();
    let mut left = width;
    let mut k = 0;
    while left > 0 {
        let take = left.min(64) as u32;
        let d = digits.get(k).copied().unwrap_or(0);
        let d = if take == 64 { d } else { d & ((1u64 << take) - 1) };
        w.write_bits(d, take);
        left -= take as u64;
        k += 1;
    }
}

pub fn read_biguint(r: &mut BitReader<'_>, width: u64) -> Result<BigUint> {
    let mut digits = Vec::with_capacity(width.div_ceil(64) as usize);
    let mut left = width;
    while left > 0 {
        let take = left.min(64) as u32;
        digits.push(r.read_bits(take)?);
        left -= take as u64;
    }
    let words: Vec<u32> = digits.iter().flat_map(|&d| [d as u32, (d >> 32) as u32]).collect();
    Ok(BigUint::new(words))
}
