use bitvec::prelude::*;

use crate::error::{format_err, Result};

/// Owned bit string. Storage is `u64` words, least significant bit first.
pub type Bits = BitVec<u64, Lsb0>;

/// `⌈log₂ x⌉` for `x ≥ 1`; 0 for `x ≤ 1`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Renders bits in stream order as `0`/`1` characters.
pub fn bits_to_string(bits: &BitSlice<u64, Lsb0>) -> String {
    bits.iter().map(|b| if *b { '1' } else { '0' }).collect()
}

/// Parses a `0`/`1` string in stream order. Other characters are ignored.
pub fn bits_from_str(s: &str) -> Bits {
    s.chars()
        .filter_map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct BitWriter {
    bits: Bits,
}

impl BitWriter {
    pub fn new() -> Self {
        BitWriter::default()
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    /// Writes the low `width` bits of `value`, least significant first.
    pub fn write_bits(&mut self, value: u64, width: u32) {
        debug_assert!(width <= 64);
        debug_assert!(width == 64 || value >> width == 0, "{value} does not fit in {width} bits");
        for k in 0..width {
            self.bits.push((value >> k) & 1 == 1);
        }
    }

    pub fn extend(&mut self, other: &BitSlice<u64, Lsb0>) {
        self.bits.extend_from_bitslice(other);
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn finish(self) -> Bits {
        self.bits
    }
}

/// Sequential reader over a bit slice. Reads past the end are format errors.
#[derive(Clone, Debug)]
pub struct BitReader<'a> {
    bits: &'a BitSlice<u64, Lsb0>,
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bits: &'a BitSlice<u64, Lsb0>) -> Self {
        BitReader { bits, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }

    pub fn is_at_end(&self) -> bool {
        self.pos == self.bits.len()
    }

    #[inline]
    pub fn read_bit(&mut self) -> Result<bool> {
        match self.bits.get(self.pos) {
            Some(b) => {
                self.pos += 1;
                Ok(*b)
            }
            None => format_err(format!("read past end of {}-bit payload", self.bits.len())),
        }
    }

    pub fn read_bits(&mut self, width: u32) -> Result<u64> {
        if self.remaining() < width as usize {
            return format_err(format!("need {width} bits, {} left", self.remaining()));
        }
        let mut v = 0u64;
        for k in 0..width {
            if self.bits[self.pos + k as usize] {
                v |= 1 << k;
            }
        }
        self.pos += width as usize;
        Ok(v)
    }

    /// Takes the next `len` bits as a sub-slice.
    pub fn take(&mut self, len: usize) -> Result<&'a BitSlice<u64, Lsb0>> {
        if self.remaining() < len {
            return format_err(format!("need {len} bits, {} left", self.remaining()));
        }
        let s = &self.bits[self.pos..self.pos + len];
        self.pos += len;
        Ok(s)
    }

    pub fn rest(&self) -> &'a BitSlice<u64, Lsb0> {
        &self.bits[self.pos..]
    }

    pub fn expect_end(&self) -> Result<()> {
        if self.is_at_end() {
            Ok(())
        } else {
            format_err(format!("{} trailing bits", self.remaining()))
        }
    }
}
