//! Elias gamma codes: `⌊log₂ v⌋` zeros, then `v` in binary, most
//! significant bit first.

use super::bits::{BitReader, BitWriter};
use crate::error::{format_err, Error, Result};

/// Code length of `v` in bits: `2⌊log₂ v⌋ + 1`.
pub fn gamma_len(v: u64) -> usize {
    debug_assert!(v >= 1);
    2 * (63 - v.leading_zeros() as usize) + 1
}

pub fn gamma_encode(w: &mut BitWriter, v: u64) -> Result<()> {
    if v == 0 {
        return Err(Error::Domain("gamma codes start at 1".into()));
    }
    let top = 63 - v.leading_zeros();
    for _ in 0..top {
        w.push(false);
    }
    for k in (0..=top).rev() {
        w.push((v >> k) & 1 == 1);
    }
    Ok(())
}

pub fn gamma_decode(r: &mut BitReader<'_>) -> Result<u64> {
    let mut zeros = 0u32;
    while !r.read_bit()? {
        zeros += 1;
        if zeros > 63 {
            return format_err("gamma code longer than 64 bits");
        }
    }
    let mut v = 1u64;
    for _ in 0..zeros {
        v = (v << 1) | r.read_bit()? as u64;
    }
    Ok(v)
}
