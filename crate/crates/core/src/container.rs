//! The `RMQE` payload container.
//!
//! Layout: magic `RMQE`, version byte 1, scheme id byte, then `m`, `n` and
//! the payload bit length as unsigned LEB128, then the payload bits packed
//! LSB-first and zero-padded to a byte boundary.

use std::io::{Read, Write};

use bitvec::prelude::*;

use crate::bitkit::Bits;
use crate::error::{format_err, Error, Result};
use crate::scheme::Scheme;

pub const MAGIC: &[u8; 4] = b"RMQE";
pub const VERSION: u8 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Container {
    pub scheme: Scheme,
    pub m: usize,
    pub n: usize,
    pub payload: Bits,
}

impl Container {
    pub fn new(scheme: Scheme, m: usize, n: usize, payload: Bits) -> Self {
        Container { scheme, m, n, payload }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16 + self.payload.len() / 8);
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.push(self.scheme.id());
        for v in [self.m, self.n, self.payload.len()] {
            leb128::write::unsigned(&mut out, v as u64).expect("writing to a vec");
        }
        let mut packed: BitVec<u8, Lsb0> = self.payload.iter().by_vals().collect();
        packed.set_uninitialized(false);
        out.extend_from_slice(packed.as_raw_slice());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = bytes;
        let mut head = [0u8; 6];
        r.read_exact(&mut head).map_err(|_| Error::Format("truncated header".into()))?;
        if &head[..4] != MAGIC {
            return format_err("not an RMQE container");
        }
        if head[4] != VERSION {
            return format_err(format!("unsupported version {}", head[4]));
        }
        let scheme = Scheme::from_id(head[5])?;
        let mut field = || -> Result<usize> {
            let v = leb128::read::unsigned(&mut r).map_err(|e| Error::Format(format!("bad LEB128 field: {e}")))?;
            usize::try_from(v).map_err(|_| Error::Size(format!("field {v} too large")))
        };
        let (m, n, len) = (field()?, field()?, field()?);
        if r.len() != len.div_ceil(8) {
            return format_err(format!("expected {} payload bytes, found {}", len.div_ceil(8), r.len()));
        }
        let packed = BitSlice::<u8, Lsb0>::from_slice(r);
        if packed[len..].any() {
            return format_err("nonzero padding");
        }
        let payload: Bits = packed[..len].iter().by_vals().collect();
        Ok(Container { scheme, m, n, payload })
    }

    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        w.write_all(&self.to_bytes())?;
        Ok(())
    }

    pub fn read_from(mut r: impl Read) -> Result<Self> {
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        Self::from_bytes(&bytes)
    }
}
