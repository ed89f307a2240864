//! Bit-exact primitives shared by every encoding.
//!
//! All payloads are LSB-first: the first bit written is bit 0 of the first
//! byte, and fixed-width integer fields are written least significant bit
//! first.

pub mod arith;
mod bits;
pub mod gamma;
pub mod mixed_radix;
mod rank_select;

pub use arith::{arith_decode, arith_encode, StaticModel};
pub use bits::{bits_from_str, bits_to_string, ceil_log2, BitReader, BitWriter, Bits};
pub use gamma::{gamma_decode, gamma_encode, gamma_len};
pub use mixed_radix::{pop, read_biguint, width_of, write_biguint, MixedRadixAccumulator};
pub use rank_select::IndexedBitvector;
