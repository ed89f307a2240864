//! Encodings for random inputs: prefix maxima for 1- and 2-sided queries,
//! regions for 3- and 4-sided queries.

mod prefix;
mod region3;
mod region4;

pub use prefix::{encode_1sided, encode_2sided, position_width, OneSidedIndex, TwoSidedIndex};
pub use region3::{encode_3sided, Region3Index};
pub use region4::{encode_4sided_regions, Region4Index};
