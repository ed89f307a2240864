//! Merge bits, the stacked small-`m` encoding, the three-row encoding and
//! exhaustive counting of equivalence classes.

mod classes;
mod joint;
mod stacked;
mod three_row;

pub use classes::{count_equiv_classes, MAX_CLASS_CELLS};
pub use joint::JointCt;
pub use stacked::{encode_stacked, stacked_bits, StackedIndex};
pub use three_row::{encode_3rows, three_row_rate, ThreeRowIndex, ThreeRowParts};
