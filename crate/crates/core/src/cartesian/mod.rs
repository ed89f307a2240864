//! Cartesian trees and the one-dimensional encodings built on them.

mod bp;
mod expected;
mod offsets;
mod tree;
mod types;

pub use bp::{decode_bp, encode_bp, BpIndex};
pub use expected::{constant_c, expected_offset_bits, expected_offset_bits_recurrence};
pub use offsets::{decode_offsets, encode_offsets, offset_weight};
pub use tree::{CartesianTree, NONE};
pub use types::{decode_types, encode_types, node_types, types_by_neighbors, NodeType, TYPE_MODEL_WEIGHTS};
