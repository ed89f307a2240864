//! Query structures: the grid structure for random inputs and two `2 × n`
//! structures.

mod grid;
mod label_index;
mod two_row;

pub use grid::{encode_grid, grid_lambda, label_of, GridSpace, GridStructure};
pub use label_index::LabelIndex;
pub use two_row::{encode_2xn, TwoRowIndex, TwoRowVariant};
