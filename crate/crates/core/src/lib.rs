//! Encodings and query structures for range maximum queries on one- and
//! two-dimensional arrays.
//!
//! Inputs are [`RankMatrix`] values: an `m × n` grid holding a permutation of
//! `0..m·n`. Every scheme turns a matrix into an exact-length bit payload and
//! rebuilds, from those bits alone, something that answers queries. The
//! brute-force oracle in [`model`] is the reference every scheme is checked
//! against.
//!
//! Indexing convention: [`Pos`] and [`QueryRect`] are 1-based (row, column),
//! while the internal trees and bitvectors use 0-based indices.

pub mod bitkit;
pub mod cartesian;
pub mod container;
pub mod ds;
pub mod error;
pub mod measure;
pub mod merge;
pub mod model;
pub mod random2d;
pub mod scheme;

pub use error::{Error, Result};
pub use model::{Pos, QueryRect, RankMatrix, Sidedness};
pub use scheme::{Mismatch, RmqIndex, Scheme};
