//! Input model, query model, random generation and the brute-force oracle.

mod matrix;
mod oracle;
mod query;

pub use matrix::{gen_random_matrix, RankMatrix};
pub use oracle::{answer_signature, enumerate_queries, oracle_rmq, Signature};
pub use query::{Pos, QueryRect, Sidedness};
