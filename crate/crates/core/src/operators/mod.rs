//! Weighted Pauli arrays, operators and operator arrays.
//!
//! Nothing here simplifies implicitly: sums concatenate term lists and
//! products keep every pairwise term until [`Operator::simplify`] (or the
//! array equivalents) is called.

mod io;
mod operator;
mod type1;
mod type2;
mod weighted;

pub use io::{OperatorFile, TermRecord};
pub use operator::{pool_commutators, Operator, DEFAULT_DENSE_LIMIT};
pub use type1::OperatorArrayType1;
pub use type2::OperatorArrayType2;
pub use weighted::WeightedPauliArray;

/// Default absolute weight threshold for simplification.
pub const DEFAULT_SIMPLIFY_THRESHOLD: f64 = 1e-12;
