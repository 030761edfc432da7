pub mod bitarray;
pub mod error;
pub mod estimation;
pub mod fermion_mapping;
pub mod grouping;
pub mod operators;
pub mod paulis;

#[cfg(test)]
#[path = "../tests/common/oracle.rs"]
mod test_support;

pub use bitarray::{broadcast_shapes, ArrayLike, BitArray};
pub use error::{PauliError, Result};
pub use estimation::{PauliEstimates, StateVector};
pub use fermion_mapping::{FermionMapping, Ladder};
pub use grouping::{adjacency_matrix, clique_cover, diagonalize, CliffordCircuit, Partition};
pub use operators::{
    pool_commutators, Operator, OperatorArrayType1, OperatorArrayType2, WeightedPauliArray, DEFAULT_SIMPLIFY_THRESHOLD,
};
pub use paulis::{CliffordGate, PauliArray, PhaseArray, SignArray};
