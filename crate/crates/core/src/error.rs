use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PauliError {
    #[error("shapes {0:?} and {1:?} cannot be broadcast together")]
    Broadcast(Vec<usize>, Vec<usize>),

    #[error("last-axis extents differ: {0} vs {1}")]
    LastAxisMismatch(usize, usize),

    #[error("number of qubits differ: {0} vs {1}")]
    QubitMismatch(usize, usize),

    #[error("invalid Pauli label character {0:?}")]
    InvalidLabelChar(char),

    #[error("inconsistent label length: expected {expected}, found {found}")]
    InconsistentLabels { expected: usize, found: usize },

    #[error("matrix is singular over GF(2)")]
    Singular,

    #[error("expected a square 2-d bit matrix, found shape {0:?}")]
    NotSquare(Vec<usize>),

    #[error("cannot reshape {found} elements into shape with {expected} elements")]
    ElementCount { expected: usize, found: usize },

    #[error("index {index} out of bounds for axis of length {len}")]
    IndexOutOfBounds { index: usize, len: usize },

    #[error("axis {axis} out of bounds for array with {ndim} dimensions")]
    AxisOutOfBounds { axis: usize, ndim: usize },

    #[error("qubit {qubit} out of range for {num_qubits} qubits")]
    InvalidQubit { qubit: usize, num_qubits: usize },

    #[error("two-qubit gate needs distinct qubits, got {0} twice")]
    RepeatedQubit(usize),

    #[error("{num_qubits} qubits exceeds the dense limit of {limit}")]
    TooManyQubits { num_qubits: usize, limit: usize },

    #[error("strings {0} and {1} do not commute")]
    NotCommuting(usize, usize),

    #[error("malformed adjacency matrix: {0}")]
    MalformedAdjacency(String),

    #[error("no estimate available for Pauli string {0}")]
    MissingEstimate(String),

    #[error("estimates carry no covariance block")]
    MissingCovariance,

    #[error("invalid state vector: {0}")]
    InvalidState(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid JSON document: {0}")]
    Json(String),
}

pub type Result<T, E = PauliError> = std::result::Result<T, E>;
