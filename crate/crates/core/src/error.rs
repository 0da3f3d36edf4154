use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("missing `qubits <n>` header")]
    MissingHeader,

    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("control and target are both qubit {0}")]
    ControlEqualsTarget(usize),

    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NonUnitary { deviation: f64 },

    #[error("invalid Pauli string: {0}")]
    InvalidPauli(String),

    #[error("invalid observable: {0}")]
    InvalidObservable(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("state is entangled and cannot be written as a product state")]
    EntangledInput,

    #[error("enumeration needs {required} weighted branches, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("shots must be at least 1")]
    ZeroShots,

    #[error("sequence count overflows for N = {0} (limit 38)")]
    Overflow(usize),

    #[error("complex residue {residue:.3e} in a quantity that must be real")]
    ImaginaryResidue { residue: f64 },

    #[error("matrix is not a valid density matrix: {0}")]
    InvalidDensityMatrix(String),
}
