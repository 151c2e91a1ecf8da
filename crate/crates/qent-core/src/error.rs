use alloc::string::String;
use core::fmt;

/// Errors reported by constructors and operations in this crate.
///
/// Every variant carries enough context to produce a useful diagnostic;
/// numerical non-convergence is *not* an error (operations that optimize
/// return a `converged` flag instead) except where a result would be
/// meaningless, e.g. a normal form that fails its reconstruction check.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Amplitude vector length is not `2^n_qubits`.
    BadDimension { expected: usize, got: usize },
    /// State vector norm deviates from 1 beyond tolerance.
    NotNormalized { norm: f64 },
    /// Matrix is not Hermitian within tolerance (max entry deviation).
    NotHermitian { deviation: f64 },
    /// Operator trace deviates from 1 beyond tolerance.
    BadTrace { trace: f64 },
    /// Operator has an eigenvalue below the positivity floor.
    NotPositive { min_eigenvalue: f64 },
    /// A qubit/party label is outside `1..=n`.
    PartyOutOfRange { party: usize, n_qubits: usize },
    /// A party subset is empty, duplicated, or otherwise malformed.
    BadSubset(String),
    /// A split is not a partition of `{1..n}` or is not bipartite where required.
    BadSplit(String),
    /// Measurement basis vectors are not orthonormal within tolerance.
    NonOrthonormalBasis { deviation: f64 },
    /// Two operands act on different numbers of qubits or dimensions.
    DimensionMismatch { left: usize, right: usize },
    /// Input must be a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// Argument outside the documented domain (e.g. `epsilon <= 0`).
    BadArgument(String),
    /// Stabilizer generators violate a group invariant.
    BadStabilizer(String),
    /// Graph edges reference vertices outside `1..=n` or contain self-loops.
    BadGraph(String),
    /// A normal form failed its reconstruction tolerance after all root choices.
    ReconstructionFailed { fidelity: f64 },
    /// Malformed Pauli string literal.
    BadPauliLiteral(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BadDimension { expected, got } => {
                write!(f, "expected amplitude/matrix dimension {expected}, got {got}")
            }
            Error::NotNormalized { norm } => {
                write!(f, "state vector norm {norm} deviates from 1 beyond tolerance")
            }
            Error::NotHermitian { deviation } => {
                write!(f, "matrix deviates from Hermiticity by {deviation}")
            }
            Error::BadTrace { trace } => write!(f, "operator trace {trace} is not 1"),
            Error::NotPositive { min_eigenvalue } => {
                write!(f, "operator has negative eigenvalue {min_eigenvalue}")
            }
            Error::PartyOutOfRange { party, n_qubits } => {
                write!(f, "party {party} outside 1..={n_qubits}")
            }
            Error::BadSubset(msg) => write!(f, "bad party subset: {msg}"),
            Error::BadSplit(msg) => write!(f, "bad split: {msg}"),
            Error::NonOrthonormalBasis { deviation } => {
                write!(f, "measurement basis deviates from orthonormality by {deviation}")
            }
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            Error::BadArgument(msg) => write!(f, "bad argument: {msg}"),
            Error::BadStabilizer(msg) => write!(f, "bad stabilizer group: {msg}"),
            Error::BadGraph(msg) => write!(f, "bad graph: {msg}"),
            Error::ReconstructionFailed { fidelity } => {
                write!(f, "normal form reconstruction fidelity {fidelity} below tolerance")
            }
            Error::BadPauliLiteral(msg) => write!(f, "bad Pauli string: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
