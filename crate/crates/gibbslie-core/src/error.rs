use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("structure constants violate antisymmetry at ({0}, {1}, {2})")]
    Antisymmetry(usize, usize, usize),

    #[error("Jacobi identity fails at basis triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),

    #[error("subspace is not an ideal: [e_{0}, v_{1}] escapes the span")]
    NotAnIdeal(usize, usize),

    #[error("subspace is not a subalgebra")]
    NotASubalgebra,

    #[error("candidate Cartan subalgebra rejected: {0}")]
    CartanRejected(String),

    #[error("eigensolver failure: {0}")]
    Eigensolver(String),

    #[error("root decomposition failed: {0}")]
    Decomposition(String),

    #[error("root space of {root} has mixed signature (decomposition defect)")]
    MixedSignRoot { root: String },

    #[error("element x0 is not regular: root {0} vanishes on it")]
    NotRegular(String),

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("element not contained in the Cartan subalgebra")]
    NotInCartan,

    #[error("no supplied Cartan hint contains the element; conjugation into a Cartan is not performed")]
    NeedsConjugation,

    #[error("cone has no {0} representation and conversion is unavailable")]
    MissingRepresentation(&'static str),

    #[error("unknown representation family: {0}")]
    UnknownFamily(String),

    #[error("imaginary part of the strip parameter must lie in [0, beta]; got {0}")]
    OutsideStrip(f64),

    #[error("mixture weights must be nonnegative and sum to 1")]
    BadWeights,

    #[error("mixture requires states with a common dynamics generator and beta")]
    MismatchedDynamics,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
