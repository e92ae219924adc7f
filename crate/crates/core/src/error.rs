use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// Variants that reject a mathematical object carry enough data (defect
/// forms, violated triples, kernels) to diagnose the failure without
/// recomputing anything.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("form has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("interior product of a 0-form")]
    DegreeZero,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not skew-symmetric")]
    NotSkew,

    #[error("skew matrix has odd size {0}")]
    OddSize(usize),

    #[error("the zero polynomial has no Sturm sequence")]
    ZeroPolynomial,

    #[error("matrix is singular")]
    Singular,

    #[error("determinant {0} is not a unit of the scalar ring")]
    NotInvertibleOverRing(String),

    #[error("dimension {0} is outside the supported range 1..=8")]
    UnsupportedDimension(usize),

    #[error("Jacobi identity fails on {}", format_triples(.violations))]
    JacobiViolation { violations: Vec<JacobiDefect> },

    #[error("1-form is not closed: d(theta) = {defect}")]
    ThetaNotClosed { defect: String },

    #[error("1-form is zero")]
    ThetaZero,

    #[error("vector is not transversal: theta(A) = {value}, expected 1")]
    NotTransversal { value: String },

    #[error("form is not closed for the twisted differential: defect {defect}")]
    NotClosed { defect: String },

    #[error("d(omega) != theta ^ omega, defect {defect}")]
    NotLcs { defect: String },

    #[error("2-form is degenerate (Pfaffian 0); kernel has dimension {}", .kernel.len())]
    Degenerate { kernel: Vec<String> },

    #[error("contact structures need odd dimension, got {0}")]
    EvenDimension(usize),

    #[error("eta ^ (d eta)^n vanishes")]
    NotContact,

    #[error("LCS structure is not of the first kind")]
    NotFirstKind,

    #[error("matrix is not a derivation; defect on pairs {pairs:?}")]
    NotADerivation { pairs: Vec<(usize, usize)> },

    #[error("eta o D is not zero")]
    EtaDNotZero,

    #[error("2-form is not symplectic: {reason}")]
    NotSymplectic { reason: String },

    #[error("derivation does not preserve the symplectic form")]
    NotSymplecticDerivation,

    #[error("trigonometric value at {0} is not in {{0, 1, -1}}")]
    UnsupportedAngle(String),

    #[error("spectrum not of rotation-plus-nilpotent type: {0}")]
    UnsupportedSpectrum(String),

    #[error("factors of the exponent do not commute")]
    NonCommutingDecomposition,

    #[error("unsupported t0 {0}; expected pi/2, pi or 2pi")]
    UnsupportedT0(String),

    #[error("group element kinds do not match")]
    KindMismatch,

    #[error("unknown catalog entry '{0}'")]
    UnknownName(String),

    #[error("catalog entry '{name}' needs parameter '{param}'")]
    MissingParam { name: String, param: String },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("invalid algebra file: {0}")]
    Json(String),
}

/// One failed Jacobi triple `(i, j, k)` (display indices) and the nonzero
/// cyclic sum, rendered as a vector string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiDefect {
    pub triple: (usize, usize, usize),
    pub defect: String,
}

fn format_triples(v: &[JacobiDefect]) -> String {
    v.iter()
        .map(|d| {
            format!(
                "({},{},{}) -> {}",
                d.triple.0, d.triple.1, d.triple.2, d.defect
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
