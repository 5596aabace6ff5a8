use thiserror::Error;

/// Errors raised by the arithmetic, lattice and classification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{k} has no inverse modulo {n}")]
    NoInverse { k: i64, n: i64 },

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(i64, i64),

    #[error("divisor class does not live on {0}")]
    SurfaceMismatch(String),

    #[error("{0} is not the class of a curve (D^2 + D.K is odd)")]
    AdjunctionParity(String),

    #[error("Hirzebruch invariant e={0} is outside 0..=64")]
    InvariantOutOfRange(i64),

    #[error("no invariant branch of contact order {order} modulo {n}")]
    NoInvariantBranch { order: i64, n: i64 },

    #[error("local degree {degree} is not coprime to {d}; lift order changes, use subgroup analysis instead")]
    LiftNotCoprime { degree: i64, d: i64 },

    #[error("quotient is not a smooth Hirzebruch surface: {0}")]
    QuotientNotSmooth(String),

    #[error("{d} does not divide {n}")]
    NotADivisor { d: i64, n: i64 },

    #[error("equivariant model invariant violated: {0}")]
    ModelInvariant(String),

    #[error("degenerate member: {0}")]
    Degenerate(String),

    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unsupported order m={0}")]
    UnsupportedOrder(i64),
}

pub type Result<T> = std::result::Result<T, Error>;
