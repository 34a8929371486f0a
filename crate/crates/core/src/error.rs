use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A step is a multiple of `n`, which would produce loops.
    #[error("I({n},{k},{l}) has loops: a step is divisible by n")]
    Loop { n: i64, k: i64, l: i64 },

    /// The graph splits into `m` copies of I(n/m, k/m, l/m).
    #[error("I-graph is disconnected: gcd(n,k,l) = {m}")]
    Disconnected { m: i64 },

    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("Laurent polynomial is not bimonic")]
    NotBimonic,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error(
        "precision exhausted at {bits} bits (distance to nearest integer {distance:.3e}); retry with more bits"
    )]
    PrecisionExhausted { bits: u32, distance: f64 },

    #[error("{value} is not {multiplier}*{n}*a^2 for any integer a")]
    NotASquare {
        value: String,
        multiplier: u32,
        n: u64,
    },

    #[error("root iteration did not converge after {iterations} iterations")]
    ConvergenceFailure { iterations: usize },

    #[error(
        "root classification failed: {outside} outside, {inside} inside, {near_unit} near the unit circle (expected {expected} outside and inside)"
    )]
    ClassificationFailure {
        outside: usize,
        inside: usize,
        near_unit: usize,
        expected: usize,
    },

    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),
}
