use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("gcd undefined: both arguments are zero")]
    GcdUndefined,
    #[error("zero vector does not represent a projective point")]
    ZeroVector,
    #[error("vector is not K-rational")]
    NotRational,
    #[error("depth undefined at the point at infinity")]
    DepthUndefined,
    #[error("element fixes the point at infinity")]
    InCuspGroup,
    #[error("third coordinate vanishes")]
    AtInfinity,
    #[error("point is not in complex hyperbolic space (square norm {0} is not negative)")]
    NotNegative(String),
    #[error("precision cap of {bits} bits reached without deciding; enclosure {enclosure}")]
    Precision { bits: u32, enclosure: String },
    #[error("iteration limit {0} exceeded")]
    IterationLimit(usize),
    #[error("closure exceeded {0} elements")]
    ClosureCap(usize),
    #[error("reflection not integral for this form: square norm {0}")]
    NotIntegralForm(String),
    #[error("projective order mismatch: expected {expected}, got {actual:?}")]
    OrderMismatch { expected: u32, actual: Option<u32> },
    #[error("pair ({0}, {1}) is not an inverse pair")]
    InvalidPair(usize, usize),
    #[error("matrix is not in U(J, O7)")]
    NotInGroup,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}
