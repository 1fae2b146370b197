use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}]: need finite endpoints with lo < hi")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("point {value} lies outside [{lo}, {hi}]")]
    OutsideDomain { value: f64, lo: f64, hi: f64 },

    #[error("derivative of order {required} requested but only {available} available")]
    OrderExceeded { required: usize, available: usize },

    #[error("empty node multiset")]
    EmptyNodes,

    #[error("node multiplicity must be positive (node {node})")]
    ZeroMultiplicity { node: f64 },

    #[error("non-finite value in `{field}`")]
    NonFinite { field: &'static str },

    #[error("nodes {first} and {second} are distinct but closer than the merge threshold")]
    NearlyEqualNodes { first: f64, second: f64 },

    #[error("m = {m} out of range for n = {n} (need {min} <= m <= n - 1)")]
    InvalidOrder { n: usize, m: usize, min: usize },

    #[error("n = {n} is too small (need n >= {min})")]
    OrderTooSmall { n: usize, min: usize },

    #[error("length mismatch: `{left}` has {left_len} entries, `{right}` has {right_len}")]
    LengthMismatch {
        left: &'static str,
        left_len: usize,
        right: &'static str,
        right_len: usize,
    },

    #[error("`{field}` must not be empty")]
    Empty { field: &'static str },

    #[error("negative weight {value} at index {index}")]
    NegativeWeight { index: usize, value: f64 },

    #[error("`{field}` sums to {sum}, expected 1")]
    NotNormalized { field: &'static str, sum: f64 },

    #[error("probability {value} at index {index} outside [0, 1]")]
    InvalidProbability { index: usize, value: f64 },

    #[error("reference probability q[{index}] is zero")]
    ZeroReference { index: usize },

    #[error("q[{index}] = 0 with p[{index}] > 0 and the generator declares no slope at infinity")]
    MissingLimit { index: usize },

    #[error("ratio interval [{a}, {b}] must satisfy a <= 1 <= b and a < b")]
    InvalidRatioRange { a: f64, b: f64 },

    #[error("direct and delegated evaluations disagree by {gap:e}")]
    DelegationMismatch { gap: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
