use thiserror::Error;

use crate::families::Family;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("conjugation pattern violated: {0}")]
    Conjugation(String),

    #[error("node {index} = {re}{im:+}i is not in the open left half-plane")]
    NodeDomain { index: usize, re: f64, im: f64 },

    #[error("nodes {first} and {second} coincide")]
    DuplicateNode { first: usize, second: usize },

    #[error("at least one node is required")]
    NoNodes,

    #[error("{nodes} nodes but {targets} targets")]
    LengthMismatch { nodes: usize, targets: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },

    #[error("coefficient {index} is zero; the denominator would vanish at node {index}")]
    ZeroCoefficient { index: usize },

    #[error("ZERO-family coefficients must sum to 1, sum is {sum_re}{sum_im:+}i")]
    Normalization { sum_re: f64, sum_im: f64 },

    #[error("strict positive realness is undecidable within epsilon = {epsilon:e}")]
    Tolerance { epsilon: f64 },

    #[error("degenerate rational function: {0}")]
    DegenerateFunction(String),

    #[error("no admissible {family} coefficients found; last attempt {last_attempt:?}")]
    AdmissibleNotFound {
        family: Family,
        last_attempt: Vec<f64>,
    },

    #[error("p and delta do not share a denominator")]
    SharedDenominator,

    #[error("delta is not strictly positive real on the imaginary axis")]
    DeltaNotSpr,

    #[error("target {index} is zero; the reciprocal construction is unavailable")]
    ZeroTarget { index: usize },

    #[error("{family} coefficients are not admissible (delta is not strictly positive real)")]
    InadmissibleCoeffs { family: Family },

    #[error("threshold is unbounded: no finite r makes p + r*delta positive real")]
    UnboundedThreshold,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("threshold check failed: {0}")]
    ThresholdVerification(String),
}
