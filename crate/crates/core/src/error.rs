use thiserror::Error;

use crate::gf2::WeightDistribution;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimension {m} out of range (1..={max})")]
    DimensionOutOfRange { m: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid bit vector: {0}")]
    InvalidVector(String),

    #[error("invalid ring element {0:?}")]
    InvalidRingElement(String),

    #[error("invalid set specification: {0}")]
    InvalidSetSpec(String),

    #[error("faces are not an antichain: face {contained:?} lies inside face {container:?}")]
    NotAntichain {
        contained: Vec<usize>,
        container: Vec<usize>,
    },

    #[error(
        "dual coefficient A'_{index} is not an integer; the input distribution is inconsistent"
    )]
    NonIntegerDualCoefficient { index: usize },

    #[error("work budget exceeded: {required} bit operations needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("too large to materialize: {0}")]
    TooLarge(String),

    #[error("half-integral weight {twice_weight}/2 occurs {count} times")]
    NonIntegralWeight { twice_weight: i128, count: u64 },

    #[error("tuple count {count} at weight {weight} is not divisible by the kernel size {kernel}")]
    MultiplicityMismatch {
        weight: u64,
        count: u64,
        kernel: u64,
    },

    #[error("spec is outside every closed-form family: {0}")]
    UnsupportedFamily(String),

    #[error("closed-form table row produced an invalid entry: {0}")]
    InvalidTableRow(String),

    #[error("code has no nonzero codeword")]
    ZeroCode,

    #[error("projectivity methods disagree: columns say {by_columns}, MacWilliams says {by_macwilliams} (A'_1 = {dual_a1}, A'_2 = {dual_a2})")]
    MethodDisagreement {
        by_columns: bool,
        by_macwilliams: bool,
        dual_a1: String,
        dual_a2: String,
    },

    #[error("mu = q^2 w1 w2 / q^k is not an integer ({numerator} / {denominator})")]
    NonIntegralMu {
        numerator: String,
        denominator: String,
    },

    #[error("SRG parameters ({n1}, {k1}, {lambda}, {mu}) fail (N-K-1)mu = K(K-lambda-1)")]
    InconsistentSrgParameters {
        n1: String,
        k1: String,
        lambda: String,
        mu: String,
    },

    #[error("not a projective two-weight code: {0}")]
    NotTwoWeightProjective(String),

    #[error("graph is not strongly regular: {0}")]
    NotStronglyRegular(String),

    #[error("code is not self-orthogonal")]
    NotSelfOrthogonal,

    #[error("weight distributions disagree for spec {spec}: {left_engine} gave {left}, {right_engine} gave {right}")]
    DistributionMismatch {
        spec: String,
        left_engine: &'static str,
        left: Box<WeightDistribution>,
        right_engine: &'static str,
        right: Box<WeightDistribution>,
    },

    #[error("dimension disagreement for spec {spec}: generator rank {rank}, kernel count gives {kernel_dim}")]
    DimensionDisagreement {
        spec: String,
        rank: usize,
        kernel_dim: usize,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
