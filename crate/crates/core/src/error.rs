use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("row {row}: {reason}")]
    BadRow { row: usize, reason: String },

    #[error("message space 2^{log2_required} exceeds the enumeration cap 2^{log2_cap}")]
    ResourceLimit { log2_required: u32, log2_cap: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("MacWilliams transform is not integral at weight {weight} (M = {m})")]
    NonIntegralTransform { weight: usize, m: String },

    #[error("code size {m} differs from 2^(n/2) for n = {n}; use the scaled analysis (nu != 1)")]
    Normalization { n: usize, m: String },

    #[error("undefined distance: code has fewer than two codewords")]
    UndefinedDistance,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("not representable in the even formally self-dual form: {0}")]
    NotGleasonRepresentable(String),

    #[error("tail-biting construction failed: {0}")]
    Construction(String),

    #[error("no linear complement found ({tried} candidates tried, best dimension {best_dim} of {target_dim})")]
    NoLinearComplement { tried: usize, best_dim: usize, target_dim: usize },

    #[error("series error: {0}")]
    Series(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
