use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension {dim} exceeds the configured cap {cap}")]
    MatrixTooLarge { dim: usize, cap: usize },
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not a chain complex: {0}")]
    NotAChainComplex(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("requested dimension {requested} exceeds truncation {truncation}")]
    Truncation { requested: usize, truncation: usize },
    #[error("builder error: {0}")]
    Builder(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("functor is not injective on objects")]
    NotInjectiveOnObjects,
    #[error("not a bijection: {0}")]
    NotBijective(String),
    #[error("not s-unital: {0}")]
    NotSUnital(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
}
