use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported Daubechies order {0} (supported: 1..=10)")]
    UnsupportedOrder(usize),
    #[error("cascade depth {0} exceeds the limit of {max}", max = crate::wavelet::MAX_DEPTH)]
    DepthLimit(u32),
    #[error("refinement eigenproblem failed: {0}")]
    Construction(String),
    #[error("resolution error: {0}")]
    Resolution(String),
    #[error("alignment error: {0}")]
    Alignment(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("index error: {0}")]
    Index(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
