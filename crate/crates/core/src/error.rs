use thiserror::Error;

#[derive(Debug, Error)]
pub enum TcccError {
    #[error("unsupported cone: {0}")]
    UnsupportedCone(String),
    #[error("fan is not complete: {0}")]
    Incomplete(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("divisor is not ample: {0}")]
    AmplenessRequired(String),
    #[error("deformation path construction failed: {0}")]
    PathConstruction(String),
    #[error("empty bounding box")]
    EmptyBox,
    #[error("point lies outside the arrangement box")]
    OutOfDomain,
    #[error("arrangement does not refine the region: {0}")]
    RefinementRequired(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("non-integral divisor: {0}")]
    NonIntegral(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = TcccError> = std::result::Result<T, E>;
