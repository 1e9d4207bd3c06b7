use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid surgery: {0}")]
    InvalidSurgery(String),
    #[error("zero-signed edges present; collapse first")]
    MustCollapseFirst,
    #[error("three planes do not meet in hyperbolic space")]
    NoVertex,
    #[error("polygon construction failed: {0}")]
    ConstructionFailed(String),
    #[error("solver did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        trace: Vec<f64>,
    },
    #[error("inadmissible angles: {0}")]
    InadmissibleAngles(String),
    #[error("angle {0} outside the supported range (0, pi/2]")]
    UnsupportedRange(f64),
    #[error("pattern residual {0:.3e} exceeds acceptance threshold")]
    ResidualTooLarge(f64),
    #[error("lemma not applicable: {0}")]
    LemmaInapplicable(String),
    #[error("r = {0} too small: the two circle families overlap")]
    RTooSmall(f64),
    #[error("construction violated: {0}")]
    ConstructionViolated(String),
    #[error("bisection bracket not found: {0}")]
    BracketNotFound(String),
    #[error("non-triangular interstice: {0}")]
    NonTriangular(String),
    #[error("extraction inconsistency: {0}")]
    Extraction(String),
    #[error("adjacent edges: {0}")]
    AdjacentEdges(String),
    #[error("io: {0}")]
    Io(String),
    #[error("parse: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
