use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("group has positive free rank, so its order is infinite")]
    InfiniteOrder,
    #[error("not a Seifert fibered homology sphere: {0}")]
    NotHomologySphere(String),
    #[error("multiplier {k} is not coprime to fiber order {a}")]
    CoprimalityViolation { k: i64, a: i64 },
    #[error("pinching needs at least 4 exceptional fibers, got {0}")]
    TooFewFibers(usize),
    #[error("target angle {target} outside reachable interval [{lo}, {hi}]")]
    TargetOutOfRange { target: f64, lo: f64, hi: f64 },
    #[error("witness synthesis failed: {0}")]
    SynthesisFailed(String),
    #[error("representation counting needs exactly 3 exceptional fibers, got {0}")]
    UnsupportedFiberCount(usize),
    #[error("rotation data has t = {0} < 3 non-central fibers (reducible)")]
    ReducibleData(usize),
    #[error("relator residual {residual:e} exceeds tolerance {tolerance:e}")]
    InvalidRepresentation { residual: f64, tolerance: f64 },
    #[error("Newton solver exhausted {restarts} restarts (best residual {best:e})")]
    SolverExhausted { restarts: usize, best: f64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("geometry labels {0} and {1} belong to different figures")]
    MixedFigure(String, String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
