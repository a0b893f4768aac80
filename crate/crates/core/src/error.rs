use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid strategy parameters r={r}, alpha={alpha}: {reason}")]
    InvalidParams { r: f64, alpha: f64, reason: &'static str },

    #[error("invalid ray: {0}")]
    InvalidRay(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("angle beta={beta} outside [{lo}, {hi}]")]
    BetaOutOfRange { beta: f64, lo: f64, hi: f64 },

    #[error("degenerate configuration: {0}")]
    Degenerate(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("derivative sign pattern violated for r={r}, alpha={alpha}: C'(alpha)={at_alpha}, C'(2 alpha)={at_two_alpha}")]
    BracketFailure { r: f64, alpha: f64, at_alpha: f64, at_two_alpha: f64 },

    #[error("no sign change of {what} on [{lo}, {hi}]")]
    NoSignChange { what: &'static str, lo: f64, hi: f64 },

    #[error("parameter box is empty for target ratio {target}: {reason}")]
    InfeasibleTarget { target: f64, reason: String },

    #[error("path never detects the ray (horizon too short)")]
    NoDetection,

    #[error("terrain budget exhausted before a legal return exists at x={x}")]
    BudgetInfeasible { x: f64 },

    #[error("return leg from ({x}, {y}) is blocked by the terrain")]
    ReturnBlocked { x: f64, y: f64 },

    #[error("ray is unreachable above the terrain")]
    Unreachable,

    #[error("invalid terrain: {0}")]
    InvalidTerrain(String),

    #[error("monotonicity violated at d_y={d_y}")]
    MonotonicityViolation { d_y: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
