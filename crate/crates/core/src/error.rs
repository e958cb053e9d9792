use thiserror::Error;

/// Errors produced by the geometry, volume and reduction routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("invalid generating function: {0}")]
    InvalidGenerator(String),

    #[error("profile vanishes at x = {0} inside the open interval; conjugate is undefined there")]
    ZeroProfile(f64),

    #[error("invalid interval: x1 = {x1} must exceed x0 = {x0}")]
    InvalidInterval { x0: f64, x1: f64 },

    #[error("operation requires a piecewise-linear generator; analytic profiles are unsupported here")]
    AnalyticUnsupported,

    #[error("parameter point out of region: {0}")]
    OutOfRegion(String),

    #[error("point ({x}, {y}) lies outside the closed triangle -1 <= x <= y - 1, 0 <= y <= 1")]
    OutsideTriangle { x: f64, y: f64 },

    #[error("polygon is not reducible: {0}")]
    NotReducible(String),

    #[error("reduction did not terminate within {0} steps")]
    NonTerminating(usize),

    #[error("no translation along the axis places the origin strictly inside the body")]
    NoInteriorBracket,

    #[error("{field}: {msg}")]
    Field { field: String, msg: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Prefix a validation error with the JSON field it came from.
    pub(crate) fn at(self, field: impl Into<String>) -> Self {
        match self {
            Error::Field { field: inner, msg } => Error::Field { field: format!("{}.{inner}", field.into()), msg },
            Error::Json(_) | Error::Io(_) | Error::Csv(_) => self,
            other => Error::Field { field: field.into(), msg: other.to_string() },
        }
    }
}
