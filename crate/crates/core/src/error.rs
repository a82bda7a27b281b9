use thiserror::Error;

/// Errors produced by the geometry, inertia, rotor and fitting routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("curves touch or intersect near segment {segment_a} of the first curve and segment {segment_b} of the second (distance {distance:e})")]
    GeometricDegeneracy {
        segment_a: usize,
        segment_b: usize,
        distance: f64,
    },

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("unsupported top classification {0}: level formula only covers spherical and symmetric tops; inspect classify_top output")]
    UnsupportedClassification(String),

    #[error("assignment error: unknown names {}", .missing.join(", "))]
    Assignment { missing: Vec<String> },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("singular fit: {0}")]
    SingularFit(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
