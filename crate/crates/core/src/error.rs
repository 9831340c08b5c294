use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported Bessel order {0}")]
    UnsupportedOrder(f64),

    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),

    #[error("invalid domain specification: {0}")]
    InvalidSpec(String),

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("mesh rejected: minimum angle {min_angle:.3}° is below {limit}°")]
    MeshQuality { min_angle: f64, limit: f64 },

    #[error(
        "solver did not converge after {iterations} iterations (relative residual {residual:.3e})"
    )]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("invalid conformal map: {0}")]
    InvalidMap(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::MeshQuality { .. }
        )
    }
}
