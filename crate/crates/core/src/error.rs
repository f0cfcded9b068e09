//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DzmError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid too coarse: spacing {spacing} exceeds {limit} required by {what}")]
    GridTooCoarse {
        spacing: f64,
        limit: f64,
        what: &'static str,
    },

    #[error("matrix potential is not Hermitian: max deviation {max_dev:.3e} at point {index}")]
    NonHermitian { max_dev: f64, index: usize },

    #[error("spectral parameter not admissible: {0}")]
    InvalidSpectralPoint(String),

    #[error(
        "resonant shell: dual lattice point with | |xi|^2 - {lambda} | = {dist:.3e} < 1e-9; \
         boundary-rim evaluation on this grid is ill-defined"
    )]
    ResonantShell { lambda: f64, dist: f64 },

    #[error("constraint violation: {0}")]
    ConstraintViolation(String),

    #[error("quadrature did not converge: error estimate {err:.3e} above tolerance {tol:.3e}")]
    QuadratureNonConvergent { err: f64, tol: f64 },

    #[error("coincident kernel points")]
    CoincidentPoints,

    #[error("zero field")]
    ZeroField,

    #[error("empty radial shell in window [{r_min}, {r_max}]")]
    EmptyShells { r_min: f64, r_max: f64 },

    #[error("eigensolver did not converge within {applies} operator applications; \
             achieved residuals {achieved:?}")]
    NonConvergence { applies: usize, achieved: Vec<f64> },

    #[error("file format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
