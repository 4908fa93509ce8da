use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate lattice: |det| = {det:e}")]
    DegenerateLattice { det: f64 },

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("location failure at ({x}, {y})")]
    LocationFailure { x: f64, y: f64 },

    #[error("non-measurable transect: line (theta = {theta}, offset = {offset}) runs along a tile edge")]
    NonMeasurableTransect { theta: f64, offset: f64 },

    #[error("normalize first: domain area is {area}, expected 1")]
    NormalizeFirst { area: f64 },

    #[error("tail did not converge below radius {max_radius} (best head sum {best_head})")]
    TailDidNotConverge { max_radius: f64, best_head: f64 },

    #[error("quadrature did not converge: estimate {estimate}, error {error:e} after {nodes} nodes")]
    QuadratureNonConvergence {
        estimate: f64,
        error: f64,
        nodes: usize,
    },

    #[error("empty segment: line misses the box")]
    EmptySegment,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
