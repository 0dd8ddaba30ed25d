use thiserror::Error;

/// Errors raised by the geometric and bound computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate triple: points must be pairwise distinct")]
    DegenerateTriple,

    #[error("angle undefined: {0} coincides with the apex")]
    DegenerateAngle(&'static str),

    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),

    #[error("need at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("consecutive vertices {0} and {1} coincide")]
    DuplicateVertex(usize, usize),

    #[error("edges meeting at vertex {0} are anti-parallel")]
    AntiParallel(usize),

    #[error("segment endpoints coincide")]
    DegenerateSegment,

    #[error("curve not embedded: edges {0} and {1} intersect")]
    NotEmbedded(usize, usize),

    #[error("scale must be positive, got {0}")]
    InvalidScale(f64),

    #[error("rotation must be orthogonal with determinant +1")]
    InvalidRotation,

    #[error("invalid arc position: {0}")]
    InvalidPosition(String),

    #[error("coincident arclength coordinates")]
    CoincidentCoordinates,

    #[error("{function}: argument {value} outside domain ({domain})")]
    Domain {
        function: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("thickness is zero or undefined")]
    ZeroThickness,

    #[error("knot is not at unit thickness (thickness {0})")]
    NotUnitThickness(f64),

    #[error("no bound known for link pattern {0}")]
    NoBoundKnown(String),

    #[error("invalid link pattern {0:?}")]
    InvalidPattern(String),

    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
