use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point is not on the {space} model surface (residual {residual:e})")]
    OffSurface { space: &'static str, residual: f64 },

    #[error("point is on the lower sheet of the hyperboloid")]
    LowerSheet,

    #[error("point must lie strictly inside the unit ball (norm {norm})")]
    OutsideBall { norm: f64 },

    #[error("half-space height must be positive, got {0}")]
    NonPositiveHeight(f64),

    #[error("separation is not space-like (form value {0:e})")]
    NotSpaceLike(f64),

    #[error("operation `{op}` is not supported in {space}")]
    Unsupported { op: &'static str, space: &'static str },

    #[error("matrix does not preserve the quadratic form (defect {0:e})")]
    NotAnIsometry(f64),

    #[error("depth {0} outside the supported range 0..=8")]
    DepthOutOfRange(usize),

    #[error("need at least 4 points for a convex hull, got {0}")]
    TooFewPoints(usize),

    #[error("input points are affinely dependent ({0})")]
    Degenerate(&'static str),

    #[error("face {face} is not space-like")]
    NonSpaceLikeFace { face: usize },

    #[error("surface is not closed: edge ({0}, {1}) has a single incident face")]
    OpenSurface(usize, usize),

    #[error("no stable fundamental set at this depth: {0}")]
    NoFundamentalSet(String),

    #[error("face plane passes through the origin; its pole is at infinity")]
    PoleAtInfinity,

    #[error("face plane is tangent to the unit sphere; its pole is an ideal point")]
    IdealPole,

    #[error("origin is not interior to the polytope")]
    OriginNotInterior,

    #[error("not a generalized hyperbolic polyhedron: edge ({0}, {1}) misses the open unit ball")]
    EdgeMissesBall(usize, usize),

    #[error("curvature signs are mixed; no table row applies")]
    MixedCurvature,

    #[error("could not sample an admissible projective map after {0} attempts")]
    SamplingExhausted(usize),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
