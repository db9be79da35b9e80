use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("degenerate polyline: at least two points are required")]
    DegeneratePolyline,
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("invalid anisotropy exponent p = {0}; expected p >= 1")]
    InvalidAnisotropy(f64),
    #[error("invalid boundary datum: {0}")]
    InvalidDatum(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("non-regular level t = {level}")]
    NonRegularLevel { level: f64 },
    #[error("malformed crossing set: {0}")]
    MalformedCrossingSet(String),
    #[error("anisotropy admits only segments (p = {0} is strictly convex and smooth)")]
    SegmentsOnly(f64),
    #[error("boundary datum must be non-constant")]
    ConstantDatum,
    #[error("no regular levels")]
    NoRegularLevels,
    #[error("nesting violated between levels {lower} and {upper}")]
    NestingViolated { lower: f64, upper: f64 },
    #[error("cantor stage {0} is too large (maximum 20)")]
    CantorStageTooLarge(u32),
    #[error("reversed trapezoid inequality fails at stage {stage} for the fat variant")]
    ReversedInequalityFails { stage: u32 },
    #[error("non-tree adjacency: {0}")]
    NonTreeAdjacency(String),
    #[error("decomposition incomplete: residual jump {residual} across surface {surface}")]
    DecompositionIncomplete { surface: usize, residual: f64 },
    #[error("incomparable fields: {0}")]
    Incomparable(String),
}
