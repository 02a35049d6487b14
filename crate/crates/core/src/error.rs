use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative norm square {0}")]
    NegativeNormSquare(f64),
    #[error("multivector is not a null vector (X² = {0})")]
    NotNull(f64),
    #[error("bivector is not a unit bivector (B² = {0})")]
    NonUnitBivector(f64),
    #[error("meet is degenerate (magnitude {0})")]
    DegenerateMeet(f64),
    #[error("point pair is imaginary")]
    ImaginaryPair,
    #[error("lines are parallel")]
    ParallelLines,
    #[error("lines are skew (distance {0})")]
    SkewLines(f64),
    #[error("blade has zero magnitude")]
    ZeroBlade,
    #[error("frame is not right-handed orthonormal: {0}")]
    DegenerateFrame(String),
    #[error("invalid robot model: {0}")]
    InvalidModel(String),
    #[error("robot has no spherical wrist")]
    NoSphericalWrist,
    #[error("unsupported joint pattern: {0}")]
    UnsupportedPattern(String),
    #[error("joint axes are parallel: {0}")]
    ParallelAxes(String),
    #[error("target is unreachable")]
    UnreachableTarget,
    #[error("redundancy parameter is infeasible: {0}")]
    InfeasibleParameter(String),
    #[error("no solution passed the residual check")]
    NoSolution,
    #[error("configuration has {got} values, model has {expected} joints")]
    ConfigurationLength { expected: usize, got: usize },
    #[error("numerical IK did not converge (residual {0})")]
    NotConverged(f64),
    #[error("invalid pose: {0}")]
    InvalidPose(String),
}

pub type Result<T> = std::result::Result<T, Error>;
