use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("inverted or empty bounds [{min}, {max}]")]
    InvertedBounds { min: f64, max: f64 },
    #[error("{n} interior cells cannot host ghost width {ghost} (need n >= 2*ghost)")]
    TooFewCells { n: usize, ghost: usize },
    #[error("ghost width {0} is below the minimum of 4")]
    GhostTooNarrow(usize),
    #[error("boundary configuration: {0}")]
    Boundary(String),
    #[error("field shape does not match grid")]
    ShapeMismatch,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BasisError {
    #[error("non-finite basis input (s2 = {s2}, t = {t})")]
    NonFinite { s2: f64, t: f64 },
    #[error("tension s2 = {s2} inconsistent with basis kind {kind}")]
    SignMismatch { kind: &'static str, s2: f64 },
    #[error("trigonometric tension s2 = {0} violates the admissibility bound")]
    Inadmissible(f64),
    #[error("reproduction system is singular or ill-conditioned (estimate {0:e})")]
    IllConditioned(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("non-physical state at cell {cell:?}: rho = {rho}, p = {p}")]
    NonPhysical {
        cell: (usize, usize),
        rho: f64,
        p: f64,
    },
    #[error("non-finite value in stage {stage} at t = {t}")]
    NonFinite { stage: usize, t: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown problem preset '{0}'")]
    UnknownProblem(String),
    #[error("problem '{0}' has no analytic reference solution")]
    MissingReference(String),
    #[error("riemann problem generates vacuum")]
    Vacuum,
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for SolverError {
    fn from(e: std::io::Error) -> Self {
        SolverError::Io(e.to_string())
    }
}

pub type Result<T, E = SolverError> = std::result::Result<T, E>;
