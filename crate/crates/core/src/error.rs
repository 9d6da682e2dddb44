use alloc::string::String;

/// Errors raised by the core pipeline.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("loop {loop_index} has {samples} samples, at least {min} required")]
    TooFewSamples {
        loop_index: usize,
        samples: usize,
        min: usize,
    },
    #[error("loop {loop_index}: sample {index} repeats its predecessor")]
    RepeatedPoint { loop_index: usize, index: usize },
    #[error("loop {loop_index}: sample {index} is not finite")]
    NonFinitePoint { loop_index: usize, index: usize },
    #[error("curve has no loops")]
    EmptyCurve,
    #[error("resampling needs at least 8 samples per loop, got {0}")]
    SampleCount(usize),
    #[error("curve is not generic ({violations} violation(s))")]
    NotGeneric { violations: usize },
    #[error("inconsistent arrangement: {0}")]
    Inconsistent(String),
    #[error("face {face} has non-positive area {area}")]
    NonPositiveArea { face: usize, area: f64 },
    #[error("face {face} extends outside the density grid")]
    OutsideGrid { face: usize },
    #[error("invalid density: {0}")]
    InvalidDensity(String),
    #[error("density grids differ")]
    GridMismatch,
    #[error("non-positive Jacobian determinant {det} at ({x}, {y})")]
    NonPositiveJacobian { x: f64, y: f64, det: f64 },
    #[error("non-positive interpolated density at ({x}, {y}), t = {t}")]
    NonPositiveDensity { x: f64, y: f64, t: f64 },
    #[error("at least 4 time steps are required, got {0}")]
    TooFewSteps(usize),
    #[error("target {target} for face {face} is below the base integral {base}")]
    TargetBelowBase { face: usize, target: f64, base: f64 },
    #[error("no interior disc resolvable by the grid was found in face {face}")]
    NoInteriorDisc { face: usize },
    #[error("area vector has {got} entries, arrangement has {expected} bounded faces")]
    LengthMismatch { expected: usize, got: usize },
    #[error("face correspondence is not a bijection on {0} bounded faces")]
    NotABijection(usize),
    #[error("a bounded-area surface needs at least one bounded face")]
    BoundedSurfaceWithoutFaces,
    #[error("realized face integrals miss the target by {0}")]
    RealizationMismatch(f64),
}

pub type Result<T> = core::result::Result<T, Error>;
