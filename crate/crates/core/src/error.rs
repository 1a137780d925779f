//! Error type shared by the whole crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong while building models or evaluating them.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A caller-supplied argument is structurally unusable (empty slice,
    /// mismatched lengths, non-finite number, out-of-range index, ...).
    InvalidInput { what: String },
    /// Weights or probabilities do not form a distribution.
    InvalidDistribution { what: String },
    /// A quadrature range captured too little probability mass to trust the
    /// integral. Carries the mass actually seen.
    RangeTooNarrow { mass: f64 },
    /// A sample set is too small (or too concentrated) to estimate a density.
    DegenerateSample,
    /// The requested quantity needs two derivatives of the kernel and the
    /// kernel does not have them.
    NonSmoothKernel,
    /// A density evaluation underflowed to the point where log-domain
    /// quantities are meaningless. Carries the abscissa.
    Underflow { at: f64 },
    /// Two mixture components sit on the same location, so the interval
    /// partition around component centers is undefined.
    DuplicateLocations { location: f64 },
    /// A projection direction was not unit length.
    NotUnitNorm { norm: f64 },
    /// A source marginal has a single atom, so it admits no entropy-dropping
    /// projection and cannot seed candidate directions.
    DegenerateMarginal { index: usize },
    /// A requested neighborhood around one candidate direction reaches
    /// another candidate, so the local flatness check is not meaningful.
    NeighborhoodContainsOtherCandidate { distance: f64 },
    /// The joint atom count exceeds the exhaustive-enumeration gate.
    EnumerationGateExceeded { atoms: usize },
    /// An operation requires the source variances to agree and they do not.
    UnequalVariance { left: f64, right: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput { what } => write!(f, "invalid input: {what}"),
            Error::InvalidDistribution { what } => {
                write!(f, "invalid distribution: {what}")
            }
            Error::RangeTooNarrow { mass } => write!(
                f,
                "quadrature range too narrow: captured probability mass {mass} \
                 (want within 1e-6 of 1)"
            ),
            Error::DegenerateSample => {
                write!(f, "sample set too small or degenerate for density estimation")
            }
            Error::NonSmoothKernel => {
                write!(f, "kernel is not twice differentiable")
            }
            Error::Underflow { at } => {
                write!(f, "density underflow at y = {at}")
            }
            Error::DuplicateLocations { location } => {
                write!(f, "two mixture components share the location {location}")
            }
            Error::NotUnitNorm { norm } => {
                write!(f, "projection direction has norm {norm}, want 1")
            }
            Error::DegenerateMarginal { index } => {
                write!(f, "source marginal {index} has a single atom")
            }
            Error::NeighborhoodContainsOtherCandidate { distance } => write!(
                f,
                "neighborhood radius reaches another candidate direction \
                 (distance {distance})"
            ),
            Error::EnumerationGateExceeded { atoms } => write!(
                f,
                "joint support has {atoms} atoms, above the exhaustive-search gate"
            ),
            Error::UnequalVariance { left, right } => write!(
                f,
                "source variances differ: {left} vs {right}"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
