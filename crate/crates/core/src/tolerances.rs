//! Numeric tolerances and guard thresholds, collected in one place so each
//! magic number is named, documented, and used consistently.

/// Densities below this are treated as numerically zero when a logarithm is
/// about to be taken. Well above f64's subnormal range but far below any
/// density this crate meaningfully integrates.
pub const UNDERFLOW_FLOOR: f64 = 1e-300;

/// A quadrature pass must capture at least `1 - MASS_DEFICIT` of the
/// distribution's probability mass or the integral is rejected.
pub const MASS_DEFICIT: f64 = 1e-6;

/// Mixture component locations closer than this are duplicates as far as
/// the interval partition around component centers is concerned.
pub const DUPLICATE_LOCATION_TOL: f64 = 1e-12;

/// Mixture weights may miss summing to one by at most this before they are
/// renormalized; a larger deficit is an input error.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Discrete probability vectors must sum to one within this.
pub const PROB_SUM_TOL: f64 = 1e-9;

/// Projected atoms closer than `MERGE_TOL_FACTOR * spread` (spread = largest
/// coordinate magnitude across the joint support) are merged into one atom.
pub const MERGE_TOL_FACTOR: f64 = 1e-9;

/// Projection directions must have unit Euclidean norm within this.
pub const UNIT_NORM_TOL: f64 = 1e-9;

/// Scan values closer than this are treated as tied when hunting for local
/// minima (plateau handling).
pub const PLATEAU_TIE_TOL: f64 = 1e-12;

/// A detected scan minimum counts as sitting on an axis angle when it lies
/// within this many grid steps of {0, pi/2} (mod pi).
pub const AXIS_CLASSIFY_STEPS: f64 = 1.5;

/// Candidate directions whose angles differ by less than this are the same
/// candidate.
pub const CANDIDATE_ANGLE_TOL: f64 = 1e-9;

/// A candidate direction must drop the projected entropy by more than this
/// to be reported.
pub const ENTROPY_DROP_MIN: f64 = 1e-12;

/// Source variances must agree within this (relatively) for the curvature
/// identity to apply.
pub const EQUAL_VARIANCE_TOL: f64 = 1e-6;

/// Exhaustive candidate enumeration refuses joint supports larger than this.
pub const ENUMERATION_GATE: usize = 64;

/// Angle scans need at least this many grid points to resolve minima.
pub const MIN_SCAN_GRID: usize = 16;

/// Default step for the two-sided second difference in the curvature check.
pub const DEFAULT_CURVATURE_STEP: f64 = 1e-2;

/// Half-width of the default quadrature range, in units of the largest
/// component scale, added beyond the extreme component locations.
pub const DEFAULT_RANGE_SIGMAS: f64 = 10.0;

/// Default number of midpoint cells for entropy/functional quadrature.
pub const DEFAULT_QUAD_STEPS: usize = 20_001;

/// Step control for the brute-force overlap integrals: the standardized
/// integration step never exceeds this. At this step the midpoint rule's
/// O(step^2) error sits near 2e-9, comfortably under the 1e-8 agreement
/// demanded of the closed forms.
pub const OVERLAP_MAX_STEP: f64 = 1.0 / 2048.0;
