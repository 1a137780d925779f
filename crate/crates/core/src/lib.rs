//! Entropy bounds and minimum-entropy landscapes for kernel mixtures.
//!
//! The crate is `no_std` (with `alloc`): all numerics are pure `f64`
//! computation, so it runs anywhere a heap exists. IO, configs, and the
//! command-line front end live in the companion `entropy-landscape` crate.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod bounds;
pub mod density;
pub mod discrete;
pub mod error;
pub mod landscape;
pub mod quad;
pub mod sampling;
pub mod special;
pub mod tolerances;

pub use bounds::{
    approximator, bayes_error, bounds_report, decision_bounds, lower_bound, omega_partition,
    overlap_terms, overlap_terms_numeric, DecisionBounds, EntropyBoundsReport, OmegaPartition,
    OverlapTerms,
};
pub use density::{
    discrete_entropy, entropy_quadrature, fisher_information, parzen_entropy, score_derivative_mean,
    score_function, MixtureDensity, ScalarKernel,
};
pub use discrete::{
    candidate_directions_2d, candidate_directions_axes, candidate_isolation_check,
    mixing_candidates, product_distribution, CandidateDirection, DiscreteVectorDistribution,
    IsolationReport,
};
pub use error::{Error, Result};
pub use landscape::{
    default_pair_merge_tol, detect_local_minima, output_density, projected_entropy_at, scan_pair,
    sigma_sweep, symmetry_checks, taylor_curvature_check, CurvatureCheck, LandscapeScan,
    MinimumClass, NoisySource, ScanMinimum, SourceModel, SweepPoint, SymmetryReport,
};
pub use quad::QuadratureRule;
pub use sampling::{SampleSet, SplitMix64};
