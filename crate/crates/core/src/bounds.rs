//! Closed-form bounds on mixture entropy.
//!
//! The central object is the additive approximator
//!
//! ```text
//! A(p) = H(K) + sum_n w_n ln s_n + h(w),    h(w) = -sum_n w_n ln w_n,
//! ```
//!
//! which never falls below the true differential entropy H(p) and touches it
//! exactly when the components do not overlap. How far H(p) can drop below
//! A(p) is controlled by how much of each component's mass and entropy stick
//! out of its own cell in a partition of the line around the component
//! centers; those per-component spills are the [`OverlapTerms`], and they
//! yield a computable lower bound. A second, independent route to a bound
//! runs through the misclassification probability of the optimal
//! component-guessing rule ([`bayes_error`] / [`decision_bounds`]).

use crate::density::MixtureDensity;
use crate::error::{Error, Result};
use crate::quad::QuadratureRule;
use crate::tolerances::{
    DUPLICATE_LOCATION_TOL, MASS_DEFICIT, MERGE_TOL_FACTOR, OVERLAP_MAX_STEP,
};
use alloc::string::ToString;
use alloc::vec::Vec;

/// Disjoint open intervals around each component center. Component `n`'s
/// cell extends `gap_n / 2` to each side, where `gap_n` is the distance to
/// the nearest neighboring center (infinite for a single component).
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaPartition {
    gaps: Vec<f64>,
    intervals: Vec<(f64, f64)>,
}

impl OmegaPartition {
    /// Nearest-neighbor distance per component, in location order.
    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    /// The open cells `(mu_n - gap_n/2, mu_n + gap_n/2)`, in location order.
    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }
}

/// Per-component spill quantities relative to an [`OmegaPartition`]:
/// `eps[n]` is the probability mass component `n` places outside its own
/// cell, and `eps_prime[n]` the corresponding entropy-integral deficit
/// (both in the component's standardized coordinate).
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapTerms {
    pub eps: Vec<f64>,
    pub eps_prime: Vec<f64>,
}

/// Upper and lower entropy bounds driven by the misclassification
/// probability of the maximum-posterior component guess.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecisionBounds {
    /// `A(p) - 2 P(e)`: an upper bound on the entropy.
    pub upper: f64,
    /// `A(p) - 2 sqrt((N-1) P(e))`: the classical comparison lower bound.
    pub lower: f64,
}

/// Everything the bound machinery produces for one mixture, computed in one
/// sweep by [`bounds_report`].
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyBoundsReport {
    /// The analyzed mixture (near-duplicate components merged).
    pub mixture: MixtureDensity,
    /// The additive approximator `A(p)`, an upper bound on the entropy.
    pub approximator: f64,
    /// The overlap-driven lower bound on the entropy.
    pub lower: f64,
    pub partition: OmegaPartition,
    pub overlap: OverlapTerms,
    /// Misclassification probability of the optimal component guess.
    pub bayes_error: f64,
    pub decision: DecisionBounds,
}

/// The additive approximator `A(p) = H(K) + sum w_n ln s_n + h(w)`.
///
/// Always an upper bound on the differential entropy of the mixture; tight
/// exactly when the components have disjoint effective support.
pub fn approximator(m: &MixtureDensity) -> f64 {
    let mut a = m.kernel().entropy();
    for (&w, &s) in m.weights().iter().zip(m.scales()) {
        a += w * libm::log(s) - w * libm::log(w);
    }
    a
}

/// Builds the nearest-neighbor cell partition around the component centers.
///
/// Fails with [`Error::DuplicateLocations`] when two centers coincide (to
/// within [`DUPLICATE_LOCATION_TOL`]), because the cells degenerate there;
/// merge such components first (see [`MixtureDensity::merged_close`]).
pub fn omega_partition(m: &MixtureDensity) -> Result<OmegaPartition> {
    let locs = m.locations();
    let n = locs.len();
    for i in 1..n {
        if locs[i] - locs[i - 1] <= DUPLICATE_LOCATION_TOL {
            return Err(Error::DuplicateLocations { location: locs[i] });
        }
    }
    let mut gaps = Vec::with_capacity(n);
    let mut intervals = Vec::with_capacity(n);
    for i in 0..n {
        let left = if i == 0 {
            f64::INFINITY
        } else {
            locs[i] - locs[i - 1]
        };
        let right = if i + 1 == n {
            f64::INFINITY
        } else {
            locs[i + 1] - locs[i]
        };
        let gap = left.min(right);
        gaps.push(gap);
        intervals.push((locs[i] - gap / 2.0, locs[i] + gap / 2.0));
    }
    Ok(OmegaPartition { gaps, intervals })
}

/// Closed-form overlap terms from the kernel's tail mass and restricted
/// entropy integral. For component `n` with standardized cell half-width
/// `a_n = gap_n / (2 s_n)`:
///
/// ```text
/// eps_n       = P(|Z| > a_n)
/// eps_prime_n = H(K) - H_{a_n}(K) + eps_n ln(sup K)
/// ```
pub fn overlap_terms(m: &MixtureDensity, partition: &OmegaPartition) -> Result<OverlapTerms> {
    check_partition_len(m, partition)?;
    let k = m.kernel();
    let ln_sup = libm::log(k.sup());
    let mut eps = Vec::with_capacity(m.len());
    let mut eps_prime = Vec::with_capacity(m.len());
    for (&gap, &s) in partition.gaps().iter().zip(m.scales()) {
        let a = gap / (2.0 * s);
        let e = k.tail_mass(a);
        eps.push(e);
        eps_prime.push(k.entropy() - k.partial_entropy(a) + e * ln_sup);
    }
    Ok(OverlapTerms { eps, eps_prime })
}

/// Brute-force overlap terms: integrates the kernel's tail mass and tail
/// entropy numerically instead of using the closed forms. Exists as an
/// independent check on [`overlap_terms`].
pub fn overlap_terms_numeric(
    m: &MixtureDensity,
    partition: &OmegaPartition,
) -> Result<OverlapTerms> {
    check_partition_len(m, partition)?;
    let k = m.kernel();
    let ln_sup = libm::log(k.sup());
    let mut eps = Vec::with_capacity(m.len());
    let mut eps_prime = Vec::with_capacity(m.len());
    for (&gap, &s) in partition.gaps().iter().zip(m.scales()) {
        let a = gap / (2.0 * s);
        if a.is_infinite() {
            eps.push(0.0);
            eps_prime.push(0.0);
            continue;
        }
        // One-sided tail [a, z_hi]; the kernels are symmetric, so double it.
        // For the gaussian, mass and entropy beyond 13 standardized units of
        // the cell edge are far below every tolerance in the crate; the box
        // kernel ends at sqrt(3) exactly.
        let z_hi = if k.support_halfwidth().is_finite() {
            k.support_halfwidth()
        } else {
            a + 13.0
        };
        if z_hi <= a {
            eps.push(0.0);
            eps_prime.push(0.0);
            continue;
        }
        let cells = libm::ceil((z_hi - a) / OVERLAP_MAX_STEP).max(1.0) as usize;
        let q = QuadratureRule::new(a, z_hi, cells)?;
        let (mass, deficit) = q.integrate_pair(|z| {
            let p = k.pdf(z);
            if p > 0.0 {
                (p, -p * libm::log(p))
            } else {
                (0.0, 0.0)
            }
        });
        let e = 2.0 * mass;
        eps.push(e);
        eps_prime.push(2.0 * deficit + e * ln_sup);
    }
    Ok(OverlapTerms { eps, eps_prime })
}

/// Overlap-driven lower bound on the mixture entropy:
///
/// ```text
/// H(p) >= A(p) - sum_n w_n [ eps'_n + (ln(sup_max / (w_n sup_n)) + 1) eps_n ]
/// ```
///
/// where `sup_n = sup K / s_n` is the peak of component `n`'s scaled density
/// and `sup_max` the largest such peak. With equal scales the log factor
/// reduces to `ln(1/w_n)`; with unequal scales the scale ratio term is what
/// keeps the bound valid, so it must not be dropped.
pub fn lower_bound(m: &MixtureDensity, overlap: &OverlapTerms) -> Result<f64> {
    if overlap.eps.len() != m.len() || overlap.eps_prime.len() != m.len() {
        return Err(Error::InvalidInput {
            what: "overlap terms do not match the mixture size".to_string(),
        });
    }
    let s_min = m.scales().iter().cloned().fold(f64::INFINITY, f64::min);
    let mut correction = 0.0;
    for i in 0..m.len() {
        let w = m.weights()[i];
        let s = m.scales()[i];
        let log_ratio = libm::log(s / (s_min * w));
        correction += w * (overlap.eps_prime[i] + (log_ratio + 1.0) * overlap.eps[i]);
    }
    Ok(approximator(m) - correction)
}

/// Misclassification probability of the optimal component-guessing rule:
///
/// ```text
/// P(e) = int [ p(y) - max_n w_n p_n(y) ] dy
/// ```
///
/// with `p_n` the scaled component densities. The integrand is pointwise
/// nonnegative because `p` is the sum of the `w_n p_n`.
pub fn bayes_error(m: &MixtureDensity, q: &QuadratureRule) -> Result<f64> {
    let breaks = m.density_breakpoints();
    let (mass, pe) = q.integrate_pair_piecewise(&breaks, |y| {
        let mut sum = 0.0;
        let mut best = 0.0_f64;
        for i in 0..m.len() {
            let c = m.weighted_component_pdf(i, y);
            sum += c;
            best = best.max(c);
        }
        (sum, sum - best)
    });
    if (mass - 1.0).abs() > MASS_DEFICIT {
        return Err(Error::RangeTooNarrow { mass });
    }
    Ok(pe)
}

/// Entropy bounds driven by the misclassification probability `pe`.
pub fn decision_bounds(m: &MixtureDensity, pe: f64) -> DecisionBounds {
    let a = approximator(m);
    let n = m.len();
    DecisionBounds {
        upper: a - 2.0 * pe,
        lower: a - 2.0 * libm::sqrt(((n - 1) as f64) * pe.max(0.0)),
    }
}

/// Runs the whole bound pipeline on one mixture: merges floating-point
/// duplicate centers, builds the partition and overlap terms, and evaluates
/// both bound families.
pub fn bounds_report(m: &MixtureDensity) -> Result<EntropyBoundsReport> {
    let locs = m.locations();
    let spread = (locs[locs.len() - 1] - locs[0])
        .max(locs[0].abs())
        .max(locs[locs.len() - 1].abs());
    let merged = m.merged_close(MERGE_TOL_FACTOR * spread)?;
    let partition = omega_partition(&merged)?;
    let overlap = overlap_terms(&merged, &partition)?;
    let lower = lower_bound(&merged, &overlap)?;
    let q = merged.default_quadrature()?;
    let pe = bayes_error(&merged, &q)?;
    let decision = decision_bounds(&merged, pe);
    Ok(EntropyBoundsReport {
        approximator: approximator(&merged),
        lower,
        partition,
        overlap,
        bayes_error: pe,
        decision,
        mixture: merged,
    })
}

fn check_partition_len(m: &MixtureDensity, partition: &OmegaPartition) -> Result<()> {
    if partition.len() != m.len() {
        return Err(Error::InvalidInput {
            what: "partition does not match the mixture size".to_string(),
        });
    }
    Ok(())
}
