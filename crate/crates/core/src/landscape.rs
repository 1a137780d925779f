//! Entropy landscapes of pairwise source mixing.
//!
//! Two independent sources, each a discrete distribution blurred by scaled
//! kernel noise, are combined as `Y(theta) = sin(theta) S1 + cos(theta) S2`.
//! The differential entropy `H(theta)` traces a landscape over the half
//! turn `[0, pi)`; its local minima sit where projected atoms collide, and
//! the axis minima recover the single sources. This module evaluates the
//! landscape on a grid, sandwiches it between closed-form bounds, detects
//! and classifies the minima, and checks the curvature identity and the
//! symmetries the construction forces.

use crate::density::{fisher_information, MixtureDensity, ScalarKernel};
use crate::discrete::{mixing_candidates, product_distribution, DiscreteVectorDistribution};
use crate::error::{Error, Result};
use crate::quad::QuadratureRule;
use crate::sampling::SplitMix64;
use crate::special::{erf, std_normal_cdf, std_normal_pdf, std_normal_two_tail, HALF_LN_2PI_E, SQRT_3};
use crate::tolerances::{
    AXIS_CLASSIFY_STEPS, ENUMERATION_GATE, EQUAL_VARIANCE_TOL, MASS_DEFICIT, MERGE_TOL_FACTOR,
    MIN_SCAN_GRID, PLATEAU_TIE_TOL, UNDERFLOW_FLOOR,
};
use alloc::string::ToString;
use alloc::vec::Vec;

/// A discrete distribution blurred by independent, zero-mean, unit-variance
/// kernel noise scaled to `sigma`.
#[derive(Debug, Clone, PartialEq)]
pub struct NoisySource {
    values: Vec<f64>,
    probs: Vec<f64>,
    kernel: ScalarKernel,
    sigma: f64,
}

impl NoisySource {
    /// Values must be finite and distinct, probabilities positive and
    /// summing to one (they are renormalized), and `sigma` positive. Atoms
    /// are stored sorted ascending.
    pub fn new(values: Vec<f64>, probs: Vec<f64>, kernel: ScalarKernel, sigma: f64) -> Result<Self> {
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::InvalidInput {
                what: alloc::format!("noise scale must be positive and finite, got {sigma}"),
            });
        }
        let pure = DiscreteVectorDistribution::new(
            values.iter().map(|&v| alloc::vec![v]).collect(),
            probs,
        )?;
        let mut pairs: Vec<(f64, f64)> = pure
            .atoms()
            .iter()
            .zip(pure.probs().iter())
            .map(|(a, &p)| (a[0], p))
            .collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        Ok(NoisySource {
            values: pairs.iter().map(|x| x.0).collect(),
            probs: pairs.iter().map(|x| x.1).collect(),
            kernel,
            sigma,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn kernel(&self) -> ScalarKernel {
        self.kernel
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Same atoms and kernel, different noise scale.
    pub fn with_sigma(&self, sigma: f64) -> Result<NoisySource> {
        NoisySource::new(self.values.clone(), self.probs.clone(), self.kernel, sigma)
    }

    /// The noiseless atom distribution.
    pub fn pure(&self) -> DiscreteVectorDistribution {
        DiscreteVectorDistribution::new(
            self.values.iter().map(|&v| alloc::vec![v]).collect(),
            self.probs.clone(),
        )
        .expect("atoms were validated at construction")
    }

    pub fn mean(&self) -> f64 {
        self.values
            .iter()
            .zip(self.probs.iter())
            .map(|(&v, &p)| v * p)
            .sum()
    }

    /// Variance of the noiseless atoms alone.
    pub fn pure_variance(&self) -> f64 {
        let m = self.mean();
        self.values
            .iter()
            .zip(self.probs.iter())
            .map(|(&v, &p)| p * (v - m) * (v - m))
            .sum()
    }

    /// Total variance: atoms plus the unit-variance kernel at scale sigma.
    pub fn variance(&self) -> f64 {
        self.pure_variance() + self.sigma * self.sigma
    }

    /// Whether the source distribution is symmetric about its mean (the
    /// kernel noise always is, so only the atoms are examined).
    pub fn is_symmetric(&self) -> bool {
        let m = self.mean();
        let n = self.values.len();
        let scale = self
            .values
            .iter()
            .fold(0.0_f64, |s, &v| s.max((v - m).abs()))
            .max(1e-300);
        for i in 0..n {
            let j = n - 1 - i;
            if ((self.values[i] - m) + (self.values[j] - m)).abs() > 1e-9 * scale {
                return false;
            }
            if (self.probs[i] - self.probs[j]).abs() > 1e-12 {
                return false;
            }
        }
        true
    }

    /// The source's own density: a mixture with one component per atom at
    /// the common scale sigma.
    pub fn density(&self) -> Result<MixtureDensity> {
        MixtureDensity::with_common_scale(
            self.probs.clone(),
            self.values.clone(),
            self.sigma,
            self.kernel,
        )
    }

    /// One draw: an atom chosen by its probability, then kernel noise. The
    /// generator advances by one uniform for the selector, then by the
    /// kernel's own draw count.
    pub fn sample(&self, rng: &mut SplitMix64) -> f64 {
        let idx = rng.next_index(&self.probs);
        self.values[idx] + self.sigma * self.kernel.sample(rng)
    }
}

/// An ordered collection of independent noisy sources.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceModel {
    sources: Vec<NoisySource>,
}

impl SourceModel {
    /// Rescales every source to unit total variance: atoms and noise scale
    /// shrink by the same factor, so each marginal keeps its shape but
    /// carries variance exactly one. A pure kernel source (single atom)
    /// comes out with `sigma == 1`.
    pub fn new(sources: Vec<NoisySource>) -> Result<Self> {
        let mut scaled = Vec::with_capacity(sources.len());
        for s in sources {
            let std = libm::sqrt(s.variance());
            scaled.push(NoisySource::new(
                s.values.iter().map(|v| v / std).collect(),
                s.probs.clone(),
                s.kernel,
                s.sigma / std,
            )?);
        }
        SourceModel::new_unscaled(scaled)
    }

    /// Takes the sources exactly as given.
    pub fn new_unscaled(sources: Vec<NoisySource>) -> Result<Self> {
        if sources.len() < 2 {
            return Err(Error::InvalidInput {
                what: "a source model needs at least two sources".to_string(),
            });
        }
        Ok(SourceModel { sources })
    }

    pub fn sources(&self) -> &[NoisySource] {
        &self.sources
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }

    /// Product distribution of the noiseless atoms.
    pub fn joint_pure(&self) -> Result<DiscreteVectorDistribution> {
        let pures: Vec<DiscreteVectorDistribution> =
            self.sources.iter().map(|s| s.pure()).collect();
        product_distribution(&pures)
    }

    /// One draw per source, in order.
    pub fn sample(&self, rng: &mut SplitMix64) -> Vec<f64> {
        self.sources.iter().map(|s| s.sample(rng)).collect()
    }

    /// Landscape scan for a two-source model.
    pub fn scan(
        &self,
        grid: usize,
        pad_sigmas: f64,
        steps: usize,
        merge_tol: f64,
    ) -> Result<LandscapeScan> {
        if self.len() != 2 {
            return Err(Error::InvalidInput {
                what: alloc::format!("the angle scan needs exactly two sources, got {}", self.len()),
            });
        }
        scan_pair(&self.sources[0], &self.sources[1], grid, pad_sigmas, steps, merge_tol)
    }
}

/// Merge tolerance proportional to the largest projected magnitude the pair
/// can produce.
pub fn default_pair_merge_tol(a: &NoisySource, b: &NoisySource) -> f64 {
    let ma = a.values.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
    let mb = b.values.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
    MERGE_TOL_FACTOR * libm::sqrt(ma * ma + mb * mb)
}

/// Distribution of `sin(theta) K_a + cos(theta) K_b` for unit-variance
/// kernels: the noise carried by every projected component.
#[derive(Debug, Clone, Copy, PartialEq)]
enum NoiseKernel {
    /// Normal with standard deviation `s`.
    Gaussian { s: f64 },
    /// Flat on `[-w, w]`.
    Uniform { w: f64 },
    /// Convolution of two boxes with half-widths `wa >= wb`: flat on
    /// `[-(wa-wb), wa-wb]`, linear ramps out to `+-(wa+wb)`.
    Trapezoid { wa: f64, wb: f64 },
    /// Box of half-width `w` convolved with a normal of deviation `s`.
    BoxGauss { w: f64, s: f64 },
}

impl NoiseKernel {
    /// Combines the two scaled kernels; `ca` and `cb` are the nonnegative
    /// standard deviations of the two addends. Coefficients below a
    /// relative floor count as absent, which covers the axis angles.
    fn combine(ka: ScalarKernel, ca: f64, kb: ScalarKernel, cb: f64) -> NoiseKernel {
        let tiny = 1e-12 * (ca + cb);
        if ca <= tiny {
            return NoiseKernel::single(kb, cb);
        }
        if cb <= tiny {
            return NoiseKernel::single(ka, ca);
        }
        match (ka, kb) {
            (ScalarKernel::Gaussian, ScalarKernel::Gaussian) => NoiseKernel::Gaussian {
                s: libm::sqrt(ca * ca + cb * cb),
            },
            (ScalarKernel::Uniform, ScalarKernel::Uniform) => {
                let a = SQRT_3 * ca;
                let b = SQRT_3 * cb;
                NoiseKernel::Trapezoid {
                    wa: a.max(b),
                    wb: a.min(b),
                }
            }
            (ScalarKernel::Uniform, ScalarKernel::Gaussian) => NoiseKernel::BoxGauss {
                w: SQRT_3 * ca,
                s: cb,
            },
            (ScalarKernel::Gaussian, ScalarKernel::Uniform) => NoiseKernel::BoxGauss {
                w: SQRT_3 * cb,
                s: ca,
            },
        }
    }

    fn single(k: ScalarKernel, c: f64) -> NoiseKernel {
        match k {
            ScalarKernel::Gaussian => NoiseKernel::Gaussian { s: c },
            ScalarKernel::Uniform => NoiseKernel::Uniform { w: SQRT_3 * c },
        }
    }

    fn pdf(&self, x: f64) -> f64 {
        match *self {
            NoiseKernel::Gaussian { s } => std_normal_pdf(x / s) / s,
            NoiseKernel::Uniform { w } => {
                if x.abs() <= w {
                    1.0 / (2.0 * w)
                } else {
                    0.0
                }
            }
            NoiseKernel::Trapezoid { wa, wb } => {
                let ax = x.abs();
                if ax <= wa - wb {
                    1.0 / (2.0 * wa)
                } else if ax < wa + wb {
                    (wa + wb - ax) / (4.0 * wa * wb)
                } else {
                    0.0
                }
            }
            NoiseKernel::BoxGauss { w, s } => {
                (std_normal_cdf((x + w) / s) - std_normal_cdf((x - w) / s)) / (2.0 * w)
            }
        }
    }

    fn sup(&self) -> f64 {
        match *self {
            NoiseKernel::Gaussian { s } => std_normal_pdf(0.0) / s,
            NoiseKernel::Uniform { w } => 1.0 / (2.0 * w),
            NoiseKernel::Trapezoid { wa, .. } => 1.0 / (2.0 * wa),
            NoiseKernel::BoxGauss { w, s } => {
                erf(w / (s * core::f64::consts::SQRT_2)) / (2.0 * w)
            }
        }
    }

    fn std(&self) -> f64 {
        match *self {
            NoiseKernel::Gaussian { s } => s,
            NoiseKernel::Uniform { w } => w / SQRT_3,
            NoiseKernel::Trapezoid { wa, wb } => libm::sqrt((wa * wa + wb * wb) / 3.0),
            NoiseKernel::BoxGauss { w, s } => libm::sqrt(w * w / 3.0 + s * s),
        }
    }

    fn entropy(&self) -> f64 {
        match *self {
            NoiseKernel::Gaussian { s } => HALF_LN_2PI_E + libm::log(s),
            NoiseKernel::Uniform { w } => libm::log(2.0 * w),
            // Flat part plus two linear ramps integrate in closed form.
            NoiseKernel::Trapezoid { wa, wb } => libm::log(2.0 * wa) + wb / (2.0 * wa),
            NoiseKernel::BoxGauss { w, s } => {
                let hi = w + 13.0 * s;
                let steps = (libm::ceil(2.0 * hi / (s / 3.0)) as usize).max(1001);
                let rule = QuadratureRule::new(-hi, hi, steps)
                    .expect("box-plus-normal support is a valid range");
                rule.integrate(|x| {
                    let p = self.pdf(x);
                    if p < UNDERFLOW_FLOOR {
                        0.0
                    } else {
                        -p * libm::log(p)
                    }
                })
            }
        }
    }

    /// Mass outside `[-c, c]`.
    fn tail_mass(&self, c: f64) -> f64 {
        debug_assert!(c >= 0.0);
        if c.is_infinite() {
            return 0.0;
        }
        match *self {
            NoiseKernel::Gaussian { s } => std_normal_two_tail(c / s),
            NoiseKernel::Uniform { w } => (1.0 - c / w).max(0.0),
            NoiseKernel::Trapezoid { wa, wb } => {
                if c >= wa + wb {
                    0.0
                } else if c >= wa - wb {
                    let r = wa + wb - c;
                    r * r / (4.0 * wa * wb)
                } else {
                    1.0 - c / wa
                }
            }
            NoiseKernel::BoxGauss { w, s } => {
                // Antiderivative of the upper tail: C(t) = t (1 - cdf) - s pdf.
                let upper = |t: f64| {
                    t * (1.0 - std_normal_cdf(t / s)) - s * std_normal_pdf(t / s)
                };
                ((upper(c + w) - upper(c - w)) / w).clamp(0.0, 1.0)
            }
        }
    }

    /// Entropy the kernel leaks outside `[-c, c]`: the tail part of
    /// `-int n ln n` plus `tail_mass * ln(sup)`. Nonnegative, and zero once
    /// the interval covers the support.
    fn eps_prime(&self, c: f64) -> f64 {
        debug_assert!(c >= 0.0);
        if c.is_infinite() {
            return 0.0;
        }
        match *self {
            NoiseKernel::Gaussian { s } => {
                let a = c / s;
                0.5 * std_normal_two_tail(a) + a * std_normal_pdf(a)
            }
            // A flat density's tail entropy cancels the mass term exactly.
            NoiseKernel::Uniform { .. } => 0.0,
            NoiseKernel::Trapezoid { wa, wb } => {
                if c >= wa + wb {
                    return 0.0;
                }
                let ln_flat = libm::log(2.0 * wa);
                let tail_plogp = if c >= wa - wb {
                    let pc = (wa + wb - c) / (4.0 * wa * wb);
                    -8.0 * wa * wb * (0.5 * pc * pc * libm::log(pc) - 0.25 * pc * pc)
                } else {
                    (1.0 - c / wa) * ln_flat + wb / (2.0 * wa)
                };
                tail_plogp - self.tail_mass(c) * ln_flat
            }
            NoiseKernel::BoxGauss { w, s } => {
                let hi = w + 13.0 * s;
                if c >= hi {
                    return 0.0;
                }
                let steps = (libm::ceil((hi - c) / (s / 3.0)) as usize).max(64);
                let rule = QuadratureRule::new(c, hi, steps)
                    .expect("tail of the box-plus-normal support is a valid range");
                let tail_plogp = 2.0
                    * rule.integrate(|x| {
                        let p = self.pdf(x);
                        if p < UNDERFLOW_FLOOR {
                            0.0
                        } else {
                            -p * libm::log(p)
                        }
                    });
                tail_plogp + self.tail_mass(c) * libm::log(self.sup())
            }
        }
    }

    /// Offsets where the density is not smooth, for quadrature alignment.
    fn breakpoints(&self) -> Vec<f64> {
        match *self {
            NoiseKernel::Gaussian { .. } | NoiseKernel::BoxGauss { .. } => Vec::new(),
            NoiseKernel::Uniform { w } => alloc::vec![-w, w],
            NoiseKernel::Trapezoid { wa, wb } => {
                alloc::vec![-(wa + wb), -(wa - wb), wa - wb, wa + wb]
            }
        }
    }

    /// Half-width the quadrature range must extend past each component
    /// location: the exact support for compact kernels, `pad_sigmas`
    /// deviations otherwise.
    fn range_halfwidth(&self, pad_sigmas: f64) -> f64 {
        match *self {
            NoiseKernel::Gaussian { .. } => pad_sigmas * self.std(),
            NoiseKernel::Uniform { w } => w,
            NoiseKernel::Trapezoid { wa, wb } => wa + wb,
            NoiseKernel::BoxGauss { w, s } => w + pad_sigmas * s,
        }
    }
}

/// Differential entropy of `sum_m w_m n(y - mu_m)` by breakpoint-aligned
/// midpoint quadrature, with a mass check against a too-narrow range.
fn shifted_mixture_entropy(
    locs: &[f64],
    weights: &[f64],
    noise: &NoiseKernel,
    pad_sigmas: f64,
    steps: usize,
) -> Result<f64> {
    let rh = noise.range_halfwidth(pad_sigmas);
    let lo = locs.iter().fold(f64::INFINITY, |m, &l| m.min(l)) - rh;
    let hi = locs.iter().fold(f64::NEG_INFINITY, |m, &l| m.max(l)) + rh;
    let rule = QuadratureRule::new(lo, hi, steps)?;
    let offsets = noise.breakpoints();
    let mut breaks = Vec::with_capacity(locs.len() * offsets.len());
    for &l in locs {
        for &o in &offsets {
            breaks.push(l + o);
        }
    }
    let (mass, entropy) = rule.integrate_pair_piecewise(&breaks, |y| {
        let p: f64 = locs
            .iter()
            .zip(weights.iter())
            .map(|(&l, &w)| w * noise.pdf(y - l))
            .sum();
        if p < UNDERFLOW_FLOOR {
            (p, 0.0)
        } else {
            (p, -p * libm::log(p))
        }
    });
    if (mass - 1.0).abs() > MASS_DEFICIT {
        return Err(Error::RangeTooNarrow { mass });
    }
    Ok(entropy)
}

/// Minimum distance from each sorted location to its neighbors, with
/// infinite sentinels at the ends.
fn min_adjacent_gaps(locs: &[f64]) -> Vec<f64> {
    let n = locs.len();
    (0..n)
        .map(|i| {
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
            left.min(right)
        })
        .collect()
}

/// How a landscape minimum relates to the source axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimumClass {
    /// Within [`AXIS_CLASSIFY_STEPS`] grid steps of an axis angle: the scan
    /// recovered a single source.
    NonMixing,
    /// Away from both axes: an atom-collision minimum.
    Mixing,
}

impl MinimumClass {
    pub fn label(&self) -> &'static str {
        match self {
            MinimumClass::NonMixing => "non-mixing",
            MinimumClass::Mixing => "mixing",
        }
    }
}

/// One detected local minimum of the scanned entropy curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanMinimum {
    pub index: usize,
    pub theta: f64,
    pub value: f64,
    pub class: MinimumClass,
}

/// The sampled landscape: entropy, its sandwich bounds, and the minima.
#[derive(Debug, Clone, PartialEq)]
pub struct LandscapeScan {
    pub thetas: Vec<f64>,
    pub entropy: Vec<f64>,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub minima: Vec<ScanMinimum>,
}

/// Entropy of `sin(theta) a + cos(theta) b` at one angle.
pub fn projected_entropy_at(
    a: &NoisySource,
    b: &NoisySource,
    theta: f64,
    pad_sigmas: f64,
    steps: usize,
    merge_tol: f64,
) -> Result<f64> {
    let joint = product_distribution(&[a.pure(), b.pure()])?;
    entropy_at_with(&joint, a, b, theta, pad_sigmas, steps, merge_tol)
}

fn entropy_at_with(
    joint: &DiscreteVectorDistribution,
    a: &NoisySource,
    b: &NoisySource,
    theta: f64,
    pad_sigmas: f64,
    steps: usize,
    merge_tol: f64,
) -> Result<f64> {
    let (sin, cos) = (libm::sin(theta), libm::cos(theta));
    let merged = joint.project(&[sin, cos], merge_tol)?;
    let locs: Vec<f64> = merged.atoms().iter().map(|at| at[0]).collect();
    let noise = NoiseKernel::combine(
        a.kernel,
        (a.sigma * sin).abs(),
        b.kernel,
        (b.sigma * cos).abs(),
    );
    shifted_mixture_entropy(&locs, merged.probs(), &noise, pad_sigmas, steps)
}

/// Scans `H(theta)` for `theta = i pi / grid`, `i = 0..grid`, together with
/// the per-angle sandwich:
///
/// * upper: the projected noise entropy plus the merged atom entropy (an
///   equality exactly when the projected components are disjoint);
/// * lower: the upper value minus the overlap correction
///   `sum_m w_m (eps'_m + (ln(1/w_m) + 1) eps_m)` built from each
///   component's clearance to its nearest neighbor. All components share
///   one noise density, so the equal-scale form of the correction applies.
///
/// The grid must be even and at least [`MIN_SCAN_GRID`] so the axis angles
/// land on grid points.
pub fn scan_pair(
    a: &NoisySource,
    b: &NoisySource,
    grid: usize,
    pad_sigmas: f64,
    steps: usize,
    merge_tol: f64,
) -> Result<LandscapeScan> {
    if grid < MIN_SCAN_GRID || grid % 2 != 0 {
        return Err(Error::InvalidInput {
            what: alloc::format!(
                "scan grid must be even and at least {MIN_SCAN_GRID}, got {grid}"
            ),
        });
    }
    let joint = product_distribution(&[a.pure(), b.pure()])?;
    let pi = core::f64::consts::PI;
    let mut thetas = Vec::with_capacity(grid);
    let mut entropy = Vec::with_capacity(grid);
    let mut upper = Vec::with_capacity(grid);
    let mut lower = Vec::with_capacity(grid);

    for i in 0..grid {
        let theta = i as f64 * pi / grid as f64;
        let (sin, cos) = (libm::sin(theta), libm::cos(theta));
        let merged = joint.project(&[sin, cos], merge_tol)?;
        let locs: Vec<f64> = merged.atoms().iter().map(|at| at[0]).collect();
        let weights = merged.probs();
        let noise = NoiseKernel::combine(
            a.kernel,
            (a.sigma * sin).abs(),
            b.kernel,
            (b.sigma * cos).abs(),
        );

        let h = shifted_mixture_entropy(&locs, weights, &noise, pad_sigmas, steps)?;
        let up = noise.entropy() + merged.entropy();
        let gaps = min_adjacent_gaps(&locs);
        let correction: f64 = weights
            .iter()
            .zip(gaps.iter())
            .map(|(&w, &g)| {
                let eps = noise.tail_mass(g / 2.0);
                let eps_prime = noise.eps_prime(g / 2.0);
                w * (eps_prime + (libm::log(1.0 / w) + 1.0) * eps)
            })
            .sum();

        thetas.push(theta);
        entropy.push(h);
        upper.push(up);
        lower.push(up - correction);
    }

    let grid_step = pi / grid as f64;
    let minima = detect_local_minima(&entropy)
        .into_iter()
        .map(|index| {
            let theta = thetas[index];
            ScanMinimum {
                index,
                theta,
                value: entropy[index],
                class: classify_minimum(theta, grid_step),
            }
        })
        .collect();

    Ok(LandscapeScan {
        thetas,
        entropy,
        upper,
        lower,
        minima,
    })
}

/// Non-mixing when the angle sits within [`AXIS_CLASSIFY_STEPS`] grid steps
/// of an axis angle (0 or pi/2, both taken modulo pi).
fn classify_minimum(theta: f64, grid_step: f64) -> MinimumClass {
    let pi = core::f64::consts::PI;
    let d_axis0 = theta.min(pi - theta);
    let d_axis1 = (theta - pi / 2.0).abs();
    if d_axis0.min(d_axis1) <= AXIS_CLASSIFY_STEPS * grid_step {
        MinimumClass::NonMixing
    } else {
        MinimumClass::Mixing
    }
}

/// Local minima of a cyclic sequence. Values within [`PLATEAU_TIE_TOL`] of
/// each other tie; a plateau run counts as one minimum, reported at its
/// leftmost index (the run's cyclic start when it wraps past the end), and
/// both neighbors of the run must sit strictly above it. A constant
/// sequence has no minima.
pub fn detect_local_minima(values: &[f64]) -> Vec<usize> {
    let n = values.len();
    if n < 3 {
        return Vec::new();
    }
    let tol = PLATEAU_TIE_TOL;

    // Runs of consecutive ties, each compared to its first element.
    let mut runs: Vec<(usize, usize, f64)> = Vec::new(); // (start, len, rep)
    let mut i = 0;
    while i < n {
        let rep = values[i];
        let mut j = i;
        while j + 1 < n && (values[j + 1] - rep).abs() <= tol {
            j += 1;
        }
        runs.push((i, j - i + 1, rep));
        i = j + 1;
    }
    // The sequence is cyclic: a run touching the end may continue at the
    // start.
    if runs.len() >= 2 {
        let first = runs[0];
        let last = runs[runs.len() - 1];
        if (first.2 - last.2).abs() <= tol {
            runs[0] = (last.0, last.1 + first.1, last.2);
            runs.pop();
        }
    }
    if runs.len() < 2 {
        return Vec::new();
    }

    let mut minima = Vec::new();
    for r in 0..runs.len() {
        let (start, len, rep) = runs[r];
        let before = values[(start + n - 1) % n];
        let after = values[(start + len) % n];
        if before > rep + tol && after > rep + tol {
            minima.push(start);
        }
    }
    minima.sort_unstable();
    minima
}

/// The mixture density of `w . S` when the combined noise is itself a
/// scaled kernel: any direction for all-normal noise, axis directions for
/// all-uniform noise. Other combinations are rejected.
pub fn output_density(
    sources: &[NoisySource],
    w: &[f64],
    merge_tol: f64,
) -> Result<MixtureDensity> {
    if sources.len() != w.len() {
        return Err(Error::InvalidInput {
            what: "one weight per source is required".to_string(),
        });
    }
    let pures: Vec<DiscreteVectorDistribution> = sources.iter().map(|s| s.pure()).collect();
    let joint = product_distribution(&pures)?;
    let merged = joint.project(w, merge_tol)?;
    let locs: Vec<f64> = merged.atoms().iter().map(|at| at[0]).collect();

    let all_gaussian = sources
        .iter()
        .all(|s| s.kernel == ScalarKernel::Gaussian);
    if all_gaussian {
        let scale = libm::sqrt(
            sources
                .iter()
                .zip(w.iter())
                .map(|(s, &c)| c * c * s.sigma * s.sigma)
                .sum::<f64>(),
        );
        return MixtureDensity::with_common_scale(
            merged.probs().to_vec(),
            locs,
            scale,
            ScalarKernel::Gaussian,
        );
    }

    let all_uniform = sources.iter().all(|s| s.kernel == ScalarKernel::Uniform);
    let active: Vec<usize> = w
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0.0)
        .map(|(j, _)| j)
        .collect();
    if all_uniform && active.len() == 1 {
        let j = active[0];
        return MixtureDensity::with_common_scale(
            merged.probs().to_vec(),
            locs,
            w[j].abs() * sources[j].sigma,
            ScalarKernel::Uniform,
        );
    }
    Err(Error::InvalidInput {
        what: "the mixed noise is not a scaled kernel; flat kernels combine \
               to one only on axis directions"
            .to_string(),
    })
}

/// Numeric and analytic curvature of the landscape at an axis angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureCheck {
    /// Second central difference of `H(theta)` with the given step.
    pub numeric: f64,
    /// `var(S_other) * J(S_axis) - 1`, the curvature the score identity
    /// predicts.
    pub analytic: f64,
}

/// Compares the measured curvature of `H(theta)` at the axis recovering
/// source `axis` (0 or 1) against `var(other) * J(axis source) - 1`.
///
/// The identity compares sources on an equal footing, so it insists both
/// have the same total variance within [`EQUAL_VARIANCE_TOL`].
pub fn taylor_curvature_check(
    a: &NoisySource,
    b: &NoisySource,
    axis: usize,
    h_step: f64,
    pad_sigmas: f64,
    steps: usize,
    merge_tol: f64,
) -> Result<CurvatureCheck> {
    if axis > 1 {
        return Err(Error::InvalidInput {
            what: alloc::format!("axis must be 0 or 1, got {axis}"),
        });
    }
    if !h_step.is_finite() || h_step <= 0.0 || h_step > 0.3 {
        return Err(Error::InvalidInput {
            what: alloc::format!("angle step must lie in (0, 0.3], got {h_step}"),
        });
    }
    let (va, vb) = (a.variance(), b.variance());
    if (va - vb).abs() > EQUAL_VARIANCE_TOL {
        return Err(Error::UnequalVariance { left: va, right: vb });
    }

    let theta0 = if axis == 0 {
        core::f64::consts::FRAC_PI_2
    } else {
        0.0
    };
    let joint = product_distribution(&[a.pure(), b.pure()])?;
    let h_at = |t: f64| entropy_at_with(&joint, a, b, t, pad_sigmas, steps, merge_tol);
    let h_m = h_at(theta0 - h_step)?;
    let h_0 = h_at(theta0)?;
    let h_p = h_at(theta0 + h_step)?;
    let numeric = (h_p - 2.0 * h_0 + h_m) / (h_step * h_step);

    let (target, other) = if axis == 0 { (a, b) } else { (b, a) };
    let density = target.density()?;
    let rule = density.default_quadrature()?;
    let fisher = fisher_information(&density, &rule)?;
    let analytic = other.variance() * fisher - 1.0;

    Ok(CurvatureCheck { numeric, analytic })
}

/// One noise level of a sweep: the scan and how far the landscape still
/// departs from flat.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub sigma: f64,
    /// Peak-to-trough height of the entropy curve.
    pub flatness: f64,
    pub scan: LandscapeScan,
}

/// Rescans the same atom pair at each noise level.
pub fn sigma_sweep(
    a: &NoisySource,
    b: &NoisySource,
    sigmas: &[f64],
    grid: usize,
    pad_sigmas: f64,
    steps: usize,
    merge_tol: f64,
) -> Result<Vec<SweepPoint>> {
    if sigmas.is_empty() {
        return Err(Error::InvalidInput {
            what: "the sweep needs at least one noise level".to_string(),
        });
    }
    let mut out = Vec::with_capacity(sigmas.len());
    for &sigma in sigmas {
        let scan = scan_pair(
            &a.with_sigma(sigma)?,
            &b.with_sigma(sigma)?,
            grid,
            pad_sigmas,
            steps,
            merge_tol,
        )?;
        let max = scan.entropy.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
        let min = scan.entropy.iter().fold(f64::INFINITY, |m, &v| m.min(v));
        out.push(SweepPoint {
            sigma,
            flatness: max - min,
            scan,
        });
    }
    Ok(out)
}

/// Deviations from the symmetries the construction forces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryReport {
    /// `H(theta) = H(theta + pi)`: always forced, since the flip only
    /// mirrors the projected density.
    pub max_period_dev: f64,
    /// `H(-theta) = H(theta)`: forced when the first source is symmetric
    /// about its mean; `None` when it is not.
    pub max_reflection_dev: Option<f64>,
    /// `H(pi/2 - theta) = H(theta)`: forced when the sources are identical;
    /// `None` when they differ.
    pub max_swap_dev: Option<f64>,
    /// Largest angular gap between each atom-collision direction and the
    /// mirror `pi - theta` of some collision direction; `None` when there
    /// are no collision directions or the support is too large to
    /// enumerate.
    pub max_candidate_pairing_gap: Option<f64>,
}

/// Measures the landscape's symmetry deviations on a fresh scan.
pub fn symmetry_checks(
    a: &NoisySource,
    b: &NoisySource,
    grid: usize,
    pad_sigmas: f64,
    steps: usize,
    merge_tol: f64,
) -> Result<SymmetryReport> {
    let scan = scan_pair(a, b, grid, pad_sigmas, steps, merge_tol)?;
    let n = grid;
    let joint = product_distribution(&[a.pure(), b.pure()])?;
    let pi = core::f64::consts::PI;

    // Recompute a sample of angles shifted by a half turn.
    let stride = (n / 16).max(1);
    let mut max_period_dev = 0.0_f64;
    for i in (0..n).step_by(stride) {
        let h = entropy_at_with(&joint, a, b, scan.thetas[i] + pi, pad_sigmas, steps, merge_tol)?;
        max_period_dev = max_period_dev.max((h - scan.entropy[i]).abs());
    }

    let max_reflection_dev = if a.is_symmetric() {
        let mut d = 0.0_f64;
        for i in 0..n {
            d = d.max((scan.entropy[(n - i) % n] - scan.entropy[i]).abs());
        }
        Some(d)
    } else {
        None
    };

    let identical = a.values == b.values
        && a.probs == b.probs
        && a.kernel == b.kernel
        && a.sigma == b.sigma;
    let max_swap_dev = if identical {
        let mut d = 0.0_f64;
        for i in 0..n {
            d = d.max((scan.entropy[(n / 2 + n - i) % n] - scan.entropy[i]).abs());
        }
        Some(d)
    } else {
        None
    };

    let max_candidate_pairing_gap = if joint.len() <= ENUMERATION_GATE {
        let cands = mixing_candidates(&joint, joint.default_merge_tol())?;
        let angles: Vec<f64> = cands.iter().filter_map(|c| c.angle).collect();
        if angles.is_empty() {
            None
        } else {
            let mut worst = 0.0_f64;
            for &t in &angles {
                let mirror = pi - t;
                let best = angles
                    .iter()
                    .map(|&o| {
                        let d = (o - mirror).abs();
                        d.min(pi - d)
                    })
                    .fold(f64::INFINITY, f64::min);
                worst = worst.max(best);
            }
            Some(worst)
        }
    } else {
        None
    };

    Ok(SymmetryReport {
        max_period_dev,
        max_reflection_dev,
        max_swap_dev,
        max_candidate_pairing_gap,
    })
}
