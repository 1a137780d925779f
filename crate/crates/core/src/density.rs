//! Scalar kernel mixtures and the entropy/score functionals over them.
//!
//! A mixture is sum_n w_n (1/s_n) K((y - mu_n)/s_n) with a single
//! standardized kernel shape `K` (zero mean, unit variance) shared by all
//! components, while weights, locations, and scales vary per component.
//! Components are kept sorted by location; everything downstream (interval
//! partitions, overlap terms) relies on that order.

use crate::error::{Error, Result};
use crate::quad::QuadratureRule;
use crate::sampling::{SampleSet, SplitMix64};
use crate::special::{
    std_normal_cdf, std_normal_pdf, std_normal_two_tail, HALF_LN_2PI_E, LN_2_SQRT3, SQRT_2PI,
    SQRT_3,
};
use crate::tolerances::{
    DEFAULT_QUAD_STEPS, DEFAULT_RANGE_SIGMAS, MASS_DEFICIT, PROB_SUM_TOL, UNDERFLOW_FLOOR,
    WEIGHT_SUM_TOL,
};
use alloc::string::ToString;
use alloc::vec::Vec;

/// Standardized component shapes: zero mean, unit variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarKernel {
    Gaussian,
    /// Box density of height 1/(2*sqrt(3)) on [-sqrt(3), sqrt(3)].
    Uniform,
}

impl ScalarKernel {
    /// Density at `z`.
    pub fn pdf(self, z: f64) -> f64 {
        match self {
            ScalarKernel::Gaussian => std_normal_pdf(z),
            ScalarKernel::Uniform => {
                if z.abs() <= SQRT_3 {
                    1.0 / (2.0 * SQRT_3)
                } else {
                    0.0
                }
            }
        }
    }

    /// Differential entropy of the standardized kernel, nats.
    pub fn entropy(self) -> f64 {
        match self {
            ScalarKernel::Gaussian => HALF_LN_2PI_E,
            ScalarKernel::Uniform => LN_2_SQRT3,
        }
    }

    /// Supremum of the density.
    pub fn sup(self) -> f64 {
        match self {
            ScalarKernel::Gaussian => 1.0 / SQRT_2PI,
            ScalarKernel::Uniform => 1.0 / (2.0 * SQRT_3),
        }
    }

    /// Half-width of the support (infinite for the gaussian).
    pub fn support_halfwidth(self) -> f64 {
        match self {
            ScalarKernel::Gaussian => f64::INFINITY,
            ScalarKernel::Uniform => SQRT_3,
        }
    }

    /// Distribution function at `z`.
    pub fn cdf(self, z: f64) -> f64 {
        match self {
            ScalarKernel::Gaussian => std_normal_cdf(z),
            ScalarKernel::Uniform => ((z + SQRT_3) / (2.0 * SQRT_3)).clamp(0.0, 1.0),
        }
    }

    /// Two-sided tail mass P(|Z| > a), a >= 0.
    pub fn tail_mass(self, a: f64) -> f64 {
        match self {
            ScalarKernel::Gaussian => std_normal_two_tail(a),
            ScalarKernel::Uniform => (1.0 - a / SQRT_3).max(0.0),
        }
    }

    /// Entropy integral restricted to [-a, a]: -int_{-a}^{a} K ln K.
    /// An infinite `a` gives the full entropy.
    pub fn partial_entropy(self, a: f64) -> f64 {
        debug_assert!(a >= 0.0);
        if a.is_infinite() {
            return self.entropy();
        }
        match self {
            ScalarKernel::Gaussian => {
                // -int phi ln phi over [-a,a]
                //   = (1/2)ln(2 pi e) erf(a/sqrt(2)) - a phi(a).
                let inside = 1.0 - std_normal_two_tail(a);
                HALF_LN_2PI_E * inside - a * std_normal_pdf(a)
            }
            ScalarKernel::Uniform => LN_2_SQRT3 * (a / SQRT_3).min(1.0),
        }
    }

    /// Whether the density has two continuous derivatives everywhere.
    pub fn is_smooth(self) -> bool {
        matches!(self, ScalarKernel::Gaussian)
    }

    /// One standardized draw.
    pub fn sample(self, rng: &mut SplitMix64) -> f64 {
        match self {
            ScalarKernel::Gaussian => rng.next_standard_normal(),
            ScalarKernel::Uniform => rng.next_unit_uniform(),
        }
    }
}

/// A finite mixture of scaled translates of one standardized kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureDensity {
    weights: Vec<f64>,
    locations: Vec<f64>,
    scales: Vec<f64>,
    kernel: ScalarKernel,
}

impl MixtureDensity {
    /// Builds a mixture and canonicalizes it: validates shapes, renormalizes
    /// the (almost-one) weight sum exactly, and sorts components by location.
    pub fn new(
        weights: Vec<f64>,
        locations: Vec<f64>,
        scales: Vec<f64>,
        kernel: ScalarKernel,
    ) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidInput {
                what: "mixture needs at least one component".to_string(),
            });
        }
        if weights.len() != locations.len() || weights.len() != scales.len() {
            return Err(Error::InvalidInput {
                what: "weights, locations, scales must have equal length".to_string(),
            });
        }
        for (&w, (&mu, &s)) in weights.iter().zip(locations.iter().zip(scales.iter())) {
            if !w.is_finite() || !mu.is_finite() || !s.is_finite() {
                return Err(Error::InvalidInput {
                    what: "mixture parameters must be finite".to_string(),
                });
            }
            if w <= 0.0 {
                return Err(Error::InvalidDistribution {
                    what: "mixture weights must be positive".to_string(),
                });
            }
            if s <= 0.0 {
                return Err(Error::InvalidInput {
                    what: "component scales must be positive".to_string(),
                });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidDistribution {
                what: alloc::format!("mixture weights sum to {sum}, want 1"),
            });
        }

        let mut order: Vec<usize> = (0..weights.len()).collect();
        order.sort_by(|&a, &b| locations[a].partial_cmp(&locations[b]).unwrap());
        let weights: Vec<f64> = order.iter().map(|&i| weights[i] / sum).collect();
        let locations: Vec<f64> = order.iter().map(|&i| locations[i]).collect();
        let scales: Vec<f64> = order.iter().map(|&i| scales[i]).collect();
        Ok(MixtureDensity {
            weights,
            locations,
            scales,
            kernel,
        })
    }

    /// Convenience constructor for a common scale across all components.
    pub fn with_common_scale(
        weights: Vec<f64>,
        locations: Vec<f64>,
        scale: f64,
        kernel: ScalarKernel,
    ) -> Result<Self> {
        let n = locations.len();
        MixtureDensity::new(weights, locations, alloc::vec![scale; n], kernel)
    }

    /// Gaussian kernel density estimate over a sample batch, with bandwidth
    /// 0.5 * std * S^(-1/5).
    pub fn parzen_kde(samples: &SampleSet) -> Result<Self> {
        let s = samples.len();
        let bandwidth = 0.5 * samples.std() * libm::pow(s as f64, -0.2);
        if bandwidth <= 0.0 || !bandwidth.is_finite() {
            return Err(Error::DegenerateSample);
        }
        MixtureDensity::with_common_scale(
            alloc::vec![1.0 / s as f64; s],
            samples.values().to_vec(),
            bandwidth,
            ScalarKernel::Gaussian,
        )
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Component locations, ascending.
    pub fn locations(&self) -> &[f64] {
        &self.locations
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn kernel(&self) -> ScalarKernel {
        self.kernel
    }

    /// Density at `y`.
    pub fn pdf(&self, y: f64) -> f64 {
        let mut p = 0.0;
        for i in 0..self.weights.len() {
            p += self.weighted_component_pdf(i, y);
        }
        p
    }

    /// One component's contribution to the density: w_i (1/s_i) K(z_i).
    pub fn weighted_component_pdf(&self, i: usize, y: f64) -> f64 {
        let s = self.scales[i];
        let z = (y - self.locations[i]) / s;
        self.weights[i] / s * self.kernel.pdf(z)
    }

    /// First derivative of the density. Needs a smooth kernel.
    pub fn pdf_deriv(&self, y: f64) -> Result<f64> {
        if !self.kernel.is_smooth() {
            return Err(Error::NonSmoothKernel);
        }
        let mut d = 0.0;
        for i in 0..self.weights.len() {
            let s = self.scales[i];
            let z = (y - self.locations[i]) / s;
            d += self.weights[i] / (s * s) * (-z) * std_normal_pdf(z);
        }
        Ok(d)
    }

    /// Second derivative of the density. Needs a smooth kernel.
    pub fn pdf_deriv2(&self, y: f64) -> Result<f64> {
        if !self.kernel.is_smooth() {
            return Err(Error::NonSmoothKernel);
        }
        let mut d = 0.0;
        for i in 0..self.weights.len() {
            let s = self.scales[i];
            let z = (y - self.locations[i]) / s;
            d += self.weights[i] / (s * s * s) * (z * z - 1.0) * std_normal_pdf(z);
        }
        Ok(d)
    }

    pub fn mean(&self) -> f64 {
        self.weights
            .iter()
            .zip(self.locations.iter())
            .map(|(w, mu)| w * mu)
            .sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        let mut v = 0.0;
        for i in 0..self.weights.len() {
            let d = self.locations[i] - m;
            // The standardized kernel has unit variance, so a component of
            // scale s contributes s^2 about its own center.
            v += self.weights[i] * (d * d + self.scales[i] * self.scales[i]);
        }
        v
    }

    /// Abscissas where the density is not smooth (support edges of box
    /// components). Empty for smooth kernels.
    pub fn density_breakpoints(&self) -> Vec<f64> {
        let hw = self.kernel.support_halfwidth();
        if !hw.is_finite() {
            return Vec::new();
        }
        let mut b = Vec::with_capacity(2 * self.locations.len());
        for i in 0..self.locations.len() {
            b.push(self.locations[i] - hw * self.scales[i]);
            b.push(self.locations[i] + hw * self.scales[i]);
        }
        b.sort_by(|a, c| a.partial_cmp(c).unwrap());
        b.dedup();
        b
    }

    /// Merges components whose locations sit within `tol` of each other
    /// (single linkage on the sorted locations). Merged components take the
    /// summed weight, the weight-averaged location, and the weight-averaged
    /// scale.
    pub fn merged_close(&self, tol: f64) -> Result<MixtureDensity> {
        if !(tol >= 0.0) {
            return Err(Error::InvalidInput {
                what: "merge tolerance must be nonnegative".to_string(),
            });
        }
        let mut weights = Vec::new();
        let mut locations = Vec::new();
        let mut scales = Vec::new();
        let mut i = 0;
        while i < self.locations.len() {
            let mut j = i;
            while j + 1 < self.locations.len()
                && self.locations[j + 1] - self.locations[j] <= tol
            {
                j += 1;
            }
            let w: f64 = self.weights[i..=j].iter().sum();
            let mu: f64 = self.weights[i..=j]
                .iter()
                .zip(&self.locations[i..=j])
                .map(|(w, mu)| w * mu)
                .sum::<f64>()
                / w;
            let s: f64 = self.weights[i..=j]
                .iter()
                .zip(&self.scales[i..=j])
                .map(|(w, s)| w * s)
                .sum::<f64>()
                / w;
            weights.push(w);
            locations.push(mu);
            scales.push(s);
            i = j + 1;
        }
        MixtureDensity::new(weights, locations, scales, self.kernel)
    }

    /// Quadrature rule covering all component mass: the component locations
    /// padded by `half_width_sigmas` times the largest scale, with `steps`
    /// cells.
    pub fn quadrature_with(&self, half_width_sigmas: f64, steps: usize) -> Result<QuadratureRule> {
        if !(half_width_sigmas > 0.0) {
            return Err(Error::InvalidInput {
                what: "quadrature padding must be positive".to_string(),
            });
        }
        let max_s = self.scales.iter().cloned().fold(0.0_f64, f64::max);
        let lo = self.locations[0] - half_width_sigmas * max_s;
        let hi = self.locations[self.locations.len() - 1] + half_width_sigmas * max_s;
        QuadratureRule::new(lo, hi, steps)
    }

    /// [`quadrature_with`](Self::quadrature_with) at the crate defaults.
    pub fn default_quadrature(&self) -> Result<QuadratureRule> {
        self.quadrature_with(DEFAULT_RANGE_SIGMAS, DEFAULT_QUAD_STEPS)
    }

    /// One draw: pick a component by weight, then draw from its kernel.
    /// Consumes one uniform for the component and the kernel's own draws.
    pub fn sample(&self, rng: &mut SplitMix64) -> f64 {
        let i = rng.next_index(&self.weights);
        self.locations[i] + self.scales[i] * self.kernel.sample(rng)
    }
}

/// Differential entropy -int p ln p by break-aligned midpoint quadrature.
///
/// Fails with [`Error::RangeTooNarrow`] when the rule's range captures less
/// than `1 -` [`MASS_DEFICIT`] of the mixture's mass. Cells where the density
/// underflows contribute zero (the p ln p limit).
pub fn entropy_quadrature(m: &MixtureDensity, q: &QuadratureRule) -> Result<f64> {
    let breaks = m.density_breakpoints();
    let (mass, ent) = q.integrate_pair_piecewise(&breaks, |y| {
        let p = m.pdf(y);
        if p < UNDERFLOW_FLOOR {
            (p, 0.0)
        } else {
            (p, -p * libm::log(p))
        }
    });
    if (mass - 1.0).abs() > MASS_DEFICIT {
        return Err(Error::RangeTooNarrow { mass });
    }
    Ok(ent)
}

/// Shannon entropy -sum p ln p of a finite distribution, nats. Zero entries
/// contribute zero; the vector must be nonnegative and sum to one within
/// [`PROB_SUM_TOL`].
pub fn discrete_entropy(probs: &[f64]) -> Result<f64> {
    if probs.is_empty() {
        return Err(Error::InvalidDistribution {
            what: "empty probability vector".to_string(),
        });
    }
    let mut sum = 0.0;
    for &p in probs {
        if !(p >= 0.0) || !p.is_finite() {
            return Err(Error::InvalidDistribution {
                what: "probabilities must be finite and nonnegative".to_string(),
            });
        }
        sum += p;
    }
    if (sum - 1.0).abs() > PROB_SUM_TOL {
        return Err(Error::InvalidDistribution {
            what: alloc::format!("probabilities sum to {sum}, want 1"),
        });
    }
    let mut h = 0.0;
    for &p in probs {
        if p > 0.0 {
            h -= p * libm::log(p);
        }
    }
    Ok(h)
}

/// Entropy of the gaussian kernel density estimate over `samples`.
pub fn parzen_entropy(samples: &SampleSet, steps: usize) -> Result<f64> {
    let kde = MixtureDensity::parzen_kde(samples)?;
    let q = kde.quadrature_with(DEFAULT_RANGE_SIGMAS, steps)?;
    entropy_quadrature(&kde, &q)
}

/// Score psi(y) = -p'(y)/p(y). Needs a smooth kernel and a density that has
/// not underflowed at `y`.
pub fn score_function(m: &MixtureDensity, y: f64) -> Result<f64> {
    let d = m.pdf_deriv(y)?;
    let p = m.pdf(y);
    if p < UNDERFLOW_FLOOR {
        return Err(Error::Underflow { at: y });
    }
    Ok(-d / p)
}

/// Fisher information J = int p'(y)^2 / p(y) dy over the rule's range.
pub fn fisher_information(m: &MixtureDensity, q: &QuadratureRule) -> Result<f64> {
    if !m.kernel().is_smooth() {
        return Err(Error::NonSmoothKernel);
    }
    let (mass, j) = q.integrate_pair(|y| {
        let p = m.pdf(y);
        if p < UNDERFLOW_FLOOR {
            (p, 0.0)
        } else {
            let d = m.pdf_deriv(y).expect("kernel smoothness already checked");
            (p, d * d / p)
        }
    });
    if (mass - 1.0).abs() > MASS_DEFICIT {
        return Err(Error::RangeTooNarrow { mass });
    }
    Ok(j)
}

/// Mean of the score derivative, E[psi'(Y)], computed directly from
/// psi' = (p'/p)^2 - p''/p, so the integrand is p'^2/p - p''. Agrees with
/// [`fisher_information`] only through an integration-by-parts identity,
/// which makes the two useful as independent cross-checks.
pub fn score_derivative_mean(m: &MixtureDensity, q: &QuadratureRule) -> Result<f64> {
    if !m.kernel().is_smooth() {
        return Err(Error::NonSmoothKernel);
    }
    let (mass, e) = q.integrate_pair(|y| {
        let p = m.pdf(y);
        let d2 = m.pdf_deriv2(y).expect("kernel smoothness already checked");
        if p < UNDERFLOW_FLOOR {
            (p, -d2)
        } else {
            let d = m.pdf_deriv(y).expect("kernel smoothness already checked");
            (p, d * d / p - d2)
        }
    });
    if (mass - 1.0).abs() > MASS_DEFICIT {
        return Err(Error::RangeTooNarrow { mass });
    }
    Ok(e)
}
