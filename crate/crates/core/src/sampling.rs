//! Deterministic random sampling.
//!
//! All randomness in the crate flows through [`SplitMix64`], a 64-bit
//! state-increment generator with full period and no measurable lattice
//! structure at the sample sizes used here. It is hand-rolled (rather than
//! pulled from a dependency) so that a seed printed in a config file pins
//! the exact byte stream forever, independent of external crate versions.
//!
//! Derived draws are built from the raw stream in a fixed, documented order:
//!
//! * `next_f64` maps the top 53 bits of one `next_u64` onto `[0, 1)`.
//! * `next_standard_normal` is one Box–Muller cosine draw and always
//!   consumes exactly two uniforms (no caching of the sine partner), so the
//!   stream position after `k` normal draws is `2k` uniforms.
//! * `next_index` consumes one uniform and inverts the cumulative
//!   distribution of the given weights.
//! * `next_unit_uniform` consumes one uniform and returns a variate of the
//!   zero-mean unit-variance box density on `[-sqrt(3), sqrt(3)]`.

use crate::error::{Error, Result};
use crate::special::SQRT_3;
use alloc::string::ToString;
use alloc::vec::Vec;

/// SplitMix64 generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Next raw 64-bit output.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw on `[0, 1)` with 53-bit resolution.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal draw (Box–Muller, cosine branch, two uniforms).
    pub fn next_standard_normal(&mut self) -> f64 {
        let u1 = self.next_f64();
        let u2 = self.next_f64();
        // 1 - u1 lies in (0, 1], so the logarithm is finite.
        let r = libm::sqrt(-2.0 * libm::log(1.0 - u1));
        r * libm::cos(2.0 * core::f64::consts::PI * u2)
    }

    /// Zero-mean unit-variance uniform draw on `[-sqrt(3), sqrt(3)]`.
    pub fn next_unit_uniform(&mut self) -> f64 {
        (2.0 * self.next_f64() - 1.0) * SQRT_3
    }

    /// Index draw by inverse CDF over `weights` (assumed nonnegative,
    /// summing to ~1). Consumes one uniform. Rounding shortfall in the
    /// cumulative sum falls to the last index.
    pub fn next_index(&mut self, weights: &[f64]) -> usize {
        debug_assert!(!weights.is_empty());
        let u = self.next_f64();
        let mut acc = 0.0;
        for (i, w) in weights.iter().enumerate() {
            acc += w;
            if u < acc {
                return i;
            }
        }
        weights.len() - 1
    }
}

/// An observed batch of scalar samples, validated for density estimation.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    values: Vec<f64>,
}

impl SampleSet {
    /// Wraps a batch of draws. Needs at least two distinct finite values,
    /// otherwise there is no usable spread estimate.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput {
                what: "samples must be finite".to_string(),
            });
        }
        if values.len() < 2 {
            return Err(Error::DegenerateSample);
        }
        let first = values[0];
        if values.iter().all(|&v| v == first) {
            return Err(Error::DegenerateSample);
        }
        Ok(SampleSet { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Sample standard deviation with the unbiased (n - 1) denominator.
    pub fn std(&self) -> f64 {
        let m = self.mean();
        let ss: f64 = self.values.iter().map(|&v| (v - m) * (v - m)).sum();
        libm::sqrt(ss / (self.values.len() - 1) as f64)
    }
}
