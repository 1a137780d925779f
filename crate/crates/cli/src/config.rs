//! Model configuration files.
//!
//! A config is a JSON object with a `sources` list and optional `scan` and
//! `seed` blocks:
//!
//! ```json
//! {
//!   "sources": [
//!     {"type": "discrete-plus-noise", "values": [-1.0, 1.0],
//!      "probs": [0.5, 0.5], "sigma": 0.1},
//!     {"type": "uniform"}
//!   ],
//!   "scan": {"grid_size": 2048,
//!            "quadrature": {"half_width_sigmas": 10.0, "steps": 20001},
//!            "merge_tol": 1e-9},
//!   "seed": 42
//! }
//! ```
//!
//! Unknown keys anywhere are rejected, so a typo fails loudly instead of
//! silently running with defaults. `uniform` and `gaussian` sources are the
//! pure unit-variance densities and take no further fields.

use entropy_landscape_core::{NoisySource, ScalarKernel};
use serde::Deserialize;
use std::path::Path;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    sources: Vec<RawSource>,
    scan: Option<RawScan>,
    seed: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSource {
    #[serde(rename = "type")]
    kind: String,
    values: Option<Vec<f64>>,
    probs: Option<Vec<f64>>,
    sigma: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScan {
    grid_size: Option<usize>,
    quadrature: Option<RawQuadrature>,
    merge_tol: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuadrature {
    half_width_sigmas: Option<f64>,
    steps: Option<usize>,
}

/// A parsed and validated configuration. Grid and quadrature fields keep
/// track of whether they were given explicitly, because the commands resolve
/// different defaults (the Parzen curve gets a coarser default grid than the
/// exact-density scan; its kernel bandwidth makes a finer one pointless).
pub struct Settings {
    pub sources: Vec<NoisySource>,
    pub grid: Option<usize>,
    pub half_width_sigmas: f64,
    pub steps: Option<usize>,
    pub merge_tol: Option<f64>,
    pub seed: Option<u64>,
}

/// Default angle-grid size for exact-density scans.
pub const DEFAULT_SCAN_GRID: usize = 2048;
/// Default angle-grid size for the sampled Parzen curve.
pub const DEFAULT_PARZEN_GRID: usize = 128;
/// Default quadrature step count for exact densities.
pub const DEFAULT_STEPS: usize = 20_001;
/// Default quadrature step count for Parzen kernel densities, whose
/// bandwidth never drops below a tenth of the sample spread.
pub const DEFAULT_PARZEN_STEPS: usize = 2_001;
/// Default quadrature half-width in combined-scale units.
pub const DEFAULT_HALF_WIDTH_SIGMAS: f64 = 10.0;

pub fn load(path: &Path) -> Result<Settings, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let raw: RawConfig = serde_json::from_str(&text)
        .map_err(|e| format!("config {}: {e}", path.display()))?;

    if raw.sources.is_empty() {
        return Err("config has no sources".to_string());
    }
    let mut sources = Vec::with_capacity(raw.sources.len());
    for (i, s) in raw.sources.iter().enumerate() {
        sources.push(build_source(s).map_err(|e| format!("source {i}: {e}"))?);
    }

    let scan = raw.scan.as_ref();
    let quad = scan.and_then(|s| s.quadrature.as_ref());
    let half_width_sigmas = quad
        .and_then(|q| q.half_width_sigmas)
        .unwrap_or(DEFAULT_HALF_WIDTH_SIGMAS);
    if !(half_width_sigmas > 0.0) || !half_width_sigmas.is_finite() {
        return Err(format!(
            "quadrature half_width_sigmas must be positive and finite, got {half_width_sigmas}"
        ));
    }
    if let Some(steps) = quad.and_then(|q| q.steps) {
        if steps == 0 {
            return Err("quadrature steps must be positive".to_string());
        }
    }
    if let Some(tol) = scan.and_then(|s| s.merge_tol) {
        if !(tol >= 0.0) || !tol.is_finite() {
            return Err(format!("merge_tol must be nonnegative and finite, got {tol}"));
        }
    }

    Ok(Settings {
        sources,
        grid: scan.and_then(|s| s.grid_size),
        half_width_sigmas,
        steps: quad.and_then(|q| q.steps),
        merge_tol: scan.and_then(|s| s.merge_tol),
        seed: raw.seed,
    })
}

fn build_source(raw: &RawSource) -> Result<NoisySource, String> {
    match raw.kind.as_str() {
        "discrete-plus-noise" => {
            let values = raw
                .values
                .clone()
                .ok_or("discrete-plus-noise needs a values list")?;
            let probs = raw
                .probs
                .clone()
                .ok_or("discrete-plus-noise needs a probs list")?;
            let sigma = raw.sigma.ok_or("discrete-plus-noise needs sigma")?;
            NoisySource::new(values, probs, ScalarKernel::Gaussian, sigma)
                .map_err(|e| e.to_string())
        }
        "uniform" | "gaussian" => {
            if raw.values.is_some() || raw.probs.is_some() || raw.sigma.is_some() {
                return Err(format!(
                    "a pure {} source takes no values/probs/sigma",
                    raw.kind
                ));
            }
            let kernel = if raw.kind == "uniform" {
                ScalarKernel::Uniform
            } else {
                ScalarKernel::Gaussian
            };
            NoisySource::new(vec![0.0], vec![1.0], kernel, 1.0).map_err(|e| e.to_string())
        }
        other => Err(format!(
            "unknown source type {other:?}; expected discrete-plus-noise, uniform, or gaussian"
        )),
    }
}
