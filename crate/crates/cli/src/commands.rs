//! The five subcommands. Each returns a [`Failure`] that the caller maps to
//! an exit code: configuration and usage problems exit 2, numerical failures
//! exit 3 with the failing quantity named on the error stream.

use std::path::Path;

use entropy_landscape_core::tolerances::ENUMERATION_GATE;
use entropy_landscape_core::{
    bounds_report, candidate_directions_2d, candidate_directions_axes, default_pair_merge_tol,
    entropy_quadrature, mixing_candidates, parzen_entropy, taylor_curvature_check,
    CandidateDirection, Error, MixtureDensity, SampleSet, SourceModel, SplitMix64,
};

use crate::config::{
    Settings, DEFAULT_PARZEN_GRID, DEFAULT_PARZEN_STEPS, DEFAULT_SCAN_GRID, DEFAULT_STEPS,
};
use crate::output;

pub enum Failure {
    /// Bad configuration or arguments; exit 2.
    Config(String),
    /// The computation itself failed; exit 3.
    Compute(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Config(_) => 2,
            Failure::Compute(_) => 3,
        }
    }
    pub fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Compute(m) => m,
        }
    }
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    output::emit(out, content).map_err(Failure::Compute)
}

/// Entropy, both bound families, and the Bayes error of a single mixture
/// family across a list of noise scales.
pub fn bounds(settings: &Settings, sigma_list: &str, out: Option<&Path>) -> Result<(), Failure> {
    if settings.sources.len() != 1 {
        return Err(Failure::Config(format!(
            "bounds needs exactly one source, config has {}",
            settings.sources.len()
        )));
    }
    let mut sigmas = Vec::new();
    for part in sigma_list.split(',') {
        let trimmed = part.trim();
        let s: f64 = trimmed
            .parse()
            .map_err(|_| Failure::Config(format!("bad sigma value {trimmed:?}")))?;
        if !s.is_finite() || s <= 0.0 {
            return Err(Failure::Config(format!(
                "sigma values must be positive and finite, got {s}"
            )));
        }
        sigmas.push(s);
    }
    if sigmas.is_empty() {
        return Err(Failure::Config("empty sigma list".to_string()));
    }

    let src = &settings.sources[0];
    let steps = settings.steps.unwrap_or(DEFAULT_STEPS);
    let mut rows = Vec::with_capacity(sigmas.len());
    for &sigma in &sigmas {
        let m = MixtureDensity::with_common_scale(
            src.probs().to_vec(),
            src.values().to_vec(),
            sigma,
            src.kernel(),
        )
        .map_err(|e| Failure::Compute(format!("mixture at sigma={sigma}: {e}")))?;
        let q = m
            .quadrature_with(settings.half_width_sigmas, steps)
            .map_err(|e| Failure::Compute(format!("quadrature at sigma={sigma}: {e}")))?;
        let h = entropy_quadrature(&m, &q)
            .map_err(|e| Failure::Compute(format!("entropy at sigma={sigma}: {e}")))?;
        let report = bounds_report(&m)
            .map_err(|e| Failure::Compute(format!("bounds at sigma={sigma}: {e}")))?;
        rows.push(vec![
            output::fmt(sigma),
            output::fmt(h),
            output::fmt(report.approximator),
            output::fmt(report.lower),
            output::fmt(report.bayes_error),
            output::fmt(report.decision.upper),
            output::fmt(report.decision.lower),
        ]);
    }
    let content = output::csv(
        "sigma,entropy,upper,lower,bayes_error,decision_upper,decision_lower",
        &rows,
    );
    emit(out, &content)
}

/// Exact-density entropy curve over `theta = i pi / grid` with the per-angle
/// sandwich, plus the detected minima in a companion file.
pub fn scan(settings: &Settings, grid_flag: Option<usize>, out: &Path) -> Result<(), Failure> {
    if settings.sources.len() != 2 {
        return Err(Failure::Config(format!(
            "scan needs exactly two sources, config has {}",
            settings.sources.len()
        )));
    }
    let grid = grid_flag.or(settings.grid).unwrap_or(DEFAULT_SCAN_GRID);
    if grid < 16 || grid % 2 != 0 {
        return Err(Failure::Config(format!(
            "scan grid must be even and at least 16, got {grid}"
        )));
    }
    let model = SourceModel::new(settings.sources.clone())
        .map_err(|e| Failure::Config(format!("source model: {e}")))?;
    let (a, b) = (&model.sources()[0], &model.sources()[1]);
    let tol = settings
        .merge_tol
        .unwrap_or_else(|| default_pair_merge_tol(a, b));
    let steps = settings.steps.unwrap_or(DEFAULT_STEPS);

    let scan = model
        .scan(grid, settings.half_width_sigmas, steps, tol)
        .map_err(|e| Failure::Compute(format!("scan: {e}")))?;

    let mut rows = Vec::with_capacity(grid);
    for i in 0..scan.thetas.len() {
        rows.push(vec![
            output::fmt(scan.thetas[i]),
            output::fmt(scan.entropy[i]),
            output::fmt(scan.upper[i]),
            output::fmt(scan.lower[i]),
        ]);
    }
    emit(Some(out), &output::csv("theta,entropy,upper,lower", &rows))?;

    let mut minima_rows = Vec::with_capacity(scan.minima.len());
    for m in &scan.minima {
        minima_rows.push(vec![
            output::fmt(m.theta),
            output::fmt(m.value),
            m.class.label().to_string(),
        ]);
    }
    let minima_file = output::minima_path(out);
    emit(
        Some(&minima_file),
        &output::csv("theta,value,class", &minima_rows),
    )
}

/// Candidate directions of the pure atom grid: the axes plus every
/// entropy-dropping collision direction, as JSON.
pub fn discrete(settings: &Settings, out: Option<&Path>) -> Result<(), Failure> {
    if settings.sources.len() < 2 {
        return Err(Failure::Config(format!(
            "discrete needs at least two sources, config has {}",
            settings.sources.len()
        )));
    }
    let model = SourceModel::new(settings.sources.clone())
        .map_err(|e| Failure::Config(format!("source model: {e}")))?;
    let joint = model
        .joint_pure()
        .map_err(|e| Failure::Compute(format!("joint support: {e}")))?;
    let tol = settings.merge_tol.unwrap_or_else(|| joint.default_merge_tol());

    let axes = candidate_directions_axes(&joint, tol)
        .map_err(|e| Failure::Compute(format!("axis candidates: {e}")))?;

    let list: Vec<CandidateDirection> = if joint.len() > ENUMERATION_GATE {
        eprintln!(
            "notice: support has {} atoms, over the {ENUMERATION_GATE}-atom enumeration gate; \
             mixing candidates skipped, axis candidates only",
            joint.len()
        );
        axes
    } else if joint.dim() == 2 {
        candidate_directions_2d(&joint, tol)
            .map_err(|e| Failure::Compute(format!("candidate directions: {e}")))?
    } else {
        let mut list = axes;
        let mixing = mixing_candidates(&joint, tol)
            .map_err(|e| Failure::Compute(format!("mixing candidates: {e}")))?;
        list.extend(mixing);
        list
    };

    let mut body = String::from("[\n");
    for (i, c) in list.iter().enumerate() {
        let angle = match c.angle {
            Some(a) => output::fmt(a),
            None => "null".to_string(),
        };
        let w: Vec<String> = c.w.iter().map(|&x| output::fmt(x)).collect();
        let pairs: Vec<String> = c
            .generating_pairs
            .iter()
            .map(|&(a, b)| format!("[{a}, {b}]"))
            .collect();
        body.push_str(&format!(
            "  {{\n    \"angle\": {angle},\n    \"w\": [{}],\n    \"generating_pairs\": [{}],\n    \"h_projected\": {},\n    \"entropy_drop\": {}\n  }}{}\n",
            w.join(", "),
            pairs.join(", "),
            output::fmt(c.h_projected),
            output::fmt(c.entropy_drop),
            if i + 1 < list.len() { "," } else { "" },
        ));
    }
    body.push_str("]\n");
    emit(out, &body)
}

/// Numeric second difference of the entropy at a source's axis against the
/// closed-form curvature, as JSON.
pub fn taylor(
    settings: &Settings,
    axis: usize,
    h_step: f64,
    out: Option<&Path>,
) -> Result<(), Failure> {
    if settings.sources.len() != 2 {
        return Err(Failure::Config(format!(
            "taylor needs exactly two sources, config has {}",
            settings.sources.len()
        )));
    }
    let (a, b) = (&settings.sources[0], &settings.sources[1]);
    let tol = settings
        .merge_tol
        .unwrap_or_else(|| default_pair_merge_tol(a, b));
    let steps = settings.steps.unwrap_or(DEFAULT_STEPS);

    let check = taylor_curvature_check(a, b, axis, h_step, settings.half_width_sigmas, steps, tol)
        .map_err(|e| match e {
            Error::InvalidInput { .. } => Failure::Config(format!("taylor: {e}")),
            other => Failure::Compute(format!("taylor: {other}")),
        })?;

    let relative = if check.analytic.abs() > 1e-12 {
        output::fmt((check.numeric - check.analytic).abs() / check.analytic.abs())
    } else {
        "null".to_string()
    };
    let body = format!(
        "{{\n  \"numeric\": {},\n  \"analytic\": {},\n  \"relative_error\": {relative}\n}}\n",
        output::fmt(check.numeric),
        output::fmt(check.analytic),
    );
    emit(out, &body)
}

/// Sample count for the Parzen pipeline.
const PARZEN_SAMPLES: usize = 1000;

/// Seeded sample of both sources, rotated through the angle grid, with the
/// Parzen-window entropy of each projection.
///
/// Draw order (fixed, documented): for each of the 1000 samples, one draw
/// from the first source then one from the second; a source draw is one
/// atom-selector variate followed by its kernel's noise variates. The sample
/// is drawn once and reused at every angle.
pub fn parzen(
    settings: &Settings,
    seed_flag: Option<u64>,
    grid_flag: Option<usize>,
    out: Option<&Path>,
) -> Result<(), Failure> {
    if settings.sources.len() != 2 {
        return Err(Failure::Config(format!(
            "parzen needs exactly two sources, config has {}",
            settings.sources.len()
        )));
    }
    let seed = seed_flag.or(settings.seed).ok_or_else(|| {
        Failure::Config("parzen needs a seed (--seed or the config's seed field)".to_string())
    })?;
    let grid = grid_flag.or(settings.grid).unwrap_or(DEFAULT_PARZEN_GRID);
    if grid < 16 || grid % 2 != 0 {
        return Err(Failure::Config(format!(
            "parzen grid must be even and at least 16, got {grid}"
        )));
    }
    let steps = settings.steps.unwrap_or(DEFAULT_PARZEN_STEPS);

    let (a, b) = (&settings.sources[0], &settings.sources[1]);
    let mut rng = SplitMix64::new(seed);
    let mut s1 = Vec::with_capacity(PARZEN_SAMPLES);
    let mut s2 = Vec::with_capacity(PARZEN_SAMPLES);
    for _ in 0..PARZEN_SAMPLES {
        s1.push(a.sample(&mut rng));
        s2.push(b.sample(&mut rng));
    }

    let pi = std::f64::consts::PI;
    let mut rows = Vec::with_capacity(grid);
    for i in 0..grid {
        let theta = i as f64 * pi / grid as f64;
        let (sin, cos) = (theta.sin(), theta.cos());
        let ys: Vec<f64> = s1.iter().zip(&s2).map(|(&x, &y)| sin * x + cos * y).collect();
        let samples = SampleSet::new(ys)
            .map_err(|e| Failure::Compute(format!("samples at theta={theta}: {e}")))?;
        let h = parzen_entropy(&samples, steps)
            .map_err(|e| Failure::Compute(format!("parzen entropy at theta={theta}: {e}")))?;
        rows.push(vec![output::fmt(theta), output::fmt(h)]);
    }
    emit(out, &output::csv("theta,entropy_parzen", &rows))
}
