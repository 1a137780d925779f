//! End-to-end acceptance checks: one numbered test per published claim,
//! covering the entropy sandwich, closed-form overlap terms, landscape
//! minima geometry, curvature identities, symmetry properties, and
//! command-line determinism against the golden files in `tests/golden/`.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see one
//! pass/fail line per criterion; tolerances are pinned next to each assert.

use entropy_landscape_core::{
    approximator, bounds_report, candidate_directions_2d, default_pair_merge_tol,
    entropy_quadrature, omega_partition, overlap_terms, overlap_terms_numeric, scan_pair,
    sigma_sweep, symmetry_checks, taylor_curvature_check,
    LandscapeScan, MinimumClass, MixtureDensity, NoisySource, ScalarKernel, SourceModel,
    SplitMix64,
};
use std::path::{Path, PathBuf};
use std::process::Command;

const PI: f64 = core::f64::consts::PI;
const LN_2: f64 = core::f64::consts::LN_2;
const GRID: usize = 2048;
const GRID_STEP: f64 = PI / 2048.0;
const QUAD_STEPS: usize = 20_001;

// ---------------------------------------------------------------- fixtures

fn gaussian_mixture(weights: Vec<f64>, locations: Vec<f64>, sigma: f64) -> MixtureDensity {
    MixtureDensity::with_common_scale(weights, locations, sigma, ScalarKernel::Gaussian).unwrap()
}

/// The trimodal mixture used throughout: three modes five sigmas-at-1 apart.
fn trimodal(sigma: f64) -> MixtureDensity {
    gaussian_mixture(vec![0.25, 0.5, 0.25], vec![0.0, 5.0, 10.0], sigma)
}

fn entropy_of(m: &MixtureDensity) -> f64 {
    entropy_quadrature(m, &m.default_quadrature().unwrap()).unwrap()
}

/// Random gaussian mixture with 2..=6 components and mode gaps in
/// [0.5, 50] at unit component scale.
fn random_mixture(rng: &mut SplitMix64) -> MixtureDensity {
    let n = 2 + (rng.next_u64() % 5) as usize;
    let mut locations = vec![0.0];
    for _ in 1..n {
        let gap = 0.5 + 49.5 * rng.next_f64();
        locations.push(locations.last().unwrap() + gap);
    }
    let mut weights: Vec<f64> = (0..n).map(|_| 0.1 + 0.9 * rng.next_f64()).collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    gaussian_mixture(weights, locations, 1.0)
}

/// Random gaussian mixture whose modes stay 2..6 component scales apart.
/// The plain-difference decision upper bound `A - 2 P(e)` needs this much
/// separation: for two equal-weight gaussians it fails below roughly
/// 1.4 scales, because the misclassification region then carries posteriors
/// too balanced for the factor-two form (the log2-free variant of the
/// conditional-entropy error bound). The square-root lower bound holds
/// unconditionally.
fn separated_mixture(rng: &mut SplitMix64) -> MixtureDensity {
    let n = 2 + (rng.next_u64() % 5) as usize;
    let mut locations = vec![0.0];
    let mut min_gap = f64::INFINITY;
    for _ in 1..n {
        let gap = 0.8 + 3.0 * rng.next_f64();
        min_gap = min_gap.min(gap);
        locations.push(locations.last().unwrap() + gap);
    }
    let mut weights: Vec<f64> = (0..n).map(|_| 0.1 + 0.9 * rng.next_f64()).collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    let sigma = min_gap / (2.0 + 4.0 * rng.next_f64());
    gaussian_mixture(weights, locations, sigma)
}

fn pure_source(kernel: ScalarKernel) -> NoisySource {
    NoisySource::new(vec![0.0], vec![1.0], kernel, 1.0).unwrap()
}

fn bimodal_source(sigma: f64) -> NoisySource {
    NoisySource::new(vec![-1.0, 1.0], vec![0.5, 0.5], ScalarKernel::Gaussian, sigma).unwrap()
}

/// The reciprocal-variance two-source pair: a 2-atom source and a 2-atom
/// source whose raw variances are 49/54 and 54/49, both stored here already
/// rescaled to unit atom variance. Their joint support collides at
/// tan(theta) = 7 sqrt(6) / 18 and at the mirror angle.
fn grid_pair(sigma: f64) -> (NoisySource, NoisySource) {
    let a = NoisySource::new(
        vec![-1.212_183_053_462_653, 0.909_137_290_096_989_7],
        vec![1.0 / 3.0, 2.0 / 3.0],
        ScalarKernel::Gaussian,
        sigma,
    )
    .unwrap();
    let b = NoisySource::new(
        vec![-1.347_150_628_109_126_8, 0.673_575_314_054_563_4],
        vec![3.0 / 7.0, 4.0 / 7.0],
        ScalarKernel::Gaussian,
        sigma,
    )
    .unwrap();
    (a, b)
}

/// The 2x3 pair: a symmetric 2-atom source and a 3-atom source, both with
/// atom variance 1.03, whose product support has six distinct collision
/// directions besides the axes.
fn two_by_three_pair(sigma: f64) -> (NoisySource, NoisySource) {
    let a = NoisySource::new(
        vec![1.485_110_843_490_778, 3.514_889_156_509_221_7],
        vec![0.5, 0.5],
        ScalarKernel::Gaussian,
        sigma,
    )
    .unwrap();
    let b = NoisySource::new(
        vec![-1.2, -0.4, 2.0],
        vec![0.5, 0.375, 0.125],
        ScalarKernel::Gaussian,
        sigma,
    )
    .unwrap();
    (a, b)
}

fn scan_model(a: NoisySource, b: NoisySource, grid: usize) -> LandscapeScan {
    let model = SourceModel::new(vec![a, b]).unwrap();
    let tol = default_pair_merge_tol(&model.sources()[0], &model.sources()[1]);
    model.scan(grid, 10.0, QUAD_STEPS, tol).unwrap()
}

/// Angular distance modulo pi.
fn ang_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % PI;
    d.min(PI - d)
}

fn dist_to_axes(theta: f64) -> f64 {
    ang_dist(theta, 0.0).min(ang_dist(theta, PI / 2.0))
}

// -------------------------------------------------------------- criteria

#[test]
fn criterion_01_entropy_sandwich_on_randomized_mixtures() {
    let mut rng = SplitMix64::new(0x5eed_0001);
    for case in 0..1000 {
        let m = random_mixture(&mut rng);
        let report = bounds_report(&m).unwrap();
        let h = entropy_of(&report.mixture);
        assert!(
            h <= report.approximator + 1e-6,
            "case {case}: entropy {h} above approximator {}",
            report.approximator
        );
        assert!(
            h >= report.lower - 1e-6,
            "case {case}: entropy {h} below lower bound {}",
            report.lower
        );
    }
    println!("criterion 01 PASS: 1000 randomized gaussian mixtures stay inside lower <= H <= approximator (slack 1e-6)");
}

#[test]
fn criterion_02_closed_form_overlap_terms_match_integration() {
    for ratio in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        for m in [
            gaussian_mixture(vec![0.5, 0.5], vec![0.0, ratio], 1.0),
            gaussian_mixture(vec![0.25, 0.5, 0.25], vec![0.0, ratio, 2.0 * ratio], 1.0),
        ] {
            let part = omega_partition(&m).unwrap();
            let closed = overlap_terms(&m, &part).unwrap();
            let numeric = overlap_terms_numeric(&m, &part).unwrap();
            for i in 0..m.len() {
                assert!(
                    (closed.eps[i] - numeric.eps[i]).abs() < 1e-8,
                    "gap/scale {ratio}, component {i}: eps {} vs {}",
                    closed.eps[i],
                    numeric.eps[i]
                );
                assert!(
                    (closed.eps_prime[i] - numeric.eps_prime[i]).abs() < 1e-8,
                    "gap/scale {ratio}, component {i}: eps' {} vs {}",
                    closed.eps_prime[i],
                    numeric.eps_prime[i]
                );
            }
        }
    }
    println!("criterion 02 PASS: gaussian overlap terms match direct tail integration to 1e-8 for gap/scale in {{0.1..10}}");
}

#[test]
fn criterion_03_trimodal_bound_gap_asymptotics() {
    // Small noise: the sandwich closes.
    let tight = bounds_report(&trimodal(0.01)).unwrap();
    assert!(
        tight.approximator - tight.lower < 1e-8,
        "sigma=0.01 gap {}",
        tight.approximator - tight.lower
    );

    // Large noise: the gap approaches 3/2 plus the weight entropy.
    let wide = bounds_report(&trimodal(100.0)).unwrap();
    let gap = wide.approximator - wide.lower;
    let ceiling = 1.5 + 1.5 * LN_2;
    assert!(
        (gap - 2.499_036_388_404_277_4).abs() < 1e-9,
        "sigma=100 gap {gap}"
    );
    assert!((gap - ceiling).abs() < 0.05, "gap {gap} vs ceiling {ceiling}");

    // Far past the mode structure the entropy grows like ln sigma.
    let h_lo = entropy_of(&trimodal(10.0));
    let h_hi = entropy_of(&trimodal(1000.0));
    let slope = (h_hi - h_lo) / (1000.0_f64 / 10.0).ln();
    assert!((slope - 1.0).abs() < 0.02, "slope {slope}");
    println!("criterion 03 PASS: trimodal gap < 1e-8 at sigma=0.01, within 0.05 of 3/2 + h(weights) at sigma=100, and H grows as ln sigma (slope {slope:.4})");
}

#[test]
fn criterion_04_misclassification_bounds() {
    let mut rng = SplitMix64::new(0x5eed_0004);
    for case in 0..200 {
        let m = separated_mixture(&mut rng);
        let report = bounds_report(&m).unwrap();
        let h = entropy_of(&report.mixture);
        assert!(
            h <= report.decision.upper + 1e-5,
            "case {case}: entropy {h} above decision upper {}",
            report.decision.upper
        );
        assert!(
            h >= report.decision.lower - 1e-5,
            "case {case}: entropy {h} below decision lower {}",
            report.decision.lower
        );
    }

    // At small noise the overlap lower bound beats the square-root
    // misclassification bound: its slack decays like the tail mass itself,
    // not its square root.
    for sigma in [0.01, 0.02, 0.05, 0.1] {
        let report = bounds_report(&trimodal(sigma)).unwrap();
        assert!(
            report.lower >= report.decision.lower,
            "sigma {sigma}: overlap lower {} below decision lower {}",
            report.lower,
            report.decision.lower
        );
    }
    println!("criterion 04 PASS: 200 separated mixtures stay inside the misclassification sandwich (slack 1e-5); overlap lower bound dominates at sigma <= 0.1");
}

#[test]
fn criterion_05_axis_curvature_identities() {
    // Equal total variances: a standard gaussian against a two-atom source
    // with atoms at +/- sqrt(0.99) and noise 0.1.
    let gauss = pure_source(ScalarKernel::Gaussian);
    let bimodal = NoisySource::new(
        vec![-0.994_987_437_106_62, 0.994_987_437_106_62],
        vec![0.5, 0.5],
        ScalarKernel::Gaussian,
        0.1,
    )
    .unwrap();
    let tol = default_pair_merge_tol(&gauss, &bimodal);

    // Bimodal axis: measured curvature matches var * J - 1 within 2%.
    let check = taylor_curvature_check(&gauss, &bimodal, 1, 1e-2, 10.0, QUAD_STEPS, tol).unwrap();
    assert!(check.analytic > 1.0, "analytic curvature {}", check.analytic);
    let rel = ((check.numeric - check.analytic) / check.analytic).abs();
    assert!(rel < 0.02, "curvature mismatch {rel}");

    // Gaussian axis: flat to second order.
    let flat = taylor_curvature_check(&gauss, &bimodal, 0, 1e-2, 10.0, QUAD_STEPS, tol).unwrap();
    assert!(flat.numeric.abs() < 1e-3, "numeric {}", flat.numeric);
    assert!(flat.analytic.abs() < 1e-6, "analytic {}", flat.analytic);

    // And the gaussian axis tops the whole scan. The falloff near the axis
    // is eighth-order in the angle (the excess kurtosis enters squared), so
    // equality is asserted only up to quadrature noise.
    let scan = scan_pair(&gauss, &bimodal, 512, 10.0, QUAD_STEPS, tol).unwrap();
    let h_axis = scan.entropy[256];
    let top = scan.entropy.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert!(top - h_axis < 1e-12, "axis {h_axis} vs top {top}");
    for (i, &h) in scan.entropy.iter().enumerate() {
        if (scan.thetas[i] - PI / 2.0).abs() > 0.3 {
            assert!(h < h_axis, "theta {} reaches {h} >= {h_axis}", scan.thetas[i]);
        }
    }
    println!("criterion 05 PASS: axis curvature matches var*J - 1 within 2% ({:.4} vs {:.4}); gaussian axis is flat (|{:.2e}| < 1e-3) and tops the scan", check.numeric, check.analytic, flat.numeric);
}

#[test]
fn criterion_06_axis_minima_for_the_three_basic_pairs() {
    // Two flat kernels: both axes are minima and nothing else is.
    let scan1 = scan_model(
        pure_source(ScalarKernel::Uniform),
        pure_source(ScalarKernel::Uniform),
        GRID,
    );
    assert!(!scan1.minima.is_empty());
    for m in &scan1.minima {
        assert_eq!(m.class, MinimumClass::NonMixing, "at theta {}", m.theta);
        assert!(
            dist_to_axes(m.theta) <= GRID_STEP + 1e-12,
            "minimum off axis at {}",
            m.theta
        );
    }
    assert!(scan1.minima.iter().any(|m| m.index == 0));
    assert!(scan1.minima.iter().any(|m| m.index == GRID / 2));

    // Gaussian plus bimodal: the only minimum is the bimodal axis, and the
    // gaussian axis is the top of the curve (flat to eighth order nearby,
    // strictly above everything further away).
    let scan2 = scan_model(pure_source(ScalarKernel::Gaussian), bimodal_source(0.1), GRID);
    assert!(!scan2.minima.is_empty());
    for m in &scan2.minima {
        assert_eq!(m.class, MinimumClass::NonMixing, "at theta {}", m.theta);
        assert!(dist_to_axes(m.theta) <= GRID_STEP + 1e-12);
    }
    assert!(scan2.minima.iter().any(|m| m.index == 0));
    let h_axis = scan2.entropy[GRID / 2];
    let top = scan2.entropy.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert!(top - h_axis < 1e-12, "gaussian axis {h_axis} vs top {top}");
    for (i, &h) in scan2.entropy.iter().enumerate() {
        if (scan2.thetas[i] - PI / 2.0).abs() > 0.3 {
            assert!(h < h_axis);
        }
    }

    // Two bimodal sources: axis minima plus at least one genuine mixing
    // minimum away from the axes.
    let scan3 = scan_model(bimodal_source(0.15), bimodal_source(0.15), GRID);
    for m in scan3.minima.iter().filter(|m| m.class == MinimumClass::NonMixing) {
        assert!(dist_to_axes(m.theta) <= GRID_STEP + 1e-12);
    }
    assert!(scan3.minima.iter().any(|m| m.index == 0));
    assert!(scan3.minima.iter().any(|m| m.index == GRID / 2));
    let off_axis_mixing = scan3
        .minima
        .iter()
        .filter(|m| m.class == MinimumClass::Mixing && dist_to_axes(m.theta) > 1.5 * GRID_STEP)
        .count();
    assert!(off_axis_mixing >= 1, "no mixing minimum off the axes");
    println!("criterion 06 PASS: flat/flat and gaussian/bimodal pairs dip only at axes (within pi/2048), gaussian axis is the maximum, bimodal/bimodal adds {off_axis_mixing} off-axis mixing minima");
}

#[test]
fn criterion_07_candidate_directions_cover_every_pair_normal() {
    let (a, b) = two_by_three_pair(0.05);
    let model = SourceModel::new(vec![a, b]).unwrap();
    let joint = model.joint_pure().unwrap();
    let tol = joint.default_merge_tol();
    let cands = candidate_directions_2d(&joint, tol).unwrap();
    let h_joint = joint.entropy();
    assert!((h_joint - 1.667_461_933_429_294_8).abs() < 1e-12);

    // Every atom-pair difference has its normal direction in the candidate
    // list.
    let atoms = joint.atoms();
    for i in 0..atoms.len() {
        for j in (i + 1)..atoms.len() {
            let d = [atoms[j][0] - atoms[i][0], atoms[j][1] - atoms[i][1]];
            let normal = d[1].atan2(-d[0]);
            assert!(
                cands
                    .iter()
                    .any(|c| ang_dist(c.angle.unwrap(), normal) < 1e-9),
                "pair ({i},{j}) normal {normal} missing"
            );
        }
    }

    // Every candidate drops the entropy, strictly, and knows its pairs.
    for c in &cands {
        assert!(!c.generating_pairs.is_empty());
        assert!(c.entropy_drop > 1e-12);
        assert!((c.h_projected + c.entropy_drop - h_joint).abs() < 1e-12);
    }

    // The axes drop to the marginal entropies.
    let ax0 = cands.iter().find(|c| c.angle.unwrap() < 1e-12).unwrap();
    assert!((ax0.h_projected - 0.974_314_752_869_349_5).abs() < 1e-12);
    let ax1 = cands
        .iter()
        .find(|c| (c.angle.unwrap() - PI / 2.0).abs() < 1e-12)
        .unwrap();
    assert!((ax1.h_projected - LN_2).abs() < 1e-12);

    // Away from the candidates the projection keeps the full entropy.
    let mut rng = SplitMix64::new(0x5eed_0007);
    let mut checked = 0;
    while checked < 200 {
        let theta = PI * rng.next_f64();
        if cands
            .iter()
            .any(|c| ang_dist(theta, c.angle.unwrap()) < 1e-3)
        {
            continue;
        }
        let h = joint
            .projection_entropy(&[theta.sin(), theta.cos()], tol)
            .unwrap();
        assert!(
            (h - h_joint).abs() < 1e-12,
            "entropy moved to {h} at angle {theta}"
        );
        checked += 1;
    }
    println!("criterion 07 PASS: {} candidate directions cover all 15 atom-pair normals; axis drops hit ln 2 and 0.97431; 200 off-candidate angles keep h(U) = {h_joint:.6}", cands.len());
}

#[test]
fn criterion_08_collision_angles_of_the_reciprocal_grid() {
    let (a, b) = grid_pair(0.1);
    let model = SourceModel::new(vec![a, b]).unwrap();
    let sources = model.sources().to_vec();
    assert!((sources[0].sigma() - sources[1].sigma()).abs() < 1e-15);
    let sigma = sources[0].sigma();
    let tol = default_pair_merge_tol(&sources[0], &sources[1]);
    let scan = model.scan(GRID, 10.0, QUAD_STEPS, tol).unwrap();

    let theta_star = (7.0 * 6.0_f64.sqrt() / 18.0).atan();
    let mirror = PI - theta_star;

    // Exactly two mixing minima, one per collision angle, each within a
    // grid step of the exact solution of w . (u_i - u_j) = 0.
    let mut mixing: Vec<f64> = scan
        .minima
        .iter()
        .filter(|m| m.class == MinimumClass::Mixing)
        .map(|m| m.theta)
        .collect();
    mixing.sort_by(|x, y| x.partial_cmp(y).unwrap());
    assert_eq!(mixing.len(), 2, "mixing minima at {mixing:?}");
    assert!((mixing[0] - theta_star).abs() <= GRID_STEP);
    assert!((mixing[1] - mirror).abs() <= GRID_STEP);

    // At the collision angles the projected mixture obeys a tight sandwich.
    let joint = model.joint_pure().unwrap();
    let merge = joint.default_merge_tol();
    for t in [theta_star, mirror] {
        let proj = joint.project(&[t.sin(), t.cos()], merge).unwrap();
        assert_eq!(proj.len(), 3, "three merged atoms at {t}");
        let locations: Vec<f64> = proj.atoms().iter().map(|a| a[0]).collect();
        let m = MixtureDensity::with_common_scale(
            proj.probs().to_vec(),
            locations,
            sigma,
            ScalarKernel::Gaussian,
        )
        .unwrap();
        let report = bounds_report(&m).unwrap();
        assert!(
            report.approximator - report.lower < 1e-4,
            "bound gap {} at angle {t}",
            report.approximator - report.lower
        );
    }

    // The additive upper curve is flat except where atoms collide: every
    // grid point away from a candidate angle sits at the plateau, and the
    // direct evaluation at theta* drops by the frozen entropy difference.
    let cands = candidate_directions_2d(&joint, merge).unwrap();
    let plateau = scan.upper.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    for i in 0..GRID {
        let near = cands
            .iter()
            .any(|c| ang_dist(scan.thetas[i], c.angle.unwrap()) <= GRID_STEP);
        if near {
            assert!(scan.upper[i] <= plateau + 1e-9);
        } else {
            assert!(
                (scan.upper[i] - plateau).abs() < 1e-9,
                "upper wobbles to {} at grid point {i}",
                scan.upper[i]
            );
        }
    }
    let proj_star = joint
        .project(&[theta_star.sin(), theta_star.cos()], merge)
        .unwrap();
    let at_star = MixtureDensity::with_common_scale(
        proj_star.probs().to_vec(),
        proj_star.atoms().iter().map(|a| a[0]).collect(),
        sigma,
        ScalarKernel::Gaussian,
    )
    .unwrap();
    let drop = plateau - approximator(&at_star);
    assert!(
        (drop - 0.320_481_746_194_884).abs() < 1e-9,
        "approximator drop {drop}"
    );
    println!("criterion 08 PASS: two mixing minima within pi/2048 of atan(7 sqrt 6 / 18) and its mirror; bound gap < 1e-4 there; upper curve flat off candidates with drop {drop:.6} at the collision");
}

#[test]
fn criterion_09_minima_converge_to_the_collision_angle() {
    let (a0, b0) = grid_pair(0.2);
    let theta_star = (7.0 * 6.0_f64.sqrt() / 18.0).atan();
    let mirror = PI - theta_star;

    let mut worst = Vec::new();
    for sigma in [0.2, 0.1, 0.05, 0.02] {
        let model = SourceModel::new(vec![
            a0.with_sigma(sigma).unwrap(),
            b0.with_sigma(sigma).unwrap(),
        ])
        .unwrap();
        let tol = default_pair_merge_tol(&model.sources()[0], &model.sources()[1]);
        let scan = model.scan(GRID, 10.0, QUAD_STEPS, tol).unwrap();
        let mixing: Vec<f64> = scan
            .minima
            .iter()
            .filter(|m| m.class == MinimumClass::Mixing)
            .map(|m| m.theta)
            .collect();
        assert!(!mixing.is_empty(), "no mixing minima at sigma {sigma}");
        let d = mixing
            .iter()
            .map(|&t| (t - theta_star).abs().min((t - mirror).abs()))
            .fold(0.0_f64, f64::max);
        worst.push(d);
    }
    for pair in worst.windows(2) {
        assert!(
            pair[1] <= pair[0] + 1e-12,
            "distance grew: {:?}",
            worst
        );
    }
    assert!(*worst.last().unwrap() < GRID_STEP, "final distance {worst:?}");
    println!("criterion 09 PASS: mixing-minimum distance to the collision angle is non-increasing over sigma {{0.2, 0.1, 0.05, 0.02}} and ends at {:.2e} < pi/2048", worst.last().unwrap());
}

#[test]
fn criterion_10_noise_sweep_washes_out_the_dips() {
    let (a, b) = two_by_three_pair(0.05);
    let tol = default_pair_merge_tol(&a, &b);
    let sweep = sigma_sweep(&a, &b, &[0.05, 0.5, 5.0], 256, 10.0, QUAD_STEPS, tol).unwrap();
    let mixing_count = |scan: &LandscapeScan| {
        scan.minima
            .iter()
            .filter(|m| m.class == MinimumClass::Mixing)
            .count()
    };

    let low = mixing_count(&sweep[0].scan);
    assert!(low >= 1, "no mixing minima at sigma 0.05");
    assert_eq!(mixing_count(&sweep[1].scan), 0, "dips survived sigma 0.5");
    assert_eq!(mixing_count(&sweep[2].scan), 0, "dips survived sigma 5");

    // At large noise the whole curve is the gaussian entropy of the summed
    // variance; the atoms only contribute their unit variance.
    let reference = 0.5 * (2.0 * PI * core::f64::consts::E).ln() + 5.0_f64.ln();
    for (i, &h) in sweep[2].scan.entropy.iter().enumerate() {
        assert!(
            (h - reference).abs() < 0.05,
            "H({}) = {h} vs gaussian reference {reference}",
            sweep[2].scan.thetas[i]
        );
    }
    println!("criterion 10 PASS: {low} mixing dips at sigma 0.05, none at 0.5 or 5; the sigma=5 curve sits within 0.05 of ln sqrt(2 pi e) + ln sigma");
}

#[test]
fn criterion_11_landscape_symmetries() {
    // Identical symmetric sources: all four symmetry premises hold at once.
    let src = bimodal_source(0.15);
    let tol = default_pair_merge_tol(&src, &src);
    let full = symmetry_checks(&src, &src, 256, 10.0, QUAD_STEPS, tol).unwrap();
    assert!(full.max_period_dev <= 1e-6, "period {}", full.max_period_dev);
    let reflection = full.max_reflection_dev.unwrap();
    assert!(reflection <= 1e-6, "reflection {reflection}");
    let swap = full.max_swap_dev.unwrap();
    assert!(swap <= 1e-6, "swap {swap}");
    let pairing = full.max_candidate_pairing_gap.unwrap();
    assert!(pairing <= 1e-6, "pairing {pairing}");

    // An asymmetric partner keeps the forced properties and reports the
    // conditional ones as inapplicable where the premise fails.
    let skew = NoisySource::new(
        vec![-1.3, 0.8],
        vec![0.4, 0.6],
        ScalarKernel::Gaussian,
        0.15,
    )
    .unwrap();
    let tol = default_pair_merge_tol(&src, &skew);
    let partial = symmetry_checks(&src, &skew, 256, 10.0, QUAD_STEPS, tol).unwrap();
    assert!(partial.max_period_dev <= 1e-6);
    let reflection = partial.max_reflection_dev.unwrap();
    assert!(reflection <= 1e-6, "reflection {reflection}");
    assert!(partial.max_swap_dev.is_none(), "swap premise should fail");
    let pairing = partial.max_candidate_pairing_gap.unwrap();
    assert!(pairing <= 1e-6, "pairing {pairing}");
    println!("criterion 11 PASS: periodicity, reflection, swap, and collision-pairing deviations all within 1e-6 on their premise-holding pairs");
}

// ------------------------------------------------------------ CLI layer

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_entropy-landscape")
}

fn repo_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn run(args: &[&str]) -> std::process::Output {
    Command::new(binary())
        .args(args)
        .output()
        .expect("failed to launch the binary")
}

#[test]
fn criterion_12_cli_runs_are_deterministic_and_match_goldens() {
    let configs = repo_path("configs");
    let golden = repo_path("crates/cli/tests/golden");
    let tmp = tempfile::tempdir().unwrap();
    let cfg = |name: &str| configs.join(name).to_str().unwrap().to_string();

    // Every subcommand, run twice with identical inputs: byte-identical
    // stdout, stderr, and output files.
    let scan_out = tmp.path().join("scan.csv");
    let scan_out2 = tmp.path().join("scan2.csv");
    let commands: Vec<Vec<String>> = vec![
        vec![
            "bounds".into(),
            "--config".into(),
            cfg("example4.json"),
            "--sigma".into(),
            "0.01,0.05,0.1,0.2,0.5,1,2,5,10,20,50,100,1000".into(),
        ],
        vec!["discrete".into(), "--config".into(), cfg("example5.json")],
        vec![
            "taylor".into(),
            "--config".into(),
            cfg("curvature_pair.json"),
            "--source".into(),
            "1".into(),
        ],
        vec![
            "parzen".into(),
            "--config".into(),
            cfg("example3.json"),
            "--seed".into(),
            "7".into(),
            "--grid".into(),
            "64".into(),
        ],
    ];
    let mut outputs = Vec::new();
    for args in &commands {
        let refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let first = run(&refs);
        let second = run(&refs);
        assert_eq!(first.status.code(), Some(0), "{args:?} failed: {}", String::from_utf8_lossy(&first.stderr));
        assert_eq!(first.stdout, second.stdout, "stdout differs for {args:?}");
        assert_eq!(first.stderr, second.stderr, "stderr differs for {args:?}");
        outputs.push(first.stdout);
    }

    // The scan writes files; compare both runs and both artifacts.
    for out in [&scan_out, &scan_out2] {
        let st = run(&[
            "scan",
            "--config",
            &cfg("example6.json"),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(st.status.code(), Some(0), "{}", String::from_utf8_lossy(&st.stderr));
    }
    let scan_bytes = std::fs::read(&scan_out).unwrap();
    assert_eq!(scan_bytes, std::fs::read(&scan_out2).unwrap());
    let minima_bytes = std::fs::read(tmp.path().join("scan.minima.csv")).unwrap();
    assert_eq!(
        minima_bytes,
        std::fs::read(tmp.path().join("scan2.minima.csv")).unwrap()
    );

    // Golden comparisons, byte for byte.
    let read = |name: &str| std::fs::read(golden.join(name)).unwrap();
    assert_eq!(outputs[0], read("example4_bounds.csv"), "bounds golden drifted");
    assert_eq!(outputs[1], read("example5_discrete.json"), "discrete golden drifted");
    assert_eq!(scan_bytes, read("example6_scan.csv"), "scan golden drifted");
    assert_eq!(minima_bytes, read("example6_scan.minima.csv"), "scan minima golden drifted");
    println!("criterion 12 PASS: five subcommands byte-identical across reruns; bounds/discrete/scan outputs match the checked-in goldens");
}
