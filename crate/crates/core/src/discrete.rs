//! Discrete vector distributions and entropy-dropping projection directions.
//!
//! A distribution with finitely many distinct atoms in `R^K`, projected onto
//! a unit direction `w`, keeps its full entropy for generic `w`: distinct
//! atoms stay distinct. The entropy can only drop at the special directions
//! where two or more atoms collide under the projection, and those
//! directions are exactly the unit normals to spans of atom-difference
//! vectors. This module enumerates them, measures the drop, and checks that
//! a candidate really is isolated (no drop anywhere in a punctured
//! neighborhood around it).

use crate::error::{Error, Result};
use crate::tolerances::{
    CANDIDATE_ANGLE_TOL, ENTROPY_DROP_MIN, ENUMERATION_GATE, MERGE_TOL_FACTOR, PROB_SUM_TOL,
    UNIT_NORM_TOL,
};
use alloc::string::ToString;
use alloc::vec::Vec;

/// Finitely many distinct weighted atoms in `R^K`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteVectorDistribution {
    atoms: Vec<Vec<f64>>,
    probs: Vec<f64>,
}

impl DiscreteVectorDistribution {
    /// Validates and canonicalizes: atoms must be finite, share one
    /// dimension, and be pairwise distinct; probabilities must be positive
    /// and sum to one within [`PROB_SUM_TOL`] (they are renormalized).
    pub fn new(atoms: Vec<Vec<f64>>, probs: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidInput {
                what: "distribution needs at least one atom".to_string(),
            });
        }
        if atoms.len() != probs.len() {
            return Err(Error::InvalidInput {
                what: "atoms and probabilities must have equal length".to_string(),
            });
        }
        let dim = atoms[0].len();
        if dim == 0 {
            return Err(Error::InvalidInput {
                what: "atoms must have at least one coordinate".to_string(),
            });
        }
        for a in &atoms {
            if a.len() != dim {
                return Err(Error::InvalidInput {
                    what: "atoms must share one dimension".to_string(),
                });
            }
            if a.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInput {
                    what: "atom coordinates must be finite".to_string(),
                });
            }
        }
        let mut sum = 0.0;
        for &p in &probs {
            if !p.is_finite() || p <= 0.0 {
                return Err(Error::InvalidDistribution {
                    what: "atom probabilities must be positive".to_string(),
                });
            }
            sum += p;
        }
        if (sum - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::InvalidDistribution {
                what: alloc::format!("atom probabilities sum to {sum}, want 1"),
            });
        }

        // Distinctness via a lexicographic sort of atom indices.
        let mut order: Vec<usize> = (0..atoms.len()).collect();
        order.sort_by(|&a, &b| {
            atoms[a]
                .iter()
                .zip(atoms[b].iter())
                .find_map(|(x, y)| x.partial_cmp(y).filter(|o| o.is_ne()))
                .unwrap_or(core::cmp::Ordering::Equal)
        });
        for pair in order.windows(2) {
            if atoms[pair[0]] == atoms[pair[1]] {
                return Err(Error::InvalidDistribution {
                    what: alloc::format!("duplicate atom {:?}", atoms[pair[0]]),
                });
            }
        }

        let probs = probs.iter().map(|p| p / sum).collect();
        Ok(DiscreteVectorDistribution { atoms, probs })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.atoms[0].len()
    }

    pub fn atoms(&self) -> &[Vec<f64>] {
        &self.atoms
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Shannon entropy of the atom probabilities, nats.
    pub fn entropy(&self) -> f64 {
        -self.probs.iter().map(|&p| p * libm::log(p)).sum::<f64>()
    }

    /// Merge tolerance proportional to the largest coordinate magnitude, so
    /// "collides" means "equal up to the floating-point noise this support
    /// can carry".
    pub fn default_merge_tol(&self) -> f64 {
        let spread = self
            .atoms
            .iter()
            .flat_map(|a| a.iter())
            .fold(0.0_f64, |m, &c| m.max(c.abs()));
        MERGE_TOL_FACTOR * spread
    }

    /// Distribution of `w . U`: a one-dimensional distribution whose atoms
    /// are the projected values, with values closer than `merge_tol` merged
    /// (single linkage) into probability-weighted means.
    pub fn project(&self, w: &[f64], merge_tol: f64) -> Result<DiscreteVectorDistribution> {
        check_direction(w, self.dim())?;
        if !(merge_tol >= 0.0) {
            return Err(Error::InvalidInput {
                what: "merge tolerance must be nonnegative".to_string(),
            });
        }
        let mut vals: Vec<(f64, f64)> = self
            .atoms
            .iter()
            .zip(self.probs.iter())
            .map(|(a, &p)| (dot(w, a), p))
            .collect();
        vals.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

        let mut atoms = Vec::new();
        let mut probs = Vec::new();
        let mut i = 0;
        while i < vals.len() {
            let mut j = i;
            while j + 1 < vals.len() && vals[j + 1].0 - vals[j].0 <= merge_tol {
                j += 1;
            }
            let p: f64 = vals[i..=j].iter().map(|v| v.1).sum();
            let v: f64 = vals[i..=j].iter().map(|v| v.0 * v.1).sum::<f64>() / p;
            atoms.push(alloc::vec![v]);
            probs.push(p);
            i = j + 1;
        }
        DiscreteVectorDistribution::new(atoms, probs)
    }

    /// Entropy of the projected (and merged) distribution.
    pub fn projection_entropy(&self, w: &[f64], merge_tol: f64) -> Result<f64> {
        Ok(self.project(w, merge_tol)?.entropy())
    }
}

/// Product of independent scalar marginals: atom `(v_1[i_1], ..., v_K[i_K])`
/// carries probability `p_1[i_1] ... p_K[i_K]`. Atoms are laid out row-major
/// with the first marginal outermost.
pub fn product_distribution(
    marginals: &[DiscreteVectorDistribution],
) -> Result<DiscreteVectorDistribution> {
    if marginals.is_empty() {
        return Err(Error::InvalidInput {
            what: "product needs at least one marginal".to_string(),
        });
    }
    for m in marginals {
        if m.dim() != 1 {
            return Err(Error::InvalidInput {
                what: "product marginals must be one-dimensional".to_string(),
            });
        }
    }
    let mut atoms = alloc::vec![Vec::new()];
    let mut probs = alloc::vec![1.0];
    for m in marginals {
        let mut next_atoms = Vec::with_capacity(atoms.len() * m.len());
        let mut next_probs = Vec::with_capacity(atoms.len() * m.len());
        for (prefix, &pp) in atoms.iter().zip(probs.iter()) {
            for (a, &p) in m.atoms().iter().zip(m.probs()) {
                let mut atom = prefix.clone();
                atom.push(a[0]);
                next_atoms.push(atom);
                next_probs.push(pp * p);
            }
        }
        atoms = next_atoms;
        probs = next_probs;
    }
    DiscreteVectorDistribution::new(atoms, probs)
}

/// A direction where the projected entropy drops below the full entropy.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateDirection {
    /// Unit direction, sign-canonicalized (first nonzero component
    /// positive).
    pub w: Vec<f64>,
    /// For two-dimensional supports: the angle `theta` in `[0, pi)` with
    /// `w = (sin theta, cos theta)`.
    pub angle: Option<f64>,
    /// Atom index pairs `(i, j)`, `i < j`, whose projections collide under
    /// `w` (to within the merge tolerance used for the enumeration).
    pub generating_pairs: Vec<(usize, usize)>,
    /// Entropy of the projected distribution at this direction.
    pub h_projected: f64,
    /// Full entropy minus projected entropy; positive by construction.
    pub entropy_drop: f64,
}

/// All entropy-dropping directions of a two-dimensional support, axis
/// directions included, sorted by angle. Every candidate is the normal of
/// some atom-difference vector, so the enumeration walks all atom pairs;
/// supports larger than [`ENUMERATION_GATE`] are refused.
pub fn candidate_directions_2d(
    u: &DiscreteVectorDistribution,
    merge_tol: f64,
) -> Result<Vec<CandidateDirection>> {
    if u.dim() != 2 {
        return Err(Error::InvalidInput {
            what: alloc::format!("need a two-dimensional support, got dimension {}", u.dim()),
        });
    }
    check_gate(u)?;
    let dirs = unique_collision_normals(u, merge_tol);
    let mut out = Vec::new();
    for w in dirs {
        if let Some(c) = build_candidate(u, w, merge_tol)? {
            out.push(c);
        }
    }
    out.sort_by(|a, b| a.angle.partial_cmp(&b.angle).unwrap());
    Ok(out)
}

/// The axis directions `e_j` as candidates, any dimension. Fails with
/// [`Error::DegenerateMarginal`] if some marginal collapses to a single
/// value, because the support is then not genuinely `K`-dimensional.
pub fn candidate_directions_axes(
    u: &DiscreteVectorDistribution,
    merge_tol: f64,
) -> Result<Vec<CandidateDirection>> {
    let k = u.dim();
    let mut out = Vec::new();
    for j in 0..k {
        let mut w = alloc::vec![0.0; k];
        w[j] = 1.0;
        let marginal = u.project(&w, merge_tol)?;
        if marginal.len() < 2 {
            return Err(Error::DegenerateMarginal { index: j });
        }
        if let Some(c) = build_candidate(u, w, merge_tol)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Entropy-dropping directions that are not axis-parallel, any dimension.
///
/// Every such direction is orthogonal to `K - 1` linearly independent
/// atom-difference vectors, so the search enumerates `(K-1)`-subsets of the
/// distinct difference directions and solves for the one-dimensional null
/// space of each full-rank subset. Results are sorted by entropy drop,
/// largest first. Supports larger than [`ENUMERATION_GATE`] are refused.
pub fn mixing_candidates(
    u: &DiscreteVectorDistribution,
    merge_tol: f64,
) -> Result<Vec<CandidateDirection>> {
    let k = u.dim();
    if k < 2 {
        return Err(Error::InvalidInput {
            what: "mixing directions need at least two dimensions".to_string(),
        });
    }
    check_gate(u)?;

    // Distinct atom-difference directions, unit length, sign-canonical.
    // Product-structured supports repeat the same few differences many
    // times, so deduplicating here is what keeps the subset enumeration
    // tractable.
    let mut diffs: Vec<Vec<f64>> = Vec::new();
    for i in 0..u.len() {
        for j in (i + 1)..u.len() {
            let d: Vec<f64> = u.atoms()[i]
                .iter()
                .zip(u.atoms()[j].iter())
                .map(|(a, b)| a - b)
                .collect();
            let n = norm(&d);
            if n <= merge_tol {
                continue;
            }
            let mut d: Vec<f64> = d.iter().map(|c| c / n).collect();
            canonicalize_sign(&mut d);
            if !diffs
                .iter()
                .any(|e| direction_distance(e, &d) < CANDIDATE_ANGLE_TOL)
            {
                diffs.push(d);
            }
        }
    }

    let mut found: Vec<Vec<f64>> = Vec::new();
    let mut subset = alloc::vec![0usize; k - 1];
    enumerate_subsets(diffs.len(), k - 1, &mut subset, 0, 0, &mut |chosen| {
        let rows: Vec<&[f64]> = chosen.iter().map(|&i| diffs[i].as_slice()).collect();
        if let Some(mut w) = null_space_direction(&rows, k) {
            canonicalize_sign(&mut w);
            if is_axis_parallel(&w) {
                return;
            }
            if !found
                .iter()
                .any(|e| direction_distance(e, &w) < CANDIDATE_ANGLE_TOL)
            {
                found.push(w);
            }
        }
    });

    let mut out = Vec::new();
    for w in found {
        if let Some(c) = build_candidate(u, w, merge_tol)? {
            out.push(c);
        }
    }
    out.sort_by(|a, b| {
        b.entropy_drop
            .partial_cmp(&a.entropy_drop)
            .unwrap()
            .then_with(|| a.w.partial_cmp(&b.w).unwrap())
    });
    Ok(out)
}

/// Outcome of sampling the punctured neighborhood of one candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsolationReport {
    /// Number of directions sampled.
    pub samples: usize,
    /// Angular distance to the nearest other candidate direction (infinite
    /// when there is none).
    pub nearest_other: f64,
    /// Largest `|h(w . U) - h(U)|` over the sampled directions. Zero (up to
    /// rounding) certifies that the candidate is an isolated drop.
    pub max_entropy_dev: f64,
}

/// Samples directions around `candidate` along great circles through each
/// orthonormal basis vector of its orthogonal complement, at angular offsets
/// up to `radius`, and compares each projected entropy against the full
/// entropy `h(U)`.
///
/// `others` is the remaining candidate list; the neighborhood must not reach
/// any of them (that would make a flat reading meaningless), otherwise
/// [`Error::NeighborhoodContainsOtherCandidate`] is returned. Entries within
/// [`CANDIDATE_ANGLE_TOL`] of `candidate` itself are ignored.
pub fn candidate_isolation_check(
    u: &DiscreteVectorDistribution,
    candidate: &CandidateDirection,
    others: &[CandidateDirection],
    radius: f64,
    samples_per_arc: usize,
    merge_tol: f64,
) -> Result<IsolationReport> {
    let k = u.dim();
    check_direction(&candidate.w, k)?;
    if !(radius > 0.0) || radius >= core::f64::consts::FRAC_PI_2 {
        return Err(Error::InvalidInput {
            what: "neighborhood radius must lie in (0, pi/2)".to_string(),
        });
    }
    if samples_per_arc == 0 {
        return Err(Error::InvalidInput {
            what: "need at least one sample per arc".to_string(),
        });
    }

    let mut nearest = f64::INFINITY;
    for o in others {
        let d = angular_distance(&candidate.w, &o.w);
        if d < CANDIDATE_ANGLE_TOL {
            continue; // the candidate itself
        }
        nearest = nearest.min(d);
    }
    if nearest <= radius {
        return Err(Error::NeighborhoodContainsOtherCandidate { distance: nearest });
    }

    let basis = orthonormal_complement(&candidate.w);
    let h_u = u.entropy();
    let mut max_dev = 0.0_f64;
    let mut count = 0;
    for b in &basis {
        for s in 1..=samples_per_arc {
            let t = radius * s as f64 / samples_per_arc as f64;
            for sign in [-1.0, 1.0] {
                let dir: Vec<f64> = candidate
                    .w
                    .iter()
                    .zip(b.iter())
                    .map(|(wc, bc)| wc * libm::cos(t) + sign * bc * libm::sin(t))
                    .collect();
                let h = u.projection_entropy(&dir, merge_tol)?;
                max_dev = max_dev.max((h - h_u).abs());
                count += 1;
            }
        }
    }
    Ok(IsolationReport {
        samples: count,
        nearest_other: nearest,
        max_entropy_dev: max_dev,
    })
}

fn check_gate(u: &DiscreteVectorDistribution) -> Result<()> {
    if u.len() > ENUMERATION_GATE {
        return Err(Error::EnumerationGateExceeded { atoms: u.len() });
    }
    Ok(())
}

fn check_direction(w: &[f64], dim: usize) -> Result<()> {
    if w.len() != dim {
        return Err(Error::InvalidInput {
            what: alloc::format!(
                "direction has dimension {}, support has {}",
                w.len(),
                dim
            ),
        });
    }
    let n = norm(w);
    if (n - 1.0).abs() > UNIT_NORM_TOL {
        return Err(Error::NotUnitNorm { norm: n });
    }
    Ok(())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

fn canonicalize_sign(w: &mut [f64]) {
    for &c in w.iter() {
        if c != 0.0 {
            if c < 0.0 {
                for x in w.iter_mut() {
                    *x = -*x;
                }
            }
            return;
        }
    }
}

/// Distance between direction lines: chordal, sign-insensitive.
fn direction_distance(a: &[f64], b: &[f64]) -> f64 {
    let mut plus = 0.0;
    let mut minus = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        plus += (x - y) * (x - y);
        minus += (x + y) * (x + y);
    }
    libm::sqrt(plus.min(minus))
}

/// Angle between direction lines, in [0, pi/2].
fn angular_distance(a: &[f64], b: &[f64]) -> f64 {
    libm::acos(dot(a, b).abs().min(1.0))
}

/// Orthonormal basis of the complement of `w` (assumed unit), built by
/// Gram-Schmidt over the standard basis.
fn orthonormal_complement(w: &[f64]) -> Vec<Vec<f64>> {
    let dim = w.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim - 1);
    for j in 0..dim {
        let mut v = alloc::vec![0.0; dim];
        v[j] = 1.0;
        let c = dot(&v, w);
        for (x, &wc) in v.iter_mut().zip(w.iter()) {
            *x -= c * wc;
        }
        for b in &basis {
            let c = dot(&v, b);
            for (x, &bc) in v.iter_mut().zip(b.iter()) {
                *x -= c * bc;
            }
        }
        let n = norm(&v);
        if n > 1e-9 {
            for x in v.iter_mut() {
                *x /= n;
            }
            basis.push(v);
        }
        if basis.len() == dim - 1 {
            break;
        }
    }
    basis
}

fn is_axis_parallel(w: &[f64]) -> bool {
    (0..w.len()).any(|j| {
        let mut axis = alloc::vec![0.0; w.len()];
        axis[j] = 1.0;
        direction_distance(w, &axis) < CANDIDATE_ANGLE_TOL
    })
}

/// All distinct unit normals arising from single atom-pair collisions of a
/// two-dimensional support (this covers every candidate in 2-D, where one
/// difference vector already pins the direction down).
fn unique_collision_normals(u: &DiscreteVectorDistribution, merge_tol: f64) -> Vec<Vec<f64>> {
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for i in 0..u.len() {
        for j in (i + 1)..u.len() {
            let dx = u.atoms()[i][0] - u.atoms()[j][0];
            let dy = u.atoms()[i][1] - u.atoms()[j][1];
            let n = libm::sqrt(dx * dx + dy * dy);
            if n <= merge_tol {
                continue;
            }
            // w . (dx, dy) = 0 with w = (sin th, cos th).
            let theta = normalize_angle(libm::atan2(-dy, dx));
            let mut w = alloc::vec![libm::sin(theta), libm::cos(theta)];
            canonicalize_sign(&mut w);
            if !dirs
                .iter()
                .any(|e| direction_distance(e, &w) < CANDIDATE_ANGLE_TOL)
            {
                dirs.push(w);
            }
        }
    }
    dirs
}

/// Maps an angle to [0, pi).
fn normalize_angle(theta: f64) -> f64 {
    let pi = core::f64::consts::PI;
    let mut t = theta % pi;
    if t < 0.0 {
        t += pi;
    }
    if t >= pi {
        t -= pi;
    }
    // atan2(-0.0, -1.0) folds to -0.0, which compares equal to zero but
    // serializes with the sign; adding 0.0 flushes it.
    t + 0.0
}

/// Assembles the candidate record at direction `w`, or `None` when the
/// projected entropy does not actually drop.
fn build_candidate(
    u: &DiscreteVectorDistribution,
    w: Vec<f64>,
    merge_tol: f64,
) -> Result<Option<CandidateDirection>> {
    let h_u = u.entropy();
    let h_projected = u.projection_entropy(&w, merge_tol)?;
    let entropy_drop = h_u - h_projected;
    if entropy_drop <= ENTROPY_DROP_MIN {
        return Ok(None);
    }
    let mut generating_pairs = Vec::new();
    for i in 0..u.len() {
        for j in (i + 1)..u.len() {
            let vi = dot(&w, &u.atoms()[i]);
            let vj = dot(&w, &u.atoms()[j]);
            if (vi - vj).abs() <= merge_tol {
                generating_pairs.push((i, j));
            }
        }
    }
    let angle = if u.dim() == 2 {
        Some(normalize_angle(libm::atan2(w[0], w[1])))
    } else {
        None
    };
    Ok(Some(CandidateDirection {
        w,
        angle,
        generating_pairs,
        h_projected,
        entropy_drop,
    }))
}

/// Visits all `choose`-subsets of `0..n` in lexicographic order.
fn enumerate_subsets(
    n: usize,
    choose: usize,
    scratch: &mut [usize],
    depth: usize,
    start: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if depth == choose {
        visit(scratch);
        return;
    }
    for i in start..n {
        scratch[depth] = i;
        enumerate_subsets(n, choose, scratch, depth + 1, i + 1, visit);
    }
}

/// One-dimensional null space of `rows` (each a `dim`-vector): returns the
/// unit normal when the rows have full rank `dim - 1`, `None` otherwise.
fn null_space_direction(rows: &[&[f64]], dim: usize) -> Option<Vec<f64>> {
    debug_assert_eq!(rows.len(), dim - 1);
    let mut m: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut pivot_col = alloc::vec![usize::MAX; m.len()];
    let mut used = alloc::vec![false; dim];

    for r in 0..m.len() {
        // Partial pivoting over the unused columns.
        let (col, mag) = (0..dim)
            .filter(|c| !used[*c])
            .map(|c| (c, m[r][c].abs()))
            .fold((usize::MAX, 0.0), |best, cur| {
                if cur.1 > best.1 {
                    cur
                } else {
                    best
                }
            });
        // Rows are unit vectors, so a tiny pivot after elimination means the
        // subset is linearly dependent.
        if mag < 1e-10 {
            return None;
        }
        pivot_col[r] = col;
        used[col] = true;
        for rr in 0..m.len() {
            if rr != r {
                let f = m[rr][col] / m[r][col];
                if f != 0.0 {
                    for c in 0..dim {
                        m[rr][c] -= f * m[r][c];
                    }
                }
            }
        }
    }

    let free = (0..dim).find(|c| !used[*c])?;
    let mut w = alloc::vec![0.0; dim];
    w[free] = 1.0;
    for r in 0..m.len() {
        let c = pivot_col[r];
        w[c] = -m[r][free] / m[r][c];
    }
    let n = norm(&w);
    for x in w.iter_mut() {
        *x /= n;
    }
    Some(w)
}
