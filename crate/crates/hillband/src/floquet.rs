//! Floquet spectrum: all `L` roots of `Δ_L(E) = 2 cos κ`, spectral-arc
//! tracing over `κ ∈ [0, π]`, real band structures and the containment
//! checks for real `v`.
//!
//! The root solver is Aberth–Ehrlich simultaneous iteration on the
//! recurrence-evaluated discriminant (no monomial coefficients are ever
//! formed), followed by a short Newton polish per root.

use crate::discriminant::DiscriminantModel;
use crate::error::Error;
use num_complex::Complex64;
use std::f64::consts::PI;

mod assign;
pub use assign::min_cost_assignment;

/// Floquet phase, constrained to `[0, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quasimomentum(f64);

impl Quasimomentum {
    pub fn new(kappa: f64) -> Result<Self, Error> {
        if !(0.0..=PI).contains(&kappa) {
            return Err(Error::DegenerateInput(format!(
                "quasimomentum {kappa} outside [0, pi]"
            )));
        }
        Ok(Quasimomentum(kappa))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// The `L` roots of `Δ_L(E) - 2 cos κ`, with multiplicity, and the
/// residuals `|Δ_L(E_i) - 2 cos κ|` they were accepted at.
#[derive(Debug, Clone)]
pub struct FloquetSet {
    pub kappa: Quasimomentum,
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
}

/// A κ-ordered polyline of matched Floquet eigenvalues: one analytic arc
/// of the spectrum (up to the branch-labelling convention after a
/// collision, which is ours, not intrinsic).
#[derive(Debug, Clone)]
pub struct SpectralArc {
    pub branch_id: usize,
    pub samples: Vec<(f64, Complex64)>,
}

/// All traced branches plus the connected-component count of their union.
#[derive(Debug, Clone)]
pub struct ArcFamily {
    pub arcs: Vec<SpectralArc>,
    pub component_count: usize,
}

/// Ordered real bands `[γ_k, β̂_k]`, rightmost first.
#[derive(Debug, Clone)]
pub struct BandStructure {
    pub intervals: Vec<(f64, f64)>,
}

/// Membership of `±2` in the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndpointMembership {
    pub plus2_in_spectrum: bool,
    pub minus2_in_spectrum: bool,
}

/// Tolerances and budgets for the simultaneous root iteration.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Target scaled residual for the iteration.
    pub residual_tol: f64,
    /// Aberth iteration budget per attempt.
    pub max_iterations: usize,
    /// Newton polish steps per root after the simultaneous phase.
    pub newton_steps: usize,
    /// Restart attempts from the fallback circle before giving up.
    pub restarts: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            residual_tol: 1e-12,
            max_iterations: 200,
            newton_steps: 10,
            restarts: 3,
        }
    }
}

/// Acceptance scale for residuals: `max(1, |root|)^L`, the natural size of
/// `Δ_L` at the root.
fn residual_scale(root: Complex64, period: usize) -> f64 {
    root.norm().max(1.0).powi(period as i32)
}

fn initial_guesses(model: &DiscriminantModel, kappa: f64) -> Vec<Complex64> {
    let l = model.period();
    let v = model.impurity();
    let perturb = 1e-3 * (1.0 + v.norm());
    let mut guesses = Vec::with_capacity(l);
    if v.norm() <= 1.0 {
        // Free-Laplacian roots 2 cos((κ + 2πm)/L), nudged off their
        // κ ∈ {0, π} degeneracies by deterministic golden-angle offsets.
        for m in 0..l {
            let base = 2.0 * ((kappa + 2.0 * PI * m as f64) / l as f64).cos();
            let ang = 0.7 + 2.399_963 * m as f64;
            guesses.push(base + perturb * Complex64::new(ang.cos(), ang.sin()));
        }
    } else {
        // β_k nodes plus one outer point on the |v|-side.
        for k in 1..l {
            let b = model.beta_node(k).unwrap();
            let ang = 0.7 + 2.399_963 * k as f64;
            guesses.push(b + perturb * Complex64::new(ang.cos(), ang.sin()));
        }
        let dir = v / v.norm();
        guesses.push(dir * (2.0 + v.norm()) + Complex64::new(0.0, 1e-3));
    }
    guesses
}

fn fallback_circle(model: &DiscriminantModel, attempt: usize) -> Vec<Complex64> {
    let l = model.period();
    let radius = 2.0 + model.impurity().norm() + 1.0 + 0.5 * attempt as f64;
    let twist = 0.39 * (attempt as f64 + 1.0);
    (0..l)
        .map(|m| {
            let ang = twist + 2.0 * PI * m as f64 / l as f64;
            radius * Complex64::new(ang.cos(), ang.sin())
        })
        .collect()
}

/// One Aberth–Ehrlich run plus Newton polish.  Returns the roots and the
/// worst scaled residual.
fn aberth_attempt(
    model: &DiscriminantModel,
    rhs: f64,
    mut z: Vec<Complex64>,
    cfg: &SolverConfig,
) -> (Vec<Complex64>, f64) {
    let l = z.len();
    for _ in 0..cfg.max_iterations {
        let mut max_step = 0.0f64;
        let p: Vec<Complex64> = z.iter().map(|&zi| model.eval(zi) - rhs).collect();
        let dp: Vec<Complex64> = z.iter().map(|&zi| model.eval_derivative(zi)).collect();
        let mut znew = z.clone();
        for i in 0..l {
            if dp[i].norm() == 0.0 {
                // flat point: nudge instead of dividing by zero
                znew[i] += Complex64::new(1e-8, 1e-8);
                continue;
            }
            let w = p[i] / dp[i];
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..l {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        s += 1.0 / d;
                    }
                }
            }
            let denom = 1.0 - w * s;
            let corr = if denom.norm() > 1e-300 { w / denom } else { w };
            znew[i] = z[i] - corr;
            let step = corr.norm() / (1.0 + z[i].norm());
            if step > max_step {
                max_step = step;
            }
        }
        z = znew;
        if max_step < cfg.residual_tol {
            break;
        }
    }
    // Newton polish per root.
    for zi in z.iter_mut() {
        for _ in 0..cfg.newton_steps {
            let p = model.eval(*zi) - rhs;
            let dp = model.eval_derivative(*zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if step.norm() < 1e-16 * (1.0 + zi.norm()) {
                break;
            }
            *zi -= step;
        }
    }
    let worst = z
        .iter()
        .map(|&zi| (model.eval(zi) - rhs).norm() / residual_scale(zi, model.period()))
        .fold(0.0f64, f64::max);
    (z, worst)
}

/// All `L` roots of `Δ_L(E) = 2 cos κ` with the default solver budget.
pub fn floquet_eigenvalues(
    model: &DiscriminantModel,
    kappa: Quasimomentum,
) -> Result<FloquetSet, Error> {
    floquet_eigenvalues_with(model, kappa, &SolverConfig::default())
}

/// As [`floquet_eigenvalues`], with an explicit budget (raise it for
/// ill-conditioned cases).
pub fn floquet_eigenvalues_with(
    model: &DiscriminantModel,
    kappa: Quasimomentum,
    cfg: &SolverConfig,
) -> Result<FloquetSet, Error> {
    let rhs = 2.0 * kappa.value().cos();
    if model.period() == 1 {
        // Δ₁ = E - v is linear; solve directly.
        let root = model.impurity() + rhs;
        let res = (model.eval(root) - rhs).norm();
        return Ok(FloquetSet {
            kappa,
            roots: vec![root],
            residuals: vec![res],
        });
    }

    let accept = 1e-9;
    let mut best: Option<(Vec<Complex64>, f64)> = None;
    let mut attempt_guesses = initial_guesses(model, kappa.value());
    for attempt in 0..=cfg.restarts {
        let (roots, worst) = aberth_attempt(model, rhs, attempt_guesses, cfg);
        let better = match &best {
            Some((_, bw)) => worst < *bw,
            None => true,
        };
        if better {
            best = Some((roots, worst));
        }
        if best.as_ref().unwrap().1 < accept {
            break;
        }
        attempt_guesses = fallback_circle(model, attempt);
    }
    let (mut roots, worst) = best.unwrap();
    if worst >= accept {
        return Err(Error::NonConvergence {
            iterations: cfg.max_iterations * (cfg.restarts + 1),
            worst_residual: worst,
        });
    }
    // Deterministic order for a standalone solve.
    roots.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .expect("finite roots")
    });
    let residuals = roots
        .iter()
        .map(|&z| (model.eval(z) - rhs).norm())
        .collect();
    Ok(FloquetSet {
        kappa,
        roots,
        residuals,
    })
}

/// Permute `next` so that index `i` continues the branch of `prev[i]`,
/// minimising the total squared displacement.
fn match_to(prev: &[Complex64], next: &[Complex64]) -> Vec<Complex64> {
    let n = prev.len();
    let cost: Vec<Vec<f64>> = prev
        .iter()
        .map(|&a| next.iter().map(|&b| (a - b).norm_sqr()).collect())
        .collect();
    let asg = min_cost_assignment(&cost);
    (0..n).map(|i| next[asg[i]]).collect()
}

fn solve_matched(
    model: &DiscriminantModel,
    kappa: f64,
    prev: &[Complex64],
    cfg: &SolverConfig,
) -> Result<Vec<Complex64>, Error> {
    let set = floquet_eigenvalues_with(model, Quasimomentum::new(kappa)?, cfg)?;
    Ok(match_to(prev, &set.roots))
}

/// Recursively bisect `(ka, kb)` while two matched roots approach within
/// ten times the per-step displacement, up to eight levels.
#[allow(clippy::too_many_arguments)]
fn refine_segment(
    model: &DiscriminantModel,
    cfg: &SolverConfig,
    ka: f64,
    ra: &[Complex64],
    kb: f64,
    rb: &[Complex64],
    depth: usize,
    out: &mut Vec<(f64, Vec<Complex64>)>,
) -> Result<(), Error> {
    let n = ra.len();
    let disp = ra
        .iter()
        .zip(rb)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);
    let mut min_sep = f64::INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            min_sep = min_sep.min((rb[i] - rb[j]).norm().min((ra[i] - ra[j]).norm()));
        }
    }
    if depth < 8 && n > 1 && min_sep < 10.0 * disp && kb - ka > 1e-10 {
        let km = 0.5 * (ka + kb);
        let rm = solve_matched(model, km, ra, cfg)?;
        let rb2 = match_to(&rm, rb);
        refine_segment(model, cfg, ka, ra, km, &rm, depth + 1, out)?;
        refine_segment(model, cfg, km, &rm, kb, &rb2, depth + 1, out)?;
    } else {
        out.push((kb, rb.to_vec()));
    }
    Ok(())
}

/// Merge tolerance for component counting.
fn merge_tol(model: &DiscriminantModel) -> f64 {
    1e-6 * (1.0 + model.impurity().norm())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Newton search for a critical point of `Δ_L` near `start` (second
/// derivative by central differences of the analytic first derivative).
fn critical_point_near(model: &DiscriminantModel, start: Complex64) -> Option<Complex64> {
    let mut z = start;
    for _ in 0..60 {
        let d1 = model.eval_derivative(z);
        let h = 1e-6 * (1.0 + z.norm());
        let d2 = (model.eval_derivative(z + h) - model.eval_derivative(z - h)) / (2.0 * h);
        if d2.norm() == 0.0 {
            return None;
        }
        let step = d1 / d2;
        z -= step;
        if step.norm() < 1e-11 * (1.0 + z.norm()) {
            return Some(z);
        }
    }
    None
}

/// Do the arcs of branches `i` and `j` actually meet near their closest
/// approach?  They do exactly when `Δ_L` has a critical point there whose
/// critical value lies on the real segment `[-2, 2]`.
fn certified_collision(
    model: &DiscriminantModel,
    closest: Complex64,
    gap: f64,
) -> bool {
    let Some(ec) = critical_point_near(model, closest) else {
        return false;
    };
    if (ec - closest).norm() > (10.0 * gap).max(1e-2 * (1.0 + model.impurity().norm())) {
        return false;
    }
    let val = model.eval(ec);
    val.im.abs() < 1e-7 && (-2.0 - 1e-7..=2.0 + 1e-7).contains(&val.re)
}

/// Trace all `L` Floquet branches over a κ grid, with local bisection
/// refinement near branch collisions, and count connected components of
/// the union.
pub fn trace_arcs(model: &DiscriminantModel, kappa_grid: &[f64]) -> Result<ArcFamily, Error> {
    trace_arcs_with(model, kappa_grid, &SolverConfig::default())
}

pub fn trace_arcs_with(
    model: &DiscriminantModel,
    kappa_grid: &[f64],
    cfg: &SolverConfig,
) -> Result<ArcFamily, Error> {
    if kappa_grid.len() < 2 {
        return Err(Error::DegenerateInput(
            "kappa grid needs at least two points".into(),
        ));
    }
    if kappa_grid[0].abs() > 1e-12 || (kappa_grid[kappa_grid.len() - 1] - PI).abs() > 1e-12 {
        return Err(Error::DegenerateInput(
            "kappa grid must span [0, pi]".into(),
        ));
    }
    for w in kappa_grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::DegenerateInput(
                "kappa grid must be strictly increasing".into(),
            ));
        }
    }

    let l = model.period();
    let first = floquet_eigenvalues_with(model, Quasimomentum::new(kappa_grid[0])?, cfg)?;
    let mut samples: Vec<(f64, Vec<Complex64>)> = vec![(kappa_grid[0], first.roots.clone())];
    let mut prev = first.roots;
    for &kb in &kappa_grid[1..] {
        let rb = solve_matched(model, kb, &prev, cfg)?;
        let ka = samples.last().unwrap().0;
        refine_segment(model, cfg, ka, &prev.clone(), kb, &rb, 0, &mut samples)?;
        prev = samples.last().unwrap().1.clone();
    }

    let arcs: Vec<SpectralArc> = (0..l)
        .map(|i| SpectralArc {
            branch_id: i,
            samples: samples.iter().map(|(k, r)| (*k, r[i])).collect(),
        })
        .collect();

    // Component count: union branches sharing a κ ∈ {0, π} endpoint, plus
    // certified interior collisions.
    let tol = merge_tol(model);
    let mut uf = UnionFind::new(l);
    let ends = [&samples[0].1, &samples[samples.len() - 1].1];
    for roots in ends {
        for i in 0..l {
            for j in (i + 1)..l {
                if (roots[i] - roots[j]).norm() < tol {
                    uf.union(i, j);
                }
            }
        }
    }
    let probe = 0.05 * (1.0 + model.impurity().norm());
    for i in 0..l {
        for j in (i + 1)..l {
            if uf.find(i) == uf.find(j) {
                continue;
            }
            let mut gap = f64::INFINITY;
            let mut at = Complex64::new(0.0, 0.0);
            for (_, roots) in &samples {
                let d = (roots[i] - roots[j]).norm();
                if d < gap {
                    gap = d;
                    at = 0.5 * (roots[i] + roots[j]);
                }
            }
            if gap < tol || (gap < probe && certified_collision(model, at, gap)) {
                uf.union(i, j);
            }
        }
    }
    let mut reps: Vec<usize> = (0..l).map(|i| uf.find(i)).collect();
    reps.sort_unstable();
    reps.dedup();
    Ok(ArcFamily {
        arcs,
        component_count: reps.len(),
    })
}

/// Uniform κ grid with `steps` points spanning `[0, π]`.
pub fn uniform_kappa_grid(steps: usize) -> Vec<f64> {
    assert!(steps >= 2);
    (0..steps)
        .map(|i| PI * i as f64 / (steps - 1) as f64)
        .collect()
}

fn require_real_impurity(model: &DiscriminantModel) -> Result<f64, Error> {
    let v = model.impurity();
    if v.im != 0.0 {
        return Err(Error::DegenerateInput(format!(
            "impurity {v} is not real"
        )));
    }
    Ok(v.re)
}

/// Band structure for real nonzero `v`: exactly `L` closed real
/// intervals, rightmost first.
pub fn real_bands(model: &DiscriminantModel) -> Result<BandStructure, Error> {
    real_bands_with(model, &SolverConfig::default())
}

pub fn real_bands_with(
    model: &DiscriminantModel,
    cfg: &SolverConfig,
) -> Result<BandStructure, Error> {
    let v = require_real_impurity(model)?;
    if v == 0.0 {
        return Err(Error::DegenerateInput(
            "free case v = 0 has the single band [-2, 2]".into(),
        ));
    }
    let mut edges = Vec::with_capacity(2 * model.period());
    for kappa in [0.0, PI] {
        let set = floquet_eigenvalues_with(model, Quasimomentum::new(kappa)?, cfg)?;
        for &root in &set.roots {
            // For real v every root of Δ = ±2 is real; the solver already
            // certifies the residual, so only shed stray imaginary dust.
            // (Re-evaluating Δ at the rounded root would be meaningless
            // here: at steep edges |Δ'| grows like the residual scale.)
            if root.im.abs() < 1e-8 {
                edges.push(root.re);
            }
        }
    }
    edges.sort_by(|a, b| a.partial_cmp(b).expect("finite edges"));

    let mut intervals: Vec<(f64, f64)> = Vec::new();
    if edges.len() == 2 * model.period() {
        // All 2L edge points found: the bands are disjoint, so they are
        // exactly the consecutive pairs of the sorted edges.  This keeps
        // bands of exponentially small width (the outer band at large L
        // contracts towards a point).
        for pair in edges.chunks(2) {
            intervals.push((pair[0], pair[1]));
        }
    } else {
        // Roots were lost or duplicated to roundoff: fall back to a
        // midpoint sign scan over the surviving edges.
        let inside = |e: f64| {
            let val = model.eval(Complex64::new(e, 0.0));
            (-2.0..=2.0).contains(&val.re)
        };
        let mut open: Option<f64> = None;
        for w in edges.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mid_in = b - a > 1e-13 && inside(0.5 * (a + b));
            match (open, mid_in) {
                (None, true) => open = Some(a),
                (Some(start), false) => {
                    intervals.push((start, a));
                    open = None;
                }
                _ => {}
            }
        }
        if let (Some(start), Some(&last)) = (open, edges.last()) {
            intervals.push((start, last));
        }
    }
    intervals.reverse();
    Ok(BandStructure { intervals })
}

/// Is `±2` in the spectrum?  Tests `Δ_L(±2) ∈ [-2, 2]` directly (with a
/// `1e-9` slack for roundoff on the boundary cases `v = ±4/L`).
pub fn endpoint_membership(model: &DiscriminantModel) -> EndpointMembership {
    let in_segment = |val: Complex64| {
        val.im.abs() <= 1e-9 && (-2.0 - 1e-9..=2.0 + 1e-9).contains(&val.re)
    };
    EndpointMembership {
        plus2_in_spectrum: in_segment(model.eval(Complex64::new(2.0, 0.0))),
        minus2_in_spectrum: in_segment(model.eval(Complex64::new(-2.0, 0.0))),
    }
}

/// The `L → ∞` limit point `sgn(v)·√(4 + v²)` of the unique band outside
/// `[-2, 2]` (real nonzero `v`).
pub fn outer_band_limit(v: f64) -> Result<f64, Error> {
    if v == 0.0 {
        return Err(Error::DegenerateInput(
            "outer band limit requires nonzero real v".into(),
        ));
    }
    Ok(v.signum() * (4.0 + v * v).sqrt())
}

/// Every point lies in the operator-norm box `[-2-|v|, 2+|v|]`?
pub fn kato_bound_check(model: &DiscriminantModel, points: &[f64]) -> Result<bool, Error> {
    let v = require_real_impurity(model)?;
    let bound = 2.0 + v.abs();
    Ok(points.iter().all(|&p| (-bound..=bound).contains(&p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn solve(l: usize, v: Complex64, kappa: f64) -> FloquetSet {
        let model = DiscriminantModel::new(l, v);
        floquet_eigenvalues(&model, Quasimomentum::new(kappa).unwrap()).unwrap()
    }

    #[test]
    fn free_case_matches_cosines() {
        let l = 7;
        let kappa = 1.1;
        let set = solve(l, c(0.0, 0.0), kappa);
        assert_eq!(set.roots.len(), l);
        let mut expect: Vec<f64> = (0..l)
            .map(|m| 2.0 * ((kappa + 2.0 * PI * m as f64) / l as f64).cos())
            .collect();
        expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (r, e) in set.roots.iter().zip(expect) {
            assert!((r - e).norm() < 1e-9, "{r} vs {e}");
        }
    }

    #[test]
    fn quadratic_case_closed_form() {
        // L = 2: roots (v ± √(v² + 8 + 8 cos κ)) / 2.
        let v = c(0.9, -1.2);
        let kappa = 0.8;
        let set = solve(2, v, kappa);
        let disc = (v * v + 8.0 + 8.0 * kappa.cos()).sqrt();
        let mut expect = vec![(v + disc) / 2.0, (v - disc) / 2.0];
        expect.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        for (r, e) in set.roots.iter().zip(expect) {
            assert!((r - e).norm() < 1e-9, "{r} vs {e}");
        }
    }

    #[test]
    fn figure_case_three_roots() {
        // L = 3, v = 2i, κ = arccos 0.4: exactly 3 roots, tiny residuals.
        let set = solve(3, c(0.0, 2.0), 0.4f64.acos());
        assert_eq!(set.roots.len(), 3);
        for &res in &set.residuals {
            assert!(res < 1e-9);
        }
    }

    #[test]
    fn root_sum_equals_impurity() {
        // Monic Δ_L has degree-(L-1) coefficient -v, independent of κ;
        // validated against brute-force expansion for small L elsewhere.
        for (l, v) in [(3usize, c(0.5, 0.7)), (8, c(0.0, 5.0)), (13, c(-3.0, 0.0))] {
            let set = solve(l, v, 0.9);
            let sum: Complex64 = set.roots.iter().sum();
            assert!((sum - v).norm() < 1e-8 * (1.0 + v.norm()), "L={l}: {sum}");
        }
    }

    #[test]
    fn beta_nodes_appear_at_edges() {
        let l = 9;
        let v = c(0.0, 1.3);
        let model = DiscriminantModel::new(l, v);
        let at0 = solve(l, v, 0.0);
        let atpi = solve(l, v, PI);
        for k in 1..l {
            let b = model.beta_node(k).unwrap();
            let d = at0
                .roots
                .iter()
                .chain(&atpi.roots)
                .map(|r| (r - b).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(d < 1e-8, "beta_{k} missing, nearest {d}");
        }
    }

    #[test]
    fn imaginary_impurity_symmetry() {
        // v = is: the root multiset at κ maps onto the multiset at κ
        // (L even) or π-κ (L odd) under E ↦ -conj(E).
        for l in [4usize, 5] {
            let v = c(0.0, 0.8);
            let kappa = 0.7;
            let here = solve(l, v, kappa);
            let there = solve(l, v, if l % 2 == 0 { kappa } else { PI - kappa });
            for &r in &here.roots {
                let m = -r.conj();
                let d = there
                    .roots
                    .iter()
                    .map(|s| (s - m).norm())
                    .fold(f64::INFINITY, f64::min);
                assert!(d < 1e-8, "L={l} root {r}: nearest {d}");
            }
        }
    }

    #[test]
    fn trace_free_case_stays_real() {
        let model = DiscriminantModel::new(3, c(0.0, 0.0));
        let fam = trace_arcs(&model, &uniform_kappa_grid(65)).unwrap();
        assert_eq!(fam.arcs.len(), 3);
        for arc in &fam.arcs {
            for &(_, e) in &arc.samples {
                assert!(e.im.abs() < 1e-8);
                assert!((-2.0 - 1e-8..=2.0 + 1e-8).contains(&e.re));
            }
        }
        // one band [-2, 2]: branch endpoints chain up into one component
        assert_eq!(fam.component_count, 1);
    }

    #[test]
    fn trace_small_impurity_five_components() {
        let model = DiscriminantModel::new(5, c(0.0, 0.5));
        let fam = trace_arcs(&model, &uniform_kappa_grid(129)).unwrap();
        assert_eq!(fam.arcs.len(), 5);
        assert_eq!(fam.component_count, 5);
    }

    #[test]
    fn trace_large_impurity_component_count() {
        // Five branches: four short arcs through β_1..β_4 plus one far
        // arc near E ≈ 4.58i (the monic sum-of-roots = v forces it).
        // All five are pairwise disjoint: no critical value of Δ₅ lies in
        // [-2, 2] for purely imaginary v, so no two arcs can meet.
        let model = DiscriminantModel::new(5, c(0.0, 5.0));
        let fam = trace_arcs(&model, &uniform_kappa_grid(129)).unwrap();
        assert_eq!(fam.arcs.len(), 5);
        assert_eq!(fam.component_count, 5);
        let far = fam
            .arcs
            .iter()
            .filter(|a| a.samples.iter().all(|&(_, e)| e.im > 3.0))
            .count();
        assert_eq!(far, 1, "expected the single far branch near 4.58i");
    }

    #[test]
    fn arc_continuity() {
        let model = DiscriminantModel::new(5, c(0.0, 0.5));
        let fam = trace_arcs(&model, &uniform_kappa_grid(257)).unwrap();
        for arc in &fam.arcs {
            for w in arc.samples.windows(2) {
                assert!((w[1].1 - w[0].1).norm() < 0.2, "jump on branch {}", arc.branch_id);
            }
        }
    }

    #[test]
    fn bands_small_cases() {
        // L = 1, v = 3: Δ₁ = E - 3 ∈ [-2, 2] on [1, 5].
        let bands = real_bands(&DiscriminantModel::new(1, c(3.0, 0.0))).unwrap();
        assert_eq!(bands.intervals.len(), 1);
        let (a, b) = bands.intervals[0];
        assert!((a - 1.0).abs() < 1e-9 && (b - 5.0).abs() < 1e-9);

        // L = 2, v = 3: bands [-1, 0] and [3, 4], rightmost first.
        let bands = real_bands(&DiscriminantModel::new(2, c(3.0, 0.0))).unwrap();
        assert_eq!(bands.intervals.len(), 2);
        let (a, b) = bands.intervals[0];
        assert!((a - 3.0).abs() < 1e-9 && (b - 4.0).abs() < 1e-9);
        let (a, b) = bands.intervals[1];
        assert!((a + 1.0).abs() < 1e-9 && b.abs() < 1e-9);
    }

    #[test]
    fn band_count_is_period() {
        for l in [3usize, 7, 16] {
            for v in [0.5, -2.0] {
                let bands = real_bands(&DiscriminantModel::new(l, c(v, 0.0))).unwrap();
                assert_eq!(bands.intervals.len(), l, "L={l} v={v}");
                // disjoint, ordered rightmost first, midpoints in band
                for w in bands.intervals.windows(2) {
                    assert!(w[1].1 <= w[0].0 + 1e-12);
                }
                let model = DiscriminantModel::new(l, c(v, 0.0));
                for &(a, b) in &bands.intervals {
                    assert!(a <= b);
                    let mid = model.eval(c(0.5 * (a + b), 0.0));
                    assert!((-2.0..=2.0).contains(&mid.re) && mid.im.abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn inner_band_right_edges_are_beta_nodes() {
        // |v| > 4/L: the L-1 inner bands end at β_k.
        let l = 6;
        let model = DiscriminantModel::new(l, c(2.0, 0.0));
        let bands = real_bands(&model).unwrap();
        assert_eq!(bands.intervals.len(), l);
        for k in 1..l {
            let b = model.beta_node(k).unwrap();
            let d = bands
                .intervals
                .iter()
                .map(|&(_, hi)| (hi - b).abs())
                .fold(f64::INFINITY, f64::min);
            assert!(d < 1e-8, "beta_{k}={b} not a right edge");
        }
    }

    #[test]
    fn degenerate_band_inputs() {
        assert!(real_bands(&DiscriminantModel::new(3, c(0.0, 0.0))).is_err());
        assert!(real_bands(&DiscriminantModel::new(3, c(0.0, 1.0))).is_err());
    }

    #[test]
    fn membership_table() {
        // boundary: L = 4, v = 1 gives Δ(2) = -2, still inside
        let m = endpoint_membership(&DiscriminantModel::new(4, c(1.0, 0.0)));
        assert!(m.plus2_in_spectrum && !m.minus2_in_spectrum);
        let m = endpoint_membership(&DiscriminantModel::new(3, c(0.0, 2.0)));
        assert!(!m.plus2_in_spectrum && !m.minus2_in_spectrum);
        let m = endpoint_membership(&DiscriminantModel::new(5, c(0.0, 0.0)));
        assert!(m.plus2_in_spectrum && m.minus2_in_spectrum);
        let m = endpoint_membership(&DiscriminantModel::new(5, c(-0.5, 0.0)));
        assert!(!m.plus2_in_spectrum && m.minus2_in_spectrum);
    }

    #[test]
    fn outer_limit_values() {
        assert!((outer_band_limit(3.0).unwrap() - 13.0f64.sqrt()).abs() < 1e-15);
        assert!((outer_band_limit(-3.0).unwrap() + 13.0f64.sqrt()).abs() < 1e-15);
        assert!((outer_band_limit(1e-8).unwrap() - 2.0).abs() < 1e-8);
        assert!(outer_band_limit(0.0).is_err());
    }

    #[test]
    fn kato_box() {
        let model = DiscriminantModel::new(7, c(2.0, 0.0));
        let bands = real_bands(&model).unwrap();
        let pts: Vec<f64> = bands
            .intervals
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .collect();
        assert!(kato_bound_check(&model, &pts).unwrap());
        assert!(!kato_bound_check(&model, &[2.0 + 2.0 + 0.1]).unwrap());
        let free = DiscriminantModel::new(3, c(0.0, 0.0));
        assert!(kato_bound_check(&free, &[-2.0, 0.0, 2.0]).unwrap());
    }

    #[test]
    fn grid_validation() {
        let model = DiscriminantModel::new(2, c(1.0, 0.0));
        assert!(trace_arcs(&model, &[0.0]).is_err());
        assert!(trace_arcs(&model, &[0.1, PI]).is_err());
        assert!(trace_arcs(&model, &[0.0, 0.5, 0.4, PI]).is_err());
    }
}
