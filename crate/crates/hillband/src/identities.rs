//! Exact integral and trace identities of the discriminant, verified
//! numerically with quadrature rules of just-sufficient degree.
//!
//! Note on the first identity: the closed form implemented here is
//! `∫_{−2}^{2} Δ_L = −8/(L²−1)` for even `L` and `−4v/L` for odd `L`.
//! A commonly quoted version halves both values; direct integration of
//! `Δ₂ = E² − vE − 2` gives `16/3 − 8 = −8/3`, so the halved version
//! drops the Jacobian of `E = 2cos θ`.  The regression tests pin this.

use crate::chebyshev::{gauss_cheb_integrate, ChebKind};
use crate::discriminant::DiscriminantModel;
use crate::transfer;
use num_complex::Complex64;
use std::f64::consts::PI;

/// A computed quantity next to its closed form.
#[derive(Debug, Clone, Copy)]
pub struct IdentityResult {
    pub computed: Complex64,
    pub closed_form: Complex64,
    pub abs_error: f64,
}

impl IdentityResult {
    fn new(computed: Complex64, closed_form: Complex64) -> Self {
        IdentityResult {
            computed,
            closed_form,
            abs_error: (computed - closed_form).norm(),
        }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the Legendre three-term recurrence.  Exact for degree `2n − 1`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let m = n.div_ceil(2);
    let mut full = vec![(0.0f64, 0.0f64); n];
    for i in 1..=m {
        // Tricomi-style initial guess, then Newton to 1e-14.
        let mut x = (PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-14 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // symmetric pair (for odd n the middle node is exactly 0)
        full[i - 1] = (-x, w);
        full[n - i] = (x, w);
    }
    if n % 2 == 1 {
        full[m - 1].0 = 0.0;
    }
    full
}

fn integral_with_nodes(model: &DiscriminantModel, n_nodes: usize) -> Complex64 {
    // ∫_{-2}^{2} Δ(E) dE = 2 ∫_{-1}^{1} Δ(2x) dx
    gauss_legendre(n_nodes)
        .into_iter()
        .map(|(x, w)| 2.0 * w * model.eval(Complex64::new(2.0 * x, 0.0)))
        .sum()
}

/// `∫_{−2}^{2} Δ_L(E) dE` against its closed form `−8/(L²−1)` (even `L`)
/// or `−4v/L` (odd `L`; `−4v` for `L = 1`).
pub fn integral_of_discriminant(model: &DiscriminantModel) -> IdentityResult {
    integral_of_discriminant_with_nodes(model, (model.period() + 3) / 2)
}

/// As [`integral_of_discriminant`] with an explicit node count (the
/// default `⌈(L+2)/2⌉` is already exact; more nodes must not change it).
pub fn integral_of_discriminant_with_nodes(
    model: &DiscriminantModel,
    n_nodes: usize,
) -> IdentityResult {
    let l = model.period();
    let closed = if l.is_multiple_of(2) {
        Complex64::from(-8.0 / ((l * l - 1) as f64))
    } else {
        -4.0 * model.impurity() / l as f64
    };
    IdentityResult::new(integral_with_nodes(model, n_nodes), closed)
}

/// `(1/2π)∫_{−2}^{2} |Δ_L(E)|² √(4−E²) dE` against `2 + |v|²` (`L ≥ 2`)
/// or `1 + |v|²` (`L = 1`): the Chebyshev-coefficient Parseval identity
/// for the monic `Δ_L` with sub-leading coefficient `−v`.
pub fn parseval_norm(model: &DiscriminantModel) -> IdentityResult {
    parseval_norm_with_nodes(model, model.period() + 2)
}

pub fn parseval_norm_with_nodes(model: &DiscriminantModel, n_nodes: usize) -> IdentityResult {
    // E = 2x maps the weight to 2√(1−x²}·2dx; the rule carries √(1−x²).
    let computed = (2.0 / PI)
        * gauss_cheb_integrate(
            ChebKind::Second,
            |x| {
                let d = model.eval(Complex64::new(2.0 * x, 0.0));
                Complex64::from(d.norm_sqr())
            },
            n_nodes,
        );
    let base = if model.period() >= 2 { 2.0 } else { 1.0 };
    IdentityResult::new(computed, Complex64::from(base + model.impurity().norm_sqr()))
}

/// `tr(Φ₀(E)ⁿ) = 2Tₙ(E/2)`: repeated matrix multiplication against the
/// Chebyshev closed form.
pub fn power_trace_identity(n: usize, energy: Complex64) -> IdentityResult {
    IdentityResult::new(
        transfer::power_trace(n, energy),
        transfer::power_trace_closed_form(n, energy),
    )
}

/// Kolmogorov–Smirnov distance between the empirical distribution of the
/// second-kind nodes `β_k = 2cos(kπ/L)` and the arcsine law on `[-2, 2]`
/// (CDF `1 − arccos(E/2)/π`).  Shrinks like `1/L`.
pub fn beta_density_check(period: usize) -> f64 {
    assert!(period >= 2);
    let n = period - 1;
    let mut nodes: Vec<f64> = (1..period)
        .map(|k| 2.0 * (k as f64 * PI / period as f64).cos())
        .collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let cdf = |e: f64| 1.0 - (e / 2.0).acos() / PI;
    let mut dist = 0.0f64;
    for (i, &x) in nodes.iter().enumerate() {
        let f = cdf(x);
        dist = dist
            .max((((i + 1) as f64) / n as f64 - f).abs())
            .max((i as f64 / n as f64 - f).abs());
    }
    dist
}
