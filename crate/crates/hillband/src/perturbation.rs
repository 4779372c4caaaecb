//! First-order root perturbation: the generic simple-root shift for
//! `f(z) - s·g(z) - t = 0`, and the two Floquet-eigenvalue asymptotics it
//! yields — near the first-kind Chebyshev nodes `α_j` for small `|v|`, and
//! near the second-kind nodes `β_k` for large `|v|`.
//!
//! The large-`|v|` coefficients here carry a factor `4 sin²(kπ/L)/L` and a
//! `+(−1)^k cos κ` term.  A commonly quoted variant has `2 sin²(kπ/L)/L`
//! and the opposite sign; it fails the exact `L = 2` expansion
//! `−(2 + 2cos κ)/v` (the discrepancy is a dropped chain-rule ½ in
//! `d/dE U_{L−1}(E/2)`), so that variant is kept only for comparison in
//! [`large_v_floquet_approx_printed`].

use crate::discriminant::DiscriminantModel;
use crate::error::Error;
use crate::floquet::{floquet_eigenvalues, Quasimomentum};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Data for the first-order shift of a simple root `α` of `f` under the
/// perturbed equation `f(z) - s·g(z) - t = 0`.
#[derive(Debug, Clone, Copy)]
pub struct ShiftInput {
    pub center: Complex64,
    pub f_prime_at_center: Complex64,
    pub g_at_center: Complex64,
    pub s: Complex64,
    pub t: Complex64,
}

/// Which asymptotic regime an [`ApproxReport`] is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    SmallV,
    LargeV,
}

/// First-order approximation next to the numeric root it targets.
#[derive(Debug, Clone)]
pub struct ApproxReport {
    pub regime: Regime,
    pub period: usize,
    pub index: usize,
    pub impurity: Complex64,
    pub kappa: f64,
    pub approx: Complex64,
    pub numeric: Complex64,
    pub abs_error: f64,
    /// Non-blocking validity notes (e.g. `|v|` outside the regime the
    /// asymptotic expansion is justified for).
    pub warnings: Vec<String>,
}

/// `α + (g(α)/f′(α))·s + t/f′(α)`: first-order location of the root of
/// `f(z) - s·g(z) - t` that continues the simple root `α` of `f`.
pub fn first_order_root_shift(input: &ShiftInput) -> Result<Complex64, Error> {
    let fp = input.f_prime_at_center;
    if fp.norm() == 0.0 {
        return Err(Error::DegenerateInput(
            "first-order shift needs a simple root: f'(center) = 0".into(),
        ));
    }
    Ok(input.center + (input.g_at_center / fp) * input.s + input.t / fp)
}

fn check_index(index: usize, max: usize) -> Result<(), Error> {
    if index == 0 || index > max {
        return Err(Error::IndexOutOfRange { index, max });
    }
    Ok(())
}

/// Small-`|v|` first-order Floquet eigenvalue near `α_j = 2cos θ_j`,
/// `θ_j = (2j−1)π/2L`:
///
/// `α_j + v/L + 2(−1)^{j−1} (sin θ_j / L) cos κ`.
///
/// Exact for `L = 1` (the equation is linear); error
/// `O((|v| + |cos κ|)²)` otherwise.
pub fn small_v_floquet_approx(
    period: usize,
    j: usize,
    v: Complex64,
    kappa: f64,
) -> Result<Complex64, Error> {
    check_index(j, period)?;
    let l = period as f64;
    let theta = (2 * j - 1) as f64 * PI / (2.0 * l);
    let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
    Ok(2.0 * theta.cos() + v / l + sign * 2.0 * theta.sin() / l * kappa.cos())
}

/// Large-`|v|` first-order Floquet eigenvalue near `β_k = 2cos(kπ/L)`:
///
/// `β_k − (4sin²(kπ/L)/L)(1/v) + (−1)^k (4sin²(kπ/L)/L)(cos κ / v)`.
///
/// Error `O((1 + |cos κ|)²/|v|²)`.
pub fn large_v_floquet_approx(
    period: usize,
    k: usize,
    v: Complex64,
    kappa: f64,
) -> Result<Complex64, Error> {
    check_index(k, period.saturating_sub(1))?;
    let l = period as f64;
    let phi = k as f64 * PI / l;
    let coeff = 4.0 * phi.sin().powi(2) / l;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(2.0 * phi.cos() - coeff / v + sign * coeff * kappa.cos() / v)
}

/// The same expansion with the commonly printed (incorrect) coefficients:
/// half the magnitude and the opposite `cos κ` sign.  Provided only so the
/// two forms can be compared against the numeric solver; see the module
/// docs and the regression tests.
pub fn large_v_floquet_approx_printed(
    period: usize,
    k: usize,
    v: Complex64,
    kappa: f64,
) -> Result<Complex64, Error> {
    check_index(k, period.saturating_sub(1))?;
    let l = period as f64;
    let phi = k as f64 * PI / l;
    let coeff = 2.0 * phi.sin().powi(2) / l;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(2.0 * phi.cos() - coeff / v - sign * coeff * kappa.cos() / v)
}

/// Pair an approximation with the nearest numeric Floquet root.
///
/// Nearest-root ties are broken by smallest index when the tied roots
/// coincide; if genuinely distinct roots are equidistant beyond `1e−12`
/// the report aborts with [`Error::DegenerateInput`] rather than guessing.
pub fn approximation_error_report(
    regime: Regime,
    period: usize,
    index: usize,
    v: Complex64,
    kappa: f64,
) -> Result<ApproxReport, Error> {
    let approx = match regime {
        Regime::SmallV => small_v_floquet_approx(period, index, v, kappa)?,
        Regime::LargeV => large_v_floquet_approx(period, index, v, kappa)?,
    };
    let model = DiscriminantModel::new(period, v);
    let set = floquet_eigenvalues(&model, Quasimomentum::new(kappa)?)?;
    let mut dists: Vec<(f64, usize)> = set
        .roots
        .iter()
        .enumerate()
        .map(|(i, &r)| ((r - approx).norm(), i))
        .collect();
    dists.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));
    let (best, best_i) = dists[0];
    for &(d, i) in &dists[1..] {
        if d - best <= 1e-12 && (set.roots[i] - set.roots[best_i]).norm() > 1e-12 {
            return Err(Error::DegenerateInput(format!(
                "two distinct roots equidistant from the approximation near {approx}"
            )));
        }
    }
    let numeric = set.roots[best_i];
    let mut warnings = Vec::new();
    match regime {
        Regime::SmallV if v.norm() > 1.0 => warnings.push(format!(
            "|v| = {:.3} > 1: outside the small-impurity validity regime",
            v.norm()
        )),
        Regime::LargeV if v.norm() < 4.0 => warnings.push(format!(
            "|v| = {:.3} < 4: outside the large-impurity validity regime",
            v.norm()
        )),
        _ => {}
    }
    Ok(ApproxReport {
        regime,
        period,
        index,
        impurity: v,
        kappa,
        approx,
        numeric,
        abs_error: (approx - numeric).norm(),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::{cheb_deriv, cheb_eval, ChebKind};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn shift_trivial_and_degenerate() {
        let alpha = c(1.3, -0.2);
        let input = ShiftInput {
            center: alpha,
            f_prime_at_center: c(2.0, 1.0),
            g_at_center: c(0.5, 0.0),
            s: c(0.0, 0.0),
            t: c(0.0, 0.0),
        };
        assert_eq!(first_order_root_shift(&input).unwrap(), alpha);
        let bad = ShiftInput {
            f_prime_at_center: c(0.0, 0.0),
            ..input
        };
        assert!(first_order_root_shift(&bad).is_err());
    }

    #[test]
    fn shift_tracks_sqrt_perturbation() {
        // f(E) = E² - 2 at α = √2, perturbed by s·1 with s = 0.1: the
        // shifted root approximates √2.1.
        let alpha = 2.0f64.sqrt();
        let input = ShiftInput {
            center: c(alpha, 0.0),
            f_prime_at_center: c(2.0 * alpha, 0.0),
            g_at_center: c(1.0, 0.0),
            s: c(0.1, 0.0),
            t: c(0.0, 0.0),
        };
        let shifted = first_order_root_shift(&input).unwrap();
        let formula = alpha + 0.1 / (2.0 * alpha);
        assert!((shifted - formula).norm() < 1e-15);
        assert!((shifted.re - 2.1f64.sqrt()).abs() < 1e-3);
    }

    #[test]
    fn chebyshev_shift_coefficient_is_one_over_period() {
        // f = 2T_L(E/2), g = U_{L-1}(E/2): at every α_j the ratio
        // g(α_j)/f'(α_j) collapses to 1/L.
        for l in [2usize, 3, 7] {
            let model = DiscriminantModel::new(l, c(0.0, 0.0));
            for j in 1..=l {
                let alpha = model.alpha_node(j).unwrap();
                let half = Complex64::from(alpha) / 2.0;
                let fp = cheb_deriv(ChebKind::First, l, half);
                let g = cheb_eval(ChebKind::Second, l - 1, half);
                let ratio = g / fp;
                assert!(
                    (ratio - 1.0 / l as f64).norm() < 1e-12,
                    "L={l} j={j}: {ratio}"
                );
            }
        }
    }

    #[test]
    fn shift_reproduces_small_v_formula() {
        // Assemble the generic shift with f = Δ (free), g = U_{L-1}(E/2),
        // s = v, t = 2cos κ and compare with the dedicated operation.
        let l = 5usize;
        let v = c(0.2, 0.1);
        let kappa = 1.234f64;
        let model = DiscriminantModel::new(l, c(0.0, 0.0));
        for j in 1..=l {
            let alpha = Complex64::from(model.alpha_node(j).unwrap());
            let input = ShiftInput {
                center: alpha,
                f_prime_at_center: model.eval_derivative(alpha),
                g_at_center: cheb_eval(ChebKind::Second, l - 1, alpha / 2.0),
                s: v,
                t: c(2.0 * kappa.cos(), 0.0),
            };
            let generic = first_order_root_shift(&input).unwrap();
            let direct = small_v_floquet_approx(l, j, v, kappa).unwrap();
            assert!((generic - direct).norm() < 1e-12, "j={j}: {generic} vs {direct}");
        }
    }

    #[test]
    fn small_v_degree_one_is_exact() {
        for (v, kappa) in [(c(0.3, -0.8), 0.4), (c(-2.0, 1.0), 2.9), (c(0.0, 0.5), 0.0)] {
            let approx = small_v_floquet_approx(1, 1, v, kappa).unwrap();
            let exact = v + 2.0 * kappa.cos();
            assert!((approx - exact).norm() < 1e-14);
        }
    }

    #[test]
    fn large_v_quadratic_case_series() {
        // L = 2: approx is -(2 + 2cos κ)/v; the exact root is
        // (v - √(v² + 8 + 8cos κ))/2, whose large-v expansion it matches.
        let v = c(40.0, 0.0);
        for kappa in [0.0, 1.0, PI] {
            let approx = large_v_floquet_approx(2, 1, v, kappa).unwrap();
            let series = -(2.0 + 2.0 * kappa.cos()) / v;
            assert!((approx - series).norm() < 1e-14);
            let exact = (v - (v * v + 8.0 + 8.0 * kappa.cos()).sqrt()) / 2.0;
            assert!(
                (approx - exact).norm() < 10.0 / v.norm_sqr(),
                "kappa={kappa}: {approx} vs {exact}"
            );
        }
    }

    #[test]
    fn printed_variant_misses_quadratic_case() {
        // The half-coefficient form disagrees with the exact series at
        // first order already (this is the documented misprint).
        let v = c(100.0, 0.0);
        let approx = large_v_floquet_approx_printed(2, 1, v, 0.7).unwrap();
        let series = -(2.0 + 2.0 * 0.7f64.cos()) / v;
        assert!((approx - series).norm() > 0.5 / v.norm());
    }

    #[test]
    fn index_ranges() {
        assert!(small_v_floquet_approx(3, 0, c(0.1, 0.0), 0.0).is_err());
        assert!(small_v_floquet_approx(3, 4, c(0.1, 0.0), 0.0).is_err());
        assert!(large_v_floquet_approx(3, 3, c(5.0, 0.0), 0.0).is_err());
        assert!(large_v_floquet_approx(1, 1, c(5.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn report_exact_degree_one() {
        let rep =
            approximation_error_report(Regime::SmallV, 1, 1, c(0.3, 0.1), 1.1).unwrap();
        assert!(rep.abs_error < 1e-12);
        assert!(rep.warnings.is_empty());
    }

    #[test]
    fn report_warnings() {
        let rep =
            approximation_error_report(Regime::SmallV, 3, 1, c(0.0, 2.0), 1.0).unwrap();
        assert_eq!(rep.warnings.len(), 1);
        let rep =
            approximation_error_report(Regime::LargeV, 5, 1, c(0.0, 5.0), 1.0).unwrap();
        assert!(rep.warnings.is_empty());
    }

    fn ratio_window(errors: &[f64]) {
        for w in errors.windows(2) {
            if w[0] < 1e-3 {
                let r = w[1] / w[0];
                assert!((0.15..=0.4).contains(&r), "ratio {r} outside window");
            }
        }
    }

    #[test]
    fn small_v_error_is_quadratic() {
        let kappa = PI / 2.0;
        let mut errors = Vec::new();
        for m in 0..5 {
            let v = c(0.0, 0.5) * 0.5f64.powi(m);
            let rep = approximation_error_report(Regime::SmallV, 5, 1, v, kappa).unwrap();
            errors.push(rep.abs_error);
        }
        ratio_window(&errors);
    }

    #[test]
    fn large_v_error_is_quadratic() {
        let kappa = PI / 2.0;
        let mut errors = Vec::new();
        for m in 0..5 {
            let v = c(0.0, 5.0) * 2.0f64.powi(m);
            let rep = approximation_error_report(Regime::LargeV, 5, 1, v, kappa).unwrap();
            errors.push(rep.abs_error);
        }
        ratio_window(&errors);
    }
}
