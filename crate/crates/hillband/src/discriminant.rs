//! Chebyshev closed form of the Hill discriminant,
//! `Δ_L(E) = 2 T_L(E/2) - v U_{L-1}(E/2)`, its derivative and first-order
//! Taylor data at the distinguished real points.
//!
//! The derivative away from `E = ±2` is
//!
//! ```text
//! Δ'_L(E) = L U_{L-1}(E/2) - v (2L T_L(E/2) - E U_{L-1}(E/2)) / (E² - 4)
//! ```
//!
//! with the removable singularity at `±2` handled by analytic limits.
//! The slope coefficients exposed here are derived from this formula and
//! validated against finite differences at small `L`; several commonly
//! quoted printed forms of these coefficients fail those direct checks
//! (a missing `(-1)^{j-1}` at the `α_j` nodes, `sin³` in place of `L/sin²`
//! at the `β_k` nodes, and `L(L²-1)/4` in place of `L(L²-1)/6` with the
//! opposite sign at `-2`).  The regression tests pin the derived values.

use crate::chebyshev::cheb_eval_pair;
use crate::error::Error;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Guard radius around `E = ±2` inside which the derivative switches to
/// its analytic limit expansion.
const SEAM_GUARD: f64 = 1e-6;

/// The bound pair `(L, v)` with evaluation of `Δ_L` and its derivative.
#[derive(Debug, Clone, Copy)]
pub struct DiscriminantModel {
    period: usize,
    impurity: Complex64,
}

/// Values of `Δ_L` at the distinguished points `±2` and the `β_k` nodes.
#[derive(Debug, Clone)]
pub struct SpecialValues {
    /// `Δ_L(2) = 2 - Lv`
    pub at_plus2: Complex64,
    /// `Δ_L(-2) = (-1)^L (2 + Lv)`
    pub at_minus2: Complex64,
    /// `Δ_L(β_k) = 2 (-1)^k`, `k = 1..L-1` (empty for `L = 1`)
    pub at_beta: Vec<Complex64>,
}

/// A distinguished real point of the discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialPoint {
    /// `α_j = 2 cos((2j-1)π/2L)`, a root of `T_L(E/2)`, `j = 1..L`.
    AlphaNode(usize),
    /// `β_k = 2 cos(kπ/L)`, a root of `U_{L-1}(E/2)`, `k = 1..L-1`.
    BetaNode(usize),
    PlusTwo,
    MinusTwo,
}

/// First-order Taylor data `Δ(center) + Δ'(center)·(E - center)`.
#[derive(Debug, Clone, Copy)]
pub struct TaylorExpansion {
    pub center: Complex64,
    pub value: Complex64,
    pub slope: Complex64,
}

impl DiscriminantModel {
    pub fn new(period: usize, impurity: Complex64) -> Self {
        assert!(period >= 1, "period must be at least 1");
        DiscriminantModel { period, impurity }
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn impurity(&self) -> Complex64 {
        self.impurity
    }

    /// `α_j = 2 cos θ_j`, `θ_j = (2j-1)π/2L`.
    pub fn alpha_node(&self, j: usize) -> Result<f64, Error> {
        if j == 0 || j > self.period {
            return Err(Error::IndexOutOfRange {
                index: j,
                max: self.period,
            });
        }
        Ok(2.0 * ((2 * j - 1) as f64 * PI / (2 * self.period) as f64).cos())
    }

    /// `β_k = 2 cos(kπ/L)`.
    pub fn beta_node(&self, k: usize) -> Result<f64, Error> {
        if k == 0 || k + 1 > self.period {
            return Err(Error::IndexOutOfRange {
                index: k,
                max: self.period.saturating_sub(1),
            });
        }
        Ok(2.0 * (k as f64 * PI / self.period as f64).cos())
    }

    /// `Δ_L(E) = 2 T_L(E/2) - v U_{L-1}(E/2)`.
    pub fn eval(&self, energy: Complex64) -> Complex64 {
        let (t, u) = cheb_eval_pair(self.period, energy / 2.0);
        2.0 * t - self.impurity * u
    }

    /// `Δ'_L(E)`, with analytic limits inside the guard radius of `±2`.
    pub fn eval_derivative(&self, energy: Complex64) -> Complex64 {
        let l = self.period as f64;
        let v = self.impurity;
        let near_plus = (energy - 2.0).norm();
        let near_minus = (energy + 2.0).norm();
        if near_plus.min(near_minus) < SEAM_GUARD {
            // Δ'(±2) plus the linear term from Δ''(±2); both limits come
            // out of the rational form and are validated against finite
            // differences at L = 1, 2, 3.
            let cubic = l * (l * l - 1.0) / 6.0;
            let quintic = if self.period >= 2 {
                (l - 2.0) * (l - 1.0) * l * (l + 1.0) * (l + 2.0) / 60.0
            } else {
                0.0
            };
            if near_plus < near_minus {
                let d1 = l * l - v * cubic;
                let d2 = l * l * (l * l - 1.0) / 6.0 - v * quintic;
                d1 + (energy - 2.0) * d2
            } else {
                let sign = if self.period.is_multiple_of(2) { -1.0 } else { 1.0 };
                let d1 = sign * (l * l + v * cubic);
                let d2 = -sign * (l * l * (l * l - 1.0) / 6.0 + v * quintic);
                d1 + (energy + 2.0) * d2
            }
        } else {
            let (t, u) = cheb_eval_pair(self.period, energy / 2.0);
            l * u - v * (2.0 * l * t - energy * u) / (energy * energy - 4.0)
        }
    }

    /// Exact values at `±2` and the `β_k` nodes.
    pub fn special_values(&self) -> SpecialValues {
        let l = self.period as f64;
        let v = self.impurity;
        let sign_l = if self.period.is_multiple_of(2) { 1.0 } else { -1.0 };
        let at_beta = (1..self.period)
            .map(|k| Complex64::new(2.0 * if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
            .collect();
        SpecialValues {
            at_plus2: 2.0 - l * v,
            at_minus2: sign_l * (2.0 + l * v),
            at_beta,
        }
    }

    /// First-order Taylor data at a distinguished point.  Values use the
    /// exact closed forms; slopes always come from [`eval_derivative`].
    ///
    /// [`eval_derivative`]: DiscriminantModel::eval_derivative
    pub fn taylor_at(&self, point: SpecialPoint) -> Result<TaylorExpansion, Error> {
        let (center, value) = match point {
            SpecialPoint::AlphaNode(j) => {
                let a = self.alpha_node(j)?;
                let theta = (2 * j - 1) as f64 * PI / (2 * self.period) as f64;
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                // Δ(α_j) = v (-1)^j / sin θ_j
                (Complex64::new(a, 0.0), self.impurity * sign / theta.sin())
            }
            SpecialPoint::BetaNode(k) => {
                let b = self.beta_node(k)?;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                (Complex64::new(b, 0.0), Complex64::new(2.0 * sign, 0.0))
            }
            SpecialPoint::PlusTwo => (Complex64::new(2.0, 0.0), self.special_values().at_plus2),
            SpecialPoint::MinusTwo => (Complex64::new(-2.0, 0.0), self.special_values().at_minus2),
        };
        Ok(TaylorExpansion {
            center,
            value,
            slope: self.eval_derivative(center),
        })
    }

    /// Closed-form slope at `β_k`: `Δ'_L(β_k) = v L (-1)^k / (2 sin² φ_k)`
    /// with `φ_k = kπ/L`.  Derived from the rational derivative form;
    /// matches [`eval_derivative`] and finite differences.
    ///
    /// [`eval_derivative`]: DiscriminantModel::eval_derivative
    pub fn beta_slope(&self, k: usize) -> Result<Complex64, Error> {
        self.beta_node(k)?;
        let l = self.period as f64;
        let phi = k as f64 * PI / l;
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(self.impurity * l * sign / (2.0 * phi.sin() * phi.sin()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::{discriminant_via_transfer, Potential};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn period_one_is_linear() {
        let m = DiscriminantModel::new(1, c(0.3, -0.8));
        for &e in &[c(0.0, 0.0), c(1.5, 2.0), c(-3.0, 0.1)] {
            assert!((m.eval(e) - (e - c(0.3, -0.8))).norm() < 1e-14);
            assert!((m.eval_derivative(e) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn example_l3_values() {
        // L = 3, v = 2i: Δ₃(0) = 2i, Δ₃(i) = 0.
        let m = DiscriminantModel::new(3, c(0.0, 2.0));
        assert!((m.eval(c(0.0, 0.0)) - c(0.0, 2.0)).norm() < 1e-14);
        assert!(m.eval(c(0.0, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn free_case_is_first_kind_only() {
        let m = DiscriminantModel::new(6, c(0.0, 0.0));
        let e = c(0.8, -0.3);
        let expect = 2.0 * crate::chebyshev::cheb_eval(crate::chebyshev::ChebKind::First, 6, e / 2.0);
        assert!((m.eval(e) - expect).norm() < 1e-13);
    }

    #[test]
    fn matches_transfer_oracle() {
        let cases = [
            (1usize, c(1.0, 0.0)),
            (2, c(0.0, 2.0)),
            (5, c(0.5, -0.3)),
            (17, c(-3.0, 0.0)),
            (64, c(2.0, 7.0)),
        ];
        for &(l, v) in &cases {
            let m = DiscriminantModel::new(l, v);
            let pot = Potential::sparse(l, v);
            for &e in &[c(0.1, 0.2), c(-2.0, 0.0), c(3.7, -1.9), c(0.0, 3.5)] {
                let closed = m.eval(e);
                let oracle = discriminant_via_transfer(&pot, e);
                assert!(
                    (closed - oracle).norm() / (1.0 + closed.norm()) < 1e-9,
                    "L={l} v={v} E={e}"
                );
            }
        }
    }

    #[test]
    fn derivative_small_l_closed_forms() {
        // L = 3, v = 0: Δ = E³ - 3E, Δ' = 3E² - 3, Δ'(2) = 9.
        let m = DiscriminantModel::new(3, c(0.0, 0.0));
        assert!((m.eval_derivative(c(2.0, 0.0)) - 9.0).norm() < 1e-10);
        // L = 2: Δ = E² - vE - 2, Δ'(-2) = -4 - v.
        let v = c(0.7, 1.3);
        let m = DiscriminantModel::new(2, v);
        assert!((m.eval_derivative(c(-2.0, 0.0)) - (-4.0 - v)).norm() < 1e-10);
    }

    #[test]
    fn derivative_limits_at_edges() {
        // Δ'(2) = L² - vL(L²-1)/6, Δ'(-2) = (-1)^{L+1} (L² + vL(L²-1)/6),
        // checked against central finite differences straddling the seam.
        for l in [1usize, 2, 3, 5, 8] {
            let v = c(0.4, -0.9);
            let m = DiscriminantModel::new(l, v);
            let lf = l as f64;
            let cubic = lf * (lf * lf - 1.0) / 6.0;
            let at2 = m.eval_derivative(c(2.0, 0.0));
            assert!((at2 - (lf * lf - v * cubic)).norm() < 1e-10 * (1.0 + at2.norm()));
            let sign = if l % 2 == 0 { -1.0 } else { 1.0 };
            let atm2 = m.eval_derivative(c(-2.0, 0.0));
            let expect = sign * (lf * lf + v * cubic);
            assert!((atm2 - expect).norm() < 1e-10 * (1.0 + expect.norm()));

            let h = 1e-5;
            for s in [2.0, -2.0] {
                let fd = (m.eval(c(s + h, 0.0)) - m.eval(c(s - h, 0.0))) / (2.0 * h);
                let d = m.eval_derivative(c(s, 0.0));
                assert!(
                    (fd - d).norm() < 1e-5 * (1.0 + d.norm()),
                    "L={l} s={s}: fd={fd} d={d}"
                );
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference_generic() {
        let h = 1e-5;
        for l in [1usize, 2, 4, 9, 20] {
            let v = c(1.5, 0.6);
            let m = DiscriminantModel::new(l, v);
            for i in 0..20 {
                let ang = 0.37 * i as f64;
                let z = c(2.8 * ang.cos(), 2.8 * ang.sin());
                let fd = (m.eval(z + h) - m.eval(z - h)) / (2.0 * h);
                let d = m.eval_derivative(z);
                assert!(
                    (fd - d).norm() < 1e-6 * (1.0 + d.norm()),
                    "L={l} z={z}: fd={fd} d={d}"
                );
            }
        }
    }

    #[test]
    fn derivative_continuous_across_seam() {
        for l in [2usize, 3, 7, 12] {
            let m = DiscriminantModel::new(l, c(0.9, -0.4));
            for s in [2.0f64, -2.0] {
                let inside = m.eval_derivative(c(s, 0.999e-6));
                let outside = m.eval_derivative(c(s, 1.001e-6));
                assert!(
                    (inside - outside).norm() < 1e-6 * (1.0 + outside.norm()),
                    "L={l} s={s}"
                );
            }
        }
    }

    #[test]
    fn special_values_table() {
        let m = DiscriminantModel::new(4, c(1.0, 0.0));
        assert!((m.special_values().at_plus2 - c(-2.0, 0.0)).norm() < 1e-14);

        let m = DiscriminantModel::new(3, c(0.0, 2.0));
        assert!((m.special_values().at_minus2 - c(-2.0, -6.0)).norm() < 1e-14);

        let m = DiscriminantModel::new(5, c(0.3, 0.3));
        let sv = m.special_values();
        assert_eq!(sv.at_beta.len(), 4);
        for (i, val) in sv.at_beta.iter().enumerate() {
            let k = i + 1;
            let expect = 2.0 * if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((val - expect).norm() < 1e-14);
            // and the evaluated discriminant agrees
            let b = m.beta_node(k).unwrap();
            assert!((m.eval(c(b, 0.0)) - expect).norm() < 1e-12);
        }

        // L = 1 has no beta nodes
        assert!(DiscriminantModel::new(1, c(1.0, 0.0))
            .special_values()
            .at_beta
            .is_empty());
    }

    #[test]
    fn taylor_examples() {
        // L = 2, β₁: center 0, value -2, slope -v.
        let v = c(0.8, -0.2);
        let m = DiscriminantModel::new(2, v);
        let t = m.taylor_at(SpecialPoint::BetaNode(1)).unwrap();
        assert!(t.center.norm() < 1e-15);
        assert!((t.value - c(-2.0, 0.0)).norm() < 1e-14);
        assert!((t.slope - (-v)).norm() < 1e-10);

        // L = 1, α₁: center 0, value -v, slope 1.
        let m = DiscriminantModel::new(1, v);
        let t = m.taylor_at(SpecialPoint::AlphaNode(1)).unwrap();
        assert!(t.center.norm() < 1e-15);
        assert!((t.value + v).norm() < 1e-14);
        assert!((t.slope - 1.0).norm() < 1e-12);

        // L = 2, α₁: center √2, value -√2 v, slope 2√2 - v.
        let m = DiscriminantModel::new(2, v);
        let t = m.taylor_at(SpecialPoint::AlphaNode(1)).unwrap();
        let r2 = 2.0f64.sqrt();
        assert!((t.center - r2).norm() < 1e-14);
        assert!((t.value + r2 * v).norm() < 1e-12);
        assert!((t.slope - (2.0 * r2 - v)).norm() < 1e-10);
    }

    #[test]
    fn taylor_invariants() {
        let m = DiscriminantModel::new(6, c(1.1, 0.7));
        let mut points = vec![SpecialPoint::PlusTwo, SpecialPoint::MinusTwo];
        points.extend((1..=6).map(SpecialPoint::AlphaNode));
        points.extend((1..6).map(SpecialPoint::BetaNode));
        for p in points {
            let t = m.taylor_at(p).unwrap();
            assert!((t.value - m.eval(t.center)).norm() < 1e-10);
            assert!((t.slope - m.eval_derivative(t.center)).norm() < 1e-10);
        }
        assert!(m.taylor_at(SpecialPoint::AlphaNode(7)).is_err());
        assert!(m.taylor_at(SpecialPoint::BetaNode(6)).is_err());
    }

    #[test]
    fn beta_slope_closed_form() {
        // v L (-1)^k / (2 sin² φ_k), validated against the derivative and
        // finite differences.
        for l in [2usize, 3, 5, 10] {
            let v = c(0.9, 1.4);
            let m = DiscriminantModel::new(l, v);
            for k in 1..l {
                let slope = m.beta_slope(k).unwrap();
                let b = m.beta_node(k).unwrap();
                let d = m.eval_derivative(c(b, 0.0));
                assert!(
                    (slope - d).norm() < 1e-9 * (1.0 + d.norm()),
                    "L={l} k={k}: closed={slope} derivative={d}"
                );
            }
        }
    }

    #[test]
    fn monic_at_large_argument() {
        for l in [1usize, 3, 8] {
            let m = DiscriminantModel::new(l, c(2.0, -1.0));
            let e = c(1e6, 0.0);
            let ratio = m.eval(e) / e.powu(l as u32);
            assert!((ratio - 1.0).norm() < 1e-4, "L={l}: {ratio}");
        }
    }

    #[test]
    fn pure_imaginary_mirror_symmetry() {
        // v = is: Δ(-conj(E)) = (-1)^L conj(Δ(E)).
        for l in [2usize, 3, 5, 8] {
            let m = DiscriminantModel::new(l, c(0.0, 1.7));
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            for &e in &[c(0.4, 0.9), c(-1.8, -0.6), c(2.3, 0.0)] {
                let lhs = m.eval(-e.conj());
                let rhs = sign * m.eval(e).conj();
                assert!((lhs - rhs).norm() < 1e-11 * (1.0 + rhs.norm()), "L={l} E={e}");
            }
        }
    }
}
