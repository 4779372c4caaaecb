//! Chebyshev polynomials of the first and second kind over complex
//! arguments: evaluation, derivatives, root sets and Gauss–Chebyshev
//! quadrature.
//!
//! Evaluation uses the forward three-term recurrence
//! `p_{n+1}(z) = 2z p_n(z) - p_{n-1}(z)`, which is stable in the
//! dominant-solution direction needed here (arguments with `|z|` up to a
//! few units).  No coefficient expansions are formed anywhere.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Which Chebyshev family: `T_n` (first kind) or `U_n` (second kind).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebKind {
    First,
    Second,
}

/// Guard radius around `z = ±1` inside which the second-kind derivative
/// switches to its truncated Taylor limit.
const DERIV_GUARD: f64 = 1e-6;

/// Evaluate `T_n(z)` or `U_n(z)` by the forward recurrence.
pub fn cheb_eval(kind: ChebKind, n: usize, z: Complex64) -> Complex64 {
    let p1 = match kind {
        ChebKind::First => z,
        ChebKind::Second => 2.0 * z,
    };
    match n {
        0 => Complex64::new(1.0, 0.0),
        1 => p1,
        _ => {
            let mut prev = Complex64::new(1.0, 0.0);
            let mut cur = p1;
            for _ in 1..n {
                let next = 2.0 * z * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Evaluate both `T_n(z)` and `U_{n-1}(z)` in one recurrence pass.
///
/// Convention: `U_{-1} = 0` for `n = 0`.
pub fn cheb_eval_pair(n: usize, z: Complex64) -> (Complex64, Complex64) {
    if n == 0 {
        return (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    }
    let mut t_prev = Complex64::new(1.0, 0.0);
    let mut t_cur = z;
    let mut u_prev = Complex64::new(0.0, 0.0); // U_{-1}
    let mut u_cur = Complex64::new(1.0, 0.0); // U_0
    for _ in 1..n {
        let t_next = 2.0 * z * t_cur - t_prev;
        t_prev = t_cur;
        t_cur = t_next;
        let u_next = 2.0 * z * u_cur - u_prev;
        u_prev = u_cur;
        u_cur = u_next;
    }
    (t_cur, u_cur)
}

/// Derivative value `U'_n(1) = n(n+1)(n+2)/3`.
fn u_deriv_at_one(n: usize) -> f64 {
    let n = n as f64;
    n * (n + 1.0) * (n + 2.0) / 3.0
}

/// Second derivative `U''_n(1) = (n-1)n(n+1)(n+2)(n+3)/15`.
fn u_second_deriv_at_one(n: usize) -> f64 {
    let n = n as f64;
    (n - 1.0) * n * (n + 1.0) * (n + 2.0) * (n + 3.0) / 15.0
}

/// Derivative of `T_n` or `U_n` at a complex point.
///
/// `T'_n = n U_{n-1}`.  For the second kind the rational form
/// `U'_n(z) = ((n+1) T_{n+1}(z) - z U_n(z)) / (z² - 1)` is used away from
/// `±1`; within the guard radius the removable singularity is evaluated by
/// the first-order Taylor limit, so the result stays finite and continuous
/// across the seam.
pub fn cheb_deriv(kind: ChebKind, n: usize, z: Complex64) -> Complex64 {
    match kind {
        ChebKind::First => {
            if n == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                (n as f64) * cheb_eval(ChebKind::Second, n - 1, z)
            }
        }
        ChebKind::Second => {
            let near_plus = (z - 1.0).norm();
            let near_minus = (z + 1.0).norm();
            if near_plus.min(near_minus) < DERIV_GUARD {
                // U'_n(±1) plus the linear Taylor term; parity gives the
                // signs at -1.
                let d1 = u_deriv_at_one(n);
                let d2 = u_second_deriv_at_one(n);
                if near_plus < near_minus {
                    d1 + (z - 1.0) * d2
                } else {
                    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
                    -sign * d1 + (z + 1.0) * (sign * d2)
                }
            } else {
                let t_next = cheb_eval(ChebKind::First, n + 1, z);
                let u_n = cheb_eval(ChebKind::Second, n, z);
                (((n + 1) as f64) * t_next - z * u_n) / (z * z - 1.0)
            }
        }
    }
}

/// The roots of `T_n` or `U_n`, all simple and real.
#[derive(Debug, Clone)]
pub struct NodeSet {
    pub kind: ChebKind,
    pub degree: usize,
    /// Strictly decreasing, all in (-1, 1).
    pub nodes: Vec<f64>,
}

/// Roots of the degree-`n` polynomial of the given kind, in strictly
/// decreasing order (rightmost node first).
pub fn cheb_nodes(kind: ChebKind, n: usize) -> NodeSet {
    assert!(n >= 1, "cheb_nodes requires n >= 1");
    let nodes = (1..=n)
        .map(|k| match kind {
            ChebKind::First => ((2 * k - 1) as f64 * PI / (2 * n) as f64).cos(),
            ChebKind::Second => (k as f64 * PI / (n + 1) as f64).cos(),
        })
        .collect();
    NodeSet {
        kind,
        degree: n,
        nodes,
    }
}

/// Gauss–Chebyshev quadrature of `∫_{-1}^{1} f(x) w(x) dx` with
/// `w = 1/√(1-x²)` (first kind) or `w = √(1-x²)` (second kind).
///
/// Exact, up to rounding, for polynomial `f` of degree `≤ 2 n_nodes - 1`.
pub fn gauss_cheb_integrate<F>(kind: ChebKind, f: F, n_nodes: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    assert!(n_nodes >= 1, "quadrature requires at least one node");
    let n = n_nodes as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    match kind {
        ChebKind::First => {
            let w = PI / n;
            for k in 1..=n_nodes {
                let x = ((2 * k - 1) as f64 * PI / (2.0 * n)).cos();
                sum += w * f(x);
            }
        }
        ChebKind::Second => {
            for k in 1..=n_nodes {
                let theta = k as f64 * PI / (n + 1.0);
                let w = PI / (n + 1.0) * theta.sin() * theta.sin();
                sum += w * f(theta.cos());
            }
        }
    }
    sum
}
