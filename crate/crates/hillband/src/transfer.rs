//! Transfer-matrix representation of `Hu = Eu`.
//!
//! One step of the difference equation is the matrix
//! `A_n(E) = [[E - V(n), -1], [1, 0]]`; the monodromy over one period is
//! the ordered product `Φ_L(E) = A_L(E) ⋯ A_1(E)` and its trace is the
//! Hill discriminant.  This module is the independent oracle against the
//! Chebyshev closed form in [`crate::discriminant`].

use crate::chebyshev::{cheb_eval, ChebKind};
use crate::error::Error;
use num_complex::Complex64;

/// Period-`L` potential with a single impurity value `v`, optionally
/// overridden by a general length-`L` sequence for cross-checks.
#[derive(Debug, Clone)]
pub struct Potential {
    period: usize,
    impurity: Complex64,
    /// Site (1-based) carrying the impurity in the sparse layout.
    layout: usize,
    general_values: Option<Vec<Complex64>>,
}

impl Potential {
    /// Sparse layout: `V(1) = v`, all other sites in the period zero.
    pub fn sparse(period: usize, impurity: Complex64) -> Self {
        assert!(period >= 1, "period must be at least 1");
        Potential {
            period,
            impurity,
            layout: 1,
            general_values: None,
        }
    }

    /// Sparse layout with the impurity at a chosen site in `1..=period`.
    pub fn sparse_at(period: usize, impurity: Complex64, site: usize) -> Result<Self, Error> {
        if site == 0 || site > period {
            return Err(Error::IndexOutOfRange {
                index: site,
                max: period,
            });
        }
        Ok(Potential {
            period,
            impurity,
            layout: site,
            general_values: None,
        })
    }

    /// General length-`L` complex sequence (cross-check plumbing; the
    /// closed-form modules only accept sparse potentials).
    pub fn general(values: Vec<Complex64>) -> Self {
        assert!(!values.is_empty(), "period must be at least 1");
        let period = values.len();
        Potential {
            period,
            impurity: values[0],
            layout: 1,
            general_values: Some(values),
        }
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn impurity(&self) -> Complex64 {
        self.impurity
    }

    pub fn is_sparse(&self) -> bool {
        self.general_values.is_none()
    }

    /// Potential value at site `n` in `1..=period`.
    pub fn value_at(&self, n: usize) -> Result<Complex64, Error> {
        if n == 0 || n > self.period {
            return Err(Error::IndexOutOfRange {
                index: n,
                max: self.period,
            });
        }
        Ok(match &self.general_values {
            Some(vals) => vals[n - 1],
            None => {
                if n == self.layout {
                    self.impurity
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
        })
    }
}

/// Row-major complex 2×2 matrix.  Products of step matrices keep
/// `|det - 1|` small because each factor has determinant exactly 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transfer2x2 {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Transfer2x2 {
    pub fn identity() -> Self {
        Transfer2x2 {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    pub fn mul(&self, rhs: &Transfer2x2) -> Transfer2x2 {
        Transfer2x2 {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }
}

/// One-step matrix `A_n(E) = [[E - V(n), -1], [1, 0]]`.
pub fn step_matrix(pot: &Potential, n: usize, energy: Complex64) -> Result<Transfer2x2, Error> {
    let v = pot.value_at(n)?;
    Ok(Transfer2x2 {
        a: energy - v,
        b: Complex64::new(-1.0, 0.0),
        c: Complex64::new(1.0, 0.0),
        d: Complex64::new(0.0, 0.0),
    })
}

/// Monodromy over one period: the ordered product `A_L(E) ⋯ A_1(E)`.
///
/// The product is accumulated in exactly this order, without
/// re-association, so results are bitwise reproducible.
pub fn monodromy(pot: &Potential, energy: Complex64) -> Transfer2x2 {
    let mut m = Transfer2x2::identity();
    for n in 1..=pot.period() {
        let a = step_matrix(pot, n, energy).expect("site index within period");
        m = a.mul(&m);
    }
    m
}

/// The Hill discriminant as the monodromy trace.
pub fn discriminant_via_transfer(pot: &Potential, energy: Complex64) -> Complex64 {
    monodromy(pot, energy).trace()
}

/// `tr(Φ₀(E)ⁿ)` by repeated matrix multiplication, where `Φ₀` is the free
/// one-step matrix `[[E, -1], [1, 0]]`.
///
/// Deliberately not the closed form `2 T_n(E/2)`: this is the oracle the
/// closed form is checked against (see [`power_trace_closed_form`]).
pub fn power_trace(n: usize, energy: Complex64) -> Complex64 {
    assert!(n >= 1, "power_trace requires n >= 1");
    let free = Potential::sparse(1, Complex64::new(0.0, 0.0));
    let phi0 = step_matrix(&free, 1, energy).unwrap();
    let mut m = phi0;
    for _ in 1..n {
        m = m.mul(&phi0);
    }
    m.trace()
}

/// The closed form `2 T_n(E/2)` paired with [`power_trace`].
pub fn power_trace_closed_form(n: usize, energy: Complex64) -> Complex64 {
    2.0 * cheb_eval(ChebKind::First, n, energy / 2.0)
}
