//! Spectrum of the one-dimensional discrete Schrödinger operator
//! `(Hu)(n) = u(n+1) + u(n-1) + V(n)u(n)` with a complex-valued sparse
//! periodic potential: period `L`, a single impurity value `v` per period.
//!
//! The Hill discriminant of this operator has the closed form
//!
//! ```text
//! Δ_L(E) = 2 T_L(E/2) - v U_{L-1}(E/2)
//! ```
//!
//! in terms of Chebyshev polynomials of the first and second kind.  The
//! spectrum is the preimage `σ(H) = {E ∈ ℂ : Δ_L(E) ∈ [-2, 2]}` and the
//! Floquet spectrum is the level set `Δ_L(E) = 2 cos κ`.
//!
//! Module map:
//! - [`chebyshev`]: stable evaluation of `T_n`, `U_n`, their derivatives,
//!   roots and Gauss–Chebyshev quadrature over complex arguments.
//! - [`transfer`]: transfer matrices and the monodromy trace, the
//!   independent oracle for the closed form.
//! - [`discriminant`]: the closed form, its derivative and first-order
//!   Taylor data at the distinguished real points.
//! - [`floquet`]: simultaneous root solver for `Δ_L(E) = 2 cos κ`,
//!   spectral-arc tracing and real band structures.
//! - [`perturbation`]: first-order root shifts and the small-/large-`|v|`
//!   Floquet approximations.
//! - [`identities`]: quadrature verification of the exact integral and
//!   trace identities.
//! - [`plot`]: marching-squares contour extraction and SVG output.
//! - [`cli`]: the `hillband` command-line surface.

pub mod chebyshev;
pub mod cli;
pub mod discriminant;
pub mod error;
pub mod floquet;
pub mod identities;
pub mod perturbation;
pub mod plot;
pub mod transfer;

pub use error::Error;
