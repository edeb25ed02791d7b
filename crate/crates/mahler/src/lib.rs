//! Mahler measures of bivariate polynomials and the asymptotic expansion of
//! `Δₙ(P) = m(P(x,xⁿ)) − m(P(x,y))`.
//!
//! The difference of the two measures admits a pseudo-power-series expansion
//! `Δₙ(P) ~ Σ_{r≥2} c_r(n)/nʳ` whose coefficients are quasiperiodic in `n`
//! and expressible through polylogarithms evaluated at the isolated torus
//! zeros of `P`. This crate computes both sides:
//!
//! * [`measure`] — numerical Mahler measures: univariate via Jensen's
//!   formula, bivariate via root-function quadrature over the unit circle,
//!   the curve measure `m(P(x,xⁿ))` and `Δₙ(P)`.
//! * [`expansion`] — the coefficients `c_r(n)`: the general polylogarithm
//!   formula, the specialized formula for `1+x+y`, closed forms for `c₂`
//!   and `c₃`, partial sums and empirical verification with Richardson
//!   extrapolation.
//! * [`rootengine`] — root functions of `P` on the unit circle: trajectory
//!   tracking, the exceptional set of isolated torus zeros, implicit
//!   derivatives and the algebraic sign determination.
//! * [`exactalg`] — the exact integer combinatorics backing everything:
//!   Stirling numbers, partial Bell polynomials, and the integer polynomial
//!   families `Phi[n,k]`, `Q[n]`, `Psi[r,a]`.
//! * [`bivar`] — exact bivariate polynomial algebra over Gaussian
//!   rationals: derivatives, reciprocal polynomials, resultants.
//! * [`numerics`] — configurable-precision complex arithmetic, polynomial
//!   root finding, and polylogarithms on the closed unit disk.
//!
//! See the `examples/` directory for runnable entry points covering each
//! capability, and the `mahler` binary for the command-line interface.

pub mod bivar;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod expansion;
pub mod measure;
pub mod numerics;
pub mod rootengine;

pub use bivar::{BiPoly, GaussRational, UniPoly};
pub use error::Error;
pub use exactalg::IntPoly;
// pub use expansion::{CoefficientTable, Expansion};
// pub use measure::{MeasureCfg, MeasureResult};
pub use numerics::{BigComplex, RootSet};
// pub use rootengine::ExceptionalPoint;
