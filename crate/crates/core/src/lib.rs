//! Exact and error-tracked computations in the measure algebra of the circle group.
//!
//! The crate models a computable fragment of `M(T)`:
//!
//! * [`arith`]: exact rationals, Gaussian rationals, cyclotomic numbers, rational
//!   angles, error-tracked floating complex values and continued fractions.
//! * [`measures`]: finitely supported discrete measures, trigonometric polynomials and
//!   their sums, with convolution, involution and Fourier–Stieltjes coefficients.
//! * [`lacunary`]: lacunary sequences, signed-digit representations, tilde sets,
//!   Riesz products and almost-disjoint index families.
//! * [`analysis`]: Wiener averages, epsilon-period search, bounded logarithms and the
//!   step-sequence density gap.
//! * [`gelfand`]: idempotents, spectra of trigonometric polynomials, spectral-radius
//!   bounds, natural-spectrum gaps, the exponential obstruction and filter limits.
//! * [`experiments`]: the batch runners behind the `cml` command line tool.

pub mod analysis;
pub mod arith;
pub mod error;
pub mod experiments;
pub mod gelfand;
pub mod lacunary;
pub mod limits;
pub mod measures;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::Verdict;
