//! Computable measures on the circle: finitely supported discrete measures,
//! trigonometric polynomials and decomposed sums `μ = μ_d + μ_c`.

mod discrete;
mod json;
mod sum;
mod trig;

pub use discrete::{Atom, DiscreteMeasure, Enclosure, Position};
pub use json::{AtomJson, MeasureJson, TermJson};
pub use sum::{convolve, involution, ContinuousPart, Measure, MeasureSum};
pub use trig::TrigPolynomial;

use crate::arith::{RealValue, Scalar};

/// Anything with a Fourier–Stieltjes transform `μ̂(n) = ∫ e^{−int} dμ(t)`.
pub trait FourierCoefficients {
    fn fourier_coefficient(&self, n: i64) -> Scalar;

    /// `|μ̂(n)|²`.
    fn coefficient_norm_sqr(&self, n: i64) -> RealValue {
        self.fourier_coefficient(n).norm_sqr()
    }
}

/// `μ̂(n)` for every supported measure kind.
pub fn fourier_coefficient<M: FourierCoefficients + ?Sized>(m: &M, n: i64) -> Scalar {
    m.fourier_coefficient(n)
}
