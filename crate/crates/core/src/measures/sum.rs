use super::{DiscreteMeasure, FourierCoefficients, TrigPolynomial};
use crate::arith::{RealValue, Scalar};
use crate::lacunary::RieszProductSpec;

/// A continuous summand: a trigonometric polynomial or a (truncated) Riesz product.
#[derive(Debug, Clone)]
pub enum ContinuousPart {
    Trig(TrigPolynomial),
    Riesz(RieszProductSpec),
}

impl FourierCoefficients for ContinuousPart {
    fn fourier_coefficient(&self, n: i64) -> Scalar {
        match self {
            ContinuousPart::Trig(p) => p.fourier_coefficient(n),
            ContinuousPart::Riesz(r) => r.fourier_coefficient(n),
        }
    }
}

/// `μ = μ_d + μ_c` with the split fixed by construction.
#[derive(Debug, Clone, Default)]
pub struct MeasureSum {
    pub discrete: DiscreteMeasure,
    pub continuous: Vec<ContinuousPart>,
}

impl MeasureSum {
    pub fn new(discrete: DiscreteMeasure, continuous: Vec<ContinuousPart>) -> Self {
        MeasureSum {
            discrete,
            continuous,
        }
    }

    pub fn discrete(discrete: DiscreteMeasure) -> Self {
        MeasureSum::new(discrete, Vec::new())
    }

    pub fn continuous(parts: Vec<ContinuousPart>) -> Self {
        MeasureSum::new(DiscreteMeasure::zero(), parts)
    }

    /// The stored components, unchanged.
    pub fn decompose(&self) -> (&DiscreteMeasure, &[ContinuousPart]) {
        (&self.discrete, &self.continuous)
    }

    /// Transform of the continuous part alone, `μ̂_c(n)`.
    pub fn continuous_coefficient(&self, n: i64) -> Scalar {
        self.continuous
            .iter()
            .fold(Scalar::zero(), |acc, p| acc.add(&p.fourier_coefficient(n)))
    }
}

impl FourierCoefficients for MeasureSum {
    fn fourier_coefficient(&self, n: i64) -> Scalar {
        self.discrete
            .fourier_coefficient(n)
            .add(&self.continuous_coefficient(n))
            .normalized()
    }

    fn coefficient_norm_sqr(&self, n: i64) -> RealValue {
        if self.continuous.is_empty() {
            self.discrete.coefficient_norm_sqr(n)
        } else {
            self.fourier_coefficient(n).norm_sqr()
        }
    }
}

/// A measure in one of the two convolution-closed representations.
#[derive(Debug, Clone)]
pub enum Measure {
    Discrete(DiscreteMeasure),
    Trig(TrigPolynomial),
}

impl FourierCoefficients for Measure {
    fn fourier_coefficient(&self, n: i64) -> Scalar {
        match self {
            Measure::Discrete(d) => d.fourier_coefficient(n),
            Measure::Trig(p) => p.fourier_coefficient(n),
        }
    }
}

/// Convolution. Discrete ∗ discrete stays discrete; as soon as a trigonometric polynomial
/// is involved the result is the polynomial with coefficients `â(n)·b̂(n)`.
pub fn convolve(a: &Measure, b: &Measure) -> Measure {
    match (a, b) {
        (Measure::Discrete(x), Measure::Discrete(y)) => Measure::Discrete(x.convolve(y)),
        (Measure::Trig(p), Measure::Trig(r)) => Measure::Trig(p.convolve(r)),
        (Measure::Discrete(d), Measure::Trig(p)) | (Measure::Trig(p), Measure::Discrete(d)) => {
            Measure::Trig(TrigPolynomial::from_coeffs(
                p.iter().map(|(n, c)| (n, d.fourier_coefficient(n).mul(c))),
            ))
        }
    }
}

pub fn involution(m: &Measure) -> Measure {
    match m {
        Measure::Discrete(d) => Measure::Discrete(d.involution()),
        Measure::Trig(p) => Measure::Trig(p.involution()),
    }
}
