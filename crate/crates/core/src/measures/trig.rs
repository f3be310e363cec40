use std::collections::BTreeMap;

use super::FourierCoefficients;
use crate::arith::{ApproxComplex, Scalar};

/// `P(t) = Σ_n c_n e^{int}` viewed as the measure `P(t) dt/2π`, so `μ̂(n) = c_n`.
///
/// Exactly-zero coefficients are never stored; the support is the key set.
#[derive(Debug, Clone, Default)]
pub struct TrigPolynomial {
    coeffs: BTreeMap<i64, Scalar>,
}

impl TrigPolynomial {
    pub fn zero() -> Self {
        TrigPolynomial::default()
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut map: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (n, c) in coeffs {
            let slot = map.entry(n).or_insert_with(Scalar::zero);
            *slot = slot.add(&c);
        }
        map.retain(|_, c| !c.is_zero());
        TrigPolynomial { coeffs: map }
    }

    pub fn coefficient(&self, n: i64) -> Scalar {
        self.coeffs.get(&n).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn support(&self) -> Vec<i64> {
        self.coeffs.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.values().all(Scalar::is_exact)
    }

    /// Coefficientwise product over the common support (the transform of the convolution).
    pub fn convolve(&self, other: &TrigPolynomial) -> TrigPolynomial {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        TrigPolynomial::from_coeffs(
            small
                .iter()
                .filter_map(|(n, c)| large.coeffs.get(&n).map(|d| (n, c.mul(d)))),
        )
    }

    /// Coefficient at `n` becomes its conjugate.
    pub fn involution(&self) -> TrigPolynomial {
        TrigPolynomial::from_coeffs(self.iter().map(|(n, c)| (n, c.conj())))
    }

    /// Largest coefficient modulus, with error bound (the sup of the transform).
    pub fn sup_modulus(&self) -> (f64, f64) {
        self.coeffs
            .values()
            .map(Scalar::modulus)
            .fold((0.0, 0.0), |acc, m| if m.0 > acc.0 { m } else { acc })
    }

    /// The density `P(t)` at `t` radians.
    pub fn evaluate(&self, t: f64) -> ApproxComplex {
        self.iter().fold(ApproxComplex::ZERO, |acc, (n, c)| {
            let theta = n as f64 * t;
            let e = ApproxComplex::new(
                theta.cos(),
                theta.sin(),
                4.0 * f64::EPSILON * (theta.abs() + 1.0),
            );
            acc.add(&c.to_approx().mul(&e))
        })
    }
}

impl FourierCoefficients for TrigPolynomial {
    fn fourier_coefficient(&self, n: i64) -> Scalar {
        self.coefficient(n)
    }
}
