use std::fmt;

use super::complex::ComplexRational;

/// Rounding slack charged per floating operation: 4 ulp relative to the magnitudes involved.
pub const ULP_SLACK: f64 = 4.0 * f64::EPSILON;

/// A floating complex value together with an absolute error bound.
///
/// The true value lies within `err` of `(re, im)` in the complex modulus.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ApproxComplex {
    pub re: f64,
    pub im: f64,
    pub err: f64,
}

impl ApproxComplex {
    pub fn new(re: f64, im: f64, err: f64) -> Self {
        debug_assert!(err >= 0.0, "negative error bound");
        ApproxComplex { re, im, err }
    }

    pub const fn exact(re: f64, im: f64) -> Self {
        ApproxComplex { re, im, err: 0.0 }
    }

    pub const ZERO: ApproxComplex = ApproxComplex::exact(0.0, 0.0);
    pub const ONE: ApproxComplex = ApproxComplex::exact(1.0, 0.0);

    pub fn from_complex_rational(c: &ComplexRational) -> Self {
        let (re, im) = c.to_f64_pair();
        // conversion rounds each part by at most half an ulp
        ApproxComplex::new(re, im, f64::EPSILON * (re.abs() + im.abs()))
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    /// Bound on the rounding committed when computing [`abs`](Self::abs).
    pub fn abs_err(&self) -> f64 {
        self.err + ULP_SLACK * self.abs()
    }

    pub fn add(&self, rhs: &ApproxComplex) -> ApproxComplex {
        let re = self.re + rhs.re;
        let im = self.im + rhs.im;
        ApproxComplex::new(re, im, self.err + rhs.err + ULP_SLACK * (re.abs() + im.abs()))
    }

    pub fn sub(&self, rhs: &ApproxComplex) -> ApproxComplex {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> ApproxComplex {
        ApproxComplex::new(-self.re, -self.im, self.err)
    }

    pub fn conj(&self) -> ApproxComplex {
        ApproxComplex::new(self.re, -self.im, self.err)
    }

    pub fn mul(&self, rhs: &ApproxComplex) -> ApproxComplex {
        let (a, b, c, d) = (self.re, self.im, rhs.re, rhs.im);
        let re = a * c - b * d;
        let im = a * d + b * c;
        let magnitudes = (a * c).abs() + (b * d).abs() + (a * d).abs() + (b * c).abs();
        let err = self.abs() * rhs.err
            + rhs.abs() * self.err
            + self.err * rhs.err
            + ULP_SLACK * magnitudes;
        ApproxComplex::new(re, im, err)
    }

    pub fn scale(&self, k: f64) -> ApproxComplex {
        let re = self.re * k;
        let im = self.im * k;
        ApproxComplex::new(re, im, self.err * k.abs() + ULP_SLACK * (re.abs() + im.abs()))
    }

    /// `exp(z)`, with the error bound `|exp(z)|·(e^err − 1)` plus rounding.
    pub fn exp(&self) -> ApproxComplex {
        let m = self.re.exp();
        let re = m * self.im.cos();
        let im = m * self.im.sin();
        // exp is e^{|Re z|+err}-Lipschitz on the err-disk around z
        let propagated = m * (self.err.exp() - 1.0);
        // relative rounding of exp, cos, sin and the products, plus the argument size
        let rounding = 4.0 * ULP_SLACK * m * (1.0 + self.im.abs() + self.re.abs());
        ApproxComplex::new(re, im, propagated + rounding)
    }

    /// Principal logarithm with imaginary part in `(−π, π]`.
    ///
    /// Returns `None` when the error disk may contain the origin.
    pub fn ln(&self) -> Option<ApproxComplex> {
        let r = self.abs();
        if r <= self.err {
            return None;
        }
        let mut arg = self.im.atan2(self.re);
        if arg <= -std::f64::consts::PI {
            arg = std::f64::consts::PI;
        }
        let re = r.ln();
        // |log w − log z| ≤ |w − z| / (|z| − |w − z|) along the segment, away from the cut
        let propagated = self.err / (r - self.err);
        let rounding = ULP_SLACK * (re.abs() + arg.abs() + 1.0);
        Some(ApproxComplex::new(re, arg, propagated + rounding))
    }

    /// Distance to `other` minus both error bounds (a certified lower bound), floored at 0.
    pub fn certified_distance_lower(&self, other: &ApproxComplex) -> f64 {
        let d = (self.re - other.re).hypot(self.im - other.im);
        (d - self.err - other.err - ULP_SLACK * d).max(0.0)
    }

    /// Distance to `other` plus both error bounds (a certified upper bound).
    pub fn certified_distance_upper(&self, other: &ApproxComplex) -> f64 {
        let d = (self.re - other.re).hypot(self.im - other.im);
        d + self.err + other.err + ULP_SLACK * d
    }
}

impl fmt::Display for ApproxComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.17e}, {:.17e}) ± {:.3e}", self.re, self.im, self.err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_tracks_error() {
        let a = ApproxComplex::new(1.0, 0.0, 1e-3);
        let b = ApproxComplex::new(0.0, 2.0, 1e-3);
        let c = a.mul(&b);
        assert_eq!((c.re, c.im), (0.0, 2.0));
        assert!(c.err >= 1e-3 * 2.0 + 1e-3 + 1e-6);
    }

    #[test]
    fn ln_is_principal() {
        let z = ApproxComplex::exact(-1.0, -0.0);
        let l = z.ln().unwrap();
        assert_eq!(l.im, std::f64::consts::PI);
        assert!(ApproxComplex::new(1e-3, 0.0, 1e-2).ln().is_none());
    }

    #[test]
    fn exp_of_log_round_trips() {
        let z = ApproxComplex::exact(0.3, -2.5);
        let back = z.ln().unwrap().exp();
        assert!(back.certified_distance_lower(&z) == 0.0);
        assert!((back.re - z.re).abs() < 1e-15 && (back.im - z.im).abs() < 1e-15);
    }
}
