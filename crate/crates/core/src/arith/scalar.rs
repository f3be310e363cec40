use std::fmt;

use num_traits::{Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::approx::{ApproxComplex, ULP_SLACK};
use super::complex::ComplexRational;
use super::cyclotomic::Cyclotomic;
use super::rational::{format_rational, rational_to_f64, Rational};

/// A complex value from one of the two numeric tiers.
///
/// `Exact` and `Cyclotomic` form the exact tier; operations between exact operands stay
/// exact, anything touching `Approx` degrades to an error-tracked float.
#[derive(Debug, Clone)]
pub enum Scalar {
    Exact(ComplexRational),
    Cyclotomic(Cyclotomic),
    Approx(ApproxComplex),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(ComplexRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(ComplexRational::one())
    }

    pub fn rational(r: Rational) -> Self {
        Scalar::Exact(ComplexRational::real(r))
    }

    /// Folds a cyclotomic value back to a Gaussian rational when possible.
    pub fn normalized(self) -> Self {
        match self {
            Scalar::Cyclotomic(c) => match c.as_complex_rational() {
                Some(g) => Scalar::Exact(g),
                None => Scalar::Cyclotomic(c),
            },
            other => other,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Approx(_))
    }

    /// Zero in the exact sense: exact zero, or a float with zero value and zero error.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(c) => c.is_zero(),
            Scalar::Cyclotomic(c) => c.is_zero(),
            Scalar::Approx(a) => a.re == 0.0 && a.im == 0.0 && a.err == 0.0,
        }
    }

    pub fn as_exact(&self) -> Option<&ComplexRational> {
        match self {
            Scalar::Exact(c) => Some(c),
            _ => None,
        }
    }

    pub fn to_approx(&self) -> ApproxComplex {
        match self {
            Scalar::Exact(c) => ApproxComplex::from_complex_rational(c),
            Scalar::Cyclotomic(c) => c.to_approx(),
            Scalar::Approx(a) => *a,
        }
    }

    fn to_cyclotomic(&self, order: u32) -> Option<Cyclotomic> {
        match self {
            Scalar::Exact(c) => Some(Cyclotomic::from_complex_rational(order, c)),
            Scalar::Cyclotomic(c) => Some(c.clone()),
            Scalar::Approx(_) => None,
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            (Scalar::Approx(_), _) | (_, Scalar::Approx(_)) => {
                Scalar::Approx(self.to_approx().add(&rhs.to_approx()))
            }
            _ => self.cyclotomic_op(rhs, Cyclotomic::add),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            (Scalar::Approx(_), _) | (_, Scalar::Approx(_)) => {
                Scalar::Approx(self.to_approx().mul(&rhs.to_approx()))
            }
            _ => self.cyclotomic_op(rhs, Cyclotomic::mul),
        }
    }

    fn cyclotomic_op(&self, rhs: &Scalar, op: fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Scalar {
        let order = match (self, rhs) {
            (Scalar::Cyclotomic(c), _) | (_, Scalar::Cyclotomic(c)) => c.order(),
            _ => 1,
        };
        let a = self.to_cyclotomic(order).expect("exact operand");
        let b = rhs.to_cyclotomic(order).expect("exact operand");
        Scalar::Cyclotomic(op(&a, &b)).normalized()
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(c) => Scalar::Exact(-c),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.neg()),
            Scalar::Approx(a) => Scalar::Approx(a.neg()),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(c) => Scalar::Exact(c.conj()),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.conj()),
            Scalar::Approx(a) => Scalar::Approx(a.conj()),
        }
    }

    /// `|z|²`.
    pub fn norm_sqr(&self) -> RealValue {
        match self {
            Scalar::Exact(c) => RealValue::Exact(c.norm_sqr()),
            Scalar::Cyclotomic(c) => {
                let n = c.mul(&c.conj());
                match n.as_complex_rational() {
                    Some(g) => RealValue::Exact(g.re),
                    None => RealValue::from_approx_norm_sqr(&c.to_approx()),
                }
            }
            Scalar::Approx(a) => RealValue::from_approx_norm_sqr(a),
        }
    }

    /// `|z|` with an error bound.
    pub fn modulus(&self) -> (f64, f64) {
        let a = self.to_approx();
        (a.abs(), a.abs_err())
    }

    /// Exact equality; `None` when either side is a float.
    pub fn exact_eq(&self, rhs: &Scalar) -> Option<bool> {
        if !self.is_exact() || !rhs.is_exact() {
            return None;
        }
        Some(self.sub(rhs).is_zero())
    }
}

impl From<ComplexRational> for Scalar {
    fn from(c: ComplexRational) -> Self {
        Scalar::Exact(c)
    }
}

impl From<ApproxComplex> for Scalar {
    fn from(a: ApproxComplex) -> Self {
        Scalar::Approx(a)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::rational(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(c) => write!(f, "{c}"),
            Scalar::Cyclotomic(c) => write!(f, "{}", c.to_approx()),
            Scalar::Approx(a) => write!(f, "{a}"),
        }
    }
}

/// A real value from either tier.
#[derive(Debug, Clone, PartialEq)]
pub enum RealValue {
    Exact(Rational),
    Approx { value: f64, err: f64 },
}

impl RealValue {
    fn from_approx_norm_sqr(a: &ApproxComplex) -> RealValue {
        let r = a.abs();
        let value = r * r;
        // |(r+e)² − r²| = 2re + e²
        let err = 2.0 * r * a.err + a.err * a.err + ULP_SLACK * value;
        RealValue::Approx { value, err }
    }

    pub fn zero() -> Self {
        RealValue::Exact(Rational::zero())
    }

    pub fn value(&self) -> f64 {
        match self {
            RealValue::Exact(r) => rational_to_f64(r),
            RealValue::Approx { value, .. } => *value,
        }
    }

    /// Error bound of [`value`](Self::value) as an enclosure of the true number.
    pub fn err(&self) -> f64 {
        match self {
            RealValue::Exact(r) => f64::EPSILON * rational_to_f64(r).abs(),
            RealValue::Approx { err, .. } => *err,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            RealValue::Exact(r) => Some(r),
            RealValue::Approx { .. } => None,
        }
    }

    pub fn add(&self, rhs: &RealValue) -> RealValue {
        match (self, rhs) {
            (RealValue::Exact(a), RealValue::Exact(b)) => RealValue::Exact(a + b),
            _ => {
                let value = self.value() + rhs.value();
                RealValue::Approx {
                    value,
                    err: self.err() + rhs.err() + ULP_SLACK * value.abs(),
                }
            }
        }
    }

    pub fn scale(&self, k: &Rational) -> RealValue {
        match self {
            RealValue::Exact(a) => RealValue::Exact(a * k),
            RealValue::Approx { value, err } => {
                let kf = rational_to_f64(k);
                let v = value * kf;
                RealValue::Approx {
                    value: v,
                    err: err * kf.abs() + ULP_SLACK * v.abs(),
                }
            }
        }
    }

    /// `|self − other|` as a float with error bound.
    pub fn abs_diff(&self, other: &RealValue) -> (f64, f64) {
        match (self, other) {
            (RealValue::Exact(a), RealValue::Exact(b)) => {
                let d = (a - b).abs();
                let v = rational_to_f64(&d);
                (v, f64::EPSILON * v)
            }
            _ => {
                let v = (self.value() - other.value()).abs();
                (v, self.err() + other.err() + ULP_SLACK * v)
            }
        }
    }
}

impl fmt::Display for RealValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealValue::Exact(r) => write!(f, "{}", format_rational(r)),
            RealValue::Approx { value, err } => write!(f, "{value:.17e} ± {err:.3e}"),
        }
    }
}

/// Exact values serialize as `{"exact": "p/q", "value": f}`, floats as `{"value", "err"}`.
impl Serialize for RealValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RealValue::Exact(r) => {
                let mut st = s.serialize_struct("RealValue", 2)?;
                st.serialize_field("exact", &format_rational(r))?;
                st.serialize_field("value", &rational_to_f64(r))?;
                st.end()
            }
            RealValue::Approx { value, err } => {
                let mut st = s.serialize_struct("RealValue", 2)?;
                st.serialize_field("value", value)?;
                st.serialize_field("err", err)?;
                st.end()
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let a = self.to_approx();
        match self.clone().normalized() {
            Scalar::Exact(c) => {
                let mut st = s.serialize_struct("Scalar", 3)?;
                st.serialize_field("exact", &c.to_string())?;
                st.serialize_field("re", &a.re)?;
                st.serialize_field("im", &a.im)?;
                st.end()
            }
            _ => {
                let mut st = s.serialize_struct("Scalar", 3)?;
                st.serialize_field("re", &a.re)?;
                st.serialize_field("im", &a.im)?;
                st.serialize_field("err", &a.err)?;
                st.end()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn exact_tier_is_closed() {
        let half = Scalar::rational(rat(1, 2));
        let z3 = Scalar::Cyclotomic(Cyclotomic::zeta_power(3, 1));
        // ζ + ζ̄ = −1
        let s = z3.add(&z3.conj());
        assert_eq!(s.as_exact(), Some(&ComplexRational::real(rat(-1, 1))));
        let p = half.mul(&z3);
        assert!(p.is_exact());
        assert_eq!(p.norm_sqr(), RealValue::Exact(rat(1, 4)));
    }

    #[test]
    fn approx_contaminates() {
        let a = Scalar::Approx(ApproxComplex::exact(1.0, 0.0));
        let b = Scalar::rational(rat(1, 3));
        assert!(!a.add(&b).is_exact());
        assert_eq!(a.exact_eq(&b), None);
    }
}
