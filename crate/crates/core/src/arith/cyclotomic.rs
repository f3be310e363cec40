//! Exact arithmetic in the cyclotomic fields `Q(ζ_N)`.
//!
//! Only the masses of coset idempotents need this tier: the atom masses
//! `(1/q)·Σ_r ζ_q^{jr}` leave the Gaussian rationals as soon as `q ∉ {1, 2, 4}`.
//! Elements are kept in the power basis `1, ζ, …, ζ^{φ(N)−1}` modulo `Φ_N`, which is a
//! canonical form, so equality is decided exactly.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::approx::{ApproxComplex, ULP_SLACK};
use super::complex::ComplexRational;
use super::rational::{rational_to_f64, Rational};

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n − 1 = Π_{d | n} Φ_d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// An element of `Q(ζ_N)` with `ζ_N = exp(2πi/N)`.
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        let d = cyclotomic_polynomial(order).len() - 1;
        Cyclotomic {
            order,
            coeffs: vec![Rational::zero(); d],
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coordinates.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_power(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::from_integer(1.into());
        Self::from_poly(order, poly)
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        Self::from_poly(order, vec![r])
    }

    /// Embeds a Gaussian rational; the order is raised to a multiple of 4 when needed.
    pub fn from_complex_rational(order: u32, c: &ComplexRational) -> Self {
        if c.im.is_zero() {
            return Self::from_rational(order, c.re.clone());
        }
        let order = order.lcm(&4);
        let i = Self::zeta_power(order, order as i64 / 4);
        Self::from_rational(order, c.re.clone()).add(&i.scale(&c.im))
    }

    fn from_poly(order: u32, mut poly: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let d = phi.len() - 1;
        for top in (d..poly.len()).rev() {
            let c = std::mem::take(&mut poly[top]);
            if c.is_zero() {
                continue;
            }
            // x^top = x^{top−d}·(x^d) and x^d ≡ −Σ_{j<d} φ_j x^j
            for (j, &pj) in phi[..d].iter().enumerate() {
                if pj != 0 {
                    poly[top - d + j] -= &c * Rational::from_integer(pj.into());
                }
            }
        }
        poly.resize(d, Rational::zero());
        Cyclotomic {
            order,
            coeffs: poly,
        }
    }

    /// The same number viewed in `Q(ζ_to)`; `to` must be a multiple of the current order.
    pub fn lift(&self, to: u32) -> Self {
        assert!(to % self.order == 0, "cannot lift Q(ζ_{}) to Q(ζ_{to})", self.order);
        if to == self.order {
            return self.clone();
        }
        let step = (to / self.order) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        Self::from_poly(to, poly)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let l = self.order.lcm(&other.order);
        (self.lift(l), other.lift(l))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyclotomic {
            order: a.order,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let mut poly = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Self::from_poly(a.order, poly)
    }

    /// Complex conjugate: `ζ ↦ ζ^{−1}`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut poly = vec![Rational::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[(n - j) % n] += c;
        }
        Self::from_poly(self.order, poly)
    }

    /// The value as a Gaussian rational, when it is one.
    pub fn as_complex_rational(&self) -> Option<ComplexRational> {
        let order = self.order.lcm(&4);
        let me = self.lift(order);
        let i = Self::zeta_power(order, order as i64 / 4);
        let (k, ik) = i
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| !c.is_zero())
            .expect("i is irrational over Q");
        let im = &me.coeffs[k] / ik;
        let re = &me.coeffs[0] - &im * &i.coeffs[0];
        let candidate = Self::from_complex_rational(order, &ComplexRational::new(re.clone(), im.clone()));
        (candidate.coeffs == me.coeffs).then(|| ComplexRational::new(re, im))
    }

    pub fn to_approx(&self) -> ApproxComplex {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        let mut mass = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = rational_to_f64(c);
            let theta = TAU * j as f64 / n;
            re += v * theta.cos();
            im += v * theta.sin();
            mass += v.abs();
        }
        let terms = self.coeffs.len().max(1) as f64;
        ApproxComplex::new(re, im, 8.0 * ULP_SLACK * mass * terms)
    }

    pub fn is_real(&self) -> bool {
        self == &self.conj()
    }

    pub fn has_negative_coeff(&self) -> bool {
        self.coeffs.iter().any(Signed::is_negative)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn known_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for q in 2..=12u32 {
            let mut s = Cyclotomic::zero(q);
            for k in 0..q as i64 {
                s = s.add(&Cyclotomic::zeta_power(q, k));
            }
            assert!(s.is_zero(), "q = {q}");
        }
    }

    #[test]
    fn gaussian_rationals_are_recognized() {
        let z8 = Cyclotomic::zeta_power(8, 1);
        // ζ_8² = i
        let i = z8.mul(&z8).as_complex_rational().unwrap();
        assert_eq!(i, ComplexRational::i());
        assert!(z8.as_complex_rational().is_none());
        // ζ_3 + ζ_3^{-1} = −1
        let z3 = Cyclotomic::zeta_power(3, 1);
        assert_eq!(z3.add(&z3.conj()).as_complex_rational(), Some(ComplexRational::real(rat(-1, 1))));
    }

    #[test]
    fn equality_across_orders() {
        let a = Cyclotomic::zeta_power(3, 1);
        let b = Cyclotomic::zeta_power(6, 2);
        assert_eq!(a, b);
        let c = Cyclotomic::from_complex_rational(3, &ComplexRational::new(rat(1, 2), rat(1, 3)));
        assert_eq!(c.as_complex_rational().unwrap(), ComplexRational::new(rat(1, 2), rat(1, 3)));
    }

    #[test]
    fn approximation_matches_definition() {
        let z = Cyclotomic::zeta_power(7, 3).scale(&rat(2, 1));
        let a = z.to_approx();
        let theta = TAU * 3.0 / 7.0;
        assert!((a.re - 2.0 * theta.cos()).abs() <= a.err.max(1e-15));
        assert!((a.im - 2.0 * theta.sin()).abs() <= a.err.max(1e-15));
    }
}
