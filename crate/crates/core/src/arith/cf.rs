//! Continued-fraction convergents.
//!
//! The expansion runs on the exact dyadic value of the `f64`, so partial quotients
//! are not polluted by floating error accumulated along the recursion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The first `count` convergents `p/q` of `x > 0`, fewer if the expansion terminates
/// or a convergent no longer fits in `i64`.
pub fn convergents(x: f64, count: usize) -> Result<Vec<(i64, i64)>> {
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite value {x}")));
    }
    if x <= 0.0 {
        return Err(Error::InvalidInput(format!("convergents need x > 0, got {x}")));
    }
    if count == 0 {
        return Err(Error::InvalidInput("count must be at least 1".into()));
    }
    let exact = BigRational::from_float(x).expect("finite");
    Ok(expand(exact).take(count).collect())
}

fn expand(x: BigRational) -> impl Iterator<Item = (i64, i64)> {
    let mut rest = Some(x);
    // (p_{k−1}, q_{k−1}), (p_{k−2}, q_{k−2})
    let mut prev = (BigInt::one(), BigInt::zero());
    let mut prev2 = (BigInt::zero(), BigInt::one());
    std::iter::from_fn(move || {
        let r = rest.take()?;
        let a = r.floor();
        let frac = &r - &a;
        let a = a.to_integer();
        let p = &a * &prev.0 + &prev2.0;
        let q = &a * &prev.1 + &prev2.1;
        if !frac.is_zero() {
            rest = Some(frac.recip());
        }
        prev2 = std::mem::replace(&mut prev, (p.clone(), q.clone()));
        Some((p.to_i64()?, q.to_i64()?))
    })
}

/// The first convergent `p/q` of `x` with `q ≤ max_den` and `|q·x − p| ≤ tol`.
///
/// A hit means `x` is indistinguishable from a rational of small height at that tolerance.
pub fn rational_approximation(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some((0, 1));
    }
    let sign = if x < 0.0 { -1 } else { 1 };
    let exact = BigRational::from_float(x.abs()).expect("finite");
    for (p, q) in expand(exact.clone()) {
        if q > max_den {
            break;
        }
        let residual = (&exact * BigRational::from_integer(q.into())
            - BigRational::from_integer(p.into()))
        .abs();
        if residual.to_f64().unwrap_or(f64::INFINITY) <= tol {
            let g = p.gcd(&q);
            return Some((sign * p / g, q / g));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_pi() {
        let c = convergents(std::f64::consts::TAU, 4).unwrap();
        assert_eq!(c, vec![(6, 1), (19, 3), (25, 4), (44, 7)]);
    }

    #[test]
    fn rational_inputs_terminate() {
        assert_eq!(convergents(1.0, 1).unwrap(), vec![(1, 1)]);
        assert_eq!(convergents(1.5, 2).unwrap(), vec![(1, 1), (3, 2)]);
        assert_eq!(convergents(1.5, 10).unwrap(), vec![(1, 1), (3, 2)]);
    }

    #[test]
    fn bad_inputs() {
        assert!(convergents(f64::NAN, 3).is_err());
        assert!(convergents(f64::INFINITY, 3).is_err());
        assert!(convergents(-1.0, 3).is_err());
        assert!(convergents(2.0, 0).is_err());
    }

    #[test]
    fn rationality_detection() {
        use std::f64::consts::PI;
        assert_eq!(rational_approximation((PI / 2.0) / PI, 1_000_000, 1e-12), Some((1, 2)));
        assert_eq!(rational_approximation(-2.0 / 3.0, 1_000_000, 1e-12), Some((-2, 3)));
        assert_eq!(rational_approximation(1.0 / PI, 1_000_000, 1e-12), None);
        assert_eq!(rational_approximation(2.0_f64.sqrt(), 1_000_000, 1e-12), None);
    }
}
