use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;

use num_integer::Integer;

use super::approx::ApproxComplex;
use super::complex::ComplexRational;
use super::rational::rat;
use crate::error::{Error, Result};

/// A point `2π·p/q` of the circle, stored as the reduced fraction of a full turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TurnAngle {
    p: i64,
    q: i64,
}

/// Reduced representative of `(p mod q)/q`.
pub fn reduce_angle(p: i64, q: i64) -> Result<TurnAngle> {
    if q <= 0 {
        return Err(Error::InvalidAngle(q));
    }
    let r = p.rem_euclid(q);
    let g = r.gcd(&q);
    Ok(TurnAngle { p: r / g, q: q / g })
}

/// Error bound for a non-quarter-turn evaluation of `exp(−2πi·r/q)`.
///
/// The argument is reduced to `[−π, π]` before `sin`/`cos`, so it carries a relative
/// rounding of a few ulp on a magnitude of at most π.
const ROOT_EVAL_ERR: f64 = 16.0 * f64::EPSILON;

/// `exp(−2πi·n·a)`, exact (err 0) when `n·a` is a multiple of a quarter turn.
pub fn root_of_unity(a: TurnAngle, n: i64) -> ApproxComplex {
    match a.quarter_turns(n) {
        Some(k) => {
            let (re, im) = QUARTERS[k];
            ApproxComplex::exact(re, im)
        }
        None => {
            let (r, q) = a.character_exponent(n);
            let turns = if 2 * r > q {
                (r - q) as f64 / q as f64
            } else {
                r as f64 / q as f64
            };
            let theta = -TAU * turns;
            ApproxComplex::new(theta.cos(), theta.sin(), ROOT_EVAL_ERR)
        }
    }
}

// exp(−2πi·k/4) for k = 0..4
const QUARTERS: [(f64, f64); 4] = [(1.0, 0.0), (0.0, -1.0), (-1.0, 0.0), (0.0, 1.0)];

impl TurnAngle {
    pub const ZERO: TurnAngle = TurnAngle { p: 0, q: 1 };

    pub fn numer(&self) -> i64 {
        self.p
    }

    pub fn denom(&self) -> i64 {
        self.q
    }

    pub fn turns(&self) -> f64 {
        self.p as f64 / self.q as f64
    }

    pub fn radians(&self) -> f64 {
        TAU * self.turns()
    }

    /// Sum of angles (positions add modulo one turn).
    pub fn add(&self, other: &TurnAngle) -> TurnAngle {
        let l = self.q.lcm(&other.q);
        let p = (self.p as i128 * (l / self.q) as i128 + other.p as i128 * (l / other.q) as i128)
            .rem_euclid(l as i128) as i64;
        reduce_angle(p, l).expect("lcm of positive denominators is positive")
    }

    pub fn neg(&self) -> TurnAngle {
        reduce_angle(-self.p, self.q).expect("denominator stays positive")
    }

    /// `(r, q)` with `n·p ≡ r (mod q)`, `0 ≤ r < q`: the character value is `exp(−2πi·r/q)`.
    pub fn character_exponent(&self, n: i64) -> (i64, i64) {
        let r = (n as i128 * self.p as i128).rem_euclid(self.q as i128) as i64;
        (r, self.q)
    }

    /// `k` with `exp(−2πi·n·a) = exp(−2πi·k/4)` when that exists.
    pub fn quarter_turns(&self, n: i64) -> Option<usize> {
        let (r, q) = self.character_exponent(n);
        let four_r = 4 * r as i128;
        (four_r % q as i128 == 0).then(|| (four_r / q as i128) as usize)
    }

    /// Exact `exp(−2πi·n·a)` when it is a Gaussian rational.
    pub fn exact_character(&self, n: i64) -> Option<ComplexRational> {
        self.quarter_turns(n).map(|k| {
            let (re, im) = QUARTERS[k];
            ComplexRational::new(rat(re as i64, 1), rat(im as i64, 1))
        })
    }
}

impl PartialOrd for TurnAngle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TurnAngle {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p as i128 * other.q as i128).cmp(&(other.p as i128 * self.q as i128))
    }
}

impl fmt::Display for TurnAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// A position given only as a floating fraction of a turn in `[0, 1)`.
///
/// Measures carrying such positions are flagged approximate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatAngle(f64);

impl FloatAngle {
    pub fn from_turns(turns: f64) -> Result<FloatAngle> {
        if !turns.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite angle {turns}")));
        }
        let t = turns.rem_euclid(1.0);
        // rem_euclid may round up to exactly 1.0 for tiny negative inputs
        Ok(FloatAngle(if t >= 1.0 { 0.0 } else { t }))
    }

    pub fn from_radians(radians: f64) -> Result<FloatAngle> {
        Self::from_turns(radians / TAU)
    }

    pub fn turns(&self) -> f64 {
        self.0
    }

    pub fn add(&self, other: &FloatAngle) -> FloatAngle {
        FloatAngle::from_turns(self.0 + other.0).expect("finite")
    }

    pub fn neg(&self) -> FloatAngle {
        FloatAngle::from_turns(-self.0).expect("finite")
    }

    /// `exp(−2πi·n·t)`; the error accounts for rounding of `n·t` and of the reduction.
    pub fn character(&self, n: i64) -> ApproxComplex {
        let x = n as f64 * self.0;
        let mut frac = x - x.round();
        if frac < -0.5 {
            frac += 1.0;
        }
        let theta = -TAU * frac;
        let err = TAU * f64::EPSILON * (2.0 * x.abs() + 1.0) + ROOT_EVAL_ERR;
        ApproxComplex::new(theta.cos(), theta.sin(), err)
    }
}
