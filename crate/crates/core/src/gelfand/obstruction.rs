use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::arith::{convergents, rational_approximation};
use crate::error::{invalid, Error, Result};

/// Largest denominator searched when testing `α/π` for rationality.
pub const RATIONALITY_MAX_DEN: i64 = 1_000_000;
/// Tolerance on `|q·(α/π) − p|` for the rationality test.
pub const RATIONALITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObstructionWitness {
    pub alpha: f64,
    pub m: i64,
    pub s: i64,
    /// `|mα − 2πs|`.
    pub drift: f64,
    /// Smallest `k` with `k·drift ≥ B`.
    pub k: u64,
    pub bound: f64,
    pub trace: Vec<String>,
}

/// `|mα − 2πs|` with `s` the nearest integer to `mα/2π`.
pub fn drift(alpha: f64, m: i64) -> (i64, f64) {
    let s = (m as f64 * alpha / TAU).round() as i64;
    (s, (m as f64 * alpha - TAU * s as f64).abs())
}

/// Rational `p/q` with `α/π ≈ p/q`, if the bounded search finds one.
pub fn pi_rational(alpha: f64) -> Option<(i64, i64)> {
    rational_approximation(alpha / PI, RATIONALITY_MAX_DEN, RATIONALITY_TOL)
}

/// For `δ_α` with `α ∉ πQ`, the shift `m ≤ M` whose rotation `mα` comes closest to a
/// multiple of `2π`.
///
/// The best `m` is the largest convergent denominator of `α/2π` not exceeding `M`. Any
/// logarithm `−inα = μ̂(n) + 2πi·l_n` whose integer part repeats along the shift
/// (`l_{n+m} − l_n = s`) forces `|μ̂(n + km) − μ̂(n)| = k·drift`, which exceeds `B` after
/// `k` steps.
pub fn exp_obstruction(alpha: f64, bound: f64, max_shift: i64) -> Result<ObstructionWitness> {
    if !alpha.is_finite() {
        return invalid("α must be finite");
    }
    if !(bound > 0.0) || !bound.is_finite() {
        return invalid("B must be a positive number");
    }
    if max_shift < 1 {
        return invalid("M must be at least 1");
    }
    if let Some((p, q)) = pi_rational(alpha) {
        return Err(Error::NotApplicable(format!(
            "α/π is rational ({p}/{q}) within {RATIONALITY_TOL:e}; δ_α is a root of unity case"
        )));
    }
    let x = alpha.abs() / TAU;
    // denominators of convergents are the record holders for min_s |mα − 2πs|
    let m = convergents(x, 64)?
        .into_iter()
        .map(|(_, q)| q)
        .filter(|&q| q <= max_shift)
        .last()
        .unwrap_or(1);
    let (s, d) = drift(alpha.abs(), m);
    if d == 0.0 {
        return Err(Error::NotApplicable(format!(
            "drift vanishes in floating point at m = {m}"
        )));
    }
    let mut k = (bound / d).ceil() as u64;
    while (k as f64) * d < bound {
        k += 1;
    }
    let trace = vec![
        "δ_α transform: e^{−inα}; a logarithm needs −inα = μ̂(n) + 2πi·l_n, l_n ∈ Z".to_string(),
        format!("bounded μ̂ forces l_n ≈ −nα/2π, so along the shift m = {m} the jump l_{{n+m}} − l_n settles at s = {s}"),
        format!("each shift moves μ̂ by i·(mα − 2πs), of modulus {d:.17e}"),
        format!("after k = {k} shifts the change is k·drift = {:.17e} ≥ B = {bound}", k as f64 * d),
    ];
    Ok(ObstructionWitness {
        alpha,
        m,
        s,
        drift: d,
        k,
        bound,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let w = exp_obstruction(1.0, 10.0, 50).unwrap();
        assert_eq!((w.m, w.s, w.k), (44, 7, 565));
        assert!((w.drift - 0.01770).abs() < 1e-4);
        let w = exp_obstruction(1.0, 1.0, 20).unwrap();
        assert_eq!((w.m, w.s, w.k), (19, 3, 7));
        assert!((w.drift - 0.1504).abs() < 1e-4);
        assert!(w.k as f64 * w.drift >= 1.0);
        assert!(matches!(exp_obstruction(PI / 2.0, 1.0, 10), Err(Error::NotApplicable(_))));
        assert!(matches!(exp_obstruction(0.0, 1.0, 10), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn matches_brute_force_minimum() {
        for &alpha in &[1.0, 0.3, 2.5, -1.7, 10.0] {
            for max_shift in [1, 2, 7, 30, 200] {
                let w = exp_obstruction(alpha, 1.0, max_shift).unwrap();
                let best = (1..=max_shift)
                    .map(|m| drift(alpha.abs(), m).1)
                    .fold(f64::INFINITY, f64::min);
                assert!(w.drift <= best + 1e-12, "α={alpha} M={max_shift}: {} vs {best}", w.drift);
                // s is the optimal integer for this m
                for s in [w.s - 1, w.s + 1] {
                    assert!((w.m as f64 * alpha.abs() - TAU * s as f64).abs() >= w.drift);
                }
            }
        }
    }

    #[test]
    fn one_over_pi_is_irrational_at_this_tolerance() {
        assert_eq!(pi_rational(1.0), None);
        assert_eq!(pi_rational(PI * 3.0 / 7.0), Some((3, 7)));
    }
}
