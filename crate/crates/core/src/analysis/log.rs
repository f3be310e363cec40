use super::window::{SequenceWindow, WindowSource};
use crate::error::{invalid, Error, Result};

/// Principal logarithms `b_n` of an invertible window, `Im b_n ∈ (−π, π]`.
///
/// With `|a_n| ≥ separation` the real parts stay in `[log separation, log sup|a_n|]`, so the
/// logarithm of a bounded invertible sequence is again bounded.
pub fn bounded_log(s: &SequenceWindow, separation: f64) -> Result<SequenceWindow> {
    if !(separation > 0.0) || !separation.is_finite() {
        return invalid("separation must be a positive number");
    }
    let mut logs = Vec::with_capacity(s.len());
    for (n, a) in s.iter() {
        let modulus = a.abs();
        let not_invertible = Error::NotInvertible {
            index: n,
            modulus,
            separation,
        };
        if modulus < separation {
            return Err(not_invertible);
        }
        logs.push(a.ln().ok_or(not_invertible)?);
    }
    SequenceWindow::new(s.lo(), logs, WindowSource::Custom)
}

/// `max_n |exp(b_n) − a_n|` plus the propagated error bounds.
pub fn max_exp_residual(a: &SequenceWindow, b: &SequenceWindow) -> Result<f64> {
    if a.lo() != b.lo() || a.len() != b.len() {
        return invalid("windows cover different ranges");
    }
    Ok(a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| y.exp().sub(x).abs())
        .fold(0.0, f64::max))
}
