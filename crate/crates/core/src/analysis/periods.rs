use serde::Serialize;

use super::window::SequenceWindow;
use crate::error::{invalid, Error, Result};

/// `sup |a_{n+m} − a_n|` over `n` with both indices in the window, certified from above,
/// together with the `n` attaining the largest computed difference.
///
/// Stops early once the certified lower bound reaches `stop_at`.
fn shift_distance(s: &SequenceWindow, m: i64, stop_at: f64) -> Option<(f64, i64)> {
    let (lo, hi) = if m >= 0 {
        (s.lo(), s.hi() - m)
    } else {
        (s.lo() - m, s.hi())
    };
    if lo > hi {
        return None;
    }
    let mut best = (f64::NEG_INFINITY, lo);
    for n in lo..=hi {
        let a = s.get(n).expect("in window");
        let b = s.get(n + m).expect("in window");
        let d = a.certified_distance_upper(b);
        if d > best.0 {
            best = (d, n);
        }
        if a.certified_distance_lower(b) >= stop_at {
            break;
        }
    }
    Some(best)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum IntervalOutcome {
    /// `m` satisfies `sup_n |a_{n+m} − a_n| < ε` on the window.
    Verified { m: i64, sup_distance: f64 },
    /// No shift in the interval works; one offending `n` per shift.
    Failed { witnesses: Vec<ShiftWitness> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftWitness {
    pub m: i64,
    pub n: i64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalResult {
    pub lo: i64,
    pub hi: i64,
    #[serde(flatten)]
    pub outcome: IntervalOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodSearch {
    pub eps: f64,
    pub p: u64,
    pub window_lo: i64,
    pub window_hi: i64,
    pub intervals: Vec<IntervalResult>,
}

impl PeriodSearch {
    /// True when every tested interval holds a verified ε-period.
    pub fn all_verified(&self) -> bool {
        self.intervals
            .iter()
            .all(|r| matches!(r.outcome, IntervalOutcome::Verified { .. }))
    }

    pub fn failures(&self) -> impl Iterator<Item = &IntervalResult> {
        self.intervals
            .iter()
            .filter(|r| matches!(r.outcome, IntervalOutcome::Failed { .. }))
    }
}

/// Tiles `shifts` by consecutive length-`p` intervals and looks for an ε-period of the
/// window in each. Distances are certified upper bounds, so a verified shift is an
/// ε-period of the window; claims never extend beyond it.
///
/// The default shift range is `[1, ⌊len/2⌋]`.
pub fn find_epsilon_periods(
    s: &SequenceWindow,
    eps: f64,
    p: u64,
    shifts: Option<(i64, i64)>,
) -> Result<PeriodSearch> {
    if !(eps > 0.0) || !eps.is_finite() {
        return invalid("ε must be a positive number");
    }
    if p == 0 {
        return invalid("p must be at least 1");
    }
    let len = s.len() as i64;
    let (from, to) = shifts.unwrap_or((1, len / 2));
    let p = p as i64;
    if to < from || to - from + 1 < p || from.abs().max(to.abs()) >= len {
        return Err(Error::InsufficientData(format!(
            "window of length {len} cannot test a length-{p} interval of shifts in [{from}, {to}]"
        )));
    }
    let mut intervals = Vec::new();
    let mut lo = from;
    while lo + p - 1 <= to {
        let hi = lo + p - 1;
        let mut witnesses = Vec::new();
        let mut verified = None;
        for m in lo..=hi {
            if let Some((d, n)) = shift_distance(s, m, eps) {
                if d < eps {
                    verified = Some(IntervalOutcome::Verified { m, sup_distance: d.max(0.0) });
                    break;
                }
                witnesses.push(ShiftWitness { m, n, distance: d });
            }
        }
        intervals.push(IntervalResult {
            lo,
            hi,
            outcome: verified.unwrap_or(IntervalOutcome::Failed { witnesses }),
        });
        lo += p;
    }
    Ok(PeriodSearch {
        eps,
        p: p as u64,
        window_lo: s.lo(),
        window_hi: s.hi(),
        intervals,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepWitness {
    pub eps: f64,
    /// The shift interval `[1, p]`.
    pub interval: (i64, i64),
    /// For each `m`, the index `n = −m` with `|a_{n+m} − a_n| = 1 ≥ ε`.
    pub witnesses: Vec<ShiftWitness>,
}

/// Shows that no shift in `[1, p]` is an ε-period of the step sequence on the window:
/// `a_0 − a_{−m} = 1` for every `m ≥ 1`.
pub fn ap_falsify_step(p: u64, eps: f64, window: (i64, i64)) -> Result<StepWitness> {
    if !(eps > 0.0 && eps < 1.0) {
        return invalid(format!("ε = {eps} is outside (0, 1); no falsification is claimed"));
    }
    if p == 0 {
        return invalid("p must be at least 1");
    }
    let p = p as i64;
    if window.0 > -p - 1 || window.1 < p + 1 {
        return invalid(format!(
            "window [{}, {}] does not contain [{}, {}]",
            window.0,
            window.1,
            -p - 1,
            p + 1
        ));
    }
    let s = SequenceWindow::step(window.0, window.1)?;
    let mut witnesses = Vec::with_capacity(p as usize);
    for m in 1..=p {
        let n = -m;
        let a = s.get(n).expect("in window");
        let b = s.get(n + m).expect("in window");
        // step values are exactly 0 and 1, so the difference is computed without rounding
        let distance = (b.re - a.re).hypot(b.im - a.im);
        if distance < eps {
            return Err(Error::PreconditionFailed(format!(
                "jump at m = {m} is {distance}, below ε"
            )));
        }
        witnesses.push(ShiftWitness { m, n, distance });
    }
    Ok(StepWitness {
        eps,
        interval: (1, p),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ApproxComplex, ComplexRational};
    use crate::measures::DiscreteMeasure;

    #[test]
    fn constant_sequence_has_every_period() {
        let s = SequenceWindow::custom(-10, vec![ApproxComplex::exact(0.3, 0.1); 21]).unwrap();
        let r = find_epsilon_periods(&s, 1e-3, 1, None).unwrap();
        assert_eq!(r.intervals.len(), 10);
        for (i, iv) in r.intervals.iter().enumerate() {
            assert_eq!(
                iv.outcome,
                IntervalOutcome::Verified { m: i as i64 + 1, sup_distance: 0.0 }
            );
        }
    }

    #[test]
    fn third_turn_has_period_three() {
        let m = DiscreteMeasure::point_mass(1, 3, ComplexRational::one()).unwrap();
        let s = SequenceWindow::transform(&m, -30, 30, "δ_{1/3}").unwrap();
        let r = find_epsilon_periods(&s, 1e-9, 3, None).unwrap();
        assert!(!r.intervals.is_empty());
        for iv in &r.intervals {
            match iv.outcome {
                IntervalOutcome::Verified { m, .. } => assert_eq!(m % 3, 0),
                _ => panic!("interval {iv:?} failed"),
            }
        }
    }

    #[test]
    fn step_has_no_short_periods() {
        let s = SequenceWindow::step(-100, 100).unwrap();
        let r = find_epsilon_periods(&s, 0.9, 10, Some((1, 50))).unwrap();
        assert_eq!(r.intervals.len(), 5);
        assert_eq!(r.failures().count(), 5);
        for iv in &r.intervals {
            let IntervalOutcome::Failed { witnesses } = &iv.outcome else { unreachable!() };
            assert_eq!(witnesses.len(), 10);
            assert!(witnesses.iter().all(|w| w.distance >= 1.0));
        }
    }

    #[test]
    fn short_window_is_rejected() {
        let s = SequenceWindow::step(0, 2).unwrap();
        assert!(matches!(
            find_epsilon_periods(&s, 0.5, 5, None),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn step_falsification() {
        let w = ap_falsify_step(10, 0.9, (-20, 20)).unwrap();
        assert_eq!(w.interval, (1, 10));
        for (i, x) in w.witnesses.iter().enumerate() {
            assert_eq!((x.m, x.n, x.distance), (i as i64 + 1, -(i as i64) - 1, 1.0));
        }
        let w = ap_falsify_step(1, 0.5, (-2, 2)).unwrap();
        assert_eq!(w.witnesses, vec![ShiftWitness { m: 1, n: -1, distance: 1.0 }]);
        assert!(ap_falsify_step(3, 1.0, (-10, 10)).is_err());
        assert!(ap_falsify_step(3, 0.5, (-3, 10)).is_err());
    }
}
