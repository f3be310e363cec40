use serde::Serialize;

use super::window::SequenceWindow;
use crate::arith::ApproxComplex;
use crate::error::{invalid, Result};
use crate::measures::{FourierCoefficients, MeasureSum};
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NearPeriod {
    /// Interval index: `m` lies in `(kp, (k+1)p]`, negated when `n_0 < 0`.
    pub k: u64,
    pub m: i64,
    /// `|μ̂_d(n_0+m) − μ̂_d(n_0)|`.
    pub drift: f64,
    /// `|μ̂_c(n_0+m)|`.
    pub continuous_modulus: f64,
    /// `|μ̂_c(n_0+m)| > c/2 − ε − δ`.
    pub bound: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WienerTraceRow {
    pub k: u64,
    /// Average of `|μ̂_c(n)|²` over `|n| ≤ kp + |n_0|`.
    pub average: f64,
    /// `(number of near-periods so far)·(c/2 − ε − δ)² / (2kp + 2|n_0| + 1)`.
    pub lower_bound: f64,
}

/// The argument run on a candidate that comes within δ of the target on the window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapPipeline {
    pub n0: i64,
    /// `|μ̂_d(n_0) − a_{n_0}|`, standing in for `c/2`.
    pub half_gap: f64,
    pub near_periods: Vec<NearPeriod>,
    /// Intervals of shifts, inside the window, holding no near-period.
    pub missing_intervals: Vec<(i64, i64)>,
    /// `c/2 − ε − δ`.
    pub lower_bound: f64,
    pub wiener_trace: Vec<WienerTraceRow>,
    /// `(c/2 − ε − δ)² / (3p + 2|n_0|)`, which the averages would have to stay above.
    pub wiener_floor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub candidate: String,
    pub eps: f64,
    pub delta: f64,
    pub p: u64,
    pub window_lo: i64,
    pub window_hi: i64,
    /// `sup_n |μ̂(n) − a_n|` over the window.
    pub sup_distance: f64,
    pub sup_distance_err: f64,
    pub argmax: i64,
    /// `sup_n |μ̂_d(n) − a_n|`.
    pub discrete_sup_distance: f64,
    /// `sup_n |μ̂_c(n)|`.
    pub continuous_sup: f64,
    /// `sup_n |μ̂_d(n) − a_n| − sup_n |μ̂_c(n)|`, a lower bound for `sup_distance`.
    pub triangle_lower_bound: f64,
    pub triangle_check: Verdict,
    /// Certified `sup_distance < δ`.
    pub within_delta: bool,
    pub pipeline: Option<GapPipeline>,
    /// Set once the report has been compared against a [`GapRecord`].
    pub improves_record: Option<bool>,
}

fn describe(m: &MeasureSum) -> String {
    format!(
        "{} atoms, {} continuous parts",
        m.discrete.len(),
        m.continuous.len()
    )
}

fn coefficient(m: &impl FourierCoefficients, n: i64) -> ApproxComplex {
    m.fourier_coefficient(n).to_approx()
}

/// Distance of a candidate transform from the target on the window and, when the candidate
/// comes within `δ`, the chain of estimates that forces its continuous part to stay large
/// along near-periods of the discrete part.
pub fn density_gap_report(
    candidate: &MeasureSum,
    target: &SequenceWindow,
    eps: f64,
    delta: f64,
    p: u64,
) -> Result<GapReport> {
    if !(eps > 0.0 && delta > 0.0) || !eps.is_finite() || !delta.is_finite() {
        return invalid("ε and δ must be positive numbers");
    }
    if p == 0 {
        return invalid("p must be at least 1");
    }
    if target.values().iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return invalid("target window holds non-finite values");
    }
    let mut sup = (f64::NEG_INFINITY, 0.0, target.lo());
    let mut discrete = Vec::with_capacity(target.len());
    let mut continuous_sup: f64 = 0.0;
    let mut discrete_sup = (f64::NEG_INFINITY, target.lo());
    for (n, a) in target.iter() {
        let d = coefficient(&candidate.discrete, n);
        let c = candidate.continuous_coefficient(n).to_approx();
        let total = d.add(&c);
        let dist = total.sub(a);
        if dist.abs() > sup.0 {
            sup = (dist.abs(), dist.abs_err(), n);
        }
        let dd = d.sub(a).abs();
        // ties go to the index nearest 0, leaving the most room for shifts
        if dd > discrete_sup.0 || (dd == discrete_sup.0 && n.abs() < discrete_sup.1.abs()) {
            discrete_sup = (dd, n);
        }
        continuous_sup = continuous_sup.max(c.abs());
        discrete.push(d);
    }
    let triangle_lower_bound = discrete_sup.0 - continuous_sup;
    let triangle_check =
        Verdict::from_bool(sup.0 + sup.1 + 1e-12 >= triangle_lower_bound);
    let within_delta = sup.0 + sup.1 < delta;
    let pipeline = within_delta.then(|| {
        run_pipeline(candidate, target, &discrete, discrete_sup, eps, delta, p as i64)
    });
    Ok(GapReport {
        candidate: describe(candidate),
        eps,
        delta,
        p,
        window_lo: target.lo(),
        window_hi: target.hi(),
        sup_distance: sup.0,
        sup_distance_err: sup.1,
        argmax: sup.2,
        discrete_sup_distance: discrete_sup.0,
        continuous_sup,
        triangle_lower_bound,
        triangle_check,
        within_delta,
        pipeline,
        improves_record: None,
    })
}

fn run_pipeline(
    candidate: &MeasureSum,
    target: &SequenceWindow,
    discrete: &[ApproxComplex],
    (half_gap, n0): (f64, i64),
    eps: f64,
    delta: f64,
    p: i64,
) -> GapPipeline {
    let d_at = |n: i64| discrete[(n - target.lo()) as usize];
    let sign = if n0 >= 0 { 1 } else { -1 };
    let lower_bound = half_gap - eps - delta;
    let mut near_periods = Vec::new();
    let mut missing_intervals = Vec::new();
    let mut k = 0i64;
    while target.contains(n0 + sign * (k * p + 1)) {
        let mut found = None;
        for j in 1..=p {
            let m = sign * (k * p + j);
            if !target.contains(n0 + m) {
                break;
            }
            let drift = d_at(n0 + m).sub(&d_at(n0)).abs();
            if drift < eps {
                found = Some((m, drift));
                break;
            }
        }
        match found {
            Some((m, drift)) => {
                let c = candidate.continuous_coefficient(n0 + m).to_approx();
                near_periods.push(NearPeriod {
                    k: k as u64,
                    m,
                    drift,
                    continuous_modulus: c.abs(),
                    bound: Verdict::from_bool(c.abs() + c.abs_err() > lower_bound),
                });
            }
            None => {
                let (a, b) = (sign * (k * p + 1), sign * (k * p + p));
                missing_intervals.push((a.min(b), a.max(b)));
            }
        }
        k += 1;
    }
    let positive = lower_bound.max(0.0);
    let mut wiener_trace = Vec::new();
    for k in 1..=k as u64 {
        let r = k as i64 * p + n0.abs();
        let sum: f64 = (-r..=r)
            .map(|n| candidate.continuous_coefficient(n).to_approx().abs().powi(2))
            .sum();
        let len = (2 * r + 1) as f64;
        let count = near_periods.iter().filter(|np| np.k < k).count() as f64;
        wiener_trace.push(WienerTraceRow {
            k,
            average: sum / len,
            lower_bound: count * positive * positive / len,
        });
    }
    GapPipeline {
        n0,
        half_gap,
        near_periods,
        missing_intervals,
        lower_bound,
        wiener_trace,
        wiener_floor: positive * positive / (3 * p + 2 * n0.abs()) as f64,
    }
}

impl GapReport {
    /// Rows `quantity,value`.
    pub fn to_csv(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("candidate".into(), format!("\"{}\"", self.candidate.replace('"', "\"\""))),
            ("eps".into(), format!("{:.16e}", self.eps)),
            ("delta".into(), format!("{:.16e}", self.delta)),
            ("p".into(), self.p.to_string()),
            ("sup_distance".into(), format!("{:.16e}", self.sup_distance)),
            ("argmax".into(), self.argmax.to_string()),
            ("discrete_sup_distance".into(), format!("{:.16e}", self.discrete_sup_distance)),
            ("continuous_sup".into(), format!("{:.16e}", self.continuous_sup)),
            ("triangle_lower_bound".into(), format!("{:.16e}", self.triangle_lower_bound)),
            ("triangle_check".into(), self.triangle_check.to_string()),
            ("within_delta".into(), self.within_delta.to_string()),
        ];
        if let Some(pl) = &self.pipeline {
            rows.push(("n0".into(), pl.n0.to_string()));
            rows.push(("half_gap".into(), format!("{:.16e}", pl.half_gap)));
            rows.push(("lower_bound".into(), format!("{:.16e}", pl.lower_bound)));
            rows.push(("near_periods".into(), pl.near_periods.len().to_string()));
            rows.push(("wiener_floor".into(), format!("{:.16e}", pl.wiener_floor)));
        }
        if let Some(b) = self.improves_record {
            rows.push(("improves_record".into(), b.to_string()));
        }
        let mut out = String::from("quantity,value\n");
        for (q, v) in rows {
            out.push_str(&format!("{q},{v}\n"));
        }
        out
    }
}

/// Best (smallest) sup-distance seen so far across a corpus; only ever decreases.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct GapRecord {
    pub best: Option<f64>,
    pub best_candidate: Option<String>,
}

impl GapRecord {
    /// Marks whether `report` beats the record and updates the record.
    pub fn observe(&mut self, report: &mut GapReport) -> bool {
        let improves = self.best.is_none_or(|b| report.sup_distance < b);
        if improves {
            self.best = Some(report.sup_distance);
            self.best_candidate = Some(report.candidate.clone());
        }
        report.improves_record = Some(improves);
        improves
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ComplexRational, Scalar};
    use crate::measures::{ContinuousPart, DiscreteMeasure, TrigPolynomial};

    fn step() -> SequenceWindow {
        SequenceWindow::step(-50, 50).unwrap()
    }

    fn scaled_dirac(num: i64, den: i64) -> DiscreteMeasure {
        DiscreteMeasure::point_mass(0, 1, ComplexRational::real(rat(num, den))).unwrap()
    }

    #[test]
    fn dirac_is_at_distance_one() {
        let r = density_gap_report(&MeasureSum::discrete(DiscreteMeasure::dirac()), &step(), 0.1, 0.1, 5)
            .unwrap();
        assert_eq!(r.sup_distance, 1.0);
        assert!(r.argmax < 0);
        assert!(!r.within_delta);
        assert!(r.pipeline.is_none());
    }

    #[test]
    fn half_dirac_is_at_distance_half() {
        let r = density_gap_report(&MeasureSum::discrete(scaled_dirac(1, 2)), &step(), 0.1, 0.1, 5)
            .unwrap();
        assert_eq!(r.sup_distance, 0.5);
        assert_eq!(r.triangle_check, Verdict::Pass);
    }

    #[test]
    fn triangle_inequality_with_trig_part() {
        let trig = TrigPolynomial::from_coeffs([
            (3, Scalar::rational(rat(1, 20))),
            (-7, Scalar::rational(rat(1, 40))),
        ]);
        let m = MeasureSum::new(scaled_dirac(1, 2), vec![ContinuousPart::Trig(trig)]);
        let r = density_gap_report(&m, &step(), 0.1, 0.1, 5).unwrap();
        assert!((r.continuous_sup - 0.05).abs() < 1e-15);
        assert!(r.sup_distance >= 0.5 - 0.05);
        assert_eq!(r.triangle_check, Verdict::Pass);
    }

    #[test]
    fn pipeline_runs_on_a_close_candidate() {
        // a target that a measure can approach: the transform of δ_0 + 0.01·(Fejér-like bump)
        let trig = TrigPolynomial::from_coeffs([(2, Scalar::rational(rat(1, 100)))]);
        let m = MeasureSum::new(DiscreteMeasure::dirac(), vec![ContinuousPart::Trig(trig)]);
        let target = SequenceWindow::custom(-20, vec![crate::arith::ApproxComplex::exact(0.9, 0.0); 41])
            .unwrap();
        let r = density_gap_report(&m, &target, 0.05, 0.2, 4).unwrap();
        assert!(r.within_delta);
        let pl = r.pipeline.unwrap();
        assert!((pl.half_gap - 0.1).abs() < 1e-12);
        assert!(pl.lower_bound < 0.0);
        assert!(pl.missing_intervals.is_empty());
        assert!(!pl.wiener_trace.is_empty());
    }

    #[test]
    fn record_is_monotone() {
        let mut rec = GapRecord::default();
        let mut a = density_gap_report(&MeasureSum::discrete(DiscreteMeasure::dirac()), &step(), 0.1, 0.1, 5)
            .unwrap();
        let mut b = density_gap_report(&MeasureSum::discrete(scaled_dirac(1, 2)), &step(), 0.1, 0.1, 5)
            .unwrap();
        let mut c = a.clone();
        assert!(rec.observe(&mut a));
        assert!(rec.observe(&mut b));
        assert!(!rec.observe(&mut c));
        assert_eq!(rec.best, Some(0.5));
        assert_eq!(c.improves_record, Some(false));
        assert!(b.to_csv().contains("improves_record,true"));
    }
}
