use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{check_window, table, Check, Experiment, ExperimentReport, RunOptions};
use crate::analysis::{
    ap_falsify_step, density_gap_report, find_epsilon_periods, wiener_report, GapRecord,
    GapReport, IntervalOutcome, SequenceWindow,
};
use crate::error::{invalid, Error, Result};
use crate::measures::MeasureJson;
use crate::verdict::Verdict;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GapCandidate {
    pub name: String,
    pub measure: MeasureJson,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GapConfig {
    pub candidates: Vec<GapCandidate>,
    #[serde(default = "default_gap_window")]
    pub window: i64,
    #[serde(default = "default_gap_eps")]
    pub eps: f64,
    #[serde(default = "default_gap_delta")]
    pub delta: f64,
    #[serde(default = "default_gap_p")]
    pub p: u64,
}

fn default_gap_window() -> i64 {
    200
}

fn default_gap_eps() -> f64 {
    0.05
}

fn default_gap_delta() -> f64 {
    0.25
}

fn default_gap_p() -> u64 {
    12
}

fn gap_one(c: &GapCandidate, target: &SequenceWindow, eps: f64, delta: f64, p: u64) -> Result<GapReport> {
    let m = c
        .measure
        .to_measure()
        .map_err(|e| Error::InvalidInput(format!("candidate {:?}: {e}", c.name)))?;
    let mut r = density_gap_report(&m, target, eps, delta, p)?;
    r.candidate = c.name.clone();
    Ok(r)
}

/// Sup-distance of every candidate transform from the step sequence on `[−W, W]`.
pub fn run_gap(cfg: &GapConfig, opts: &RunOptions) -> Result<ExperimentReport> {
    if cfg.candidates.is_empty() {
        return invalid("gap corpus is empty");
    }
    let window = check_window(opts.window.unwrap_or(cfg.window))?;
    let eps = opts.eps.unwrap_or(cfg.eps);
    let delta = opts.delta.unwrap_or(cfg.delta);
    let target = SequenceWindow::step(-window, window)?;
    let reports: Vec<Result<GapReport>> = if opts.parallel {
        cfg.candidates
            .par_iter()
            .map(|c| gap_one(c, &target, eps, delta, cfg.p))
            .collect()
    } else {
        cfg.candidates
            .iter()
            .map(|c| gap_one(c, &target, eps, delta, cfg.p))
            .collect()
    };
    let mut reports = reports.into_iter().collect::<Result<Vec<_>>>()?;
    // corpus order fixes the record history whatever the evaluation order was
    let mut record = GapRecord::default();
    for r in &mut reports {
        record.observe(r);
    }
    let triangle_ok = reports.iter().all(|r| r.triangle_check == Verdict::Pass);
    let close: Vec<&str> = reports
        .iter()
        .filter(|r| r.within_delta)
        .map(|r| r.candidate.as_str())
        .collect();
    let checks = vec![
        Check::from_bool(
            "triangle_inequality",
            triangle_ok,
            "sup |μ̂ − a| ≥ sup |μ̂_d − a| − sup |μ̂_c| for every candidate",
        ),
        if close.is_empty() {
            Check::new(
                "no_candidate_within_delta",
                Verdict::Pass,
                format!("every candidate stays at least δ = {delta} away on the window"),
            )
        } else {
            Check::new(
                "no_candidate_within_delta",
                Verdict::Inconclusive,
                format!("within δ on the window: {}", close.join(", ")),
            )
        },
    ];
    let rows = reports
        .iter()
        .map(|r| {
            json!([
                r.candidate,
                r.sup_distance,
                r.argmax,
                r.within_delta,
                r.improves_record
            ])
        })
        .collect();
    let derived = json!({
        "window": [-window, window],
        "eps": eps,
        "delta": delta,
        "corpus_size": reports.len(),
        "corpus_min_sup_distance": record.best,
        "best_candidate": record.best_candidate,
        "reports": reports,
        "table": table(
            &["candidate", "sup_distance", "argmax", "within_delta", "improves_record"],
            rows,
        ),
    });
    Ok(ExperimentReport::new(Experiment::Gap, cfg, opts, derived, checks))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WienerConfig {
    pub measure: MeasureJson,
    #[serde(rename = "N")]
    pub n: Vec<u64>,
}

/// Wiener averages `(2N+1)^{-1} Σ_{|n|≤N} |μ̂(n)|²` against the sum of squared atom masses.
pub fn run_wiener(cfg: &WienerConfig, opts: &RunOptions) -> Result<ExperimentReport> {
    let m = cfg.measure.to_measure()?;
    let report = wiener_report(&m, &cfg.n)?;
    let checks = report
        .rows
        .iter()
        .map(|r| {
            let detail = match r.bound {
                Some(b) => format!("|average − limit| = {:.6e} ≤ {b:.6e}", r.abs_error),
                None => format!("|average − limit| = {:.6e}", r.abs_error),
            };
            Check::new(format!("N={}", r.n), r.verdict, detail)
        })
        .collect();
    let rows = report
        .rows
        .iter()
        .map(|r| json!([r.n, r.average.value(), report.limit_claim.value(), r.abs_error, r.bound]))
        .collect();
    let derived = json!({
        "limit_claim": report.limit_claim,
        "rows": report.rows,
        "table": table(&["N", "average", "claim", "abs_error", "bound"], rows),
    });
    Ok(ExperimentReport::new(Experiment::Wiener, cfg, opts, derived, checks))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ApConfig {
    /// `"step"` for the step sequence; otherwise `measure` supplies a transform.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureJson>,
    pub p: u64,
    pub eps: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shifts: Option<[i64; 2]>,
}

fn interval_rows(search: &crate::analysis::PeriodSearch) -> Vec<Value> {
    search
        .intervals
        .iter()
        .map(|iv| match &iv.outcome {
            IntervalOutcome::Verified { m, sup_distance } => {
                json!([iv.lo, iv.hi, "verified", m, sup_distance])
            }
            IntervalOutcome::Failed { witnesses } => {
                let worst = witnesses.iter().map(|w| w.distance).fold(f64::NAN, f64::min);
                json!([iv.lo, iv.hi, "failed", Value::Null, worst])
            }
        })
        .collect()
}

const INTERVAL_COLUMNS: [&str; 5] = ["lo", "hi", "outcome", "m", "distance"];

/// ε-period search. For the step sequence every shift in `[1, p]` is refuted; for a measure
/// every length-`p` interval of shifts must contain a verified ε-period of its transform.
pub fn run_ap(cfg: &ApConfig, opts: &RunOptions) -> Result<ExperimentReport> {
    let eps = opts.eps.unwrap_or(cfg.eps);
    let p = cfg.p;
    let default_w = opts.window.unwrap_or_else(|| (4 * p as i64).max(64));
    let (lo, hi) = match cfg.window {
        Some([lo, hi]) if opts.window.is_none() => (lo, hi),
        _ => (-check_window(default_w)?, default_w),
    };
    let shifts = cfg.shifts.map(|[a, b]| (a, b));
    match (cfg.target.as_deref(), &cfg.measure) {
        (Some("step"), None) => {
            let witness = ap_falsify_step(p, eps, (lo, hi))?;
            let s = SequenceWindow::step(lo, hi)?;
            let search = find_epsilon_periods(&s, eps, p, Some(shifts.unwrap_or((1, p as i64))))?;
            let checks = vec![
                Check::from_bool(
                    "step_jump_witnesses",
                    witness.witnesses.len() == p as usize
                        && witness.witnesses.iter().all(|w| w.distance >= eps),
                    format!("|a_0 − a_(−m)| = 1 ≥ ε for m = 1..{p}"),
                ),
                Check::from_bool(
                    "no_period_in_first_interval",
                    !search.intervals.is_empty() && !search.all_verified(),
                    "the certified search finds no ε-period among the refuted shifts",
                ),
            ];
            let derived = json!({
                "window": [lo, hi],
                "witness": witness,
                "search": search,
                "table": table(&INTERVAL_COLUMNS, interval_rows(&search)),
            });
            Ok(ExperimentReport::new(Experiment::Ap, cfg, opts, derived, checks))
        }
        (None, Some(mj)) => {
            let m = mj.to_measure()?;
            let s = SequenceWindow::transform(&m, lo, hi, "measure")?;
            let search = find_epsilon_periods(&s, eps, p, shifts)?;
            let failed = search.failures().count();
            let checks = vec![Check::from_bool(
                "every_interval_has_period",
                search.all_verified(),
                format!("{} of {} intervals without a verified ε-period", failed, search.intervals.len()),
            )];
            let derived = json!({
                "window": [lo, hi],
                "search": search,
                "table": table(&INTERVAL_COLUMNS, interval_rows(&search)),
            });
            Ok(ExperimentReport::new(Experiment::Ap, cfg, opts, derived, checks))
        }
        (Some(t), None) => invalid(format!("unknown target {t:?}; expected \"step\"")),
        _ => invalid("give exactly one of target and measure"),
    }
}
