use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::lacunary_runs::default_count;
use super::{check_truncation, check_window, table, Check, Experiment, ExperimentReport, RunOptions};
use crate::arith::{convergents, rat, Scalar};
use crate::error::{invalid, Error, Result};
use crate::gelfand::{
    discrete_radius_report, drift, enumerate_idempotents, exp_obstruction, filter_limit,
    idempotent_from_residues, index_frequencies, is_idempotent, natural_spectrum_gap,
    transform_is_indicator, trigpoly_spectrum, FilterLimit, SpectrumKind, SpectrumReport,
    MAX_IDEMPOTENT_MODULUS,
};
use crate::lacunary::{sierpinski_member, CoeffRule, IndexSet, LacunarySequence, RieszProductSpec};
use crate::measures::{ContinuousPart, MeasureJson};
use crate::verdict::Verdict;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct IdemConfig {
    pub q: u32,
    /// A single residue set; all `2^q` subsets when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residues: Option<Vec<i64>>,
}

fn residues_of(mask: u32, q: u32) -> Vec<i64> {
    (0..q as i64).filter(|r| mask >> r & 1 == 1).collect()
}

/// Coset idempotents `μ̂ = 1_{r + qZ}` summed over residue sets: exact `μ∗μ = μ` and the
/// indicator transform on `|n| ≤ 4q`.
pub fn run_idem(cfg: &IdemConfig, opts: &RunOptions) -> Result<ExperimentReport> {
    let q = cfg.q;
    if q == 0 || q > MAX_IDEMPOTENT_MODULUS {
        return invalid(format!("q must lie in 1..={MAX_IDEMPOTENT_MODULUS}"));
    }
    let sets: Vec<Vec<i64>> = match &cfg.residues {
        Some(r) => vec![r.clone()],
        None => (0u32..1 << q).map(|mask| residues_of(mask, q)).collect(),
    };
    let rows = sets
        .par_iter()
        .map(|r| {
            let m = idempotent_from_residues(q, r)?;
            Ok((r.clone(), m.len(), is_idempotent(&m)?, transform_is_indicator(&m, q, r)))
        })
        .collect::<Result<Vec<_>>>()?;
    let idem = rows.iter().filter(|r| r.2).count();
    let indicator = rows.iter().filter(|r| r.3).count();
    let mut checks = vec![
        Check::from_bool(
            "idempotent",
            idem == rows.len(),
            format!("{idem} of {} satisfy μ∗μ = μ exactly", rows.len()),
        ),
        Check::from_bool(
            "transform_indicator",
            indicator == rows.len(),
            format!("{indicator} of {} have μ̂ = 1 on the residues and 0 elsewhere for |n| ≤ {}", rows.len(), 4 * q),
        ),
    ];
    if cfg.residues.is_none() {
        let distinct = enumerate_idempotents(q)?.len();
        checks.push(Check::from_bool(
            "count",
            distinct == 1usize << q,
            format!("{distinct} distinct idempotents, expected 2^{q}"),
        ));
    }
    let table_rows = rows
        .iter()
        .map(|(r, atoms, i, t)| json!([r, atoms, i, t]))
        .collect();
    let derived = json!({
        "q": q,
        "measures": rows.len(),
        "table": table(&["residues", "atoms", "idempotent", "transform_indicator"], table_rows),
    });
    Ok(ExperimentReport::new(Experiment::Idem, cfg, opts, derived, checks))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SpectrumConfig {
    pub measure: MeasureJson,
    #[serde(default = "default_powers")]
    pub powers: u32,
    #[serde(default = "default_spectrum_window")]
    pub window: i64,
}

fn default_powers() -> u32 {
    8
}

fn default_spectrum_window() -> i64 {
    64
}

fn spectrum_checks(r: &SpectrumReport) -> Vec<Check> {
    match r.kind {
        SpectrumKind::FiniteSet => vec![Check::from_bool(
            "contains_zero",
            r.points.iter().any(Scalar::is_zero),
            "0 belongs to the spectrum of a trigonometric polynomial",
        )],
        SpectrumKind::Disk => {
            let (lo, hi) = (r.radius_lo.unwrap_or(0.0), r.radius_hi.unwrap_or(f64::INFINITY));
            vec![Check::from_bool(
                "radius_bracket",
                lo <= hi * (1.0 + 1e-12) + 1e-12,
                format!("sup |μ̂| = {lo:.6e} ≤ r(μ) ≤ {hi:.6e}"),
            )]
        }
        SpectrumKind::GapReport => {
            let gap = r.gap.unwrap_or(0.0);
            let inside = r.witness_re.unwrap_or(0.0).hypot(r.witness_im.unwrap_or(0.0))
                <= r.radius_hi.unwrap_or(0.0);
            vec![Check::from_bool(
                "gap_witness",
                inside && gap >= 1.0 - 1e-12,
                format!("witness in the disk |z| ≤ r(μ) at distance {gap} from the sampled transform"),
            )]
        }
    }
}

/// Spectrum of a single trigonometric polynomial, a discrete measure, or a Riesz product.
pub fn run_spectrum(cfg: &SpectrumConfig, opts: &RunOptions) -> Result<ExperimentReport> {
    let m = cfg.measure.to_measure()?;
    let window = check_window(opts.window.unwrap_or(cfg.window))?;
    let report = match (m.discrete.is_empty(), m.continuous.as_slice()) {
        (true, [ContinuousPart::Riesz(spec)]) => {
            let spec = match opts.trunc {
                Some(k) => spec.with_truncation(check_truncation(k)?)?,
                None => spec.clone(),
            };
            match natural_spectrum_gap(&spec, window) {
                Ok(r) => Ok(r),
                Err(Error::PreconditionFailed(msg)) => Err(msg),
                Err(e) => return Err(e),
            }
        }
        (true, [ContinuousPart::Trig(p)]) => Ok(trigpoly_spectrum(p)),
        (_, []) => Ok(discrete_radius_report(&m.discrete, cfg.powers, window)?),
        _ => {
            return invalid(
                "spectrum needs one trigonometric polynomial, one Riesz product, or a discrete measure",
            )
        }
    };
    let (checks, derived) = match report {
        Ok(r) => (spectrum_checks(&r), json!({ "window": window, "spectrum": r })),
        Err(msg) => (
            vec![Check::new("gap_witness", Verdict::Inconclusive, msg.clone())],
            json!({ "window": window, "precondition": msg }),
        ),
    };
    Ok(ExperimentReport::new(Experiment::Spectrum, cfg, opts, derived, checks))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ObstructConfig {
    pub alpha: f64,
    #[serde(rename = "B")]
    pub bound: f64,
    #[serde(rename = "M", default = "default_max_shift")]
    pub max_shift: i64,
}

fn default_max_shift() -> i64 {
    1000
}

/// The shift witness showing that `δ_α` has no bounded logarithm when `α ∉ πQ`, with the
/// drift of every convergent up to `M`.
pub fn run_obstruct(cfg: &ObstructConfig, opts: &RunOptions) -> Result<ExperimentReport> {
    let w = exp_obstruction(cfg.alpha, cfg.bound, cfg.max_shift)?;
    let x = cfg.alpha.abs() / TAU;
    let conv: Vec<(i64, i64)> = convergents(x, 64)?
        .into_iter()
        .filter(|&(_, q)| q >= 1 && q <= cfg.max_shift)
        .collect();
    let mut rows = Vec::new();
    let mut consistent = true;
    let mut prev = f64::INFINITY;
    for &(s, m) in &conv {
        let (s2, d) = drift(cfg.alpha.abs(), m);
        let direct = (m as f64 * cfg.alpha.abs() - TAU * s as f64).abs();
        // each convergent is a best approximation, so drifts strictly decrease
        consistent &= s2 == s && (d - direct).abs() <= 1e-9 && d < prev;
        prev = d;
        rows.push(json!([m, s, d]));
    }
    let checks = vec![
        Check::from_bool(
            "drift_consistent",
            consistent && conv.last().map(|c| c.1) == Some(w.m),
            "convergent drifts |mα − 2πs| decrease and the witness uses the last one",
        ),
        Check::from_bool(
            "k_times_drift_at_least_B",
            w.k as f64 * w.drift >= w.bound,
            format!("k·drift = {:.6e} ≥ B = {}", w.k as f64 * w.drift, w.bound),
        ),
    ];
    let derived = json!({
        "witness": w,
        "table": table(&["m", "s", "drift"], rows),
    });
    Ok(ExperimentReport::new(Experiment::Obstruct, cfg, opts, derived, checks))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FilterConfig {
    #[serde(default = "default_filter_base")]
    pub base: i64,
    #[serde(rename = "K", default = "default_filter_k")]
    pub k: usize,
    /// Two branches whose members, minus their shared codes, give disjoint `X` and `Y`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branches: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    /// Explicit index set carrying the Riesz product, used without branches.
    #[serde(rename = "X", default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<usize>>,
    /// Explicit index set to take the limit along, used without branches.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub along: Option<Vec<usize>>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_filter_base() -> i64 {
    4
}

fn default_filter_k() -> usize {
    20
}

fn default_tolerance() -> f64 {
    1e-9
}

fn limit_value(l: &FilterLimit) -> Value {
    serde_json::to_value(l).expect("limit serializes")
}

fn exact_limit(l: &FilterLimit, expect: &Scalar) -> bool {
    l.value().and_then(|v| v.exact_eq(expect)) == Some(true)
}

/// Limits of `μ̂_X` along index sets, for `μ_X = Π_{k∈X}(1 + cos n_k t)`.
pub fn run_filterlimit(cfg: &FilterConfig, opts: &RunOptions) -> Result<ExperimentReport> {
    let k = check_truncation(opts.trunc.unwrap_or(cfg.k))?;
    let seq = LacunarySequence::power(cfg.base, k)?;
    let mu = |x: &IndexSet| RieszProductSpec::new(seq.clone(), CoeffRule::infinite_indicator(x.clone()), k);
    let fits = |set: &IndexSet| set.max().is_none_or(|m| m <= k);
    match (&cfg.branches, &cfg.x, &cfg.along) {
        (Some([b1, b2]), None, None) => {
            let count = cfg
                .count
                .unwrap_or_else(|| default_count(b1.len().min(b2.len()), k));
            if count == 0 {
                return invalid(format!("K = {k} leaves room for no prefix codes"));
            }
            let a1 = sierpinski_member(b1, count)?;
            let a2 = sierpinski_member(b2, count)?;
            if !fits(&a1) || !fits(&a2) {
                return invalid(format!("prefix codes exceed K = {k}"));
            }
            let shared = a1.intersection(&a2);
            let minus = |a: &IndexSet| {
                IndexSet::new(a.as_slice().iter().copied().filter(|i| !shared.contains(*i)).collect())
            };
            let (x, y) = (minus(&a1)?, minus(&a2)?);
            if x.is_empty() || y.is_empty() {
                return invalid("branches leave an empty tail; they must differ within the first count bits");
            }
            let spec = mu(&x)?;
            let along_x = filter_limit(&spec, &index_frequencies(&seq, &x), cfg.tolerance)?;
            let along_y = filter_limit(&spec, &index_frequencies(&seq, &y), cfg.tolerance)?;
            let half = Scalar::rational(rat(1, 2));
            let zero = Scalar::zero();
            let checks = vec![
                Check::from_bool("limit_along_X", exact_limit(&along_x, &half), "lim μ̂_X(n_k), k ∈ X, is exactly 1/2"),
                Check::from_bool("limit_along_Y", exact_limit(&along_y, &zero), "lim μ̂_X(n_k), k ∈ Y, is exactly 0"),
                Check::from_bool(
                    "separation",
                    x.is_disjoint(&y)
                        && matches!((along_x.value(), along_y.value()), (Some(a), Some(b)) if a.exact_eq(b) == Some(false)),
                    "disjoint index sets give different limits",
                ),
            ];
            let derived = json!({
                "K": k,
                "count": count,
                "shared": shared.as_slice(),
                "X": x.as_slice(),
                "Y": y.as_slice(),
                "limit_along_X": limit_value(&along_x),
                "limit_along_Y": limit_value(&along_y),
            });
            Ok(ExperimentReport::new(Experiment::Filterlimit, cfg, opts, derived, checks))
        }
        (None, Some(x), Some(along)) => {
            let x = IndexSet::from_unsorted(x.clone())?;
            let along = IndexSet::from_unsorted(along.clone())?;
            if !fits(&x) || !fits(&along) {
                return invalid(format!("indices exceed K = {k}"));
            }
            let spec = mu(&x)?;
            let limit = filter_limit(&spec, &index_frequencies(&seq, &along), cfg.tolerance)?;
            let checks = vec![match &limit {
                FilterLimit::Converged { .. } => Check::new("limit_exists", Verdict::Pass, "tail oscillation below tolerance"),
                FilterLimit::Diverges { oscillation, .. } => Check::new(
                    "limit_exists",
                    Verdict::Inconclusive,
                    format!("tail oscillates by {oscillation:.6e}"),
                ),
            }];
            let derived = json!({ "K": k, "limit": limit_value(&limit) });
            Ok(ExperimentReport::new(Experiment::Filterlimit, cfg, opts, derived, checks))
        }
        _ => invalid("give either two branches, or both X and along"),
    }
}
