use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{check_truncation, check_window, table, Check, Experiment, ExperimentReport, RunOptions};
use crate::arith::{format_rational, rat, rational_to_f64};
use crate::error::{invalid, Result};
use crate::gelfand::natural_spectrum_gap;
use crate::lacunary::{
    brown_moran_check, common_prefix_len, convolve_riesz, riesz_coefficient,
    riesz_truncation_to_trigpoly, sierpinski_member, tilde_set, CoeffRule, IndexSet,
    LacunarySequence, RieszProductSpec, RieszSpecJson,
};
use crate::limits::Limits;
use crate::measures::TrigPolynomial;
use crate::verdict::Verdict;

/// Largest truncation for which the full product expansion is used as an oracle.
const ORACLE_MAX_K: usize = 8;
const DENSITY_GRID: usize = 2048;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RieszConfig {
    #[serde(flatten)]
    pub spec: RieszSpecJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
}

fn coefficient_rows(p: &TrigPolynomial) -> Vec<Value> {
    p.iter()
        .map(|(n, c)| {
            let a = c.to_approx();
            json!([n, c.to_string(), a.re])
        })
        .collect()
}

fn min_density(p: &TrigPolynomial) -> f64 {
    (0..DENSITY_GRID)
        .map(|j| {
            let t = std::f64::consts::TAU * j as f64 / DENSITY_GRID as f64;
            let v = p.evaluate(t);
            v.re - v.err
        })
        .fold(f64::INFINITY, f64::min)
}

/// Coefficients of a truncated Riesz product on `|n| ≤ W`, with the product expansion as an
/// oracle for `K ≤ 8`.
pub fn run_riesz(cfg: &RieszConfig, opts: &RunOptions) -> Result<ExperimentReport> {
    let mut json_spec = cfg.spec.clone();
    if let Some(k) = opts.trunc {
        json_spec.k = k;
    }
    check_truncation(json_spec.k)?;
    let spec = json_spec.to_spec()?;
    let window = check_window(opts.window.or(cfg.window).unwrap_or(20))?;
    let support = tilde_set(&spec.active(), spec.seq(), window)?;
    let rows: Vec<Value> = support
        .iter()
        .map(|&n| {
            let c = riesz_coefficient(&spec, n);
            json!([n, format_rational(&c), rational_to_f64(&c)])
        })
        .collect();

    let mut checks = Vec::new();
    if spec.truncation() <= ORACLE_MAX_K {
        let poly = riesz_truncation_to_trigpoly(&spec, &Limits::default())?;
        let full = tilde_set(&spec.active(), spec.seq(), spec.seq().partial_sum(spec.truncation()))?;
        let same_support = poly.support() == full;
        let same_values = poly.iter().all(|(n, c)| {
            c.as_exact().is_some_and(|e| e.is_real() && e.re == riesz_coefficient(&spec, n))
        });
        checks.push(Check::from_bool(
            "oracle_equivalence",
            same_support && same_values,
            format!("{} expanded coefficients compared", poly.len()),
        ));
        let min = min_density(&poly);
        checks.push(Check::from_bool(
            "nonnegative_density",
            min >= -1e-9,
            format!("minimum over {DENSITY_GRID} grid points: {min:.6e}"),
        ));
    } else {
        checks.push(Check::new(
            "oracle_equivalence",
            Verdict::Inconclusive,
            format!("skipped: K = {} > {ORACLE_MAX_K}", spec.truncation()),
        ));
    }
    let derived = json!({
        "K": spec.truncation(),
        "window": window,
        "terms": spec.seq().terms()[..spec.truncation()].to_vec(),
        "active_indices": spec.active().as_slice(),
        "support_size": support.len(),
        "brown_moran": brown_moran_check(spec.rule()).to_string(),
        "table": table(&["n", "coefficient", "value"], rows),
    });
    Ok(ExperimentReport::new(Experiment::Riesz, cfg, opts, derived, checks))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct NonsepConfig {
    pub branches: Vec<String>,
    #[serde(default = "default_base")]
    pub base: i64,
    #[serde(rename = "K", default = "default_nonsep_k")]
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
    /// Number of prefix codes per member; defaults to the most that fit below `K`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
}

fn default_base() -> i64 {
    4
}

fn default_nonsep_k() -> usize {
    14
}

/// Largest `c ≤ max_len` whose prefix codes (at most `2^{c+1} − 2`) stay within `k`.
pub(crate) fn default_count(max_len: usize, k: usize) -> usize {
    (1..=max_len.min(60))
        .take_while(|&c| (1usize << (c + 1)) - 2 <= k)
        .last()
        .unwrap_or(0)
}

fn member_spec(seq: &LacunarySequence, set: &IndexSet, k: usize) -> Result<RieszProductSpec> {
    RieszProductSpec::new(seq.clone(), CoeffRule::infinite_indicator(set.clone()), k)
}

fn intersect_sorted(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

/// Two Riesz products indexed by almost-disjoint Sierpiński members: their convolution is
/// supported on the tilde set of the shared indices, while each factor has the full disk as
/// spectrum and a real transform.
pub fn run_nonsep(cfg: &NonsepConfig, opts: &RunOptions) -> Result<ExperimentReport> {
    let [x, y] = match cfg.branches.as_slice() {
        [x, y] => [x.as_str(), y.as_str()],
        _ => return invalid("nonsep needs exactly two branches"),
    };
    let k = check_truncation(opts.trunc.unwrap_or(cfg.k))?;
    let count = match cfg.count {
        Some(c) => c,
        None => default_count(x.len().min(y.len()), k),
    };
    if count == 0 {
        return invalid(format!("K = {k} leaves room for no prefix codes"));
    }
    let a1 = sierpinski_member(x, count)?;
    let a2 = sierpinski_member(y, count)?;
    if x[..count] == y[..count] {
        return invalid(format!("branches agree on their first {count} bits"));
    }
    if a1.max().max(a2.max()).unwrap_or(0) > k {
        return invalid(format!("prefix codes exceed K = {k}"));
    }
    let seq = LacunarySequence::power(cfg.base, k)?;
    let window = check_window(
        opts.window
            .or(cfg.window)
            .unwrap_or_else(|| seq.total().min(Limits::default().max_window)),
    )?;
    let s1 = member_spec(&seq, &a1, k)?;
    let s2 = member_spec(&seq, &a2, k)?;
    let conv = convolve_riesz(&s1, &s2, window)?;
    let shared = a1.intersection(&a2);
    let d = common_prefix_len(&x[..count], &y[..count]);
    let expected = tilde_set(&shared, &seq, window)?;
    let t1 = tilde_set(&a1, &seq, window)?;
    let t2 = tilde_set(&a2, &seq, window)?;

    let mut checks = vec![
        Check::from_bool(
            "shared_indices_equal_common_prefix",
            shared.len() == d,
            format!("|A1 ∩ A2| = {}, common prefix {d}", shared.len()),
        ),
        Check::from_bool(
            "convolution_support",
            conv.product.support() == expected,
            format!("{} support points on [−{window}, {window}]", expected.len()),
        ),
        Check::from_bool(
            "tilde_intersection",
            intersect_sorted(&t1, &t2) == expected,
            "tilde(A1) ∩ tilde(A2) = tilde(A1 ∩ A2) on the window",
        ),
    ];
    if shared.is_empty() {
        let lebesgue = conv.product.support() == vec![0]
            && conv.product.coefficient(0).as_exact().is_some_and(|c| c.re == rat(1, 1));
        checks.push(Check::from_bool(
            "disjoint_gives_lebesgue",
            lebesgue,
            "convolution of products with disjoint index sets",
        ));
    }
    let mut spectra = Vec::new();
    for (name, s) in [("mu1", &s1), ("mu2", &s2)] {
        let r = natural_spectrum_gap(s, window)?;
        let ok = r.witness_re == Some(0.0)
            && r.witness_im == Some(1.0)
            && r.gap == Some(1.0)
            && r.radius_lo.is_some_and(|lo| lo >= 1.0);
        checks.push(Check::from_bool(
            format!("gap_witness_{name}"),
            ok,
            "z = i lies in the disk |z| ≤ r = 1 at distance 1 from the real transform range",
        ));
        spectra.push(serde_json::to_value(&r).expect("report serializes"));
    }
    let derived = json!({
        "K": k,
        "count": count,
        "window": window,
        "A1": a1.as_slice(),
        "A2": a2.as_slice(),
        "shared": shared.as_slice(),
        "common_prefix": d,
        // members of distinct branches share exactly the codes of their common prefixes
        "full_support_finite": true,
        "full_support_size": 3u128.pow(shared.len() as u32),
        "spectra": spectra,
        "table": table(&["n", "coefficient", "value"], coefficient_rows(&conv.product)),
    });
    Ok(ExperimentReport::new(Experiment::Nonsep, cfg, opts, derived, checks))
}
