use serde::Serialize;

use super::radius::spectral_radius_upper;
use crate::arith::{ApproxComplex, Scalar};
use crate::error::{Error, Result};
use crate::lacunary::{brown_moran_check, riesz_coefficient, tilde_set, BrownMoran, RieszProductSpec};
use crate::measures::{DiscreteMeasure, TrigPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumKind {
    FiniteSet,
    Disk,
    GapReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub kind: SpectrumKind,
    /// For a finite set, the spectrum; for a gap report, the sampled transform values.
    pub points: Vec<Scalar>,
    pub radius_lo: Option<f64>,
    pub radius_hi: Option<f64>,
    pub witness_re: Option<f64>,
    pub witness_im: Option<f64>,
    /// Distance from the witness to the sampled points (to the real line containing them,
    /// for a gap report).
    pub gap: Option<f64>,
}

fn sort_points(points: &mut [Scalar]) {
    points.sort_by(|a, b| {
        let (x, y) = (a.to_approx(), b.to_approx());
        x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
    });
}

fn push_distinct(points: &mut Vec<Scalar>, v: Scalar) {
    let dup = points.iter().any(|p| match p.exact_eq(&v) {
        Some(b) => b,
        None => p.to_approx() == v.to_approx(),
    });
    if !dup {
        points.push(v);
    }
}

/// `σ(P) = P̂(Z) ∪ {0}` for a trigonometric polynomial.
pub fn trigpoly_spectrum(p: &TrigPolynomial) -> SpectrumReport {
    let mut points = vec![Scalar::zero()];
    for (_, c) in p.iter() {
        push_distinct(&mut points, c.clone());
    }
    sort_points(&mut points);
    let radius = points.iter().map(|p| p.to_approx().abs()).fold(0.0, f64::max);
    SpectrumReport {
        kind: SpectrumKind::FiniteSet,
        points,
        radius_lo: Some(radius),
        radius_hi: Some(radius),
        witness_re: None,
        witness_im: None,
        gap: None,
    }
}

/// Disk report for a discrete measure from the power-norm bounds; the lower radius is the
/// largest sampled coefficient modulus on `|n| ≤ window`.
pub fn discrete_radius_report(m: &DiscreteMeasure, powers: u32, window: i64) -> Result<SpectrumReport> {
    let bounds = spectral_radius_upper(m, powers)?;
    let lo = (-window..=window)
        .map(|n| {
            let c = crate::measures::fourier_coefficient(m, n).to_approx();
            (c.abs() - c.abs_err()).max(0.0)
        })
        .fold(0.0, f64::max);
    Ok(SpectrumReport {
        kind: SpectrumKind::Disk,
        points: Vec::new(),
        radius_lo: Some(lo),
        radius_hi: bounds.running_min.last().copied(),
        witness_re: None,
        witness_im: None,
        gap: None,
    })
}

/// Riesz products with divergent `Σ|a_k|^n` have the whole disk `|z| ≤ r(μ) = 1` as
/// spectrum while their transform is real; `z = i` lies in the spectrum at distance 1
/// from every sampled coefficient.
pub fn natural_spectrum_gap(spec: &RieszProductSpec, window: i64) -> Result<SpectrumReport> {
    let bm = brown_moran_check(spec.rule());
    if bm != BrownMoran::Diverges {
        return Err(Error::PreconditionFailed(format!(
            "divergence condition is {bm}, so no spectrum claim is made"
        )));
    }
    let support = tilde_set(&spec.active(), spec.seq(), window)?;
    let mut points = Vec::new();
    if (support.len() as i64) < 2 * window + 1 {
        points.push(Scalar::zero());
    }
    for &n in &support {
        push_distinct(&mut points, Scalar::rational(riesz_coefficient(spec, n)));
    }
    sort_points(&mut points);
    let witness = ApproxComplex::exact(0.0, 1.0);
    // the sampled values are real, so the witness is at distance |Im z| from the closed
    // real set containing them
    let max_im = points.iter().map(|p| p.to_approx().im.abs()).fold(0.0, f64::max);
    let gap = witness.im.abs() - max_im;
    // coefficients are bounded by μ̂(0) = 1 and the product is a positive measure of mass 1
    let lo = points.iter().map(|p| p.to_approx().abs()).fold(0.0, f64::max);
    let hi = crate::arith::rational_to_f64(&riesz_coefficient(spec, 0));
    Ok(SpectrumReport {
        kind: SpectrumKind::GapReport,
        points,
        radius_lo: Some(lo),
        radius_hi: Some(hi),
        witness_re: Some(witness.re),
        witness_im: Some(witness.im),
        gap: Some(gap),
    })
}
