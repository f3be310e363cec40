use serde::Serialize;

use crate::arith::ApproxComplex;
use crate::error::{invalid, Result};
use crate::limits::Limits;
use crate::measures::FourierCoefficients;

/// Where the values of a window came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "description", rename_all = "lowercase")]
pub enum WindowSource {
    Transform(String),
    Step,
    Custom,
}

/// A finite stretch `a_lo, …, a_hi` of a two-sided sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceWindow {
    lo: i64,
    hi: i64,
    values: Vec<ApproxComplex>,
    source: WindowSource,
}

fn check_bounds(lo: i64, hi: i64) -> Result<()> {
    if hi < lo {
        return invalid(format!("window [{lo}, {hi}] is empty"));
    }
    let max = Limits::default().max_window;
    if lo < -max || hi > max {
        return Err(crate::Error::ResourceLimit {
            what: "window",
            requested: lo.unsigned_abs().max(hi.unsigned_abs()) as u128,
            limit: max as u128,
        });
    }
    Ok(())
}

impl SequenceWindow {
    pub fn new(lo: i64, values: Vec<ApproxComplex>, source: WindowSource) -> Result<Self> {
        if values.is_empty() {
            return invalid("window has no values");
        }
        let hi = lo + values.len() as i64 - 1;
        check_bounds(lo, hi)?;
        Ok(SequenceWindow {
            lo,
            hi,
            values,
            source,
        })
    }

    pub fn custom(lo: i64, values: Vec<ApproxComplex>) -> Result<Self> {
        Self::new(lo, values, WindowSource::Custom)
    }

    /// `a_n = 1` for `n ≥ 0`, `a_n = 0` for `n < 0`.
    pub fn step(lo: i64, hi: i64) -> Result<Self> {
        check_bounds(lo, hi)?;
        let values = (lo..=hi)
            .map(|n| if n >= 0 { ApproxComplex::ONE } else { ApproxComplex::ZERO })
            .collect();
        Self::new(lo, values, WindowSource::Step)
    }

    /// `μ̂(n)` for `lo ≤ n ≤ hi`.
    pub fn transform<M: FourierCoefficients + ?Sized>(
        m: &M,
        lo: i64,
        hi: i64,
        description: impl Into<String>,
    ) -> Result<Self> {
        check_bounds(lo, hi)?;
        let values = (lo..=hi).map(|n| m.fourier_coefficient(n).to_approx()).collect();
        Self::new(lo, values, WindowSource::Transform(description.into()))
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn source(&self) -> &WindowSource {
        &self.source
    }

    pub fn values(&self) -> &[ApproxComplex] {
        &self.values
    }

    pub fn contains(&self, n: i64) -> bool {
        (self.lo..=self.hi).contains(&n)
    }

    pub fn get(&self, n: i64) -> Option<&ApproxComplex> {
        self.contains(n).then(|| &self.values[(n - self.lo) as usize])
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &ApproxComplex)> {
        (self.lo..).zip(&self.values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ComplexRational;
    use crate::measures::DiscreteMeasure;

    #[test]
    fn step_values() {
        let s = SequenceWindow::step(-2, 2).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.get(-1), Some(&ApproxComplex::ZERO));
        assert_eq!(s.get(0), Some(&ApproxComplex::ONE));
        assert_eq!(s.get(3), None);
        assert!(SequenceWindow::step(3, 2).is_err());
        assert!(SequenceWindow::step(0, 2_000_000).is_err());
    }

    #[test]
    fn transform_window() {
        let m = DiscreteMeasure::point_mass(1, 2, ComplexRational::one()).unwrap();
        let s = SequenceWindow::transform(&m, -3, 3, "point mass at 1/2").unwrap();
        for (n, v) in s.iter() {
            let expect = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(v.re, expect);
        }
    }
}
