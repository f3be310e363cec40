use serde::Serialize;

use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::lacunary::{IndexSet, LacunarySequence};
use crate::measures::FourierCoefficients;

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum FilterLimit {
    /// The tail oscillates by less than the tolerance; `value` is its last term.
    Converged {
        value: Scalar,
        tail_len: usize,
        oscillation: f64,
    },
    Diverges {
        liminf: f64,
        limsup: f64,
        tail_len: usize,
        oscillation: f64,
    },
}

impl FilterLimit {
    pub fn value(&self) -> Option<&Scalar> {
        match self {
            FilterLimit::Converged { value, .. } => Some(value),
            FilterLimit::Diverges { .. } => None,
        }
    }
}

/// Limit of `μ̂(n)` as `n` runs along `path`, judged on the second half of the path.
///
/// Reports divergence with real-part liminf/limsup estimates when the tail oscillates by
/// `tolerance` or more.
pub fn filter_limit<M: FourierCoefficients + ?Sized>(
    m: &M,
    path: &[i64],
    tolerance: f64,
) -> Result<FilterLimit> {
    if path.is_empty() {
        return Err(Error::InsufficientData("index path is empty within the horizon".into()));
    }
    if !(tolerance > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let tail: Vec<Scalar> = path[path.len() / 2..]
        .iter()
        .map(|&n| m.fourier_coefficient(n))
        .collect();
    let mut oscillation: f64 = 0.0;
    for (i, a) in tail.iter().enumerate() {
        for b in &tail[i + 1..] {
            let d = match a.exact_eq(b) {
                Some(true) => 0.0,
                _ => a.to_approx().certified_distance_upper(&b.to_approx()),
            };
            oscillation = oscillation.max(d);
        }
    }
    let tail_len = tail.len();
    if oscillation < tolerance {
        return Ok(FilterLimit::Converged {
            value: tail.last().expect("nonempty").clone(),
            tail_len,
            oscillation,
        });
    }
    let re: Vec<f64> = tail.iter().map(|v| v.to_approx().re).collect();
    Ok(FilterLimit::Diverges {
        liminf: re.iter().copied().fold(f64::INFINITY, f64::min),
        limsup: re.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        tail_len,
        oscillation,
    })
}

/// Frequencies `n_k`, `k ∈ set`, that exist in `seq`.
pub fn index_frequencies(seq: &LacunarySequence, set: &IndexSet) -> Vec<i64> {
    set.as_slice()
        .iter()
        .filter(|&&k| k <= seq.len())
        .map(|&k| seq.term(k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ComplexRational};
    use crate::lacunary::{CoeffRule, RieszProductSpec};
    use crate::measures::DiscreteMeasure;

    fn mu_x(x: &IndexSet, k: usize) -> RieszProductSpec {
        RieszProductSpec::new(
            LacunarySequence::power(4, k).unwrap(),
            CoeffRule::infinite_indicator(x.clone()),
            k,
        )
        .unwrap()
    }

    #[test]
    fn riesz_limits_along_disjoint_sets() {
        let x = IndexSet::new(vec![2, 5, 9, 14, 20]).unwrap();
        let y = IndexSet::new(vec![3, 6, 10, 15, 21]).unwrap();
        let mu = mu_x(&x, 24);
        let along_x = filter_limit(&mu, &index_frequencies(mu.seq(), &x), 1e-9).unwrap();
        assert_eq!(along_x.value().unwrap().as_exact().unwrap().re, rat(1, 2));
        let along_y = filter_limit(&mu, &index_frequencies(mu.seq(), &y), 1e-9).unwrap();
        assert!(along_y.value().unwrap().is_zero());
    }

    #[test]
    fn alternating_sequence_diverges() {
        let m = DiscreteMeasure::point_mass(1, 2, ComplexRational::one()).unwrap();
        let path: Vec<i64> = (0..40).collect();
        match filter_limit(&m, &path, 0.1).unwrap() {
            FilterLimit::Diverges { liminf, limsup, .. } => {
                assert_eq!((liminf, limsup), (-1.0, 1.0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_path() {
        let m = DiscreteMeasure::dirac();
        assert!(matches!(filter_limit(&m, &[], 0.1), Err(Error::InsufficientData(_))));
    }
}
