use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::sequence::{tilde_set_capped, IndexSet, LacunarySequence};
use crate::arith::{format_rational, Rational, Scalar};
use crate::error::{invalid, Error, Result};
use crate::limits::Limits;
use crate::measures::{FourierCoefficients, TrigPolynomial};

/// Rule producing the Riesz coefficients `a_k`, `k ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum CoeffRule {
    /// `a_k = c` for every `k`.
    Constant(Rational),
    /// `a_k` given for `k ≤ len`, zero afterwards.
    Listed(Vec<Rational>),
    /// `a_k = r^k`.
    Geometric(Rational),
    /// `a_k = value` on the listed indices, zero elsewhere. `declared_infinite` records
    /// whether the list is a prefix of an infinite set (`None`: not stated).
    Indicator {
        indices: IndexSet,
        value: Rational,
        declared_infinite: Option<bool>,
    },
}

fn in_range(a: &Rational) -> bool {
    a > &-Rational::one() && a <= &Rational::one()
}

impl CoeffRule {
    pub fn indicator(indices: IndexSet) -> Self {
        CoeffRule::Indicator {
            indices,
            value: Rational::one(),
            declared_infinite: None,
        }
    }

    pub fn infinite_indicator(indices: IndexSet) -> Self {
        CoeffRule::Indicator {
            indices,
            value: Rational::one(),
            declared_infinite: Some(true),
        }
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        match self {
            CoeffRule::Constant(c) => c.clone(),
            CoeffRule::Listed(v) => v.get(k - 1).cloned().unwrap_or_else(Rational::zero),
            CoeffRule::Geometric(r) => num_traits::pow(r.clone(), k),
            CoeffRule::Indicator { indices, value, .. } => {
                if indices.contains(k) {
                    value.clone()
                } else {
                    Rational::zero()
                }
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |a: &Rational| {
            Error::InvalidInput(format!(
                "coefficient out of (−1,1]: {}",
                format_rational(a)
            ))
        };
        match self {
            CoeffRule::Constant(c) if !in_range(c) => Err(bad(c)),
            CoeffRule::Listed(v) => match v.iter().find(|a| !in_range(a)) {
                Some(a) => Err(bad(a)),
                None => Ok(()),
            },
            CoeffRule::Geometric(r) if !(r.abs() < Rational::one() || r.is_one()) => Err(bad(r)),
            CoeffRule::Indicator { value, .. } if !in_range(value) => Err(bad(value)),
            _ => Ok(()),
        }
    }

    /// Set of indices `k ≤ k_max` with `a_k ≠ 0`.
    pub fn active(&self, k_max: usize) -> IndexSet {
        IndexSet::new((1..=k_max).filter(|&k| !self.coefficient(k).is_zero()).collect())
            .expect("increasing by construction")
    }

    fn is_zero_rule(&self) -> bool {
        match self {
            CoeffRule::Constant(c) | CoeffRule::Geometric(c) => c.is_zero(),
            CoeffRule::Listed(v) => v.iter().all(Zero::is_zero),
            CoeffRule::Indicator { indices, value, .. } => value.is_zero() || indices.is_empty(),
        }
    }

    /// Whether `{k : a_k ≠ 0}` is known to be finite (`Some(true)`), known infinite
    /// (`Some(false)`), or neither.
    fn active_set_finite(&self) -> Option<bool> {
        if self.is_zero_rule() {
            return Some(true);
        }
        match self {
            CoeffRule::Constant(_) | CoeffRule::Geometric(_) => Some(false),
            CoeffRule::Listed(_) => Some(true),
            CoeffRule::Indicator {
                declared_infinite, ..
            } => match declared_infinite {
                Some(true) => None,
                _ => Some(true),
            },
        }
    }
}

/// Truncated Riesz product `Π_{k≤K} (1 + a_k cos(n_k t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct RieszProductSpec {
    seq: LacunarySequence,
    rule: CoeffRule,
    truncation: usize,
}

impl RieszProductSpec {
    pub fn new(seq: LacunarySequence, rule: CoeffRule, truncation: usize) -> Result<Self> {
        if truncation > seq.len() {
            return invalid(format!(
                "truncation {truncation} exceeds the {} available terms",
                seq.len()
            ));
        }
        rule.validate()?;
        Ok(RieszProductSpec {
            seq,
            rule,
            truncation,
        })
    }

    pub fn seq(&self) -> &LacunarySequence {
        &self.seq
    }

    pub fn rule(&self) -> &CoeffRule {
        &self.rule
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn with_truncation(&self, k: usize) -> Result<Self> {
        Self::new(self.seq.clone(), self.rule.clone(), k)
    }

    /// `a_k`, zero beyond the truncation.
    pub fn a(&self, k: usize) -> Rational {
        if k == 0 || k > self.truncation {
            Rational::zero()
        } else {
            self.rule.coefficient(k)
        }
    }

    /// Indices `k ≤ K` with `a_k ≠ 0`.
    pub fn active(&self) -> IndexSet {
        self.rule.active(self.truncation)
    }

    /// All coefficients real, so the transform is real and even (hermitian measure).
    pub fn is_hermitian(&self) -> bool {
        true
    }
}

impl FourierCoefficients for RieszProductSpec {
    fn fourier_coefficient(&self, n: i64) -> Scalar {
        Scalar::rational(riesz_coefficient(self, n))
    }
}

/// `μ̂(n) = Π_{ε_k ≠ 0} a_k/2` over the unique digits of `n`, and 0 off `Ã`.
pub fn riesz_coefficient(spec: &RieszProductSpec, n: i64) -> Rational {
    match spec.seq.represent_prefix(n, spec.truncation) {
        None => Rational::zero(),
        Some(rep) => {
            let half = Rational::new(1.into(), 2.into());
            rep.indices()
                .fold(Rational::one(), |acc, k| acc * spec.a(k) * &half)
        }
    }
}

/// Expands the truncated product into its trigonometric polynomial.
pub fn riesz_truncation_to_trigpoly(spec: &RieszProductSpec, limits: &Limits) -> Result<TrigPolynomial> {
    if spec.truncation > limits.max_truncation {
        return Err(Error::ResourceLimit {
            what: "truncation",
            requested: spec.truncation as u128,
            limit: limits.max_truncation as u128,
        });
    }
    let active = spec.active();
    let size = 3u128.pow(active.len() as u32);
    if size > limits.max_support as u128 {
        return Err(Error::ResourceLimit {
            what: "support size",
            requested: size,
            limit: limits.max_support as u128,
        });
    }
    let half = Rational::new(1.into(), 2.into());
    let mut terms: Vec<(i64, Rational)> = vec![(0, Rational::one())];
    for k in active.as_slice() {
        let nk = spec.seq.term(*k);
        let c = spec.a(*k) * &half;
        let mut next = Vec::with_capacity(terms.len() * 3);
        for (n, v) in &terms {
            next.push((n - nk, v * &c));
            next.push((*n, v.clone()));
            next.push((n + nk, v * &c));
        }
        terms = next;
    }
    Ok(TrigPolynomial::from_coeffs(
        terms.into_iter().map(|(n, v)| (n, Scalar::rational(v))),
    ))
}

/// Result of convolving two Riesz products on a common sequence.
#[derive(Debug, Clone)]
pub struct RieszConvolution {
    /// `μ̂_1(n)·μ̂_2(n)` for `|n| ≤ W`.
    pub product: TrigPolynomial,
    /// Indices active in both factors (within the truncations).
    pub common_indices: IndexSet,
    /// `Ã(common) ∩ [−W, W]`.
    pub window_support: Vec<i64>,
    /// Finiteness of the support of the untruncated convolution, when decidable from the rules.
    pub full_support_finite: Option<bool>,
    /// `3^|common|` when the full support is known to be finite.
    pub full_support_size: Option<u128>,
}

/// Convolution of two Riesz products: the support is `Ã_1 ∩ Ã_2 = (A_1 ∩ A_2)~`, since a
/// common element has its unique digits in both active sets.
pub fn convolve_riesz(
    s1: &RieszProductSpec,
    s2: &RieszProductSpec,
    window: i64,
) -> Result<RieszConvolution> {
    if s1.seq.terms() != s2.seq.terms() {
        return invalid("Riesz products are built on different lacunary sequences");
    }
    let common = s1.active().intersection(&s2.active());
    let window_support = tilde_set_capped(&common, &s1.seq, window, Limits::default().max_support)?;
    let product = TrigPolynomial::from_coeffs(window_support.iter().map(|&n| {
        (n, Scalar::rational(riesz_coefficient(s1, n) * riesz_coefficient(s2, n)))
    }));
    let full_support_finite = match (s1.rule.active_set_finite(), s2.rule.active_set_finite()) {
        (Some(true), _) | (_, Some(true)) => Some(true),
        (Some(false), Some(false)) => Some(false),
        _ => None,
    };
    let full_support_size = match full_support_finite {
        Some(true) => {
            // a finite rule lists every active index, so the common set is fully known
            let reach = s1.truncation.max(s2.truncation);
            let all_common = s1.rule.active(reach).intersection(&s2.rule.active(reach));
            (all_common == common).then(|| 3u128.pow(common.len() as u32))
        }
        _ => None,
    };
    Ok(RieszConvolution {
        product,
        common_indices: common,
        window_support,
        full_support_finite,
        full_support_size,
    })
}

/// Outcome of testing `Σ_k |a_k|^n = ∞` for every `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrownMoran {
    Diverges,
    ConvergesForPower(u32),
    Converges,
    Unknown,
}

impl fmt::Display for BrownMoran {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrownMoran::Diverges => write!(f, "diverges"),
            BrownMoran::ConvergesForPower(n) => write!(f, "converges-for-power({n})"),
            BrownMoran::Converges => write!(f, "converges"),
            BrownMoran::Unknown => write!(f, "unknown"),
        }
    }
}

impl Serialize for BrownMoran {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Classifies a coefficient rule against the divergence condition that forces mutually
/// singular convolution powers.
pub fn brown_moran_check(rule: &CoeffRule) -> BrownMoran {
    if rule.is_zero_rule() {
        return BrownMoran::Converges;
    }
    match rule {
        CoeffRule::Constant(_) => BrownMoran::Diverges,
        CoeffRule::Geometric(r) if r.is_one() => BrownMoran::Diverges,
        CoeffRule::Geometric(_) => BrownMoran::ConvergesForPower(1),
        CoeffRule::Listed(_) => BrownMoran::Converges,
        CoeffRule::Indicator {
            declared_infinite, ..
        } => match declared_infinite {
            Some(true) => BrownMoran::Diverges,
            Some(false) => BrownMoran::Converges,
            None => BrownMoran::Unknown,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn constant_one(seq: LacunarySequence, k: usize) -> RieszProductSpec {
        RieszProductSpec::new(seq, CoeffRule::Constant(rat(1, 1)), k).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let s = constant_one(LacunarySequence::power(4, 6).unwrap(), 6);
        assert_eq!(riesz_coefficient(&s, 0), rat(1, 1));
        assert_eq!(riesz_coefficient(&s, 16), rat(1, 2));
        assert_eq!(riesz_coefficient(&s, 4 + 16), rat(1, 4));
        assert_eq!(riesz_coefficient(&s, 2), rat(0, 1));
        // beyond the truncation
        assert_eq!(riesz_coefficient(&s.with_truncation(2).unwrap(), 16), rat(0, 1));
    }

    #[test]
    fn truncation_examples() {
        let limits = Limits::default();
        let seq = LacunarySequence::from_terms(vec![4, 16]).unwrap();
        let k0 = riesz_truncation_to_trigpoly(&constant_one(seq.clone(), 0), &limits).unwrap();
        assert_eq!(k0.support(), vec![0]);
        let k1 = riesz_truncation_to_trigpoly(&constant_one(seq.clone(), 1), &limits).unwrap();
        assert_eq!(k1.support(), vec![-4, 0, 4]);
        assert_eq!(k1.coefficient(4).as_exact().unwrap().re, rat(1, 2));
        let k2 = riesz_truncation_to_trigpoly(&constant_one(seq, 2), &limits).unwrap();
        assert_eq!(k2.support(), vec![-20, -16, -12, -4, 0, 4, 12, 16, 20]);
        assert_eq!(k2.coefficient(12).as_exact().unwrap().re, rat(1, 4));
        assert_eq!(k2.coefficient(20).as_exact().unwrap().re, rat(1, 4));
    }

    #[test]
    fn truncation_limit() {
        let seq = LacunarySequence::power(3, 25).unwrap();
        let s = constant_one(seq, 21);
        assert!(matches!(
            riesz_truncation_to_trigpoly(&s, &Limits::default()),
            Err(Error::ResourceLimit { what: "truncation", .. })
        ));
        let s = s.with_truncation(16).unwrap();
        assert!(matches!(
            riesz_truncation_to_trigpoly(&s, &Limits::default()),
            Err(Error::ResourceLimit { what: "support size", .. })
        ));
    }

    #[test]
    fn coefficient_range_is_enforced() {
        let seq = LacunarySequence::power(4, 3).unwrap();
        assert!(RieszProductSpec::new(seq.clone(), CoeffRule::Constant(rat(3, 1)), 3).is_err());
        assert!(RieszProductSpec::new(seq.clone(), CoeffRule::Constant(rat(-1, 1)), 3).is_err());
        assert!(RieszProductSpec::new(seq.clone(), CoeffRule::Constant(rat(-1, 2)), 3).is_ok());
        assert!(RieszProductSpec::new(seq, CoeffRule::Constant(rat(1, 1)), 4).is_err());
    }

    #[test]
    fn convolution_examples() {
        let seq = LacunarySequence::power(4, 6).unwrap();
        let a = RieszProductSpec::new(
            seq.clone(),
            CoeffRule::indicator(IndexSet::new(vec![1, 3]).unwrap()),
            6,
        )
        .unwrap();
        let b = RieszProductSpec::new(
            seq.clone(),
            CoeffRule::indicator(IndexSet::new(vec![2, 4]).unwrap()),
            6,
        )
        .unwrap();
        let c = convolve_riesz(&a, &b, 1000).unwrap();
        assert_eq!(c.product.support(), vec![0]);
        assert_eq!(c.window_support, vec![0]);
        assert_eq!(c.full_support_finite, Some(true));
        assert_eq!(c.full_support_size, Some(1));

        // common index 2 (n_2 = 4)
        let d = RieszProductSpec::new(
            seq.clone(),
            CoeffRule::indicator(IndexSet::new(vec![2, 3]).unwrap()),
            6,
        )
        .unwrap();
        let c = convolve_riesz(&b, &d, 1000).unwrap();
        assert_eq!(c.product.support(), vec![-4, 0, 4]);
        assert_eq!(c.product.coefficient(4).as_exact().unwrap().re, rat(1, 4));

        let other = RieszProductSpec::new(
            LacunarySequence::power(3, 6).unwrap(),
            CoeffRule::Constant(rat(1, 1)),
            6,
        )
        .unwrap();
        assert!(convolve_riesz(&a, &other, 10).is_err());
    }

    #[test]
    fn self_convolution_squares() {
        let s = constant_one(LacunarySequence::power(4, 4).unwrap(), 4);
        let c = convolve_riesz(&s, &s, 30).unwrap();
        for (n, v) in c.product.iter() {
            let r = riesz_coefficient(&s, n);
            assert_eq!(v.as_exact().unwrap().re, &r * &r);
        }
        assert_eq!(c.full_support_finite, Some(false));
        assert_eq!(c.full_support_size, None);
    }

    #[test]
    fn brown_moran_examples() {
        assert_eq!(brown_moran_check(&CoeffRule::Constant(rat(1, 1))), BrownMoran::Diverges);
        assert_eq!(
            brown_moran_check(&CoeffRule::Geometric(rat(1, 2))),
            BrownMoran::ConvergesForPower(1)
        );
        assert_eq!(
            brown_moran_check(&CoeffRule::Listed(vec![rat(1, 1); 3])),
            BrownMoran::Converges
        );
        let set = IndexSet::new(vec![1, 4, 10]).unwrap();
        assert_eq!(
            brown_moran_check(&CoeffRule::infinite_indicator(set.clone())),
            BrownMoran::Diverges
        );
        assert_eq!(brown_moran_check(&CoeffRule::indicator(set)), BrownMoran::Unknown);
        assert_eq!(brown_moran_check(&CoeffRule::Constant(rat(0, 1))), BrownMoran::Converges);
        assert_eq!(BrownMoran::ConvergesForPower(1).to_string(), "converges-for-power(1)");
    }
}
