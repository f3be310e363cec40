use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::limits::Limits;

/// Strictly increasing positive integers `n_1 < n_2 < …` with `n_{k+1} ≥ 3·n_k`.
///
/// The ratio bound gives `n_k > 2·Σ_{j<k} n_j`, which is what makes signed-digit
/// representations unique. Indices are 1-based throughout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LacunarySequence {
    terms: Vec<i64>,
    // prefix[k] = n_1 + … + n_k
    prefix: Vec<i64>,
    base: Option<i64>,
}

impl LacunarySequence {
    pub fn from_terms(terms: Vec<i64>) -> Result<Self> {
        let mut prefix = Vec::with_capacity(terms.len() + 1);
        prefix.push(0i64);
        for (i, &t) in terms.iter().enumerate() {
            if t <= 0 {
                return invalid(format!("term n_{} = {t} is not positive", i + 1));
            }
            if i > 0 && (t as i128) < 3 * terms[i - 1] as i128 {
                return invalid(format!(
                    "ratio n_{}/n_{} = {t}/{} is below 3",
                    i + 1,
                    i,
                    terms[i - 1]
                ));
            }
            let s = prefix[i]
                .checked_add(t)
                .ok_or_else(|| Error::InvalidInput("sequence sum overflows i64".into()))?;
            debug_assert!(t > 2 * prefix[i], "ratio bound implies doubling");
            prefix.push(s);
        }
        Ok(LacunarySequence {
            terms,
            prefix,
            base: None,
        })
    }

    /// `base^0, base^1, …, base^{count−1}`.
    pub fn power(base: i64, count: usize) -> Result<Self> {
        if base < 3 {
            return invalid(format!("power base {base} is below 3"));
        }
        let mut terms = Vec::with_capacity(count);
        let mut t = 1i64;
        for k in 0..count {
            if k > 0 {
                t = t
                    .checked_mul(base)
                    .ok_or_else(|| Error::InvalidInput(format!("{base}^{k} overflows i64")))?;
            }
            terms.push(t);
        }
        let mut seq = Self::from_terms(terms)?;
        seq.base = Some(base);
        Ok(seq)
    }

    pub fn base(&self) -> Option<i64> {
        self.base
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    /// `n_k` for `1 ≤ k ≤ len`.
    pub fn term(&self, k: usize) -> i64 {
        self.terms[k - 1]
    }

    /// `n_1 + … + n_k`.
    pub fn partial_sum(&self, k: usize) -> i64 {
        self.prefix[k]
    }

    pub fn total(&self) -> i64 {
        self.prefix[self.terms.len()]
    }

    /// The first `k` terms.
    pub fn truncated(&self, k: usize) -> LacunarySequence {
        let k = k.min(self.len());
        LacunarySequence {
            terms: self.terms[..k].to_vec(),
            prefix: self.prefix[..=k].to_vec(),
            base: self.base,
        }
    }

    /// Unique `n = Σ ε_k n_k` over the first `k_max` terms, if it exists.
    pub fn represent_prefix(&self, n: i64, k_max: usize) -> Option<SignedDigitRep> {
        let k_max = k_max.min(self.len());
        if n.unsigned_abs() > self.prefix[k_max] as u64 {
            return None;
        }
        let mut rem = n;
        let mut digits = Vec::new();
        for k in (1..=k_max).rev() {
            // the remainder exceeds what smaller terms can reach, so n_k is forced
            if rem.unsigned_abs() > self.prefix[k - 1] as u64 {
                let e: i8 = if rem > 0 { 1 } else { -1 };
                rem -= e as i64 * self.terms[k - 1];
                digits.push((k, e));
            }
        }
        if rem != 0 {
            return None;
        }
        digits.reverse();
        Some(SignedDigitRep { digits })
    }

    fn check_indices(&self, a: &IndexSet) -> Result<()> {
        match a.max() {
            Some(m) if m > self.len() => invalid(format!(
                "index {m} is outside a sequence of length {}",
                self.len()
            )),
            _ => Ok(()),
        }
    }
}

/// Digits `ε_k ∈ {−1, +1}` at strictly increasing indices; zero digits are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SignedDigitRep {
    digits: Vec<(usize, i8)>,
}

impl SignedDigitRep {
    pub fn digits(&self) -> &[(usize, i8)] {
        &self.digits
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.digits.iter().map(|&(k, _)| k)
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn value(&self, seq: &LacunarySequence) -> i64 {
        self.digits
            .iter()
            .map(|&(k, e)| e as i64 * seq.term(k))
            .sum()
    }

    pub fn supported_in(&self, a: &IndexSet) -> bool {
        self.indices().all(|k| a.contains(k))
    }
}

/// Unique signed-digit representation of `n` over the whole sequence.
pub fn represent(n: i64, seq: &LacunarySequence) -> Option<SignedDigitRep> {
    seq.represent_prefix(n, seq.len())
}

/// Strictly increasing set of positive (1-based) indices into a sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.first() == Some(&0) {
            return invalid("indices are 1-based");
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("indices must be strictly increasing");
        }
        Ok(IndexSet(indices))
    }

    /// Sorts and deduplicates before validating.
    pub fn from_unsorted(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        Self::new(indices)
    }

    pub fn all(len: usize) -> Self {
        IndexSet((1..=len).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.0.binary_search(&k).is_ok()
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|&k| other.contains(k)).collect())
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.intersection(other).is_empty()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "}}")
    }
}

/// `Ã ∩ [−W, W]` where `Ã` is the set of signed sums of distinct terms indexed by `A`,
/// sorted ascending.
///
/// By uniqueness of representations this is exactly `{n : |n| ≤ W, represent(n) exists
/// with digits in A}`. Enumeration runs over digit vectors from the largest index down,
/// pruning branches whose partial sum cannot return to the window.
pub fn tilde_set(a: &IndexSet, seq: &LacunarySequence, window: i64) -> Result<Vec<i64>> {
    tilde_set_capped(a, seq, window, Limits::default().max_support)
}

pub(crate) fn tilde_set_capped(
    a: &IndexSet,
    seq: &LacunarySequence,
    window: i64,
    cap: usize,
) -> Result<Vec<i64>> {
    if window < 0 {
        return invalid("window must be non-negative");
    }
    seq.check_indices(a)?;
    let terms: Vec<i64> = a.as_slice().iter().rev().map(|&k| seq.term(k)).collect();
    // reach[i] = sum of terms[i..]
    let mut reach = vec![0i64; terms.len() + 1];
    for i in (0..terms.len()).rev() {
        reach[i] = reach[i + 1] + terms[i];
    }
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0i64)];
    while let Some((i, s)) = stack.pop() {
        if (s.unsigned_abs()).saturating_sub(reach[i] as u64) > window as u64 {
            continue;
        }
        if i == terms.len() {
            out.push(s);
            if out.len() > cap {
                return Err(Error::ResourceLimit {
                    what: "tilde set size",
                    requested: out.len() as u128,
                    limit: cap as u128,
                });
            }
            continue;
        }
        for e in [-1i64, 0, 1] {
            stack.push((i + 1, s + e * terms[i]));
        }
    }
    out.sort_unstable();
    Ok(out)
}
