//! Almost-disjoint index families by binary-prefix coding: a branch `x ∈ {0,1}^ℕ` is sent to
//! the codes of its nonempty prefixes, so two branches share exactly the codes of their
//! common prefixes.

use super::sequence::IndexSet;
use crate::error::{invalid, Result};

/// `2^{|s|} − 1 + value(s)`, a bijection from nonempty bitstrings onto the positive integers.
pub fn prefix_code(s: &str) -> Result<usize> {
    if s.is_empty() {
        return invalid("empty prefix has no code");
    }
    if s.len() >= usize::BITS as usize - 1 {
        return invalid(format!("prefix of length {} is too long to code", s.len()));
    }
    let value = s.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        other => invalid(format!("branch character {other:?} is not a bit")),
    })?;
    Ok((1usize << s.len()) - 1 + value)
}

/// Codes of the first `count` prefixes of `branch`.
pub fn sierpinski_member(branch: &str, count: usize) -> Result<IndexSet> {
    if count == 0 {
        return invalid("count must be positive");
    }
    if branch.len() < count {
        return invalid(format!(
            "branch {branch:?} has fewer than {count} bits"
        ));
    }
    let codes = (1..=count)
        .map(|l| prefix_code(&branch[..l]))
        .collect::<Result<Vec<_>>>()?;
    IndexSet::new(codes)
}

/// Length of the longest common prefix of two bitstrings.
pub fn common_prefix_len(x: &str, y: &str) -> usize {
    x.bytes().zip(y.bytes()).take_while(|(a, b)| a == b).count()
}
