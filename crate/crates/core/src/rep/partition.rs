use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Integer partition `λ₁ ≥ λ₂ ≥ … ≥ λ_k ≥ 1`, labelling an irrep of `S_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// `(n)`, the trivial irrep.
    pub fn row(n: usize) -> Self {
        Partition(vec![n])
    }

    /// `(N, 1)`, the standard irrep of `S_{N+1}`.
    pub fn hook(n: usize) -> Self {
        Partition(vec![n, 1])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All partitions of `n`, in reverse lexicographic order: `(n)` first,
    /// `(1^n)` last.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for part in (1..=remaining.min(max)).rev() {
                prefix.push(part);
                rec(remaining - part, part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Accepts `(3,1)`, `(3, 1)`, `[3,1]` or `3,1`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let body = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .or_else(|| t.strip_prefix('[').and_then(|s| s.strip_suffix(']')))
            .unwrap_or(t);
        let parts = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| Error::InvalidPartition(format!("bad part `{s}` in `{text}`"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `d_λ = n! ∏_{i<j} (λ_i − λ_j − i + j) / ∏_i (λ_i + n − i)!`, with `λ`
/// padded by zeros to `n` parts. Exact.
pub fn irrep_dimension(p: &Partition) -> Result<BigUint> {
    let n = p.size();
    let mut padded = p.0.clone();
    padded.resize(n, 0);
    let mut numerator = factorial(n);
    for i in 0..n {
        for j in (i + 1)..n {
            // λ_i ≥ λ_j and j > i, so every factor is positive
            numerator *= padded[i] - padded[j] + (j - i);
        }
    }
    let denominator = padded.iter().enumerate().fold(BigUint::one(), |acc, (i, &l)| acc * factorial(l + n - (i + 1)));
    if !(&numerator % &denominator).is_zero() {
        return Err(Error::Consistency(format!("dimension formula not integral for {p}")));
    }
    Ok(numerator / denominator)
}

/// [`irrep_dimension`] as a `usize`.
#[cfg(test)]
pub(crate) fn irrep_dimension_usize(p: &Partition) -> Result<usize> {
    num_traits::ToPrimitive::to_usize(&irrep_dimension(p)?)
        .ok_or_else(|| Error::InvalidPartition(format!("dimension of {p} overflows usize")))
}
