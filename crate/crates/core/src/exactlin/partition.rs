use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts into decreasing order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Invalid("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(k, 1, ..., 1)` summing to `n`; used for s_{k,1,...,1}.
    pub fn hook(k: u32, n: u32) -> Self {
        let mut parts = vec![k];
        parts.extend(std::iter::repeat(1).take((n - k) as usize));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Multiplicity of each distinct part.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Parses `"2,1,1"`, `"(2,1,1)"` or `"2 1 1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: std::result::Result<Vec<u32>, _> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect();
        let parts = parts.map_err(|e| Error::Parse(format!("bad partition {s:?}: {e}")))?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Partitions of `n` in reverse-lexicographic order: `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn partitions(n: u32, min_length: Option<usize>, max_part: Option<u32>) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let cap = max_part.unwrap_or(n).min(n);
    fill(n, cap, &mut current, &mut out);
    if let Some(min) = min_length {
        out.retain(|p| p.len() >= min);
    }
    out
}

fn fill(rest: u32, cap: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for part in (1..=cap.min(rest)).rev() {
        current.push(part);
        fill(rest - part, part, current, out);
        current.pop();
    }
}

/// Number of partitions of `n` into at most `k` parts.
pub fn count_partitions_at_most(n: u32, k: u32) -> u64 {
    // Conjugation: at most k parts <=> all parts <= k.
    let mut ways = vec![0u64; n as usize + 1];
    ways[0] = 1;
    for part in 1..=k.min(n.max(1)) {
        for total in part as usize..=n as usize {
            ways[total] += ways[total - part as usize];
        }
    }
    ways[n as usize]
}

/// Value of the monomial symmetric function `m_w(1, ..., 1)` in `k` variables.
pub fn monomial_symmetric_at_ones(w: &Partition, k: usize) -> BigInt {
    if w.len() > k {
        return BigInt::from(0);
    }
    let mut value = BigInt::one();
    // k! / (k - len)!
    for i in (k - w.len() + 1)..=k {
        value *= i;
    }
    for (_, m) in w.multiplicities() {
        for i in 2..=m {
            value /= i;
        }
    }
    value
}
