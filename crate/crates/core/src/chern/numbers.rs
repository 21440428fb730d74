use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::class::CobordismClass;
use crate::error::{Error, Result};
use crate::exactlin::{bernoulli, factorial, monomial_symmetric_at_ones, partitions, ExactRational, Partition};

/// `s_w` of a class; zero unless `|w| = dim`.
pub fn s_number(c: &CobordismClass, w: &Partition) -> BigInt {
    if w.weight() != c.dim() {
        return BigInt::zero();
    }
    c.terms()
        .iter()
        .map(|(prod, coeff)| coeff * s_of_product(prod.parts(), &w.multiplicities()))
        .sum()
}

/// Splits the multiset `w` over the factors; `CP^n` contributes `m_w(1^{n+1})`.
fn s_of_product(factors: &[u32], w: &[(u32, usize)]) -> BigInt {
    let Some((&n, rest)) = factors.split_first() else {
        return if w.iter().all(|&(_, m)| m == 0) {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    };
    let mut total = BigInt::zero();
    let mut take = vec![0usize; w.len()];
    loop {
        let weight: u32 = take.iter().zip(w).map(|(&k, &(part, _))| part * k as u32).sum();
        if weight == n {
            let mut sub = Vec::new();
            for (&k, &(part, _)) in take.iter().zip(w) {
                sub.extend(std::iter::repeat(part).take(k));
            }
            let here = monomial_symmetric_at_ones(&Partition::new(sub).expect("positive parts"), n as usize + 1);
            if !here.is_zero() {
                let left: Vec<(u32, usize)> = take.iter().zip(w).map(|(&k, &(part, m))| (part, m - k)).collect();
                total += here * s_of_product(rest, &left);
            }
        }
        // odometer over 0..=m for each distinct part
        let mut i = 0;
        loop {
            if i == take.len() {
                return total;
            }
            if take[i] < w[i].1 {
                take[i] += 1;
                break;
            }
            take[i] = 0;
            i += 1;
        }
    }
}

/// Top Chern number, `s_{(1,...,1)}`.
pub fn euler_char(c: &CobordismClass) -> BigInt {
    c.terms()
        .iter()
        .map(|(prod, coeff)| coeff * prod.parts().iter().map(|&n| BigInt::from(n + 1)).product::<BigInt>())
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalObstruction {
    pub r: u32,
    pub vanishes: bool,
    pub witnesses: Vec<Partition>,
}

/// Vanishing of `s_w` for every partition `w` of `d` of length at least `d - r + 1`.
pub fn rational_obstruction(c: &CobordismClass, r: u32) -> Result<RationalObstruction> {
    let d = c.dim();
    if r > d {
        return Err(Error::Invalid(format!("r = {r} exceeds the dimension {d}")));
    }
    let witnesses: Vec<Partition> = partitions(d, Some((d - r + 1) as usize), None)
        .into_iter()
        .filter(|w| !s_number(c, w).is_zero())
        .collect();
    Ok(RationalObstruction {
        r,
        vanishes: witnesses.is_empty(),
        witnesses,
    })
}

/// `a_d`, with the prime it was divided by when `d + 1` is a prime power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AValue {
    pub d: u32,
    pub value: ExactRational,
    pub divided_by: Option<u64>,
}

impl AValue {
    pub fn integer(&self) -> Result<BigInt> {
        if self.value.is_integer() {
            Ok(self.value.to_integer())
        } else {
            Err(Error::NonIntegerA {
                d: self.d,
                value: self.value.to_string(),
            })
        }
    }
}

/// The prime `p` with `n = p^i`, `i >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let q = (2..).find(|q| q * q > n || n % q == 0).expect("unbounded range");
    let p = if n % q == 0 { q } else { n };
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    (m == 1).then_some(p)
}

/// `(d+1)!/|B_{2d}|`, divided by `p` when `d = p^i - 1`.
pub fn a_d(d: u32) -> Result<AValue> {
    if d == 0 {
        return Err(Error::Invalid("a_d needs d >= 1".into()));
    }
    let b = bernoulli(2 * d as usize).abs();
    let mut value = ExactRational::from_integer(factorial(d as u64 + 1)) / b;
    let divided_by = prime_power_base(d as u64 + 1);
    if let Some(p) = divided_by {
        value /= ExactRational::from_integer(p.into());
    }
    Ok(AValue { d, value, divided_by })
}

/// All `J <= I`: each part of `I` split further, `I` itself included. Reverse-lexicographic order.
pub fn partition_refinements(i: &Partition) -> Vec<Partition> {
    let mut acc: BTreeSet<Vec<u32>> = BTreeSet::from([Vec::new()]);
    for &part in i.parts() {
        let splits = partitions(part, None, None);
        let mut next = BTreeSet::new();
        for prefix in &acc {
            for s in &splits {
                let mut v = prefix.clone();
                v.extend_from_slice(s.parts());
                v.sort_unstable_by(|a, b| b.cmp(a));
                next.insert(v);
            }
        }
        acc = next;
    }
    acc.into_iter()
        .rev()
        .map(|v| Partition::new(v).expect("positive parts"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcmBound {
    pub partition: Partition,
    pub r: u32,
    pub multiplier: BigInt,
    /// Each refinement `J` with `a_J`.
    pub table: Vec<(Partition, BigInt)>,
}

/// `lcm(a_J | J <= I)` with `a_J` multiplicative over parts.
pub fn lcm_bound(i: &Partition, r: u32) -> Result<LcmBound> {
    let d = i.weight();
    if i.is_empty() {
        return Err(Error::Invalid("empty partition".into()));
    }
    if r < 1 || r > d {
        return Err(Error::Invalid(format!("need 1 <= r <= {d}, got {r}")));
    }
    let mut table = Vec::new();
    let mut multiplier = BigInt::one();
    for j in partition_refinements(i) {
        let mut a = BigInt::one();
        for &part in j.parts() {
            a *= a_d(part)?.integer()?;
        }
        multiplier = multiplier.lcm(&a);
        table.push((j, a));
    }
    Ok(LcmBound {
        partition: i.clone(),
        r,
        multiplier,
        table,
    })
}
