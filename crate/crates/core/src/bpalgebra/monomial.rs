use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Generator families of the graded rings in play.
///
/// `V`, `T` and `M` carry degree `2(p^i - 1)`; `B` carries degree `2i`.
/// The `M` family is rational bookkeeping for the logarithm coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    V(u16),
    T(u16),
    B(u16),
    M(u16),
}

const KIND_SHIFT: u16 = 12;
const INDEX_MASK: u16 = (1 << KIND_SHIFT) - 1;

impl Generator {
    pub(crate) fn code(self) -> u16 {
        match self {
            Generator::V(i) => i,
            Generator::T(i) => (1 << KIND_SHIFT) | i,
            Generator::B(i) => (2 << KIND_SHIFT) | i,
            Generator::M(i) => (3 << KIND_SHIFT) | i,
        }
    }

    pub(crate) fn from_code(code: u16) -> Self {
        let i = code & INDEX_MASK;
        match code >> KIND_SHIFT {
            0 => Generator::V(i),
            1 => Generator::T(i),
            2 => Generator::B(i),
            _ => Generator::M(i),
        }
    }

    pub fn index(self) -> u16 {
        match self {
            Generator::V(i) | Generator::T(i) | Generator::B(i) | Generator::M(i) => i,
        }
    }

    pub fn degree(self, p: u64) -> u32 {
        match self {
            Generator::B(i) => 2 * i as u32,
            Generator::V(i) | Generator::T(i) | Generator::M(i) => {
                (2 * (p.pow(i as u32) - 1)) as u32
            }
        }
    }

    fn letter(self) -> &'static str {
        match self {
            Generator::V(_) => "v",
            Generator::T(_) => "t",
            Generator::B(_) => "B",
            Generator::M(_) => "m",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter(), self.index())
    }
}

/// Sparse exponent vector: `(generator code, exponent)` sorted by code, exponents nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(u16, u16)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(g: Generator) -> Self {
        Monomial(vec![(g.code(), 1)])
    }

    pub fn power(g: Generator, e: u16) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(g.code(), e)])
        }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Generator, u16)>) -> Self {
        factors
            .into_iter()
            .fold(Monomial::one(), |acc, (g, e)| acc.mul(&Monomial::power(g, e)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (Generator, u16)> + '_ {
        self.0.iter().map(|&(c, e)| (Generator::from_code(c), e))
    }

    pub fn exponent(&self, g: Generator) -> u16 {
        let code = g.code();
        self.0
            .binary_search_by_key(&code, |&(c, _)| c)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn pow(&self, e: u16) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(c, x)| (c, x * e)).collect())
    }

    pub fn degree(&self, p: u64) -> u32 {
        self.factors().map(|(g, e)| g.degree(p) * e as u32).sum()
    }

    /// Splits off the factors accepted by `keep`: `(kept, rest)`.
    pub fn split(&self, keep: impl Fn(Generator) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self
            .0
            .iter()
            .partition(|&&(c, _)| keep(Generator::from_code(c)));
        (Monomial(a), Monomial(b))
    }

    pub fn only(&self, keep: impl Fn(Generator) -> bool) -> Monomial {
        self.split(keep).0
    }

    pub fn has_any(&self, pred: impl Fn(Generator) -> bool) -> bool {
        self.factors().any(|(g, _)| pred(g))
    }

    /// Polynomial degree in the `B` generators (number of `B` factors with multiplicity).
    pub fn b_length(&self) -> u32 {
        self.factors()
            .filter(|(g, _)| matches!(g, Generator::B(_)))
            .map(|(_, e)| e as u32)
            .sum()
    }

    /// Parses products such as `B2*B1^6`, `v1 B1^7`, `t1^2` or `1`.
    pub fn parse(s: &str) -> Result<Monomial> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in monomial {s:?}"));
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        let mut out = Monomial::one();
        let mut seen_any = false;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || c == '*' {
                i += 1;
                continue;
            }
            if c == '1' && !seen_any && chars[i + 1..].iter().all(|c| c.is_whitespace()) {
                return Ok(Monomial::one());
            }
            let make: fn(u16) -> Generator = match c {
                'v' => Generator::V,
                't' => Generator::T,
                'B' | 'b' => Generator::B,
                'm' => Generator::M,
                _ => return Err(bad(&format!("unexpected character {c:?}"))),
            };
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(bad("missing generator index"));
            }
            let idx: u16 = chars[start..i].iter().collect::<String>().parse().map_err(|_| bad("index"))?;
            if idx == 0 {
                return Err(bad("generator index 0"));
            }
            let mut exp = 1u16;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                exp = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| bad("missing exponent"))?;
            }
            out = out.mul(&Monomial::power(make(idx), exp));
            seen_any = true;
        }
        if !seen_any {
            return Err(bad("empty"));
        }
        Ok(out)
    }

    /// Canonical display/basis order: generators read from the highest index down,
    /// larger exponents first. Within a fixed degree this lists `B3 B1^6` before `B2^2 B1^5`.
    pub fn cmp_canonical(&self, other: &Monomial) -> Ordering {
        let key = |m: &Monomial| -> Vec<(u16, u16)> {
            let mut v: Vec<(u16, u16)> = m.0.clone();
            v.reverse();
            v
        };
        let (a, b) = (key(self), key(other));
        for (x, y) in a.iter().zip(b.iter()) {
            if x.0 != y.0 {
                // The monomial containing the higher generator comes first.
                return y.0.cmp(&x.0);
            }
            if x.1 != y.1 {
                return y.1.cmp(&x.1);
            }
        }
        b.len().cmp(&a.len())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut gens: Vec<(Generator, u16)> = self.factors().collect();
        // v and t ascending, B descending (B2 B1^6), m ascending.
        gens.sort_by(|(a, _), (b, _)| match (a, b) {
            (Generator::B(i), Generator::B(j)) => j.cmp(i),
            _ => a.cmp(b),
        });
        let parts: Vec<String> = gens
            .iter()
            .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn is_v(g: Generator) -> bool {
    matches!(g, Generator::V(_))
}

pub fn is_t(g: Generator) -> bool {
    matches!(g, Generator::T(_))
}

pub fn is_b(g: Generator) -> bool {
    matches!(g, Generator::B(_))
}
