use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::Partition;

/// Integer combination of products `CP^{n_1} x ... x CP^{n_k}` of one total complex dimension.
///
/// A product is keyed by the partition of its factor dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobordismClass {
    dim: u32,
    terms: BTreeMap<Partition, BigInt>,
}

impl CobordismClass {
    pub fn zero(dim: u32) -> Self {
        CobordismClass {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// `[CP^{n_1} x ... x CP^{n_k}]`.
    pub fn product(dims: &[u32]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Invalid("a product needs at least one factor".into()));
        }
        let key = Partition::new(dims.to_vec()).map_err(|_| Error::Invalid("CP0 factors are not allowed".into()))?;
        let mut c = CobordismClass::zero(key.weight());
        c.terms.insert(key, BigInt::one());
        Ok(c)
    }

    pub fn cp(n: u32) -> Result<Self> {
        Self::product(&[n])
    }

    pub fn from_terms(dim: u32, terms: impl IntoIterator<Item = (Partition, BigInt)>) -> Result<Self> {
        let mut c = CobordismClass::zero(dim);
        for (k, v) in terms {
            if k.weight() != dim || k.is_empty() {
                return Err(Error::Invalid(format!("term {k} does not have dimension {dim}")));
            }
            c.add_term(k, v);
        }
        Ok(c)
    }

    fn add_term(&mut self, key: Partition, coeff: BigInt) {
        let e = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Invalid(format!("dimensions {} and {} differ", self.dim, other.dim)));
        }
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = CobordismClass::zero(self.dim);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Parses sums like `3*[CP1xCP1]-4*[CP2]`; whitespace is ignored.
    pub fn parse(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |msg: &str| Error::Parse(format!("{s:?}: {msg}"));
        if text.is_empty() {
            return Err(bad("empty class"));
        }
        let mut terms: Vec<(Partition, BigInt)> = Vec::new();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let (negative, after_sign) = match rest.as_bytes()[0] {
                b'+' if !terms.is_empty() => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ if terms.is_empty() => (false, rest),
                _ => return Err(bad("expected + or - between terms")),
            };
            let digits = after_sign.bytes().take_while(u8::is_ascii_digit).count();
            let (coeff, after_coeff) = if digits > 0 {
                let c: BigInt = after_sign[..digits].parse().map_err(|_| bad("bad coefficient"))?;
                let tail = after_sign[digits..].strip_prefix('*').ok_or_else(|| bad("expected * after coefficient"))?;
                (c, tail)
            } else {
                (BigInt::one(), after_sign)
            };
            let body = after_coeff.strip_prefix('[').ok_or_else(|| bad("expected ["))?;
            let close = body.find(']').ok_or_else(|| bad("unclosed ["))?;
            let dims = body[..close]
                .split(['x', 'X'])
                .map(|f| {
                    let n = f
                        .strip_prefix("CP")
                        .or_else(|| f.strip_prefix("cp"))
                        .ok_or_else(|| bad("factors look like CPn"))?;
                    match n.parse::<u32>() {
                        Ok(0) | Err(_) => Err(bad("factor dimension must be a positive integer")),
                        Ok(n) => Ok(n),
                    }
                })
                .collect::<Result<Vec<u32>>>()?;
            let key = Partition::new(dims)?;
            terms.push((key, if negative { -coeff } else { coeff }));
            rest = &body[close + 1..];
        }
        let dim = terms[0].0.weight();
        if let Some((k, _)) = terms.iter().find(|(k, _)| k.weight() != dim) {
            return Err(Error::Invalid(format!(
                "{s:?} is inhomogeneous: dimension {dim} and {}",
                k.weight()
            )));
        }
        Self::from_terms(dim, terms)
    }
}

impl FromStr for CobordismClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for CobordismClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            let factors: Vec<String> = k.parts().iter().map(|n| format!("CP{n}")).collect();
            write!(f, "[{}]", factors.join("x"))?;
        }
        Ok(())
    }
}
