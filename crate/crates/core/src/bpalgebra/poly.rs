use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{Generator, Monomial};
use crate::exactlin::ExactRational;

/// Polynomial with exact rational coefficients over the generator families.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, ExactRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::monomial(Monomial::one(), ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn integer(c: i64) -> Self {
        Poly::constant(ExactRational::from_integer(BigInt::from(c)))
    }

    pub fn generator(g: Generator) -> Self {
        Poly::monomial(Monomial::generator(g), ExactRational::one())
    }

    pub fn monomial(m: Monomial, c: ExactRational) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, ExactRational)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactRational {
        self.terms.get(m).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: ExactRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Poly, c: &ExactRational) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &ExactRational::one());
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-ExactRational::one());
        out
    }

    pub fn scale(&self, c: &ExactRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-ExactRational::one())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &ExactRational) -> Poly {
        let mut out = Poly::zero();
        for (a, x) in &self.terms {
            out.add_term(a.mul(m), x * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Ring homomorphism sending each generator `g` to `image(g)`, or to itself when `None`.
    pub fn substitute(&self, image: &dyn Fn(Generator) -> Option<Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            let mut fixed = Monomial::one();
            for (g, e) in m.factors() {
                match image(g) {
                    Some(img) => term = term.mul(&img.pow(e as u32)),
                    None => fixed = fixed.mul(&Monomial::power(g, e)),
                }
            }
            out.add_assign_scaled(&term.mul_monomial(&fixed, &ExactRational::one()), &ExactRational::one());
        }
        out
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops monomials of degree above `bound`.
    pub fn truncate(&self, p: u64, bound: u32) -> Poly {
        self.filter(|m| m.degree(p) <= bound)
    }

    pub fn is_homogeneous(&self, p: u64) -> Option<u32> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.degree(p);
            match deg {
                None => deg = Some(d),
                Some(x) if x != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// First coefficient whose denominator is divisible by `p`.
    pub fn non_p_integral(&self, p: u64) -> Option<(&Monomial, &ExactRational)> {
        self.terms
            .iter()
            .find(|(_, c)| !crate::exactlin::is_p_integral(c, p))
    }
}

pub(crate) fn fmt_coefficient(c: &ExactRational, leading: bool, is_unit: bool) -> String {
    let neg = c.is_negative();
    let a = c.abs();
    let mag = if a.is_one() && !is_unit {
        String::new()
    } else if a.is_integer() {
        format!("{} ", a.numer())
    } else {
        format!("{}/{} ", a.numer(), a.denom())
    };
    let mag = if is_unit { mag.trim_end().to_string() } else { mag };
    match (leading, neg) {
        (true, false) => mag,
        (true, true) => format!("-{mag}"),
        (false, false) => format!(" + {mag}"),
        (false, true) => format!(" - {mag}"),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let unit = m.is_one();
            write!(f, "{}", fmt_coefficient(c, i == 0, unit))?;
            if !unit {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}
