use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::{fmt_coefficient, Poly};
use crate::exactlin::ExactRational;

/// Element of an iterated tensor product `X_1 ⊗_A ... ⊗_A X_k`, stored as a sum of
/// monomial words. A `v` appearing in slot `i` means left multiplication on that slot.
/// Words are not normalized here; see `BpAlgebra::right_normalize`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    slots: usize,
    terms: BTreeMap<Vec<Monomial>, ExactRational>,
}

impl Tensor {
    pub fn zero(slots: usize) -> Self {
        Tensor {
            slots,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(slots: usize) -> Self {
        Tensor::word(vec![Monomial::one(); slots], ExactRational::one())
    }

    pub fn word(word: Vec<Monomial>, c: ExactRational) -> Self {
        let mut t = Tensor::zero(word.len());
        t.add_term(word, c);
        t
    }

    /// Elementary tensor of polynomials, one per slot.
    pub fn from_polys(polys: &[Poly]) -> Self {
        let mut out = Tensor::unit(polys.len());
        for (i, p) in polys.iter().enumerate() {
            out = out.mul_slot(i, p);
        }
        out
    }

    pub fn slots(&self) -> usize {
        self.slots
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &ExactRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Vec<Monomial>, ExactRational)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, word: &[Monomial]) -> ExactRational {
        self.terms.get(word).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn add_term(&mut self, word: Vec<Monomial>, c: ExactRational) {
        debug_assert_eq!(word.len(), self.slots);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Tensor, c: &ExactRational) {
        assert_eq!(self.slots, other.slots, "tensor rank mismatch");
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_assign_scaled(other, &ExactRational::one());
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-ExactRational::one());
        out
    }

    pub fn scale(&self, c: &ExactRational) -> Tensor {
        let mut out = Tensor::zero(self.slots);
        out.add_assign_scaled(self, c);
        out
    }

    /// Slotwise product. Valid for the ring structure on `Γ ⊗_A ... ⊗_A Γ`.
    pub fn mul(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.slots, other.slots, "tensor rank mismatch");
        let mut out = Tensor::zero(self.slots);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let w: Vec<Monomial> = a.iter().zip(b).map(|(m, n)| m.mul(n)).collect();
                out.add_term(w, x * y);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Tensor {
        let mut result = Tensor::unit(self.slots);
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

    /// Multiplies slot `i` by a polynomial.
    pub fn mul_slot(&self, i: usize, p: &Poly) -> Tensor {
        let mut out = Tensor::zero(self.slots);
        for (w, x) in &self.terms {
            for (m, y) in p.terms() {
                let mut w2 = w.clone();
                w2[i] = w2[i].mul(m);
                out.add_term(w2, x * y);
            }
        }
        out
    }

    /// Replaces slot `i` of every word by the words of `f(slot_i)`, widening the rank.
    pub fn expand_slot(&self, i: usize, f: &mut dyn FnMut(&Monomial) -> Tensor) -> Tensor {
        let mut cache: BTreeMap<Monomial, Tensor> = BTreeMap::new();
        let mut out: Option<Tensor> = None;
        for (w, x) in &self.terms {
            let img = cache.entry(w[i].clone()).or_insert_with(|| f(&w[i]));
            let acc = out.get_or_insert_with(|| Tensor::zero(self.slots - 1 + img.slots));
            for (u, y) in img.terms() {
                let mut w2 = Vec::with_capacity(acc.slots);
                w2.extend_from_slice(&w[..i]);
                w2.extend(u.iter().cloned());
                w2.extend_from_slice(&w[i + 1..]);
                acc.add_term(w2, x * y);
            }
        }
        out.unwrap_or_else(|| Tensor::zero(self.slots))
    }

    pub fn filter(&self, keep: impl Fn(&[Monomial]) -> bool) -> Tensor {
        Tensor {
            slots: self.slots,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_words(&self, f: impl Fn(&[Monomial]) -> Vec<Monomial>) -> Tensor {
        let mut out: Option<Tensor> = None;
        for (w, c) in &self.terms {
            let w2 = f(w);
            out.get_or_insert_with(|| Tensor::zero(w2.len())).add_term(w2, c.clone());
        }
        out.unwrap_or_else(|| Tensor::zero(self.slots))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            write!(f, "{}", fmt_coefficient(c, i == 0, false))?;
            let parts: Vec<String> = w.iter().map(|m| m.to_string()).collect();
            write!(f, "{}", parts.join(" (x) "))?;
        }
        Ok(())
    }
}
