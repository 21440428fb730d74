use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::bpalgebra::{is_t, Generator, Monomial, Tensor};
use crate::comodules::{CoactionMode, Comodule, ComoduleSpec};
use crate::error::{Error, Result};
use crate::exactlin::{homology_at, AbelianGroupPresentation, ExactRational, IntMatrix};

/// Basis word `t^{α_1} | ... | t^{α_s} ⊗ m` of the reduced cobar complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CobarWord {
    pub gammas: Vec<Monomial>,
    pub module: Monomial,
}

impl CobarWord {
    pub fn new(gammas: Vec<Monomial>, module: Monomial) -> Self {
        CobarWord { gammas, module }
    }

    pub fn rank(&self) -> usize {
        self.gammas.len()
    }

    pub fn degree(&self, p: u64) -> u32 {
        self.gammas.iter().map(|g| g.degree(p)).sum::<u32>() + self.module.degree(p)
    }

    pub fn to_slots(&self) -> Vec<Monomial> {
        let mut v = self.gammas.clone();
        v.push(self.module.clone());
        v
    }

    pub fn from_slots(mut slots: Vec<Monomial>) -> Self {
        let module = slots.pop().expect("cobar word needs a module slot");
        CobarWord { gammas: slots, module }
    }

    /// Parses `t1 (x) t1^2 (x) B1^7`; the last factor is the module element.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split("(x)").map(str::trim).collect();
        let slots = parts.iter().map(|p| Monomial::parse(p)).collect::<Result<Vec<_>>>()?;
        let w = CobarWord::from_slots(slots);
        if w.gammas.iter().any(|g| g.is_one() || g.has_any(|x| !is_t(x))) {
            return Err(Error::Parse(format!("{s:?}: tensor slots must be nonempty t-monomials")));
        }
        Ok(w)
    }
}

impl fmt::Display for CobarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gammas {
            write!(f, "{g} (x) ")?;
        }
        write!(f, "{}", self.module)
    }
}

/// The reduced cobar complex `Γ̄^{⊗s} ⊗ M` of one comodule.
pub struct CobarComplex {
    comodule: Arc<Comodule>,
    gamma_cache: RwLock<HashMap<u32, Arc<Vec<Monomial>>>>,
}

impl fmt::Debug for CobarComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CobarComplex").field("comodule", &self.comodule).finish()
    }
}

impl CobarComplex {
    pub fn new(comodule: Arc<Comodule>) -> Self {
        CobarComplex {
            comodule,
            gamma_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn for_spec(spec: ComoduleSpec, mode: CoactionMode) -> Result<Self> {
        Ok(CobarComplex::new(Arc::new(Comodule::new(spec, mode)?)))
    }

    pub fn comodule(&self) -> &Arc<Comodule> {
        &self.comodule
    }

    pub fn spec(&self) -> &ComoduleSpec {
        self.comodule.spec()
    }

    pub fn p(&self) -> u64 {
        self.spec().p
    }

    /// Nonconstant `t`-monomials of degree `k`, in canonical order.
    pub fn reduced_gamma_basis(&self, k: u32) -> Arc<Vec<Monomial>> {
        if let Some(b) = self.gamma_cache.read().unwrap().get(&k) {
            return b.clone();
        }
        let p = self.p();
        let mut gens = Vec::new();
        for i in 1.. {
            let g = Generator::T(i);
            if g.degree(p) > k {
                break;
            }
            gens.push(g);
        }
        let mut out = Vec::new();
        if k > 0 {
            t_monomials(&gens, p, k, Monomial::one(), &mut out);
        }
        out.sort_by(|a, b| a.cmp_canonical(b));
        let out = Arc::new(out);
        self.gamma_cache.write().unwrap().insert(k, out.clone());
        out
    }

    /// Basis of `E_1^{s,t}` in canonical order: slot by slot by degree, then monomial order,
    /// then the module element.
    pub fn e1_basis(&self, s: u32, t: u32) -> Vec<CobarWord> {
        let mut out = Vec::new();
        if t % 2 == 1 || t > self.spec().degree_bound {
            return out;
        }
        let step = 2 * (self.p() as u32 - 1);
        let mut prefix = Vec::with_capacity(s as usize);
        self.words(s, t, step, &mut prefix, &mut out);
        out
    }

    fn words(&self, s: u32, t: u32, step: u32, prefix: &mut Vec<Monomial>, out: &mut Vec<CobarWord>) {
        if s == 0 {
            for m in self.comodule.basis(t) {
                out.push(CobarWord::new(prefix.clone(), m));
            }
            return;
        }
        let mut k = step;
        while k + step * (s - 1) <= t {
            for g in self.reduced_gamma_basis(k).iter() {
                prefix.push(g.clone());
                self.words(s - 1, t - k, step, prefix, out);
                prefix.pop();
            }
            k += step;
        }
    }

    /// `d_1` of one basis word, as a tensor with `s + 2` slots in normal form.
    ///
    /// `d(γ_1|…|γ_s|m) = Σ_i (-1)^i γ_1|…|Δ̄γ_i|…|m + (-1)^{s+1} γ_1|…|γ_s|ψ̄(m)`, except that
    /// `d(m) = ψ(m) - 1⊗m` on the zero line.
    pub fn d1(&self, w: &CobarWord) -> Result<Tensor> {
        let bp = self.comodule.algebra();
        let s = w.rank();
        let x = Tensor::word(w.to_slots(), ExactRational::from_integer(1.into()));
        let mut acc = Tensor::zero(s + 2);
        for i in 0..s {
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            let expanded = bp.right_normalize(&bp.delta_at(&x, i));
            acc.add_assign_scaled(&expanded, &ExactRational::from_integer(sign.into()));
        }
        let sign = if s == 0 || s % 2 == 1 { 1 } else { -1 };
        let psi = self.comodule.coaction_at_last(&x)?;
        acc.add_assign_scaled(&psi, &ExactRational::from_integer(sign.into()));
        Ok(acc.filter(|slots| slots[..=s].iter().all(|g| !g.is_one())))
    }

    /// Matrix of `d_1: E_1^{s,t} → E_1^{s+1,t}`; rows index the target basis, columns the source.
    pub fn d1_matrix(&self, s: u32, t: u32) -> Result<IntMatrix> {
        let source = self.e1_basis(s, t);
        let target = self.e1_basis(s + 1, t);
        self.d1_matrix_between(&source, &target)
    }

    pub fn d1_matrix_between(&self, source: &[CobarWord], target: &[CobarWord]) -> Result<IntMatrix> {
        let index: HashMap<Vec<Monomial>, usize> =
            target.iter().enumerate().map(|(i, w)| (w.to_slots(), i)).collect();
        let columns: Vec<Vec<(usize, BigInt)>> = source
            .par_iter()
            .map(|w| {
                let image = self.d1(w)?;
                let mut col = Vec::with_capacity(image.len());
                for (slots, c) in image.terms() {
                    let Some(&row) = index.get(slots) else {
                        let shown = CobarWord::from_slots(slots.clone());
                        return Err(Error::Dimension(format!("d1({w}) has term {shown} outside the target basis")));
                    };
                    if !c.is_integer() {
                        return Err(Error::Integrality {
                            context: format!("d1({w}) at {}", CobarWord::from_slots(slots.clone())),
                            value: c.to_string(),
                            p: self.p(),
                        });
                    }
                    col.push((row, c.to_integer()));
                }
                Ok(col)
            })
            .collect::<Result<_>>()?;
        let mut m = IntMatrix::zeros(target.len(), source.len());
        for (j, col) in columns.into_iter().enumerate() {
            for (i, v) in col {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// `E_2^{s,t}` localized at `p`.
    pub fn e2_group(&self, s: u32, t: u32) -> Result<AbelianGroupPresentation> {
        let outgoing = self.d1_matrix(s, t)?;
        let incoming = if s == 0 {
            IntMatrix::zeros(outgoing.cols(), 0)
        } else {
            self.d1_matrix(s - 1, t)?
        };
        homology_at(&incoming, &outgoing, self.p())
    }
}

fn t_monomials(gens: &[Generator], p: u64, k: u32, acc: Monomial, out: &mut Vec<Monomial>) {
    if k == 0 {
        out.push(acc);
        return;
    }
    let Some((&g, rest)) = gens.split_first() else {
        return;
    };
    let deg = g.degree(p);
    let mut e = 0u16;
    while e as u32 * deg <= k {
        t_monomials(rest, p, k - e as u32 * deg, acc.mul(&Monomial::power(g, e)), out);
        e += 1;
    }
}
