use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::family::{ComoduleSpec, Family};
use crate::bpalgebra::{b_series_coproduct, is_b, is_v, BpAlgebra, Generator, Monomial, Poly, Tensor};
use crate::error::{Error, Result};
use crate::exactlin::ExactRational;

/// Source of the coaction on the generators `B_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoactionMode {
    /// `ψ(b)(x) = b(h(x))` from the structure maps; see `BpAlgebra::coaction_series`.
    Derived,
    /// The printed values for `B_1, B_2, B_3` at `p = 2`.
    PaperTable,
}

impl fmt::Display for CoactionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoactionMode::Derived => "derived",
            CoactionMode::PaperTable => "paper_table",
        })
    }
}

impl FromStr for CoactionMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "derived" => Ok(CoactionMode::Derived),
            "paper_table" | "paper-table" | "table" => Ok(CoactionMode::PaperTable),
            _ => Err(Error::Parse(format!("unknown coaction mode {s:?}"))),
        }
    }
}

/// A comodule from one of the families, with cached coaction data.
pub struct Comodule {
    spec: ComoduleSpec,
    mode: CoactionMode,
    bp: Arc<BpAlgebra>,
    psi_b: Vec<Tensor>,
    cache: RwLock<HashMap<Monomial, Arc<Tensor>>>,
}

impl fmt::Debug for Comodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Comodule")
            .field("spec", &self.spec)
            .field("mode", &self.mode)
            .finish()
    }
}

fn left_word(c: i64, left: &str, right: &str) -> Tensor {
    let m = |s: &str| Monomial::parse(s).expect("static monomial");
    Tensor::word(vec![m(left), m(right)], ExactRational::from_integer(c.into()))
}

/// The printed coactions, in left form.
fn paper_psi_b(i: u16) -> Tensor {
    let terms: &[(i64, &str, &str)] = match i {
        0 => &[(1, "1", "1")],
        1 => &[(1, "1", "B1"), (1, "t1", "1")],
        2 => &[(1, "1", "B2"), (2, "t1", "B1"), (1, "t1^2", "1")],
        3 => &[
            (1, "1", "B3"),
            (3, "t1", "B2"),
            (1, "t1^2", "B1"),
            (-2, "v1 t1", "B1"),
            (1, "t2", "1"),
        ],
        _ => unreachable!(),
    };
    terms
        .iter()
        .fold(Tensor::zero(2), |acc, &(c, l, r)| acc.add(&left_word(c, l, r)))
}

impl Comodule {
    pub fn new(spec: ComoduleSpec, mode: CoactionMode) -> Result<Self> {
        let bp = Arc::new(BpAlgebra::new(spec.table())?);
        Comodule::with_algebra(spec, mode, bp)
    }

    /// Shares structure tables; `bp` must have the same prime and at least the spec's bound.
    pub fn with_algebra(spec: ComoduleSpec, mode: CoactionMode, bp: Arc<BpAlgebra>) -> Result<Self> {
        if bp.p() != spec.p || bp.degree_bound() < spec.degree_bound {
            return Err(Error::Invalid("structure tables do not cover the comodule".into()));
        }
        let max_b = if spec.family == Family::Sphere { 0 } else { (spec.degree_bound / 2) as u16 };
        let psi_b = match mode {
            CoactionMode::Derived => {
                let h = bp.coaction_series(max_b)?;
                (0..=max_b)
                    .map(|i| bp.right_normalize(&b_series_coproduct(i, &h)))
                    .collect()
            }
            CoactionMode::PaperTable => {
                if spec.p != 2 {
                    return Err(Error::ModeUnavailable(format!(
                        "printed coactions exist only at p=2, not p={}",
                        spec.p
                    )));
                }
                (0..=max_b.min(3)).map(|i| bp.right_normalize(&paper_psi_b(i))).collect()
            }
        };
        Ok(Comodule {
            spec,
            mode,
            bp,
            psi_b,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn spec(&self) -> &ComoduleSpec {
        &self.spec
    }

    pub fn mode(&self) -> CoactionMode {
        self.mode
    }

    pub fn algebra(&self) -> &Arc<BpAlgebra> {
        &self.bp
    }

    pub fn basis(&self, t: u32) -> Vec<Monomial> {
        self.spec.basis(t)
    }

    /// `ψ(B_i)` in right-normal form, untruncated.
    pub fn coaction_b(&self, i: u16) -> Result<Tensor> {
        self.psi_b.get(i as usize).cloned().ok_or_else(|| match self.mode {
            CoactionMode::PaperTable if i > 3 => {
                Error::ModeUnavailable(format!("no printed coaction for B{i}"))
            }
            _ => Error::DegreeBound {
                degree: 2 * i as u32,
                bound: self.spec.degree_bound,
            },
        })
    }

    /// Coaction on `v^β B^γ` inside `BP_*(MU)`, right-normalized, before any window truncation.
    pub fn coaction_full(&self, x: &Monomial) -> Result<Arc<Tensor>> {
        if let Some(t) = self.cache.read().unwrap().get(x) {
            return Ok(t.clone());
        }
        let (vpart, bpart) = x.split(is_v);
        if bpart.has_any(|g| !is_b(g)) {
            return Err(Error::Invalid(format!("{x} is not a comodule monomial")));
        }
        let mut acc = Tensor::unit(2);
        for (g, e) in bpart.factors() {
            if let Generator::B(i) = g {
                acc = acc.mul(&self.coaction_b(i)?.pow(e as u32));
            }
        }
        if !vpart.is_one() {
            acc = self.bp.right_normalize(&acc.mul_slot(0, &Poly::monomial(vpart, ExactRational::one())));
        }
        let acc = Arc::new(acc);
        self.cache.write().unwrap().insert(x.clone(), acc.clone());
        Ok(acc)
    }

    /// Applies the family window to the module slot (last slot) of a tensor.
    /// Terms below the window are dropped; terms above it are an error.
    pub fn truncate(&self, x: &Tensor) -> Result<Tensor> {
        let (lo, hi) = self.spec.family.b_window();
        let last = x.slots() - 1;
        for (w, _) in x.terms() {
            let len = w[last].b_length();
            if hi.is_some_and(|h| len > h) {
                return Err(Error::WindowViolation(format!(
                    "{} has B-degree {len} in {}",
                    w[last], self.spec.family
                )));
            }
        }
        Ok(x.filter(|w| w[last].b_length() >= lo))
    }

    /// `ψ(x)` for a basis element `x` of the family.
    pub fn coaction(&self, x: &Monomial) -> Result<Tensor> {
        if !self.spec.family.admits(x.b_length()) {
            return Err(Error::WindowViolation(format!("{x} is not in {}", self.spec.family)));
        }
        self.truncate(&*self.coaction_full(x)?)
    }

    /// `ψ` extended linearly to the module slot of a tensor; the result gains a slot.
    pub fn coaction_at_last(&self, x: &Tensor) -> Result<Tensor> {
        let last = x.slots() - 1;
        let mut err = None;
        let out = x.expand_slot(last, &mut |m| match self.coaction(m) {
            Ok(t) => t,
            Err(e) => {
                err.get_or_insert(e);
                Tensor::zero(2)
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// Renders `ψ(x)` with terms ordered by `Γ`-degree descending, e.g. `2 t1 (x) B1^7 + 1 (x) B2 B1^6`.
    pub fn format_coaction(&self, psi: &Tensor) -> String {
        let p = self.spec.p;
        let mut terms: Vec<(&Vec<Monomial>, &ExactRational)> = psi.terms().collect();
        terms.sort_by(|(a, _), (b, _)| {
            b[0].degree(p)
                .cmp(&a[0].degree(p))
                .then_with(|| a[0].cmp_canonical(&b[0]))
                .then_with(|| super::family::cmp_basis(p, &a[1], &b[1]))
        });
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (w, c)) in terms.iter().enumerate() {
            let neg = c < &&ExactRational::from_integer(0.into());
            let mag = if neg { -(*c).clone() } else { (*c).clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if w[0].is_one() {
                s.push_str(&format!("{mag} (x) {}", w[1]));
            } else if mag.is_one() {
                s.push_str(&format!("{} (x) {}", w[0], w[1]));
            } else {
                s.push_str(&format!("{mag} {} (x) {}", w[0], w[1]));
            }
        }
        s
    }
}
