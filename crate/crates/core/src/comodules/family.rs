use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bpalgebra::{is_v, Generator, GeneratorTable, Monomial};
use crate::error::{Error, Result};

/// The comodules studied here, as windows on the `B`-degree inside `BP_*(MU)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Sphere,
    MuFull,
    /// `B`-degree at most `d`.
    Mtu { d: u32 },
    /// Quotient by `B`-degree at most `d`.
    MtuBar { d: u32 },
    /// `B`-degree in `(d - r, d]`.
    MtuPair { d: u32, r: u32 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Sphere => "sphere",
            Family::MuFull => "mu",
            Family::Mtu { .. } => "mtu",
            Family::MtuBar { .. } => "mtubar",
            Family::MtuPair { .. } => "mtu-pair",
        }
    }

    /// Builds a family from its `name()` and parameters.
    pub fn from_parts(name: &str, d: Option<u32>, r: Option<u32>) -> Result<Self> {
        let need = |x: Option<u32>, what: &str| x.ok_or_else(|| Error::Invalid(format!("family {name} needs {what}")));
        let f = match name {
            "sphere" | "S" => Family::Sphere,
            "mu" | "MU" => Family::MuFull,
            "mtu" => Family::Mtu { d: need(d, "d")? },
            "mtubar" => Family::MtuBar { d: need(d, "d")? },
            "mtu-pair" => Family::MtuPair {
                d: need(d, "d")?,
                r: need(r, "r")?,
            },
            _ => return Err(Error::Parse(format!("unknown family {name:?}"))),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn d(&self) -> Option<u32> {
        match *self {
            Family::Mtu { d } | Family::MtuBar { d } | Family::MtuPair { d, .. } => Some(d),
            _ => None,
        }
    }

    pub fn r(&self) -> Option<u32> {
        match *self {
            Family::MtuPair { r, .. } => Some(r),
            _ => None,
        }
    }

    /// Inclusive range of admissible `B`-degrees.
    pub fn b_window(&self) -> (u32, Option<u32>) {
        match *self {
            Family::Sphere => (0, Some(0)),
            Family::MuFull => (0, None),
            Family::Mtu { d } => (0, Some(d)),
            Family::MtuBar { d } => (d + 1, None),
            Family::MtuPair { d, r } => (d - r + 1, Some(d)),
        }
    }

    pub fn admits(&self, b_length: u32) -> bool {
        let (lo, hi) = self.b_window();
        b_length >= lo && hi.map_or(true, |h| b_length <= h)
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Family::Mtu { d } | Family::MtuBar { d } if d == 0 => {
                Err(Error::Invalid("d must be at least 1".into()))
            }
            Family::MtuPair { d, r } if d == 0 || r == 0 || r > d => {
                Err(Error::Invalid(format!("need 1 <= r <= d, got d={d}, r={r}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Sphere => write!(f, "S"),
            Family::MuFull => write!(f, "MU"),
            Family::Mtu { d } => write!(f, "MTU({d})"),
            Family::MtuBar { d } => write!(f, "MTUbar({d})"),
            Family::MtuPair { d, r } => write!(f, "MTU({d},{r})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ComoduleSpec {
    pub family: Family,
    pub p: u64,
    pub degree_bound: u32,
}

impl ComoduleSpec {
    pub fn new(family: Family, p: u64, degree_bound: u32) -> Result<Self> {
        family.validate()?;
        GeneratorTable::new(p, degree_bound)?;
        Ok(ComoduleSpec {
            family,
            p,
            degree_bound,
        })
    }

    pub fn table(&self) -> GeneratorTable {
        GeneratorTable {
            p: self.p,
            degree_bound: self.degree_bound,
        }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.family.admits(m.b_length()) && m.degree(self.p) <= self.degree_bound
    }

    /// Monomials `v^β B^γ` of internal degree `t` in the window, in canonical order.
    pub fn basis(&self, t: u32) -> Vec<Monomial> {
        if t % 2 == 1 || t > self.degree_bound {
            return Vec::new();
        }
        let mut gens: Vec<(Generator, u32)> = Vec::new();
        for i in 1.. {
            let g = Generator::V(i);
            if g.degree(self.p) > t {
                break;
            }
            gens.push((g, g.degree(self.p)));
        }
        if self.family != Family::Sphere {
            for j in 1..=(t / 2) as u16 {
                gens.push((Generator::B(j), 2 * j as u32));
            }
        }
        let mut out = Vec::new();
        monomials_of_degree(&gens, t, Monomial::one(), &mut out);
        out.retain(|m| self.family.admits(m.b_length()));
        out.sort_by(|a, b| cmp_basis(self.p, a, b));
        out
    }
}

/// Canonical basis order: `v`-degree ascending, then `Monomial::cmp_canonical`.
pub fn cmp_basis(p: u64, a: &Monomial, b: &Monomial) -> Ordering {
    let vd = |m: &Monomial| m.only(is_v).degree(p);
    vd(a).cmp(&vd(b)).then_with(|| a.cmp_canonical(b))
}

fn monomials_of_degree(gens: &[(Generator, u32)], t: u32, acc: Monomial, out: &mut Vec<Monomial>) {
    if t == 0 {
        out.push(acc);
        return;
    }
    let Some((&(g, deg), rest)) = gens.split_first() else {
        return;
    };
    let mut e = 0u16;
    while (e as u32) * deg <= t {
        let next = acc.mul(&Monomial::power(g, e));
        monomials_of_degree(rest, t - e as u32 * deg, next, out);
        e += 1;
    }
}
