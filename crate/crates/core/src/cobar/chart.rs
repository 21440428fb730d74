use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::complex::CobarComplex;
use crate::comodules::Family;
use crate::error::{Error, Result};
use crate::exactlin::{homology_at, AbelianGroupPresentation, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub name: String,
    pub s: u32,
    pub t: u32,
}

/// `E_2^{s,t}` over a window `0 <= s <= s_max`, `0 <= t <= t_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Chart {
    pub family: Family,
    pub p: u64,
    pub s_max: u32,
    pub t_max: u32,
    pub entries: BTreeMap<(u32, u32), AbelianGroupPresentation>,
    pub annotations: Vec<Annotation>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    s: u32,
    t: u32,
    free_rank: usize,
    torsion: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct ChartJson {
    family: String,
    d: Option<u32>,
    r: Option<u32>,
    p: u64,
    s_max: u32,
    t_max: u32,
    entries: Vec<EntryJson>,
    annotations: Vec<Annotation>,
}

impl E2Chart {
    pub fn new(family: Family, p: u64, s_max: u32, t_max: u32) -> Self {
        E2Chart {
            family,
            p,
            s_max,
            t_max,
            entries: BTreeMap::new(),
            annotations: Vec::new(),
        }
    }

    /// Entry at `(s, t)`; zero outside the stored entries.
    pub fn get(&self, s: u32, t: u32) -> AbelianGroupPresentation {
        self.entries.get(&(s, t)).cloned().unwrap_or_default()
    }

    /// Stores a group; zero groups are not stored.
    pub fn set(&mut self, s: u32, t: u32, g: AbelianGroupPresentation) {
        if g.is_zero() {
            self.entries.remove(&(s, t));
        } else {
            self.entries.insert((s, t), g);
        }
    }

    pub fn in_window(&self, s: u32, t: u32) -> bool {
        s <= self.s_max && t <= self.t_max
    }

    /// Nonzero entries ordered by `t`, then `s`.
    pub fn nonzero(&self) -> Vec<(u32, u32, &AbelianGroupPresentation)> {
        let mut v: Vec<_> = self
            .entries
            .iter()
            .filter(|(_, g)| !g.is_zero())
            .map(|(&(s, t), g)| (s, t, g))
            .collect();
        v.sort_by_key(|&(s, t, _)| (t, s));
        v
    }

    pub fn to_json(&self) -> String {
        let j = ChartJson {
            family: self.family.name().to_string(),
            d: self.family.d(),
            r: self.family.r(),
            p: self.p,
            s_max: self.s_max,
            t_max: self.t_max,
            entries: self
                .nonzero()
                .into_iter()
                .map(|(s, t, g)| EntryJson {
                    s,
                    t,
                    free_rank: g.free_rank,
                    torsion: g.torsion_u64(),
                })
                .collect(),
            annotations: self.annotations.clone(),
        };
        serde_json::to_string_pretty(&j).expect("chart serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: ChartJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let need_d = || j.d.ok_or_else(|| Error::Parse("chart family needs d".into()));
        let family = match j.family.as_str() {
            "sphere" => Family::Sphere,
            "mu" => Family::MuFull,
            "mtu" => Family::Mtu { d: need_d()? },
            "mtubar" => Family::MtuBar { d: need_d()? },
            "mtu-pair" => Family::MtuPair {
                d: need_d()?,
                r: j.r.ok_or_else(|| Error::Parse("chart family needs r".into()))?,
            },
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        };
        let mut chart = E2Chart::new(family, j.p, j.s_max, j.t_max);
        for e in j.entries {
            let g = AbelianGroupPresentation::new(e.free_rank, e.torsion.into_iter().map(BigInt::from));
            chart.set(e.s, e.t, g);
        }
        chart.annotations = j.annotations;
        Ok(chart)
    }

    /// Grid with stems `t - s` as columns and filtration `s` as rows, highest `s` on top.
    pub fn to_text(&self) -> String {
        let cells: Vec<(u32, u32, String)> = self
            .nonzero()
            .into_iter()
            .map(|(s, t, g)| (s, t - s.min(t), short_group(g)))
            .collect();
        let mut out = String::new();
        let _ = writeln!(out, "{} at p={}, s <= {}, t <= {}", self.family, self.p, self.s_max, self.t_max);
        if cells.is_empty() {
            out.push_str("(all entries zero)\n");
            return out;
        }
        let lo = cells.iter().map(|c| c.1).min().unwrap();
        let hi = cells.iter().map(|c| c.1).max().unwrap();
        let width = cells.iter().map(|c| c.2.len()).max().unwrap().max(hi.to_string().len()).max(3) + 1;
        for s in (0..=self.s_max).rev() {
            let _ = write!(out, "{s:>3} |");
            for n in lo..=hi {
                let label = cells
                    .iter()
                    .find(|c| c.0 == s && c.1 == n)
                    .map_or(".".to_string(), |c| c.2.clone());
                let _ = write!(out, "{label:>width$}");
            }
            out.push('\n');
        }
        let _ = write!(out, "    +{}\n     ", "-".repeat(width * (hi - lo + 1) as usize));
        for n in lo..=hi {
            let _ = write!(out, "{n:>width$}");
        }
        out.push_str("   (t-s)\n");
        for a in &self.annotations {
            let _ = writeln!(out, "{} at (s,t) = ({},{})", a.name, a.s, a.t);
        }
        out
    }
}

fn short_group(g: &AbelianGroupPresentation) -> String {
    let mut parts = Vec::new();
    match g.free_rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    let mut counts: BTreeMap<BigInt, usize> = BTreeMap::new();
    for f in &g.invariant_factors {
        *counts.entry(f.clone()).or_default() += 1;
    }
    for (f, c) in counts {
        if c == 1 {
            parts.push(format!("Z/{f}"));
        } else {
            parts.push(format!("(Z/{f})^{c}"));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// All `d_1` matrices needed for column `t`: `d_1^{s,t}` for `s = 0..=s_max`.
fn column(cobar: &CobarComplex, s_max: u32, t: u32) -> Result<Vec<AbelianGroupPresentation>> {
    let p = cobar.p();
    let bases: Vec<_> = (0..=s_max + 1).map(|s| cobar.e1_basis(s, t)).collect();
    let mats: Vec<IntMatrix> = (0..=s_max)
        .map(|s| cobar.d1_matrix_between(&bases[s as usize], &bases[s as usize + 1]))
        .collect::<Result<_>>()?;
    (0..=s_max)
        .map(|s| {
            let out = &mats[s as usize];
            if out.cols() == 0 {
                return Ok(AbelianGroupPresentation::zero());
            }
            let incoming = if s == 0 {
                IntMatrix::zeros(out.cols(), 0)
            } else {
                mats[s as usize - 1].clone()
            };
            homology_at(&incoming, out, p)
        })
        .collect()
}

/// `E_2` chart of a cobar complex; columns are computed in parallel.
pub fn e2_chart(cobar: &CobarComplex, s_max: u32, t_max: u32) -> Result<E2Chart> {
    let spec = *cobar.spec();
    if t_max > spec.degree_bound {
        return Err(Error::DegreeBound {
            degree: t_max,
            bound: spec.degree_bound,
        });
    }
    let ts: Vec<u32> = (0..=t_max).step_by(2).collect();
    let columns: Vec<(u32, Vec<AbelianGroupPresentation>)> = ts
        .par_iter()
        .map(|&t| column(cobar, s_max, t).map(|c| (t, c)))
        .collect::<Result<_>>()?;
    let mut chart = E2Chart::new(spec.family, spec.p, s_max, t_max);
    for (t, groups) in columns {
        for (s, g) in groups.into_iter().enumerate() {
            chart.set(s as u32, t, g);
        }
    }
    if spec.family == Family::Sphere {
        chart.annotations = sphere_annotations(spec.p)
            .into_iter()
            .filter(|a| chart.in_window(a.s, a.t))
            .collect();
    }
    Ok(chart)
}

fn sphere_annotations(p: u64) -> Vec<Annotation> {
    if p == 2 {
        vec![
            Annotation { name: "h1".into(), s: 1, t: 2 },
            Annotation { name: "h2".into(), s: 1, t: 4 },
        ]
    } else {
        vec![Annotation {
            name: "alpha1".into(),
            s: 1,
            t: (2 * p - 2) as u32,
        }]
    }
}
