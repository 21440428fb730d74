use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::chart::{e2_chart, E2Chart};
use super::complex::CobarComplex;
use crate::bpalgebra::BpAlgebra;
use crate::comodules::{CoactionMode, Comodule, ComoduleSpec, Family};
use crate::error::{Error, Result};
use crate::exactlin::{homology_at, kernel_basis, AbelianGroupPresentation, IntMatrix};

/// `E_2` of `MTU(d)` from the chart of `MTUbar(d)`:
/// the zero line is the primitives of `MTU(d)`, the one line is
/// `coker(E_2^{0}(MU) → E_2^{0}(MTUbar(d)))`, and `E_2^{s+1,t}(MTU(d)) = E_2^{s,t}(MTUbar(d))` above.
pub fn mtu_chart_from_bar(bar: &E2Chart, mode: CoactionMode) -> Result<E2Chart> {
    let Family::MtuBar { d } = bar.family else {
        return Err(Error::Invalid(format!("expected an MTUbar chart, got {}", bar.family)));
    };
    let p = bar.p;
    let bound = bar.t_max + bar.t_max % 2;
    let bp = Arc::new(BpAlgebra::with_bound(p, bound)?);
    let engine = |family| -> Result<CobarComplex> {
        let spec = ComoduleSpec::new(family, p, bound)?;
        Ok(CobarComplex::new(Arc::new(Comodule::with_algebra(spec, mode, bp.clone())?)))
    };
    let mtu = engine(Family::Mtu { d })?;
    let mu = engine(Family::MuFull)?;
    let mtubar = engine(Family::MtuBar { d })?;

    let s_max = bar.s_max + 1;
    let mut chart = E2Chart::new(Family::Mtu { d }, p, s_max, bar.t_max);
    for t in (0..=bar.t_max).step_by(2) {
        chart.set(0, t, mtu.e2_group(0, t)?);
        chart.set(1, t, bar_cokernel(&mu, &mtubar, t)?);
        for s in 2..=s_max {
            chart.set(s, t, bar.get(s - 1, t));
        }
    }
    Ok(chart)
}

fn bar_cokernel(mu: &CobarComplex, mtubar: &CobarComplex, t: u32) -> Result<AbelianGroupPresentation> {
    let d0_bar = mtubar.d1_matrix(0, t)?;
    let bar_basis = mtubar.e1_basis(0, t);
    if bar_basis.is_empty() {
        return Ok(AbelianGroupPresentation::zero());
    }
    let mu_basis = mu.e1_basis(0, t);
    let primitives = kernel_basis(&mu.d1_matrix(0, t)?);
    let index: HashMap<_, _> = bar_basis.iter().enumerate().map(|(i, w)| (&w.module, i)).collect();
    let mut projection = IntMatrix::zeros(bar_basis.len(), primitives.cols());
    for (row, w) in mu_basis.iter().enumerate() {
        if let Some(&i) = index.get(&w.module) {
            for j in 0..primitives.cols() {
                projection.set(i, j, primitives.get(row, j).clone());
            }
        }
    }
    homology_at(&projection, &d0_bar, mu.p())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionRow {
    pub s: u32,
    pub t: u32,
    pub group: String,
    pub vanishes: bool,
    /// Whether the vanishing range `t < 2(p^2 - p + d' + 1)`, `d' = d - r`, covers this entry.
    pub predicted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub p: u64,
    pub d: u32,
    pub r: u32,
    pub rows: Vec<TorsionRow>,
}

impl TorsionReport {
    pub fn all_vanish(&self) -> bool {
        self.rows.iter().all(|r| r.vanishes)
    }

    /// Rows inside the predicted range that fail to vanish.
    pub fn violations(&self) -> Vec<&TorsionRow> {
        self.rows.iter().filter(|r| r.predicted && !r.vanishes).collect()
    }
}

/// Checks `E_2^{s,t}(MTUbar(d - r)) = 0` for `s` in `s_range` (each `s >= 2`) and even `t` in `t_window`.
pub fn torsion_vanishing_check(
    p: u64,
    d: u32,
    r: u32,
    s_range: std::ops::RangeInclusive<u32>,
    t_window: std::ops::RangeInclusive<u32>,
    mode: CoactionMode,
) -> Result<TorsionReport> {
    if r >= d {
        return Err(Error::Invalid(format!("need r < d, got d={d}, r={r}")));
    }
    if *s_range.start() < 2 {
        return Err(Error::Invalid("the check concerns s >= 2".into()));
    }
    let base = d - r;
    let mut report = TorsionReport { p, d, r, rows: Vec::new() };
    let ts: Vec<u32> = t_window.filter(|t| t % 2 == 0).collect();
    let Some(&t_max) = ts.iter().max() else {
        return Ok(report);
    };
    let spec = ComoduleSpec::new(Family::MtuBar { d: base }, p, t_max)?;
    let cobar = CobarComplex::for_spec(spec, mode)?;
    let chart = e2_chart(&cobar, *s_range.end(), t_max)?;
    let limit = 2 * (p * p - p + base as u64 + 1);
    for &t in &ts {
        for s in s_range.clone() {
            let g = chart.get(s, t);
            report.rows.push(TorsionRow {
                s,
                t,
                group: g.to_string(),
                vanishes: g.is_zero(),
                predicted: s == 2 && (t as u64) < limit,
            });
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialCandidate {
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub group: String,
}

/// Possible targets `(r, t + r - 1)`, `r >= 2`, of an Adams differential leaving `(0, t)`.
pub fn differential_candidates(chart: &E2Chart, source_t: u32) -> Vec<DifferentialCandidate> {
    (2..=chart.s_max)
        .filter_map(|r| {
            let t = source_t + r - 1;
            if t > chart.t_max {
                return None;
            }
            let g = chart.get(r, t);
            (!g.is_zero()).then(|| DifferentialCandidate {
                r,
                s: r,
                t,
                group: g.to_string(),
            })
        })
        .collect()
}
