//! Reduced cobar complexes, `d_1` matrices, `E_2` charts and the range checks built on them.

mod analysis;
mod chart;
mod complex;

pub use analysis::{
    differential_candidates, mtu_chart_from_bar, torsion_vanishing_check, DifferentialCandidate, TorsionReport,
    TorsionRow,
};
pub use chart::{e2_chart, Annotation, E2Chart};
pub use complex::{CobarComplex, CobarWord};

#[cfg(test)]
mod tests;
