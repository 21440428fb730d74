//! Exact Adams–Novikov E2 computations for the Thom spectra governing complex sections up to
//! cobordism, together with the characteristic-number criteria built on them.

pub mod error;
pub mod bpalgebra;
pub mod chern;
pub mod cli;
pub mod cobar;
pub mod comodules;
pub mod exactlin;

pub use error::{Error, Result};
