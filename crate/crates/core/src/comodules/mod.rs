//! Comodule families inside `BP_*(MU)` and their coactions in right-normal form.

mod coaction;
mod crosscheck;
mod family;

pub use coaction::{CoactionMode, Comodule};
pub use crosscheck::printed_cross_check;
pub use family::{cmp_basis, ComoduleSpec, Family};

#[cfg(test)]
mod tests;
