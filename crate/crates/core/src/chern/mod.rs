//! Chern numbers of products of projective spaces and the section-count obstructions built on them.

mod class;
mod numbers;
mod report;

pub use class::CobordismClass;
pub use numbers::{
    a_d, euler_char, lcm_bound, partition_refinements, prime_power_base, rational_obstruction, s_number, AValue,
    LcmBound, RationalObstruction,
};
pub use report::{certify, section_report, SectionReport};

#[cfg(test)]
mod tests;
