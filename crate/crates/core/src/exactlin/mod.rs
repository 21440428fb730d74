//! Exact integer and rational linear algebra, Bernoulli numbers and partitions.

mod bernoulli;
mod matrix;
mod partition;
mod snf;

use num_bigint::BigInt;
use num_traits::One;

pub use bernoulli::{bernoulli, bernoulli_table};
pub use matrix::IntMatrix;
pub use partition::{count_partitions_at_most, monomial_symmetric_at_ones, partitions, Partition};
pub use snf::{
    cokernel, elementary_divisors, homology_at, kernel_basis, p_part, rank, smith_normal_form,
    AbelianGroupPresentation, SmithNormalForm,
};

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type ExactRational = num_rational::BigRational;

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// True when the reduced denominator of `q` is prime to `p`.
pub fn is_p_integral(q: &ExactRational, p: u64) -> bool {
    use num_traits::Zero;
    !(q.denom() % BigInt::from(p)).is_zero()
}
