use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{binomial, ExactRational};

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`, from `sum_{k=0}^{n} C(n+1,k) B_k = 0`.
pub fn bernoulli_table(n: usize) -> Vec<ExactRational> {
    let mut table: Vec<ExactRational> = Vec::with_capacity(n + 1);
    table.push(ExactRational::one());
    for m in 1..=n {
        if m > 1 && m % 2 == 1 {
            table.push(ExactRational::zero());
            continue;
        }
        let mut acc = ExactRational::zero();
        for (k, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += ExactRational::from_integer(binomial(m as u64 + 1, k as u64)) * b;
            }
        }
        table.push(-acc / ExactRational::from_integer(BigInt::from(m + 1)));
    }
    table
}

pub fn bernoulli(n: usize) -> ExactRational {
    bernoulli_table(n).pop().expect("table is nonempty")
}
