use num_bigint::BigInt;
use proptest::prelude::*;
use sections_core::bpalgebra::{BpAlgebra, Generator, Poly};
use sections_core::exactlin::{count_partitions_at_most, elementary_divisors, partitions, IntMatrix};

/// Euler's pentagonal-number recurrence for p(n).
fn pentagonal(n: usize) -> Vec<u64> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n as i64 {
        let mut k = 1i64;
        let mut acc = 0i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[(m - g1) as usize];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += sign * p[(m - g2) as usize];
            }
            k += 1;
        }
        p[m as usize] = acc;
    }
    p.into_iter().map(|x| x as u64).collect()
}

#[test]
fn partition_counts_match_pentagonal_recurrence() {
    let want = pentagonal(40);
    for n in 0..=40u32 {
        assert_eq!(count_partitions_at_most(n, n), want[n as usize], "n={n}");
        if n <= 20 {
            assert_eq!(partitions(n, None, None).len() as u64, want[n as usize]);
        }
    }
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..10, c), r))
}

/// An invertible integer matrix: a product of elementary operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -3i64..4), 0..8).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, k) in ops {
            if i == j {
                continue;
            }
            let mut e = IntMatrix::identity(n);
            e.set(i, j, BigInt::from(k));
            m = e.mul(&m);
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn snf_is_invariant_under_unimodular_change((rows, u, v) in small_matrix().prop_flat_map(|rows| {
        let (r, c) = (rows.len(), rows[0].len());
        (Just(rows), unimodular(r), unimodular(c))
    })) {
        let a = IntMatrix::from_rows(&rows);
        let b = u.mul(&a).mul(&v);
        prop_assert_eq!(elementary_divisors(&a), elementary_divisors(&b));
    }

    #[test]
    fn right_unit_is_multiplicative(i in 1u16..3, j in 1u16..3, a in 0u32..3, b in 0u32..3, p in prop::sample::select(vec![2u64, 3])) {
        let bp = BpAlgebra::with_bound(p, 48).unwrap();
        let x = Poly::generator(Generator::V(i)).pow(a);
        let y = Poly::generator(Generator::V(j)).add(&Poly::generator(Generator::V(1)).pow(2)).pow(b);
        let lhs = bp.eta_r(&x.mul(&y)).unwrap();
        let rhs = bp.eta_r(&x).unwrap().mul(&bp.eta_r(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
