use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::*;
use crate::exactlin::{kernel_basis, partitions, ExactRational, IntMatrix, Partition};

fn part(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn class(s: &str) -> CobordismClass {
    CobordismClass::parse(s).unwrap()
}

/// `s_w` from Chern roots: `CP^n` has `n+1` roots equal to its hyperplane class `x`.
/// Sums every distinct placement of the parts of `w` on the roots and reads off the
/// coefficient of the fundamental class `x_1^{n_1} ... x_k^{n_k}`.
fn chern_root_oracle(factors: &[u32], w: &Partition) -> i64 {
    let owner: Vec<usize> = factors
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| std::iter::repeat(i).take(n as usize + 1))
        .collect();
    let mut exponents: Vec<u32> = w.parts().to_vec();
    exponents.resize(owner.len().max(exponents.len()), 0);
    if exponents.len() > owner.len() {
        return 0;
    }
    exponents.sort_unstable();
    let mut total = 0;
    loop {
        let mut degree = vec![0u32; factors.len()];
        for (slot, &e) in exponents.iter().enumerate() {
            degree[owner[slot]] += e;
        }
        if degree.as_slice() == factors {
            total += 1;
        }
        if !next_permutation(&mut exponents) {
            return total;
        }
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[test]
fn small_numbers() {
    assert_eq!(s_number(&class("[CP2]"), &part(&[2])), 3.into());
    assert_eq!(s_number(&class("[CP2]"), &part(&[1, 1])), 3.into());
    assert_eq!(s_number(&class("[CP1xCP1]"), &part(&[1, 1])), 4.into());
    assert_eq!(s_number(&class("[CP1xCP1]"), &part(&[2])), 0.into());
    assert_eq!(s_number(&class("[CP2]"), &part(&[1])), 0.into());
    assert_eq!(s_number(&class("[CP3]"), &part(&[3])), 4.into());
}

#[test]
fn splitting_formula_matches_chern_roots() {
    for d in 1..=4u32 {
        for prod in partitions(d, None, None) {
            let c = CobordismClass::product(prod.parts()).unwrap();
            for w in partitions(d, None, None) {
                let want = chern_root_oracle(prod.parts(), &w);
                assert_eq!(s_number(&c, &w), want.into(), "{c} {w}");
            }
        }
    }
}

#[test]
fn euler_characteristic_is_top_number() {
    for d in 1..=6u32 {
        for prod in partitions(d, None, None) {
            let c = CobordismClass::product(prod.parts()).unwrap();
            assert_eq!(euler_char(&c), s_number(&c, &Partition::hook(1, d)), "{c}");
        }
    }
    assert_eq!(euler_char(&class("[CP2]")), 3.into());
    assert_eq!(euler_char(&class("[CP1xCP1]")), 4.into());
    assert_eq!(euler_char(&class("3*[CP1xCP1]-4*[CP2]")), 0.into());
}

#[test]
fn total_chern_number_sweep() {
    // Σ_w s_w(CP^n) counts placements of any exponent pattern; compare with the root oracle
    for n in 1..=6u32 {
        let c = CobordismClass::cp(n).unwrap();
        let sum: BigInt = partitions(n, None, None).iter().map(|w| s_number(&c, w)).sum();
        let oracle: i64 = partitions(n, None, None).iter().map(|w| chern_root_oracle(&[n], w)).sum();
        assert_eq!(sum, oracle.into());
    }
}

#[test]
fn class_grammar() {
    let c = class("3*[CP1xCP1]-4*[CP2]");
    assert_eq!(c.dim(), 2);
    assert_eq!(c.to_string(), "3*[CP1xCP1]-4*[CP2]");
    assert_eq!(class(" -4 * [CP2] + 3*[CP1 x CP1] "), c);
    assert_eq!(class("[CP1xCP2]").to_string(), "[CP2xCP1]");
    assert_eq!(class("[CP2]-[CP2]").to_string(), "0");
    assert_eq!(class("[CP2]+[CP2]").to_string(), "2*[CP2]");
    for bad in ["", "[CP2", "3[CP2]", "[CP0]", "[CPx]", "[CP2]*3", "[CP2][CP2]", "+[CP2]"] {
        assert!(matches!(CobordismClass::parse(bad), Err(crate::Error::Parse(_))), "{bad:?}");
    }
    assert!(matches!(CobordismClass::parse("[CP2]+[CP1]"), Err(crate::Error::Invalid(_))));
    let sum = c.add(&CobordismClass::cp(2).unwrap().scale(&4.into())).unwrap();
    assert_eq!(sum.to_string(), "3*[CP1xCP1]");
    assert!(c.add(&CobordismClass::cp(3).unwrap()).is_err());
}

#[test]
fn rational_obstructions() {
    let o = rational_obstruction(&class("[CP1xCP1]"), 1).unwrap();
    assert!(!o.vanishes);
    assert_eq!(o.witnesses, [part(&[1, 1])]);
    assert!(rational_obstruction(&class("3*[CP1xCP1]-4*[CP2]"), 1).unwrap().vanishes);
    assert!(!rational_obstruction(&class("3*[CP1xCP1]-4*[CP2]"), 2).unwrap().vanishes);
    assert!(rational_obstruction(&class("[CP3]"), 0).unwrap().vanishes);
    assert!(rational_obstruction(&class("[CP3]"), 4).is_err());
}

#[test]
fn obstruction_is_monotone() {
    let mut rng = 0x2545f491u64;
    let mut next = || {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        rng
    };
    for d in 2..=6u32 {
        let types = partitions(d, None, None);
        for _ in 0..20 {
            let terms = types
                .iter()
                .map(|t| (t.clone(), BigInt::from((next() % 7) as i64 - 3)))
                .filter(|(_, c)| !c.is_zero());
            let c = CobordismClass::from_terms(d, terms).unwrap();
            let vanish: Vec<bool> = (0..=d).map(|r| rational_obstruction(&c, r).unwrap().vanishes).collect();
            for r in 1..=d as usize {
                assert!(!vanish[r] || vanish[r - 1], "{c} r={r}");
            }
        }
    }
}

/// Bernoulli numbers by the Akiyama–Tanigawa algorithm, independent of the library recurrence.
/// This variant yields B_1 = +1/2; only even indices are used.
fn bernoulli_akiyama_tanigawa(n: usize) -> ExactRational {
    let mut a: Vec<ExactRational> = Vec::new();
    for m in 0..=n {
        a.push(ExactRational::new(1.into(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * ExactRational::from_integer(BigInt::from(j));
        }
    }
    a[0].clone()
}

#[test]
fn a_values() {
    let ints = |d| a_d(d).unwrap().integer().unwrap();
    assert_eq!(ints(1), 6.into());
    assert_eq!(ints(2), 60.into());
    assert_eq!(ints(3), 504.into());
    // 5 = 4 + 1 is prime, so the quotient by 5 applies
    assert_eq!(ints(4), 720.into());
    assert_eq!(a_d(4).unwrap().divided_by, Some(5));
    assert_eq!(a_d(5).unwrap().divided_by, None);
    assert!(matches!(a_d(6).unwrap().integer(), Err(crate::Error::NonIntegerA { d: 6, .. })));
    assert!(a_d(0).is_err());
    for d in 1..=8u32 {
        let mut fact = BigInt::from(1);
        for k in 2..=(d + 1) {
            fact *= k;
        }
        let mut want = ExactRational::from_integer(fact) / bernoulli_akiyama_tanigawa(2 * d as usize).abs();
        if let Some(p) = prime_power_base(d as u64 + 1) {
            want /= ExactRational::from_integer(p.into());
        }
        assert_eq!(a_d(d).unwrap().value, want, "d={d}");
    }
}

#[test]
fn prime_powers() {
    let got: Vec<(u64, Option<u64>)> = (1..=12).map(|n| (n, prime_power_base(n))).collect();
    let want = [
        (1, None),
        (2, Some(2)),
        (3, Some(3)),
        (4, Some(2)),
        (5, Some(5)),
        (6, None),
        (7, Some(7)),
        (8, Some(2)),
        (9, Some(3)),
        (10, None),
        (11, Some(11)),
        (12, None),
    ];
    assert_eq!(got, want);
}

#[test]
fn refinements() {
    assert_eq!(partition_refinements(&part(&[2])), [part(&[2]), part(&[1, 1])]);
    assert_eq!(partition_refinements(&part(&[1, 1])), [part(&[1, 1])]);
    assert_eq!(partition_refinements(&part(&[2, 1])), [part(&[2, 1]), part(&[1, 1, 1])]);
    assert_eq!(partition_refinements(&part(&[4])).len(), 5);
    let r22 = partition_refinements(&part(&[2, 2]));
    assert_eq!(r22, [part(&[2, 2]), part(&[2, 1, 1]), part(&[1, 1, 1, 1])]);
}

#[test]
fn lcm_bounds() {
    let b = lcm_bound(&part(&[2]), 1).unwrap();
    assert_eq!(b.multiplier, 180.into());
    assert_eq!(b.table, [(part(&[2]), 60.into()), (part(&[1, 1]), 36.into())]);
    assert_eq!(lcm_bound(&part(&[1]), 1).unwrap().multiplier, 6.into());
    assert_eq!(lcm_bound(&part(&[1, 1]), 2).unwrap().multiplier, 36.into());
    assert!(lcm_bound(&Partition::empty(), 1).is_err());
    assert!(lcm_bound(&part(&[2]), 3).is_err());
    assert!(matches!(lcm_bound(&part(&[6]), 1), Err(crate::Error::NonIntegerA { .. })));
}

/// Integer classes of dimension `d` killing `s_w` for every listed `w`.
fn kernel_classes(d: u32, killed: &[Partition]) -> Vec<CobordismClass> {
    let types = partitions(d, None, None);
    let rows: Vec<Vec<BigInt>> = killed
        .iter()
        .map(|w| types.iter().map(|t| s_number(&CobordismClass::product(t.parts()).unwrap(), w)).collect())
        .collect();
    let k = kernel_basis(&IntMatrix::from_rows(&rows));
    (0..k.cols())
        .map(|j| {
            let terms = types.iter().enumerate().map(|(i, t)| (t.clone(), k.get(i, j).clone()));
            CobordismClass::from_terms(d, terms).unwrap()
        })
        .collect()
}

fn first_with(classes: &[CobordismClass], pred: impl Fn(&SectionReport) -> bool) -> SectionReport {
    let mut sums = classes.to_vec();
    for a in classes {
        for b in classes {
            sums.push(a.add(b).unwrap());
        }
    }
    sums.iter().map(section_report).find(|r| pred(r)).expect("no class found")
}

#[test]
fn report_two_sections_in_dimension_six() {
    let killed = [Partition::hook(1, 6), Partition::hook(2, 6)];
    let classes = kernel_classes(6, &killed);
    for c in &classes {
        assert!(euler_char(c).is_zero());
    }
    let r = first_with(&classes, |r| r.rational_max_r == 2);
    assert_eq!((r.guaranteed_r, r.multiplier.clone()), (2, Some(1.into())));
    let len4: Vec<Partition> = partitions(6, Some(4), None);
    let r = first_with(&kernel_classes(6, &len4), |r| r.rational_max_r == 3);
    assert_eq!((r.guaranteed_r, r.multiplier.clone()), (3, Some(1.into())));
}

#[test]
fn report_four_sections_in_odd_dimension() {
    let len4: Vec<Partition> = partitions(7, Some(4), None);
    let r = first_with(&kernel_classes(7, &len4), |r| r.rational_max_r == 4);
    assert_eq!((r.guaranteed_r, r.multiplier.clone()), (4, Some(1.into())));
    let len5: Vec<Partition> = partitions(8, Some(5), None);
    let r = first_with(&kernel_classes(8, &len5), |r| r.rational_max_r == 4);
    assert_eq!(r.guaranteed_r, 3);
    assert_ne!(r.multiplier, Some(1.into()));
}

#[test]
fn report_small_dimensions() {
    let r = section_report(&class("3*[CP1xCP1]-4*[CP2]"));
    assert_eq!((r.d, r.rational_max_r, r.guaranteed_r), (2, 1, 1));
    assert_eq!(r.multiplier, Some(1.into()));
    assert_eq!(r.witnesses, [(2, vec![part(&[2])])]);
    let r = section_report(&class("[CP1xCP1]"));
    assert_eq!(r.rational_max_r, 0);
    assert_eq!(r.witnesses[0], (1, vec![part(&[1, 1])]));
    // rational room for one section in dimension 4 with no theorem covering r = 1
    let classes = kernel_classes(4, &[Partition::hook(1, 4)]);
    let r = first_with(&classes, |r| r.rational_max_r == 1);
    assert_eq!(r.guaranteed_r, 0);
    let m = r.multiplier.clone().unwrap();
    assert!(m.is_positive());
    let json = r.to_json_value();
    assert_eq!(json["guaranteed_r"], 0);
    assert_eq!(json["multiplier"], m.to_string());
}

#[test]
fn certification_rules() {
    assert!(certify(5, 0, false).is_some());
    assert!(certify(5, 4, false).is_some());
    assert!(certify(5, 3, false).is_none());
    assert!(certify(6, 3, false).is_some());
    assert!(certify(6, 4, false).is_none());
    assert!(certify(7, 4, false).is_some());
    assert!(certify(9, 5, false).is_none());
    assert!(certify(3, 3, true).is_some());
    assert!(certify(3, 3, false).is_none());
}

#[test]
fn zero_class_report() {
    let zero = CobordismClass::zero(3);
    let r = section_report(&zero);
    assert_eq!((r.rational_max_r, r.guaranteed_r), (3, 3));
    let counts: BTreeMap<u32, usize> = r.witnesses.iter().map(|(k, v)| (*k, v.len())).collect();
    assert!(counts.is_empty());
}
