use num_traits::One;

use super::*;
use crate::bpalgebra::{is_v, Monomial, Tensor};
use crate::error::Error;
use crate::exactlin::ExactRational;

fn mono(s: &str) -> Monomial {
    Monomial::parse(s).unwrap()
}

fn word(c: i64, l: &str, r: &str) -> Tensor {
    Tensor::word(vec![mono(l), mono(r)], ExactRational::from_integer(c.into()))
}

fn sum(ws: &[Tensor]) -> Tensor {
    ws.iter().fold(Tensor::zero(2), |a, b| a.add(b))
}

fn comodule(family: Family, p: u64, bound: u32, mode: CoactionMode) -> Comodule {
    Comodule::new(ComoduleSpec::new(family, p, bound).unwrap(), mode).unwrap()
}

/// Partitions of n into at most k parts, by the standard two-index recursion.
fn partitions_at_most(n: u32, k: u32) -> u64 {
    if n == 0 {
        return 1;
    }
    if k == 0 {
        return 0;
    }
    if k > n {
        return partitions_at_most(n, n);
    }
    partitions_at_most(n, k - 1) + partitions_at_most(n - k, k)
}

#[test]
fn bar_basis_examples() {
    let spec = ComoduleSpec::new(Family::MtuBar { d: 6 }, 2, 20).unwrap();
    let show = |t| spec.basis(t).iter().map(|m| m.to_string()).collect::<Vec<_>>();
    assert_eq!(show(14), ["B1^7"]);
    assert_eq!(show(16), ["B2 B1^6", "B1^8", "v1 B1^7"]);
    assert_eq!(
        show(18),
        ["B3 B1^6", "B2^2 B1^5", "B2 B1^7", "B1^9", "v1 B2 B1^6", "v1 B1^8", "v1^2 B1^7"]
    );
    assert!(show(12).is_empty());
    assert!(show(15).is_empty());
}

#[test]
fn basis_counts_match_partitions() {
    for d in 1..=5u32 {
        let sub = ComoduleSpec::new(Family::Mtu { d }, 2, 28).unwrap();
        let pair = ComoduleSpec::new(Family::MtuPair { d, r: 1 }, 2, 28).unwrap();
        for n in 0..=14u32 {
            let b_only = |s: &ComoduleSpec| s.basis(2 * n).iter().filter(|m| !m.has_any(is_v)).count() as u64;
            assert_eq!(b_only(&sub), partitions_at_most(n, d), "MTU({d}) n={n}");
            let exact = if n >= d { partitions_at_most(n - d, d) } else { 0 };
            assert_eq!(b_only(&pair), exact, "MTU({d},1) n={n}");
        }
    }
}

fn int(n: i64) -> ExactRational {
    ExactRational::from_integer(n.into())
}

#[test]
fn generator_coactions() {
    for mode in [CoactionMode::Derived, CoactionMode::PaperTable] {
        let c = comodule(Family::MuFull, 2, 12, mode);
        assert_eq!(c.coaction_b(0).unwrap(), word(1, "1", "1"));
        assert_eq!(c.coaction_b(1).unwrap(), sum(&[word(1, "1", "B1"), word(1, "t1", "1")]));
        let b2 = c.coaction_b(2).unwrap();
        assert_eq!(b2.coefficient(&[mono("t1"), mono("B1")]), int(2));
        assert!(b2.coefficient(&[mono("1"), mono("B2")]).is_one());
        let b3 = c.algebra().left_normalize(&c.coaction_b(3).unwrap());
        assert_eq!(b3.coefficient(&[mono("t1"), mono("B2")]), int(3));
        assert!(b3.coefficient(&[mono("1"), mono("B3")]).is_one());
    }
    let paper = comodule(Family::MuFull, 2, 12, CoactionMode::PaperTable);
    let b3 = paper.algebra().left_normalize(&paper.coaction_b(3).unwrap());
    assert_eq!(b3.coefficient(&[mono("t1^2"), mono("B1")]), int(1));
    assert_eq!(b3.coefficient(&[mono("v1 t1"), mono("B1")]), int(-2));

    // The coassociative coaction differs from the printed one in the B1 coefficient of
    // psi(B3) and in the terms (x) 1.
    let derived = comodule(Family::MuFull, 2, 12, CoactionMode::Derived);
    let b2 = derived.algebra().left_normalize(&derived.coaction_b(2).unwrap());
    assert_eq!(b2.coefficient(&[mono("v1 t1"), mono("1")]), int(1));
    assert_eq!(b2.coefficient(&[mono("t1^2"), mono("1")]), int(2));
    let b3 = derived.algebra().left_normalize(&derived.coaction_b(3).unwrap());
    assert_eq!(b3.coefficient(&[mono("t1^2"), mono("B1")]), int(5));
    assert_eq!(b3.coefficient(&[mono("v1 t1"), mono("B1")]), int(2));
}

#[test]
fn printed_bar_coactions() {
    for d in [4u32, 5, 6, 7] {
        for mode in [CoactionMode::Derived, CoactionMode::PaperTable] {
            let c = comodule(Family::MtuBar { d }, 2, 2 * d + 6, mode);
            let b = |s: String| mono(&s);
            assert_eq!(
                c.coaction(&b(format!("B1^{}", d + 1))).unwrap(),
                word(1, "1", &format!("B1^{}", d + 1))
            );
            assert_eq!(
                c.coaction(&b(format!("B2 B1^{d}"))).unwrap(),
                sum(&[word(2, "t1", &format!("B1^{}", d + 1)), word(1, "1", &format!("B2 B1^{d}"))])
            );
            assert_eq!(
                c.coaction(&b(format!("B1^{}", d + 2))).unwrap(),
                sum(&[
                    word(1, "1", &format!("B1^{}", d + 2)),
                    word(d as i64 + 2, "t1", &format!("B1^{}", d + 1))
                ])
            );
            assert_eq!(
                c.coaction(&b(format!("v1 B1^{}", d + 1))).unwrap(),
                sum(&[word(1, "1", &format!("v1 B1^{}", d + 1)), word(-2, "t1", &format!("B1^{}", d + 1))])
            );
        }
    }
}

fn check_comodule_axioms(c: &Comodule, t_max: u32) {
    let bp = c.algebra();
    for t in (0..=t_max).step_by(2) {
        for x in c.basis(t) {
            let psi = c.coaction(&x).unwrap();
            assert!(psi.is_integral(), "{x}");
            let back = bp.counit_at(&psi, 0);
            assert_eq!(back, Tensor::word(vec![x.clone()], ExactRational::one()), "counit on {x}");
            let lhs = bp.right_normalize(&bp.delta_at(&psi, 0));
            let rhs = bp.right_normalize(&c.coaction_at_last(&psi).unwrap());
            assert_eq!(lhs, rhs, "coassociativity on {x} in {} ({})", c.spec().family, c.mode());
        }
    }
}

#[test]
fn comodule_axioms_derived() {
    check_comodule_axioms(&comodule(Family::MuFull, 2, 14, CoactionMode::Derived), 14);
    check_comodule_axioms(&comodule(Family::Sphere, 2, 16, CoactionMode::Derived), 16);
    check_comodule_axioms(&comodule(Family::Mtu { d: 3 }, 2, 14, CoactionMode::Derived), 14);
    check_comodule_axioms(&comodule(Family::MtuBar { d: 4 }, 2, 16, CoactionMode::Derived), 16);
    check_comodule_axioms(&comodule(Family::MtuPair { d: 4, r: 2 }, 2, 14, CoactionMode::Derived), 14);
    check_comodule_axioms(&comodule(Family::MuFull, 3, 16, CoactionMode::Derived), 16);
    check_comodule_axioms(&comodule(Family::MtuBar { d: 2 }, 3, 18, CoactionMode::Derived), 18);
}

#[test]
fn printed_coaction_is_not_coassociative_on_b3() {
    let c = comodule(Family::MuFull, 2, 6, CoactionMode::PaperTable);
    check_comodule_axioms(&comodule(Family::MuFull, 2, 4, CoactionMode::PaperTable), 4);
    let bp = c.algebra();
    let psi = c.coaction(&mono("B3")).unwrap();
    let lhs = bp.right_normalize(&bp.delta_at(&psi, 0));
    let rhs = bp.right_normalize(&c.coaction_at_last(&psi).unwrap());
    assert_ne!(lhs, rhs);
}

#[test]
fn pair_bottom_class_is_primitive() {
    for d in 1..=5u32 {
        let c = comodule(Family::MtuPair { d, r: 1 }, 2, 2 * d, CoactionMode::Derived);
        let x = mono(&format!("B1^{d}"));
        assert_eq!(c.coaction(&x).unwrap(), Tensor::word(vec![Monomial::one(), x.clone()], ExactRational::one()));
    }
}

#[test]
fn mode_errors() {
    let spec = ComoduleSpec::new(Family::MuFull, 3, 12).unwrap();
    assert!(matches!(Comodule::new(spec, CoactionMode::PaperTable), Err(Error::ModeUnavailable(_))));
    let c = comodule(Family::MuFull, 2, 10, CoactionMode::PaperTable);
    assert!(matches!(c.coaction_b(4), Err(Error::ModeUnavailable(_))));
    assert!(matches!(c.coaction(&mono("B4")), Err(Error::ModeUnavailable(_))));
    let sub = comodule(Family::Mtu { d: 2 }, 2, 10, CoactionMode::Derived);
    assert!(matches!(sub.coaction(&mono("B1^3")), Err(Error::WindowViolation(_))));
    assert!(ComoduleSpec::new(Family::MtuPair { d: 2, r: 3 }, 2, 10).is_err());
}

#[test]
fn coaction_text() {
    let c = comodule(Family::MtuBar { d: 6 }, 2, 16, CoactionMode::Derived);
    let psi = c.coaction(&mono("B2 B1^6")).unwrap();
    assert_eq!(c.format_coaction(&psi), "2 t1 (x) B1^7 + 1 (x) B2 B1^6");
}
