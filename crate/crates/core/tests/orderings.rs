use std::sync::Arc;

use proptest::prelude::*;

use ordercalc::affine::{bs_conradian, smirnov_oracle, SmirnovParam, BS};
use ordercalc::catalog::{enumerate_cn_corderings, enumerate_t_orderings, h_ordering_parse};
use ordercalc::dynreal::induced_ordering;
use ordercalc::exact::{int, Quad};
use ordercalc::free::{build_glued, f2_ordering, magnus, verify_density, FreeGroup, ReducedWord};
use ordercalc::order::{
    agreement_radius, bi_invariance_check, conradian_check, inverse_check, semigroup_check,
    totality_check, Agreement, Ball, ConradianResult, Element, Group, Oracle,
};
use ordercalc::thompson::{FOrdering, IsoKind, ThompsonF};
use ordercalc::z2::Z2Ordering;
use ordercalc::Sign;

fn cone_axioms<E: Element>(o: &Oracle<E>, r: usize) {
    let ball = Ball::new(o.group().as_ref(), r);
    assert!(totality_check(o, &ball).is_ok(), "{}", o.descriptor());
    assert!(inverse_check(o, &ball).is_ok(), "{}", o.descriptor());
    assert!(semigroup_check(o, &ball).is_ok(), "{}", o.descriptor());
}

#[test]
fn every_module_yields_positive_cones() {
    for o in enumerate_t_orderings(2).unwrap() {
        cone_axioms(&o, 3);
    }
    for o in enumerate_cn_corderings(1).unwrap() {
        cone_axioms(&o, 2);
    }
    cone_axioms(&h_ordering_parse("h:z2:psi:1/2:minus:-").unwrap(), 3);
    let bs = BS::new(2).unwrap();
    cone_axioms(&smirnov_oracle(bs, &SmirnovParam::parse("1/3:plus").unwrap()), 3);
    for k in 1..=4 {
        cone_axioms(&bs_conradian(bs, k).unwrap(), 3);
    }
    cone_axioms(&Z2Ordering::parse("z2:psi:0-1*sqrt(2)").unwrap().oracle(), 4);
    cone_axioms(&f2_ordering("abelflip:z2:psi:inf:plus").unwrap(), 3);
    cone_axioms(&FOrdering::Isolated(IsoKind::OneXPlusMP).oracle(), 2);
}

#[test]
fn bi_orderings_are_conjugation_invariant() {
    let f2 = FreeGroup::f2();
    let ball = Ball::new(&f2, 2);
    assert!(bi_invariance_check(&magnus(f2), &ball, ball.within(1)).is_ok());
    let th = Ball::new(&ThompsonF, 2);
    let o = FOrdering::parse("thompson:lambda:z2:psi:1/2:plus:xminus-").unwrap().oracle();
    assert!(bi_invariance_check(&o, &th, th.within(1)).is_ok());
}

#[test]
fn tararin_orderings_are_conradian_and_smirnov_is_not() {
    for o in enumerate_t_orderings(3).unwrap() {
        assert_eq!(conradian_check(&o, &Ball::new(o.group().as_ref(), 2)), ConradianResult::Pass);
    }
    let bs = BS::new(3).unwrap();
    let s = smirnov_oracle(bs, &SmirnovParam::irrational(Quad::sqrt2()).unwrap());
    assert!(matches!(conradian_check(&s, &Ball::new(&bs, 3)), ConradianResult::Witness { .. }));
}

#[test]
fn glued_action_induces_each_seed_after_conjugation() {
    let seeds: Vec<(usize, Oracle<ReducedWord>)> = ["magnus", "abel:z2:psi:1/2:minus"]
        .iter()
        .map(|d| (2, f2_ordering(d).unwrap()))
        .collect();
    let ga = build_glued(&seeds).unwrap();
    assert!(verify_density(&ga, &seeds).iter().all(|c| c.passed()));
    // The induced ordering based at 0 is the first seed itself.
    let ind = induced_ordering(Arc::new(ga.action()), vec![int(0)]).unwrap();
    assert_eq!(agreement_radius(&ind, &seeds[0].1, 2), Agreement::AgreeUpToBound);
}

fn z2_desc() -> impl Strategy<Value = String> {
    (-4i64..=4, 1i64..=4, prop::bool::ANY).prop_map(|(p, q, plus)| {
        format!("z2:psi:{p}/{q}:{}", if plus { "plus" } else { "minus" })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reverse_negates_signs(d in z2_desc(), m in -5i64..=5, n in -5i64..=5) {
        let o = Z2Ordering::parse(&d).unwrap().oracle();
        prop_assert_eq!(o.reverse().sign(&(m, n)), -o.sign(&(m, n)));
    }

    #[test]
    fn conjugating_f2_orderings_conjugates_signs(w in "[abAB]{0,4}", h in "[abAB]{0,3}") {
        let f2 = FreeGroup::f2();
        let (w, h) = (f2.word(&w).unwrap(), f2.word(&h).unwrap());
        let o = magnus(f2);
        let c = o.conjugate(&h).unwrap();
        prop_assert_eq!(c.sign(&w), o.sign(&f2.conj(&h, &w)));
        prop_assert_eq!(c.sign(&f2.identity()), Sign::Zero);
    }
}
