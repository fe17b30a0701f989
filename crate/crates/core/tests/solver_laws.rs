mod common;

use std::collections::BTreeSet;

use condgeo::formula::{parse_one_step, OneStep};
use condgeo::solver::{
    decide_class_validity, decide_validity_small, find_countermodel, Countermodel, ModelClass, SolverError, Verdict,
};
use condgeo::ConditionalModel;
use proptest::prelude::*;

use common::{one_step_over, prop_over, schemata, two_letter_pool, DELTA_2, GAMMA_1, GAMMA_2};

const TWO: &[&str] = &["p", "q"];

fn refuted(v: &Verdict, f: &OneStep) -> bool {
    match v.countermodel() {
        Some(c) => {
            assert!(!c.holds(f), "emitted countermodel satisfies the formula");
            if let Countermodel::Line(line) = c {
                assert!(!line.to_plane().holds(f).unwrap());
            }
            true
        }
        None => false,
    }
}

#[test]
fn schema_instances_over_a_pool_are_valid() {
    let pool = two_letter_pool();
    for a in &pool {
        for b in &pool {
            for c in &pool {
                for (name, f) in schemata(a, b, c) {
                    assert_eq!(decide_validity_small(&f).unwrap(), Verdict::Valid { exhaustive: true }, "{name}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn random_schema_instances_are_valid(a in prop_over(TWO), b in prop_over(TWO), c in prop_over(TWO)) {
        for (name, f) in schemata(&a, &b, &c) {
            prop_assert!(decide_validity_small(&f).unwrap().is_valid(), "{}", name);
        }
    }

    #[test]
    fn class_searches_agree_with_the_small_decision(f in one_step_over(TWO)) {
        let small = decide_validity_small(&f).unwrap();
        let small_refutes = refuted(&small, &f);
        for class in [
            ModelClass::AllGeometries(4),
            ModelClass::LineModels(5),
            ModelClass::ChainUpsets(4),
            ModelClass::PosetUpsets(4),
        ] {
            let v = decide_class_validity(&f, class).unwrap();
            if refuted(&v, &f) {
                prop_assert!(small_refutes, "{:?} refutes a formula decided valid", class);
            }
        }
        let all = decide_class_validity(&f, ModelClass::AllGeometries(4)).unwrap();
        prop_assert_eq!(refuted(&all, &f), small_refutes);
        if !small_refutes {
            prop_assert_eq!(all, Verdict::Valid { exhaustive: true });
        }
    }

    #[test]
    fn random_search_only_returns_real_countermodels(f in one_step_over(&["p", "q", "r"]), seed in any::<u64>()) {
        let v = find_countermodel(&f, 200, seed).unwrap();
        refuted(&v, &f);
        prop_assert_eq!(find_countermodel(&f, 200, seed).unwrap(), v);
    }
}

#[test]
fn gamma_one_separates_chains_from_geometries() {
    let g1 = parse_one_step(GAMMA_1).unwrap();
    assert!(decide_class_validity(&g1, ModelClass::ChainUpsets(4)).unwrap().is_valid());
    assert!(refuted(&decide_class_validity(&g1, ModelClass::AllGeometries(4)).unwrap(), &g1));
    assert!(refuted(&decide_validity_small(&g1).unwrap(), &g1));
    let line = decide_class_validity(&g1, ModelClass::LineModels(2)).unwrap();
    match line.countermodel() {
        Some(Countermodel::Line(l)) => {
            let p: BTreeSet<String> = ["p".to_string()].into();
            let q: BTreeSet<String> = ["q".to_string()].into();
            assert_eq!(l.len(), 2);
            assert!(l.profiles == vec![p.clone(), q.clone()] || l.profiles == vec![q, p]);
        }
        other => panic!("expected a line countermodel, got {other:?}"),
    }
}

#[test]
fn gamma_one_fails_on_posets() {
    let g1 = parse_one_step(GAMMA_1).unwrap();
    assert!(refuted(&decide_class_validity(&g1, ModelClass::PosetUpsets(3)).unwrap(), &g1));
}

#[test]
fn random_search_refutes_the_separating_formulas() {
    for (text, budget) in [(GAMMA_1, 100_000), (GAMMA_2, 100_000), (DELTA_2, 10_000_000)] {
        let f = parse_one_step(text).unwrap();
        let v = find_countermodel(&f, budget, 0).unwrap();
        assert!(refuted(&v, &f), "{text}");
    }
}

#[test]
fn guards() {
    let f = parse_one_step("(p ~> q) & (r ~> p)").unwrap();
    assert!(matches!(decide_validity_small(&f), Err(SolverError::TooManyLetters { found: 3, max: 2 })));
    assert!(matches!(
        decide_class_validity(&f, ModelClass::AllGeometries(6)),
        Err(SolverError::BoundExceeded { .. })
    ));
    assert!(matches!(
        decide_class_validity(&f, ModelClass::LineModels(9)),
        Err(SolverError::BoundExceeded { .. })
    ));
    assert!(matches!(
        decide_class_validity(&f, ModelClass::PosetUpsets(6)),
        Err(SolverError::BoundExceeded { .. })
    ));
}

#[test]
fn bounded_valid_verdicts_are_not_exhaustive() {
    let f = parse_one_step("(p ~> q) -> (p ~> q | r)").unwrap();
    assert_eq!(decide_class_validity(&f, ModelClass::AllGeometries(4)).unwrap(), Verdict::Valid { exhaustive: false });
    let g = parse_one_step("p ~> p").unwrap();
    assert_eq!(decide_class_validity(&g, ModelClass::AllGeometries(2)).unwrap(), Verdict::Valid { exhaustive: true });
    assert_eq!(decide_class_validity(&g, ModelClass::LineModels(4)).unwrap(), Verdict::Valid { exhaustive: false });
}
