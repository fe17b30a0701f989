mod common;

use condgeo::formula::{extension, parse, parse_prop, Formula, OneStep, ParsedFormula, Prop};
use condgeo::WorldSet;
use proptest::prelude::*;

use common::{one_step_over, prop_over, valuation_from_masks};

const LETTERS: &[&str] = &["p", "q", "r", "s1"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn one_step_round_trip(f in one_step_over(LETTERS)) {
        let text = ParsedFormula::from(f.clone()).to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(back.formula(), &Formula::Level1(f));
    }

    #[test]
    fn prop_round_trip(f in prop_over(LETTERS)) {
        let text = ParsedFormula::from(f.clone()).to_string();
        prop_assert_eq!(parse_prop(&text).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn extension_is_a_homomorphism(
        a in prop_over(LETTERS),
        b in prop_over(LETTERS),
        n in 0usize..=8,
        masks in prop::collection::vec(any::<u64>(), 4),
    ) {
        let v = valuation_from_masks(LETTERS, n, &masks);
        let ea = extension(&a, n, &v).unwrap();
        let eb = extension(&b, n, &v).unwrap();
        prop_assert_eq!(extension(&Prop::or(a.clone(), b.clone()), n, &v).unwrap(), &ea | &eb);
        prop_assert_eq!(extension(&Prop::and(a.clone(), b.clone()), n, &v).unwrap(), &ea & &eb);
        prop_assert_eq!(extension(&Prop::not(a.clone()), n, &v).unwrap(), !&ea);
        prop_assert_eq!(
            extension(&Prop::implies(a.clone(), b.clone()), n, &v).unwrap(),
            extension(&Prop::or(Prop::not(a.clone()), b.clone()), n, &v).unwrap()
        );
        prop_assert_eq!(extension(&Prop::Top, n, &v).unwrap(), WorldSet::full(n));
        prop_assert_eq!(extension(&Prop::Bot, n, &v).unwrap(), WorldSet::empty(n));
    }

    #[test]
    fn letters_are_exactly_those_in_the_tree(f in one_step_over(LETTERS)) {
        let parsed = ParsedFormula::from(f.clone());
        let mut found = std::collections::BTreeSet::new();
        f.for_each_conditional(&mut |a, c| {
            a.collect_letters(&mut found);
            c.collect_letters(&mut found);
        });
        prop_assert_eq!(parsed.letters(), &found);
    }
}

#[test]
fn conditional_over_a_disjunction_parses() {
    let parsed = parse("(p|q) ~> r").unwrap();
    let expected = OneStep::cond(Prop::or(Prop::letter("p"), Prop::letter("q")), Prop::letter("r"));
    assert_eq!(parsed.formula(), &Formula::Level1(expected));
    assert_eq!(parsed.to_string(), "(p | q) ~> r");
}

#[test]
fn negated_conditional_renders_minimally() {
    let f = OneStep::not(OneStep::cond(Prop::Top, Prop::letter("r")));
    assert_eq!(ParsedFormula::from(f).to_string(), "~(T ~> r)");
}
