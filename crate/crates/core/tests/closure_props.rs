use cmael_core::{closure, extended_closure, parse, Closure, Coalition, Formula, Universe};
use proptest::prelude::*;

fn abc() -> Universe {
    Universe::new(["a", "b", "c"]).unwrap()
}

fn coalition() -> impl Strategy<Value = Coalition> {
    (1u16..8).prop_map(|bits| Coalition::from_bits(bits).unwrap())
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just(Formula::atom("p")), Just(Formula::atom("q")), Just(Formula::atom("r"))];
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (coalition(), inner.clone()).prop_map(|(c, f)| Formula::d(c, f)),
            (coalition(), inner).prop_map(|(c, f)| Formula::c(c, f)),
        ]
    })
}

fn subformulas(f: &Formula, out: &mut Vec<Formula>) {
    out.push(f.clone());
    for c in f.children() {
        subformulas(c, out);
    }
}

proptest! {
    #[test]
    fn printing_round_trips(f in formula()) {
        let u = abc();
        let text = f.to_text(&u);
        prop_assert_eq!(parse(&text, &u).unwrap(), f);
    }

    #[test]
    fn closure_contains_its_input_and_is_idempotent(f in formula()) {
        let u = abc();
        let cl = closure(&f, &u);
        prop_assert!(cl.contains(&f));
        for g in cl.iter() {
            prop_assert!(closure(g, &u).is_subset(&cl), "cl({:?}) escapes", g);
        }
    }

    #[test]
    fn closure_is_monotone_in_subformulas(f in formula()) {
        let u = abc();
        let cl = closure(&f, &u);
        let mut subs = Vec::new();
        subformulas(&f, &mut subs);
        for g in &subs {
            prop_assert!(closure(g, &u).is_subset(&cl));
        }
    }

    #[test]
    fn closure_meets_its_saturation_conditions(f in formula()) {
        let u = abc();
        let cl = closure(&f, &u);
        for g in cl.iter() {
            match g {
                Formula::D(c, body) => {
                    for bits in 1u16..8 {
                        let sup = Coalition::from_bits(bits).unwrap();
                        if c.is_subset(sup) {
                            prop_assert!(cl.contains(&Formula::d(sup, (**body).clone())));
                        }
                    }
                }
                Formula::C(c, body) => {
                    for a in c.agents() {
                        let unfold = Formula::d(
                            Coalition::singleton(a),
                            Formula::and((**body).clone(), g.clone()),
                        );
                        prop_assert!(cl.contains(&unfold));
                    }
                }
                _ => {}
            }
        }
    }

    #[test]
    fn extended_closure_adds_single_negations(f in formula()) {
        let u = abc();
        let cl = closure(&f, &u);
        let ecl = extended_closure(&f, &u);
        for g in ecl.iter() {
            prop_assert!(cl.contains(g) || cl.contains(&g.neg()));
        }
        for g in cl.iter() {
            prop_assert!(ecl.contains(&g.neg()));
        }
        // The indexed closure holds exactly the extended closure.
        let indexed = Closure::new(&f, &u);
        prop_assert_eq!(indexed.len(), ecl.len());
        for g in ecl.iter() {
            prop_assert!(indexed.index_of(g).is_some());
        }
    }
}

#[test]
fn closure_of_common_knowledge() {
    let u = abc();
    let f = parse("C{a,b}p", &u).unwrap();
    let expected = [
        "C{a,b}p",
        "p",
        "p & C{a,b}p",
        "D{a}(p & C{a,b}p)",
        "D{b}(p & C{a,b}p)",
        "D{a,b}(p & C{a,b}p)",
        "D{a,c}(p & C{a,b}p)",
        "D{b,c}(p & C{a,b}p)",
        "D{a,b,c}(p & C{a,b}p)",
    ];
    let cl = closure(&f, &u);
    assert_eq!(cl.len(), expected.len());
    for e in expected {
        assert!(cl.contains(&parse(e, &u).unwrap()), "missing {e}");
    }
}
