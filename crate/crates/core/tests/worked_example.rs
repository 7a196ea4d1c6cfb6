//! The refutation of `~D{a,c}C{a,b}p & C{a,b}(p & q)` from its conjunct set.
//! The reference labels below list only the formulas that matter, so our
//! labels are compared by containment.

use cmael_core::{parse, solve, EliminationRule, Label, Outcome, Rules, SolveOptions, Universe, Verdict};

const THETA: &str = "~D{a,c}C{a,b}p & C{a,b}(p & q)";
const KEEP_A: &str = "D{a}((p & q) & C{a,b}(p & q))";
const KEEP_B: &str = "D{b}((p & q) & C{a,b}(p & q))";
const BODY: &str = "(p & q) & C{a,b}(p & q)";

fn run(rules: Rules) -> Outcome {
    let u = Universe::new(["a", "b", "c"]).unwrap();
    let theta = parse(THETA, &u).unwrap();
    let options = SolveOptions {
        rules,
        split_conjuncts: true,
        ..SolveOptions::default()
    };
    solve(&theta, &u, &options).unwrap()
}

fn label(o: &Outcome, formulas: &[&str]) -> Label {
    let u = &o.closure.universe().clone();
    let parsed: Vec<_> = formulas.iter().map(|f| parse(f, u).unwrap()).collect();
    o.closure.label_of(parsed.iter()).expect("formula outside the closure")
}

fn reference_states() -> Vec<Vec<&'static str>> {
    vec![
        vec!["~D{a,c}C{a,b}p", KEEP_A, KEEP_B],
        vec!["~D{a}(p & C{a,b}p)", KEEP_A],
        vec!["~D{b}(p & C{a,b}p)", KEEP_B],
        vec!["~p", BODY, "p & q", "p", "q", KEEP_A, KEEP_B],
        vec!["~C{a,b}p", "~D{a}(p & C{a,b}p)", BODY, "p & q", "p", "q", KEEP_A, KEEP_B],
        vec!["~C{a,b}p", "~D{b}(p & C{a,b}p)", BODY, "p & q", "p", "q", KEEP_A, KEEP_B],
    ]
}

#[test]
fn reference_states_occur_in_the_pretableau() {
    for rules in [Rules::Cut, Rules::Basic] {
        let o = run(rules);
        for (k, r) in reference_states().iter().enumerate() {
            let want = label(&o, r);
            assert!(
                o.pretableau.states.iter().any(|s| want.is_subset(&s.label)),
                "{rules:?}: no state contains reference state {k}"
            );
        }
    }
}

#[test]
fn reference_prestates_occur_in_the_pretableau() {
    for rules in [Rules::Cut, Rules::Basic] {
        let o = run(rules);
        let root = label(&o, &["~D{a,c}C{a,b}p", "C{a,b}(p & q)"]);
        assert!(o.pretableau.prestates.iter().any(|g| g.label == root), "{rules:?}: root prestate");
        // Prestates carry D formulas whole; the body under D{a} shows up
        // in the states built from them.
        for r in [vec!["~C{a,b}p", KEEP_A], vec!["~(p & C{a,b}p)", KEEP_A]] {
            let want = label(&o, &r);
            assert!(
                o.pretableau.prestates.iter().any(|g| want.is_subset(&g.label)),
                "{rules:?}: no prestate contains {r:?}"
            );
        }
    }
}

#[test]
fn every_state_falls_and_the_reasons_match() {
    let o = run(Rules::Cut);
    assert_eq!(o.verdict(), Verdict::Unsat);
    assert_eq!(o.tableau.alive_count(), 0);
    let t = &o.tableau;
    let clash = label(&o, &["~p", "p"]);
    let eventuality = label(&o, &["~C{a,b}p"]);
    for r in &t.log {
        let l = &t.labels[r.state];
        match r.rule {
            EliminationRule::E1 => assert!(o.closure.patent_clash(l).is_some()),
            EliminationRule::E3 => assert!(l.contains(r.witness) && eventuality.contains(r.witness)),
            EliminationRule::E2 => assert!(l.contains(r.witness)),
        }
    }
    // Every state with p and ~p goes at E1.
    for s in 0..t.len() {
        if clash.is_subset(&t.labels[s]) {
            let entry = t.log.iter().find(|r| r.state == s).unwrap();
            assert_eq!(entry.rule, EliminationRule::E1);
        }
    }
}
