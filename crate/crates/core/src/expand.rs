//! Fully expanded sets and their generation.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::agents::Coalition;
use crate::closure::{Closure, Shape};
use crate::label::Label;

/// Which expansion conditions a fully expanded set must meet.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Rules {
    /// Sound and complete conditions (the default). `¬D_A¬D_B φ` forces
    /// `D_B φ` only when `B ⊆ A`, and a consistent set holding some `¬D_A φ`
    /// must decide every `D_B ψ` of the closure with `B ⊆ A`. States are
    /// generated by [`Expander::extensions`], which branches on every
    /// alternative of each eventuality `¬C_A φ` and of each `¬(φ ∧ C_A φ)`.
    #[default]
    Cut,
    /// The bare conditions: no cut, `¬D_A¬D_B φ` forces `D_{A∩B} φ` for
    /// every overlapping `A`, `B`, and states are the minimal fully expanded
    /// extensions.
    ///
    /// Kept for comparison only. It declares `~D{a}~D{a,b}p & ~D{a}p` and
    /// `C{a,b}p & C{b,c}p & ~C{a,c}p` unsatisfiable and `~D{a}~C{a,b}p & ~p`
    /// satisfiable, all wrongly.
    Basic,
}

/// Precomputed expansion conditions over one [`Closure`].
#[derive(Clone, Debug)]
pub struct Expander<'c> {
    closure: &'c Closure,
    rules: Rules,
    /// Formulas that must accompany each formula.
    forced: Vec<Vec<usize>>,
    /// Alternatives, one of which must accompany each formula.
    choices: Vec<Option<Vec<usize>>>,
    /// For each `¬D_A φ`: the positive `D_B ψ` of the closure with `B ⊆ A`.
    cut: Vec<Vec<usize>>,
    /// Formulas branched over all alternatives: `¬C_A φ` and `¬(φ ∧ C_A φ)`.
    pivotal: Vec<bool>,
}

impl<'c> Expander<'c> {
    pub fn new(closure: &'c Closure, rules: Rules) -> Expander<'c> {
        let n = closure.len();
        let universe = closure.universe();
        let mut forced = alloc::vec![Vec::new(); n];
        let mut choices = alloc::vec![None; n];
        let mut cut = alloc::vec![Vec::new(); n];
        let mut pivotal = alloc::vec![false; n];

        let boxes: Vec<(usize, Coalition)> = (0..n)
            .filter(|&i| closure.in_closure(i))
            .filter_map(|i| match closure.shape(i) {
                Shape::D(c, _) => Some((i, c)),
                _ => None,
            })
            .collect();

        let d_of = |c: Coalition, body: usize| {
            closure.index_of(&crate::formula::Formula::d(c, closure.formula(body).clone()))
        };

        for i in 0..n {
            match closure.shape(i) {
                Shape::Atom => {}
                Shape::And(l, r) => forced[i] = alloc::vec![l, r],
                Shape::D(c, body) => {
                    let mut f = alloc::vec![body];
                    for sup in universe.supersets(c) {
                        if sup != c {
                            f.push(d_of(sup, body).expect("closure is superset-saturated"));
                        }
                    }
                    forced[i] = f;
                }
                Shape::C(c, body) => {
                    let common = closure.formula(i);
                    forced[i] = c
                        .agents()
                        .map(|a| {
                            let u = crate::closure::unfolding(
                                Coalition::singleton(a),
                                closure.formula(body),
                                common,
                            );
                            closure.index_of(&u).expect("closure holds unfoldings")
                        })
                        .collect();
                }
                Shape::Not(j) => match closure.shape(j) {
                    Shape::Not(k) => forced[i] = alloc::vec![k],
                    Shape::And(l, r) => {
                        choices[i] = Some(alloc::vec![closure.neg(l), closure.neg(r)]);
                        pivotal[i] = matches!(closure.shape(r), Shape::C(_, body) if body == l);
                    }
                    Shape::C(c, body) => {
                        let common = closure.formula(j);
                        let alts = c
                            .agents()
                            .map(|a| {
                                let u = crate::closure::unfolding(
                                    Coalition::singleton(a),
                                    closure.formula(body),
                                    common,
                                );
                                closure.neg(closure.index_of(&u).expect("closure holds unfoldings"))
                            })
                            .collect();
                        choices[i] = Some(alts);
                        pivotal[i] = true;
                    }
                    Shape::D(a, body) => {
                        if let Shape::Not(inner) = closure.shape(body) {
                            if let Shape::D(b, phi) = closure.shape(inner) {
                                let target = match rules {
                                    Rules::Cut => b.is_subset(a).then_some(b),
                                    Rules::Basic => a.intersection(b),
                                };
                                if let Some(t) = target {
                                    forced[i] = alloc::vec![d_of(t, phi)
                                        .expect("closure holds the intersection clause")];
                                }
                            }
                        }
                        if rules == Rules::Cut {
                            cut[i] = boxes
                                .iter()
                                .filter(|(_, bc)| bc.is_subset(a))
                                .map(|(k, _)| *k)
                                .collect();
                        }
                    }
                    Shape::Atom => {}
                },
            }
        }
        Expander {
            closure,
            rules,
            forced,
            choices,
            cut,
            pivotal,
        }
    }

    pub fn closure(&self) -> &'c Closure {
        self.closure
    }

    pub fn rules(&self) -> Rules {
        self.rules
    }

    /// Adds every forced consequence until none is missing.
    pub fn saturate(&self, set: &mut Label) {
        let mut work: Vec<usize> = set.iter().collect();
        while let Some(i) = work.pop() {
            for &j in &self.forced[i] {
                if set.insert(j) {
                    work.push(j);
                }
            }
        }
    }

    /// The first unmet disjunctive requirement of a saturated set, as its
    /// list of alternatives. Disjunctions come before cut decisions.
    fn open_requirement(&self, set: &Label) -> Option<Vec<usize>> {
        for i in set.iter() {
            if let Some(alts) = &self.choices[i] {
                if !alts.iter().any(|&a| set.contains(a)) {
                    return Some(alts.clone());
                }
            }
        }
        if self.rules == Rules::Cut && self.closure.patent_clash(set).is_none() {
            for i in set.iter() {
                for &k in &self.cut[i] {
                    let nk = self.closure.neg(k);
                    if !set.contains(k) && !set.contains(nk) {
                        return Some(alloc::vec![k, nk]);
                    }
                }
            }
        }
        None
    }

    pub fn is_fully_expanded(&self, set: &Label) -> bool {
        let forced_ok = set
            .iter()
            .all(|i| self.forced[i].iter().all(|&j| set.contains(j)));
        forced_ok && self.open_requirement(set).is_none()
    }

    /// The states SR creates from `base`: the minimal extensions under
    /// [`Rules::Basic`], the branching extensions otherwise.
    pub fn extensions(&self, base: &Label) -> Vec<Label> {
        match self.rules {
            Rules::Basic => self.minimal_extensions(base),
            Rules::Cut => self.branching_extensions(base),
        }
    }

    /// Fully expanded extensions of `base`, in label order, produced by
    /// branching on each eventuality `¬C_A φ` and each `¬(φ ∧ C_A φ)` over
    /// all of its alternatives (present or not), and then on the first unmet
    /// requirement.
    ///
    /// Some results contain others. Keeping them lets a state commit to the
    /// agent that leads towards the eventuality's witness, or to `¬φ` itself,
    /// even when another alternative is already present; minimal extensions
    /// lose that choice.
    pub fn branching_extensions(&self, base: &Label) -> Vec<Label> {
        let mut start = base.clone();
        self.saturate(&mut start);
        let mut stack = alloc::vec![(start, self.closure.empty_label())];
        let mut seen = BTreeSet::new();
        let mut found = BTreeSet::new();
        while let Some((set, decided)) = stack.pop() {
            if !seen.insert((set.clone(), decided.clone())) {
                continue;
            }
            let pending = set
                .iter()
                .find(|&i| self.pivotal[i] && !decided.contains(i));
            if let Some(pivot) = pending {
                let alts = self.choices[pivot].as_ref().expect("pivotal formulas branch");
                for &a in alts.iter().rev() {
                    let mut next = set.clone();
                    next.insert(a);
                    self.saturate(&mut next);
                    let mut d = decided.clone();
                    d.insert(pivot);
                    stack.push((next, d));
                }
                continue;
            }
            match self.open_requirement(&set) {
                None => {
                    found.insert(set);
                }
                Some(alts) => {
                    for &a in alts.iter().rev() {
                        let mut next = set.clone();
                        next.insert(a);
                        self.saturate(&mut next);
                        stack.push((next, decided.clone()));
                    }
                }
            }
        }
        found.into_iter().collect()
    }

    /// All minimal fully expanded sets `Δ` with `base ⊆ Δ ⊆ ecl`, in label order.
    ///
    /// Saturates, branches on the first unmet disjunctive requirement (in
    /// alternative order), and finally drops any result that strictly
    /// contains another. Under [`Rules::Cut`] a patently inconsistent set
    /// may be fully expanded without any path leading to it; only the
    /// consistent minimal sets are guaranteed.
    pub fn minimal_extensions(&self, base: &Label) -> Vec<Label> {
        let mut start = base.clone();
        self.saturate(&mut start);
        let mut stack = alloc::vec![start];
        let mut seen = BTreeSet::new();
        let mut found = BTreeSet::new();
        while let Some(set) = stack.pop() {
            if !seen.insert(set.clone()) {
                continue;
            }
            match self.open_requirement(&set) {
                None => {
                    found.insert(set);
                }
                Some(alts) => {
                    for &a in alts.iter().rev() {
                        let mut next = set.clone();
                        next.insert(a);
                        self.saturate(&mut next);
                        stack.push(next);
                    }
                }
            }
        }
        let found: Vec<Label> = found.into_iter().collect();
        found
            .iter()
            .filter(|d| !found.iter().any(|o| o != *d && o.is_subset(d)))
            .cloned()
            .collect()
    }
}
