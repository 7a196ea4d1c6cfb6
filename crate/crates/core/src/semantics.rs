//! Model checking over finite relational structures, frame classification,
//! and extended labelings.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::agents::Coalition;
use crate::closure::Closure;
use crate::formula::Formula;
use crate::label::Label;
use crate::model::{PseudoModel, Relation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    UnknownState(usize),
    ForeignAgent,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnknownState(s) => write!(f, "no state {s} in the model"),
            EvalError::ForeignAgent => write!(f, "formula uses an agent outside the model"),
        }
    }
}

impl core::error::Error for EvalError {}

/// A set of states as a bit vector.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Extension(Vec<u64>);

impl Extension {
    fn empty(n: usize) -> Extension {
        Extension(alloc::vec![0; n.div_ceil(64)])
    }

    fn contains(&self, s: usize) -> bool {
        self.0[s / 64] >> (s % 64) & 1 == 1
    }

    fn insert(&mut self, s: usize) {
        self.0[s / 64] |= 1 << (s % 64);
    }
}

/// States reachable from `s` in zero or more steps along `R_a`, `a ∈ A`.
pub fn a_reachable(model: &PseudoModel, s: usize, a: Coalition) -> Vec<usize> {
    let n = model.states();
    let rels: Vec<&Relation> = a
        .agents()
        .filter_map(|x| model.relation(Coalition::singleton(x)))
        .collect();
    let mut seen = alloc::vec![false; n];
    let mut stack = alloc::vec![s];
    seen[s] = true;
    while let Some(x) = stack.pop() {
        for r in &rels {
            for &y in r.successors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    (0..n).filter(|&t| seen[t]).collect()
}

/// `R^C_A` in closure-relation form: the reflexive transitive closure of the
/// union of `R_A'` over every `A' ⊆ A` with a relation.
pub fn common_relation(model: &PseudoModel, a: Coalition) -> Relation {
    let mut union = Relation::empty(model.states());
    for (b, r) in &model.relations {
        if b.is_subset(a) {
            union.union_with(r);
        }
    }
    union.reflexive_transitive_closure()
}

/// Memoized evaluation over one model. Extensions are cached per formula,
/// `A`-reachability per coalition.
pub struct EvalContext<'m> {
    model: &'m PseudoModel,
    memo: BTreeMap<Formula, Extension>,
    reach: BTreeMap<Coalition, Relation>,
}

impl<'m> EvalContext<'m> {
    pub fn new(model: &'m PseudoModel) -> EvalContext<'m> {
        EvalContext {
            model,
            memo: BTreeMap::new(),
            reach: BTreeMap::new(),
        }
    }

    pub fn model(&self) -> &'m PseudoModel {
        self.model
    }

    pub fn satisfies(&mut self, s: usize, phi: &Formula) -> Result<bool, EvalError> {
        if s >= self.model.states() {
            return Err(EvalError::UnknownState(s));
        }
        self.check_agents(phi)?;
        Ok(self.extension(phi).contains(s))
    }

    /// States where `phi` holds, ascending.
    pub fn states_satisfying(&mut self, phi: &Formula) -> Result<Vec<usize>, EvalError> {
        self.check_agents(phi)?;
        let n = self.model.states();
        let ext = self.extension(phi);
        Ok((0..n).filter(|&s| ext.contains(s)).collect())
    }

    fn check_agents(&self, phi: &Formula) -> Result<(), EvalError> {
        if phi.coalitions().iter().all(|c| self.model.universe.covers(*c)) {
            Ok(())
        } else {
            Err(EvalError::ForeignAgent)
        }
    }

    fn extension(&mut self, phi: &Formula) -> &Extension {
        if !self.memo.contains_key(phi) {
            let ext = self.compute(phi);
            self.memo.insert(phi.clone(), ext);
        }
        &self.memo[phi]
    }

    fn compute(&mut self, phi: &Formula) -> Extension {
        let m = self.model;
        let n = m.states();
        let mut out = Extension::empty(n);
        match phi {
            Formula::Atom(p) => {
                for s in 0..n {
                    if m.labeling[s].contains(p) {
                        out.insert(s);
                    }
                }
            }
            Formula::Not(f) => {
                let inner = self.extension(f);
                for s in 0..n {
                    if !inner.contains(s) {
                        out.insert(s);
                    }
                }
            }
            Formula::And(l, r) => {
                let left = self.extension(l).clone();
                let right = self.extension(r);
                for s in 0..n {
                    if left.contains(s) && right.contains(s) {
                        out.insert(s);
                    }
                }
            }
            Formula::D(a, f) => {
                let inner = self.extension(f);
                for s in 0..n {
                    let holds = match m.relation(*a) {
                        Some(r) => r.successors(s).iter().all(|&t| inner.contains(t)),
                        None => true,
                    };
                    if holds {
                        out.insert(s);
                    }
                }
            }
            Formula::C(a, f) => {
                let inner = self.extension(f).clone();
                let reach = self.reach.entry(*a).or_insert_with(|| {
                    let mut union = Relation::empty(n);
                    for x in a.agents() {
                        if let Some(r) = m.relation(Coalition::singleton(x)) {
                            union.union_with(r);
                        }
                    }
                    union.reflexive_transitive_closure()
                });
                for s in 0..n {
                    if reach.successors(s).iter().all(|&t| inner.contains(t)) {
                        out.insert(s);
                    }
                }
            }
        }
        out
    }
}

/// Whether `phi` holds at state `s`.
pub fn satisfies(model: &PseudoModel, s: usize, phi: &Formula) -> Result<bool, EvalError> {
    EvalContext::new(model).satisfies(s, phi)
}

/// Plain recursive evaluation, without caching. `C_A` uses the
/// closure-relation form instead of reachability.
pub fn satisfies_uncached(model: &PseudoModel, s: usize, phi: &Formula) -> bool {
    match phi {
        Formula::Atom(p) => model.labeling[s].contains(p),
        Formula::Not(f) => !satisfies_uncached(model, s, f),
        Formula::And(l, r) => satisfies_uncached(model, s, l) && satisfies_uncached(model, s, r),
        Formula::D(a, f) => model
            .relation(*a)
            .is_none_or(|r| r.successors(s).iter().all(|&t| satisfies_uncached(model, t, f))),
        Formula::C(a, f) => common_relation(model, *a)
            .successors(s)
            .iter()
            .all(|&t| satisfies_uncached(model, t, f)),
    }
}

/// Why a structure is not a frame of the expected kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameViolation {
    /// `R_A` is not an equivalence; the pair witnesses the failing property.
    NotEquivalence { coalition: Coalition, pair: (usize, usize) },
    /// `B ⊆ A` but `(s, t) ∈ R_A \ R_B`.
    NotAntiMonotone {
        larger: Coalition,
        smaller: Coalition,
        pair: (usize, usize),
    },
}

/// Result of [`validate_frame`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameClass {
    /// Equivalences with `R_A` the intersection of the `R_a`, `a ∈ A`.
    Cmaef,
    /// Equivalences with `R_A ⊆ R_B` whenever `B ⊆ A`. The pair witnesses
    /// the failure of the intersection condition.
    PseudoCmaef {
        coalition: Coalition,
        pair: (usize, usize),
    },
    Invalid(FrameViolation),
}

impl FrameClass {
    /// CMAEF or pseudo-CMAEF.
    pub fn is_pseudo(&self) -> bool {
        !matches!(self, FrameClass::Invalid(_))
    }
}

fn equivalence_witness(r: &Relation) -> Option<(usize, usize)> {
    if let Some(s) = (0..r.states()).find(|&s| !r.contains(s, s)) {
        return Some((s, s));
    }
    if let Some((s, t)) = r.pairs().find(|&(s, t)| !r.contains(t, s)) {
        return Some((t, s));
    }
    r.pairs()
        .flat_map(|(s, t)| r.successors(t).iter().map(move |&u| (s, u)))
        .find(|&(s, u)| !r.contains(s, u))
}

/// Classifies the model's frame over every coalition of its universe.
/// Coalitions without a relation count as empty.
pub fn validate_frame(model: &PseudoModel) -> FrameClass {
    let n = model.states();
    let empty = Relation::empty(n);
    let rel = |c: Coalition| model.relation(c).unwrap_or(&empty);
    let coalitions: Vec<Coalition> = model.universe.coalitions().collect();
    for &c in &coalitions {
        if let Some(pair) = equivalence_witness(rel(c)) {
            return FrameClass::Invalid(FrameViolation::NotEquivalence { coalition: c, pair });
        }
    }
    for &a in &coalitions {
        for b in a.subsets() {
            if b == a {
                continue;
            }
            if let Some(pair) = rel(a).pairs().find(|&(s, t)| !rel(b).contains(s, t)) {
                return FrameClass::Invalid(FrameViolation::NotAntiMonotone {
                    larger: a,
                    smaller: b,
                    pair,
                });
            }
        }
    }
    for &a in &coalitions {
        if a.len() < 2 {
            continue;
        }
        let mut meet = Relation::from_pairs(n, (0..n).flat_map(|s| (0..n).map(move |t| (s, t))));
        for x in a.agents() {
            meet = meet.intersection(rel(Coalition::singleton(x)));
        }
        let missing = meet.pairs().find(|&(s, t)| !rel(a).contains(s, t));
        if let Some(pair) = missing {
            return FrameClass::PseudoCmaef { coalition: a, pair };
        }
    }
    FrameClass::Cmaef
}

/// Per state, the members of the closure true there.
pub fn extended_labeling(model: &PseudoModel, closure: &Closure) -> Vec<Label> {
    let mut ctx = EvalContext::new(model);
    let mut labels = alloc::vec![closure.empty_label(); model.states()];
    for (i, f) in closure.formulas().iter().enumerate() {
        for s in ctx.states_satisfying(f).expect("closure agents lie in the universe") {
            labels[s].insert(i);
        }
    }
    labels
}
