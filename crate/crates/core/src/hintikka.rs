//! Hintikka structures and their mechanical verification.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::agents::{Coalition, Universe};
use crate::closure::{Closure, Shape};
use crate::expand::Expander;
use crate::label::Label;
use crate::model::{PseudoModel, Relation};

/// States labeled with subsets of an extended closure, with one relation per
/// coalition. The common-knowledge relations are derived, never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HintikkaStructure {
    pub universe: Universe,
    pub labels: Vec<Label>,
    /// Tableau state each node copies its label from, when extracted.
    pub origins: Vec<Option<usize>>,
    pub relations: BTreeMap<Coalition, Relation>,
    pub root: usize,
}

impl HintikkaStructure {
    pub fn states(&self) -> usize {
        self.labels.len()
    }

    /// `L⁺(s) ∩ ecl` labels over a model, keeping its relations.
    pub fn from_model(model: &PseudoModel, labels: Vec<Label>) -> HintikkaStructure {
        HintikkaStructure {
            universe: model.universe.clone(),
            origins: alloc::vec![None; labels.len()],
            labels,
            relations: model.relations.clone(),
            root: model.root.unwrap_or(0),
        }
    }

    /// `R^C_A`: reflexive transitive closure of the union of `R_A'`, `A' ⊆ A`.
    pub fn common_relation(&self, a: Coalition) -> Relation {
        let mut union = Relation::empty(self.states());
        for (b, r) in &self.relations {
            if b.is_subset(a) {
                union.union_with(r);
            }
        }
        union.reflexive_transitive_closure()
    }
}

/// The first violated Hintikka condition, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HintikkaViolation {
    /// A label holds `φ` and `¬φ`.
    H1 { state: usize, formula: usize },
    /// A label is not fully expanded.
    H2 { state: usize },
    /// `¬D_A φ` without an `R_A`-successor holding `¬φ`.
    H3 { state: usize, formula: usize },
    /// `D_A' φ` differs across an `R_A` edge with `A' ⊆ A`.
    H4 {
        from: usize,
        to: usize,
        coalition: Coalition,
        formula: usize,
    },
    /// `¬C_A φ` without an `R^C_A`-reachable state holding `¬φ`.
    H5 { state: usize, formula: usize },
}

impl fmt::Display for HintikkaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HintikkaViolation::H1 { state, formula } => {
                write!(f, "H1: state {state} holds formula #{formula} and its negation")
            }
            HintikkaViolation::H2 { state } => write!(f, "H2: state {state} is not fully expanded"),
            HintikkaViolation::H3 { state, formula } => {
                write!(f, "H3: state {state}, formula #{formula} has no witness")
            }
            HintikkaViolation::H4 {
                from,
                to,
                coalition,
                formula,
            } => write!(
                f,
                "H4: edge {from}->{to} in R_{coalition:?} disagrees on formula #{formula}"
            ),
            HintikkaViolation::H5 { state, formula } => {
                write!(f, "H5: state {state}, eventuality #{formula} is not fulfilled")
            }
        }
    }
}

impl core::error::Error for HintikkaViolation {}

impl HintikkaViolation {
    pub fn condition(&self) -> &'static str {
        match self {
            HintikkaViolation::H1 { .. } => "H1",
            HintikkaViolation::H2 { .. } => "H2",
            HintikkaViolation::H3 { .. } => "H3",
            HintikkaViolation::H4 { .. } => "H4",
            HintikkaViolation::H5 { .. } => "H5",
        }
    }
}

/// Checks H1 through H5, in that order, over the expander's closure.
pub fn verify_hintikka(
    expander: &Expander<'_>,
    h: &HintikkaStructure,
) -> Result<(), HintikkaViolation> {
    let closure: &Closure = expander.closure();
    for (s, label) in h.labels.iter().enumerate() {
        if let Some(formula) = closure.patent_clash(label) {
            return Err(HintikkaViolation::H1 { state: s, formula });
        }
    }
    for (s, label) in h.labels.iter().enumerate() {
        if !expander.is_fully_expanded(label) {
            return Err(HintikkaViolation::H2 { state: s });
        }
    }
    let empty = Relation::empty(h.states());
    for (s, label) in h.labels.iter().enumerate() {
        for i in label.iter() {
            if let Some((a, body)) = closure.diamond(i) {
                let goal = closure.neg(body);
                let r = h.relations.get(&a).unwrap_or(&empty);
                if !r.successors(s).iter().any(|&t| h.labels[t].contains(goal)) {
                    return Err(HintikkaViolation::H3 { state: s, formula: i });
                }
            }
        }
    }
    let boxes: Vec<(usize, Coalition)> = (0..closure.len())
        .filter_map(|i| match closure.shape(i) {
            Shape::D(c, _) => Some((i, c)),
            _ => None,
        })
        .collect();
    for (a, r) in &h.relations {
        for (s, t) in r.pairs() {
            for &(i, c) in &boxes {
                if c.is_subset(*a) && h.labels[s].contains(i) != h.labels[t].contains(i) {
                    return Err(HintikkaViolation::H4 {
                        from: s,
                        to: t,
                        coalition: *a,
                        formula: i,
                    });
                }
            }
        }
    }
    let mut common: BTreeMap<Coalition, Relation> = BTreeMap::new();
    for (s, label) in h.labels.iter().enumerate() {
        for i in label.iter() {
            if let Some((a, body)) = closure.eventuality(i) {
                let goal = closure.neg(body);
                let rc = common.entry(a).or_insert_with(|| h.common_relation(a));
                if !rc.successors(s).iter().any(|&t| h.labels[t].contains(goal)) {
                    return Err(HintikkaViolation::H5 { state: s, formula: i });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expand::Rules;
    use crate::parse::parse;

    #[test]
    fn single_state_structures() {
        let u = Universe::new(["a", "b"]).unwrap();
        let p = parse("p", &u).unwrap();
        let c = Closure::new(&p, &u);
        let e = Expander::new(&c, Rules::Cut);
        let relations = u.coalitions().map(|a| (a, Relation::identity(1))).collect();
        let mut h = HintikkaStructure {
            universe: u.clone(),
            labels: alloc::vec![c.label_of([&p]).unwrap()],
            origins: alloc::vec![None],
            relations,
            root: 0,
        };
        assert_eq!(verify_hintikka(&e, &h), Ok(()));
        h.labels[0] = c.label_of([&p, &p.neg()]).unwrap();
        assert_eq!(
            verify_hintikka(&e, &h),
            Err(HintikkaViolation::H1 {
                state: 0,
                formula: c.index_of(&p).unwrap()
            })
        );
    }

    #[test]
    fn missing_witnesses_are_reported() {
        let u = Universe::new(["a", "b"]).unwrap();
        let theta = parse("~D{a}p", &u).unwrap();
        let c = Closure::new(&theta, &u);
        let e = Expander::new(&c, Rules::Cut);
        let d = parse("~D{a}p", &u).unwrap();
        let h = HintikkaStructure {
            universe: u.clone(),
            labels: alloc::vec![c.label_of([&d]).unwrap()],
            origins: alloc::vec![None],
            relations: BTreeMap::new(),
            root: 0,
        };
        assert_eq!(
            verify_hintikka(&e, &h),
            Err(HintikkaViolation::H3 {
                state: 0,
                formula: c.index_of(&d).unwrap()
            })
        );
    }
}
