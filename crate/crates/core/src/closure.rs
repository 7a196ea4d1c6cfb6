//! Closure and extended closure of a formula, and their indexed form.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::agents::{Coalition, Universe};
use crate::expand::Rules;
use crate::formula::Formula;
use crate::label::Label;

/// A canonically ordered, duplicate-free set of formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormulaSet(BTreeSet<Formula>);

impl FormulaSet {
    pub fn new() -> FormulaSet {
        FormulaSet::default()
    }

    pub fn insert(&mut self, f: Formula) -> bool {
        self.0.insert(f)
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.contains(f)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &FormulaSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.0.iter()
    }

    pub fn as_set(&self) -> &BTreeSet<Formula> {
        &self.0
    }
}

impl FromIterator<Formula> for FormulaSet {
    fn from_iter<T: IntoIterator<Item = Formula>>(iter: T) -> Self {
        FormulaSet(iter.into_iter().collect())
    }
}

impl IntoIterator for FormulaSet {
    type Item = Formula;
    type IntoIter = alloc::collections::btree_set::IntoIter<Formula>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// `D_a(φ ∧ C_A φ)`, the unfolding of `C_A φ` for agent `a`.
pub(crate) fn unfolding(coalition_member: Coalition, body: &Formula, common: &Formula) -> Formula {
    Formula::d(coalition_member, Formula::and(body.clone(), common.clone()))
}

fn saturate(theta: &Formula, universe: &Universe, meet_clause: bool) -> BTreeSet<Formula> {
    let mut cl = BTreeSet::new();
    let mut work = alloc::vec![theta.clone()];
    while let Some(f) = work.pop() {
        if !cl.insert(f.clone()) {
            continue;
        }
        work.extend(f.children().into_iter().cloned());
        match &f {
            Formula::D(c, body) => {
                for sup in universe.supersets(*c) {
                    work.push(Formula::D(sup, body.clone()));
                }
                if meet_clause {
                    if let Formula::Not(inner) = &**body {
                        if let Formula::D(b, phi) = &**inner {
                            if let Some(m) = c.intersection(*b) {
                                work.push(Formula::D(m, phi.clone()));
                            }
                        }
                    }
                }
            }
            Formula::C(c, body) => {
                for a in c.agents() {
                    work.push(unfolding(Coalition::singleton(a), body, &f));
                }
            }
            _ => {}
        }
    }
    cl
}

/// The least set containing `theta` that is closed under subformulas, under
/// `D_A φ ⇒ D_A' φ` for every `A ⊆ A' ⊆ Σ`, and under `C_A φ ⇒ D_a(φ ∧ C_A φ)`
/// for every `a ∈ A`.
pub fn closure(theta: &Formula, universe: &Universe) -> FormulaSet {
    FormulaSet(saturate(theta, universe, false))
}

/// The closure together with the single negation of each of its members.
pub fn extended_closure(theta: &Formula, universe: &Universe) -> FormulaSet {
    let cl = saturate(theta, universe, false);
    let negs: Vec<Formula> = cl.iter().map(Formula::neg).collect();
    let mut ecl = cl;
    ecl.extend(negs);
    FormulaSet(ecl)
}

/// Top-level shape of an indexed formula, with children as indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Atom,
    Not(usize),
    And(usize, usize),
    D(Coalition, usize),
    C(Coalition, usize),
}

/// The extended closure of a formula, with every member given a dense index.
///
/// Indices are ordered by formula size and then structurally, so every
/// formula's subformulas precede it.
#[derive(Clone, Debug)]
pub struct Closure {
    universe: Universe,
    formulas: Vec<Formula>,
    index: BTreeMap<Formula, usize>,
    shapes: Vec<Shape>,
    negs: Vec<usize>,
    in_cl: Vec<bool>,
}

impl Closure {
    pub fn new(theta: &Formula, universe: &Universe) -> Closure {
        Closure::with_rules(theta, universe, Rules::default())
    }

    /// Under [`Rules::Basic`] the intersection clause can conclude `D_{A∩B} φ`
    /// outside the plain closure, so those formulas are added too.
    pub fn with_rules(theta: &Formula, universe: &Universe, rules: Rules) -> Closure {
        let cl = saturate(theta, universe, rules == Rules::Basic);
        let mut all: Vec<(bool, Formula)> = cl.iter().map(|f| (true, f.clone())).collect();
        for f in &cl {
            let n = f.neg();
            if !cl.contains(&n) {
                all.push((false, n));
            }
        }
        all.sort_by(|(_, x), (_, y)| x.size().cmp(&y.size()).then_with(|| x.cmp(y)));
        all.dedup_by(|a, b| a.1 == b.1);

        let index: BTreeMap<Formula, usize> = all
            .iter()
            .enumerate()
            .map(|(i, (_, f))| (f.clone(), i))
            .collect();
        let at = |f: &Formula| index[f];
        let shapes = all
            .iter()
            .map(|(_, f)| match f {
                Formula::Atom(_) => Shape::Atom,
                Formula::Not(x) => Shape::Not(at(x)),
                Formula::And(l, r) => Shape::And(at(l), at(r)),
                Formula::D(c, x) => Shape::D(*c, at(x)),
                Formula::C(c, x) => Shape::C(*c, at(x)),
            })
            .collect();
        let negs = all.iter().map(|(_, f)| at(&f.neg())).collect();
        let in_cl = all.iter().map(|(c, _)| *c).collect();
        Closure {
            universe: universe.clone(),
            formulas: all.into_iter().map(|(_, f)| f).collect(),
            index,
            shapes,
            negs,
            in_cl,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    /// Size of the extended closure.
    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn formula(&self, i: usize) -> &Formula {
        &self.formulas[i]
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn shape(&self, i: usize) -> Shape {
        self.shapes[i]
    }

    /// Index of the single negation of formula `i`; the extended closure is
    /// closed under it.
    pub fn neg(&self, i: usize) -> usize {
        self.negs[i]
    }

    /// Whether formula `i` belongs to the closure proper (not only to its
    /// negation-extended form).
    pub fn in_closure(&self, i: usize) -> bool {
        self.in_cl[i]
    }

    pub fn empty_label(&self) -> Label {
        Label::empty(self.len())
    }

    /// Indexes a set of formulas; `None` if one lies outside the closure.
    pub fn label_of<'a>(&self, fs: impl IntoIterator<Item = &'a Formula>) -> Option<Label> {
        let mut l = self.empty_label();
        for f in fs {
            l.insert(self.index_of(f)?);
        }
        Some(l)
    }

    pub fn formula_set(&self, label: &Label) -> FormulaSet {
        label.iter().map(|i| self.formulas[i].clone()).collect()
    }

    /// `¬C_A φ` members, as `(index, A, index of φ)`.
    pub fn eventuality(&self, i: usize) -> Option<(Coalition, usize)> {
        match self.shapes[i] {
            Shape::Not(j) => match self.shapes[j] {
                Shape::C(c, body) => Some((c, body)),
                _ => None,
            },
            _ => None,
        }
    }

    /// `¬D_A φ` members, as `(A, index of φ)`.
    pub fn diamond(&self, i: usize) -> Option<(Coalition, usize)> {
        match self.shapes[i] {
            Shape::Not(j) => match self.shapes[j] {
                Shape::D(c, body) => Some((c, body)),
                _ => None,
            },
            _ => None,
        }
    }

    /// Whether the label holds some formula together with its negation.
    pub fn patent_clash(&self, label: &Label) -> Option<usize> {
        label.iter().find_map(|i| match self.shapes[i] {
            Shape::Not(j) if label.contains(j) => Some(j),
            _ => None,
        })
    }

    pub fn render(&self, i: usize) -> alloc::string::String {
        self.formulas[i].to_text(&self.universe)
    }

    pub fn render_label(&self, label: &Label) -> alloc::string::String {
        let parts: Vec<_> = label.iter().map(|i| self.render(i)).collect();
        alloc::format!("{{{}}}", parts.join(", "))
    }
}
