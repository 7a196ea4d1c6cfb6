//! Formula AST.
//!
//! Only the five primitive constructors exist; `|`, `->`, `<->` and `K a`
//! are desugared by the parser.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::agents::{Coalition, Universe};

/// Name of an atomic proposition.
pub type Symbol = Arc<str>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Symbol),
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    /// Distributed knowledge.
    D(Coalition, Arc<Formula>),
    /// Common knowledge.
    C(Coalition, Arc<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Arc::from(name))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Arc::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Arc::new(l), Arc::new(r))
    }

    pub fn d(c: Coalition, f: Formula) -> Formula {
        Formula::D(c, Arc::new(f))
    }

    pub fn c(c: Coalition, f: Formula) -> Formula {
        Formula::C(c, Arc::new(f))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::not(Formula::and(Formula::not(l), Formula::not(r)))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::not(Formula::and(l, Formula::not(r)))
    }

    /// The single negation: strips one leading `¬`, otherwise wraps.
    pub fn neg(&self) -> Formula {
        match self {
            Formula::Not(inner) => (**inner).clone(),
            other => Formula::not(other.clone()),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(f) | Formula::D(_, f) | Formula::C(_, f) => 1 + f.size(),
            Formula::And(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Top-level conjuncts, left to right.
    pub fn conjuncts(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::And(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
                other => out.push(other.clone()),
            }
        }
        out
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) => Vec::new(),
            Formula::Not(f) | Formula::D(_, f) | Formula::C(_, f) => alloc::vec![&**f],
            Formula::And(l, r) => alloc::vec![&**l, &**r],
        }
    }

    /// Every coalition occurring in the formula.
    pub fn coalitions(&self) -> Vec<Coalition> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(f) = stack.pop() {
            if let Formula::D(c, _) | Formula::C(c, _) = f {
                out.push(*c);
            }
            stack.extend(f.children());
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Atom names, sorted.
    pub fn atoms(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(f) = stack.pop() {
            if let Formula::Atom(p) = f {
                out.push(p.clone());
            }
            stack.extend(f.children());
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Renders in the concrete syntax accepted by [`crate::parse`].
    pub fn display<'a>(&'a self, universe: &'a Universe) -> Display<'a> {
        Display { formula: self, universe }
    }

    pub fn to_text(&self, universe: &Universe) -> String {
        alloc::format!("{}", self.display(universe))
    }
}

/// `¬C_A φ`.
pub fn is_eventuality(f: &Formula) -> bool {
    matches!(f, Formula::Not(inner) if matches!(**inner, Formula::C(..)))
}

pub struct Display<'a> {
    formula: &'a Formula,
    universe: &'a Universe,
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self.formula, self.universe)
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, phi: &Formula, u: &Universe) -> fmt::Result {
    match phi {
        Formula::Atom(p) => write!(f, "{p}"),
        Formula::Not(x) => {
            write!(f, "~")?;
            write_formula(f, x, u)
        }
        Formula::And(l, r) => {
            write!(f, "(")?;
            write_formula(f, l, u)?;
            write!(f, " & ")?;
            write_formula(f, r, u)?;
            write!(f, ")")
        }
        Formula::D(c, x) => {
            write!(f, "D{{{}}}", u.coalition_names(*c))?;
            write_formula(f, x, u)
        }
        Formula::C(c, x) => {
            write!(f, "C{{{}}}", u.coalition_names(*c))?;
            write_formula(f, x, u)
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(p) => write!(f, "{p}"),
            Formula::Not(x) => write!(f, "~{x:?}"),
            Formula::And(l, r) => write!(f, "({l:?} & {r:?})"),
            Formula::D(c, x) => write!(f, "D{c:?}{x:?}"),
            Formula::C(c, x) => write!(f, "C{c:?}{x:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eventualities() {
        let u = Universe::new(["a", "b"]).unwrap();
        let p = Formula::atom("p");
        assert!(is_eventuality(&Formula::not(Formula::c(u.full(), p.clone()))));
        assert!(!is_eventuality(&Formula::c(u.full(), p.clone())));
        let a = u.coalition(&["a"]).unwrap();
        assert!(!is_eventuality(&Formula::not(Formula::d(a, p))));
    }

    #[test]
    fn single_negation() {
        let p = Formula::atom("p");
        assert_eq!(p.neg(), Formula::not(p.clone()));
        assert_eq!(Formula::not(p.clone()).neg(), p);
    }

    #[test]
    fn conjuncts_flatten_nested_ands() {
        let (p, q, r) = (Formula::atom("p"), Formula::atom("q"), Formula::atom("r"));
        let f = Formula::and(Formula::and(p.clone(), q.clone()), r.clone());
        assert_eq!(f.conjuncts(), alloc::vec![p, q, r]);
        assert_eq!(f.size(), 5);
    }
}
