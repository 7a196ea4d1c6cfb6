//! The three tableau phases end to end, and the verdict.

use alloc::vec::Vec;
use core::fmt;

use crate::agents::Universe;
use crate::closure::Closure;
use crate::expand::{Expander, Rules};
use crate::formula::Formula;
use crate::label::Label;
use crate::pretableau::{build_pretableau, Pretableau, PretableauError};
use crate::tableau::Tableau;

pub const DEFAULT_MAX_NODES: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Sat,
    Unsat,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Sat => "SAT",
            Verdict::Unsat => "UNSAT",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub rules: Rules,
    /// Start from the set of top-level conjuncts instead of `{θ}`.
    pub split_conjuncts: bool,
    /// Cap on prestates plus states.
    pub max_nodes: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            rules: Rules::Cut,
            split_conjuncts: false,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveError {
    /// The formula mentions an agent id outside the universe.
    ForeignAgent,
    Pretableau(PretableauError),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::ForeignAgent => write!(f, "formula uses an undeclared agent"),
            SolveError::Pretableau(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for SolveError {}

impl From<PretableauError> for SolveError {
    fn from(e: PretableauError) -> Self {
        SolveError::Pretableau(e)
    }
}

/// Everything a solve produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub formula: Formula,
    pub options: SolveOptions,
    pub closure: Closure,
    /// The root prestate: `{θ}`, or the conjuncts of `θ`.
    pub roots: Label,
    pub pretableau: Pretableau,
    /// The final tableau, with its elimination log.
    pub tableau: Tableau,
}

impl Outcome {
    pub fn expander(&self) -> Expander<'_> {
        Expander::new(&self.closure, self.options.rules)
    }

    /// Alive states containing every root formula, ascending.
    pub fn root_states(&self) -> Vec<usize> {
        self.tableau
            .alive_states()
            .filter(|&s| self.roots.is_subset(&self.tableau.labels[s]))
            .collect()
    }

    /// States (alive or not) containing every root formula.
    pub fn root_candidates(&self) -> Vec<usize> {
        (0..self.tableau.len())
            .filter(|&s| self.roots.is_subset(&self.tableau.labels[s]))
            .collect()
    }

    pub fn verdict(&self) -> Verdict {
        if self.root_states().is_empty() {
            Verdict::Unsat
        } else {
            Verdict::Sat
        }
    }

    /// Prestates plus states of the pretableau.
    pub fn node_count(&self) -> usize {
        self.pretableau.node_count()
    }
}

/// Decides satisfiability of `theta` over `universe`.
pub fn solve(theta: &Formula, universe: &Universe, options: &SolveOptions) -> Result<Outcome, SolveError> {
    if !theta.coalitions().iter().all(|c| universe.covers(*c)) {
        return Err(SolveError::ForeignAgent);
    }
    let closure = Closure::with_rules(theta, universe, options.rules);
    let expander = Expander::new(&closure, options.rules);
    let root_formulas = if options.split_conjuncts {
        theta.conjuncts()
    } else {
        alloc::vec![theta.clone()]
    };
    let roots = closure
        .label_of(root_formulas.iter())
        .expect("conjuncts lie in the closure");
    let pretableau = build_pretableau(&expander, &roots, options.max_nodes)?;
    let mut tableau = Tableau::from_pretableau(&pretableau);
    tableau.eliminate(&closure);
    Ok(Outcome {
        formula: theta.clone(),
        options: *options,
        closure,
        roots,
        pretableau,
        tableau,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn verdicts_and_roots() {
        let u = Universe::new(["a", "b"]).unwrap();
        let sat = solve(&parse("D{a}p & ~D{b}p", &u).unwrap(), &u, &SolveOptions::default()).unwrap();
        assert_eq!(sat.verdict(), Verdict::Sat);
        assert!(!sat.root_states().is_empty());
        let unsat = solve(&parse("D{a}p & ~D{a,b}p", &u).unwrap(), &u, &SolveOptions::default()).unwrap();
        assert_eq!(unsat.verdict(), Verdict::Unsat);
        assert!(unsat.root_states().is_empty());
        assert!(!unsat.root_candidates().is_empty());
        assert_eq!(alloc::format!("{} {}", Verdict::Sat, Verdict::Unsat), "SAT UNSAT");
    }

    #[test]
    fn foreign_agents_and_caps_are_errors() {
        let big = Universe::new(["a", "b", "c"]).unwrap();
        let small = Universe::new(["a", "b"]).unwrap();
        let theta = parse("D{c}p", &big).unwrap();
        assert_eq!(solve(&theta, &small, &SolveOptions::default()).unwrap_err(), SolveError::ForeignAgent);
        let tight = SolveOptions {
            max_nodes: 1,
            ..SolveOptions::default()
        };
        let theta = parse("~D{a}p & ~D{b}~p", &small).unwrap();
        assert!(matches!(solve(&theta, &small, &tight), Err(SolveError::Pretableau(_))));
    }
}
