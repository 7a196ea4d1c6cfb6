//! Satisfiability checking for coalitional multiagent epistemic logic with
//! distributed (`D_A`) and common (`C_A`) knowledge.
//!
//! The decision procedure is an incremental tableau: a pretableau of
//! prestates and fully expanded states is built, prestates are discharged,
//! and states are eliminated until a fixpoint is reached. An open final
//! tableau is turned into a Hintikka structure and then into a finite
//! pseudo-model, which the bundled model checker re-verifies.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use cmael_core::{parse, solve, SolveOptions, Universe, Verdict};
//!
//! let agents = Universe::new(["a", "b", "c"]).unwrap();
//! let theta = parse("C{a,b}p & C{b,c}p & ~C{a,c}p", &agents).unwrap();
//! let outcome = solve(&theta, &agents, &SolveOptions::default()).unwrap();
//! assert_eq!(outcome.verdict(), Verdict::Sat);
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod agents;
pub mod certify;
pub mod closure;
pub mod expand;
pub mod extract;
pub mod formula;
pub mod hintikka;
pub mod label;
pub mod model;
pub mod parse;
pub mod pretableau;
pub mod semantics;
pub mod solver;
pub mod tableau;

pub use agents::{Agent, Coalition, Universe, UniverseError};
pub use certify::{certify, Certificate, CertifyError};
pub use closure::{closure, extended_closure, Closure, FormulaSet};
pub use expand::{Expander, Rules};
pub use extract::{build_component, extract_hintikka, ExtractError, Leaf, TreeComponent};
pub use formula::{is_eventuality, Formula, Symbol};
pub use hintikka::{verify_hintikka, HintikkaStructure, HintikkaViolation};
pub use label::Label;
pub use model::{hintikka_to_pseudo_model, PseudoModel, Relation};
pub use parse::{parse, ParseError, ParseErrorKind};
pub use pretableau::{build_pretableau, Pretableau, PretableauError};
pub use semantics::{
    a_reachable, common_relation, extended_labeling, satisfies, satisfies_uncached, validate_frame,
    EvalContext, EvalError, FrameClass, FrameViolation,
};
pub use solver::{solve, Outcome, SolveError, SolveOptions, Verdict};
pub use tableau::{EliminationRule, Eventuality, MarkStep, Marking, Removal, Tableau};
