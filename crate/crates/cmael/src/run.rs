//! The decide-and-verify pipeline shared by every subcommand.

use std::fmt;

use anyhow::Result;
use cmael_core::{certify, solve, Certificate, CertifyError, Formula, Outcome, SolveOptions, Universe, Verdict};

/// A model check of the engine's own output failed. Never an input problem.
#[derive(Debug)]
pub struct VerificationFailure(pub CertifyError);

impl fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "internal verification failed: {}", self.0)
    }
}

impl std::error::Error for VerificationFailure {}

#[derive(Debug)]
pub struct Decision {
    pub outcome: Outcome,
    /// Present exactly when the verdict is SAT.
    pub certificate: Option<Certificate>,
}

impl Decision {
    pub fn verdict(&self) -> Verdict {
        self.outcome.verdict()
    }
}

/// Solves `theta` and, when it is satisfiable, extracts and checks a model.
/// A SAT verdict is only returned together with a checked model.
pub fn decide(theta: &Formula, universe: &Universe, options: &SolveOptions) -> Result<Decision> {
    let outcome = solve(theta, universe, options)?;
    let certificate = match outcome.verdict() {
        Verdict::Sat => Some(certify(&outcome).map_err(VerificationFailure)?),
        Verdict::Unsat => None,
    };
    Ok(Decision {
        outcome,
        certificate,
    })
}
