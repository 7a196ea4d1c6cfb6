//! End-to-end checking of a satisfiable outcome: extraction, Hintikka
//! conditions, frame class, truth preservation and truth of the input.

use alloc::vec::Vec;
use core::fmt;

use crate::extract::{extract_hintikka, ExtractError};
use crate::hintikka::{verify_hintikka, HintikkaStructure, HintikkaViolation};
use crate::model::{hintikka_to_pseudo_model, PseudoModel};
use crate::semantics::{validate_frame, EvalContext, FrameClass};
use crate::solver::Outcome;

/// A model for the input together with the evidence it was checked against.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub hintikka: HintikkaStructure,
    pub model: PseudoModel,
    pub frame: FrameClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertifyError {
    Extract(ExtractError),
    Hintikka(HintikkaViolation),
    Frame(FrameClass),
    /// A label member is false at its state in the model.
    TruthLost { state: usize, formula: usize },
    /// The input is false at the root.
    RootFalse,
}

impl fmt::Display for CertifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertifyError::Extract(e) => write!(f, "extraction failed: {e}"),
            CertifyError::Hintikka(v) => write!(f, "not a Hintikka structure: {v}"),
            CertifyError::Frame(c) => write!(f, "not a pseudo-frame: {c:?}"),
            CertifyError::TruthLost { state, formula } => {
                write!(f, "formula #{formula} is false at state {state}")
            }
            CertifyError::RootFalse => write!(f, "the input is false at the root"),
        }
    }
}

impl core::error::Error for CertifyError {}

/// Extracts a model from a satisfiable outcome and checks it. An error here
/// means the engine is wrong, not the input.
pub fn certify(outcome: &Outcome) -> Result<Certificate, CertifyError> {
    let hintikka = extract_hintikka(outcome).map_err(CertifyError::Extract)?;
    verify_hintikka(&outcome.expander(), &hintikka).map_err(CertifyError::Hintikka)?;
    let model = hintikka_to_pseudo_model(&hintikka, &outcome.closure);
    let frame = validate_frame(&model);
    if !frame.is_pseudo() {
        return Err(CertifyError::Frame(frame));
    }
    let mut ctx = EvalContext::new(&model);
    for formula in 0..outcome.closure.len() {
        let holding: Vec<usize> = (0..hintikka.states())
            .filter(|&s| hintikka.labels[s].contains(formula))
            .collect();
        if holding.is_empty() {
            continue;
        }
        let truth = ctx
            .states_satisfying(outcome.closure.formula(formula))
            .expect("closure agents lie in the universe");
        if let Some(&state) = holding.iter().find(|s| truth.binary_search(s).is_err()) {
            return Err(CertifyError::TruthLost { state, formula });
        }
    }
    let root = hintikka.root;
    if !ctx.satisfies(root, &outcome.formula).expect("root is a state") {
        return Err(CertifyError::RootFalse);
    }
    Ok(Certificate {
        hintikka,
        model,
        frame,
    })
}
