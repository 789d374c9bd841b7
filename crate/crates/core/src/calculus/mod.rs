//! Hilbert calculi for the justification logics: axiom schemas, constant
//! specifications, derivation checking and derivation transformations.

mod builder;
mod cs;
mod deduction;
mod derivation;
mod lift;
mod schema;
mod translate;

use thiserror::Error;

pub use cs::{constant_chain, ConstantSpec, CsError, CsKind};
pub use deduction::deduction_transform;
pub use derivation::{check_derivation, CheckedDerivation, Derivation, DerivationError, Justification, Step, StepFault};
pub use lift::lift;
pub use schema::{match_axiom, AxiomSchema, CalculusId, Substitution};
pub use translate::{check_prop_derivation, translate_derivation, PropCheckError, PropDerivation, PropJustification};

use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("input derivation is invalid: {0}")]
    Invalid(#[from] DerivationError),
    #[error("constant specification is not appropriate: no constant justifies `{0}`")]
    NotAppropriate(Formula),
    #[error("{premises} premises but {terms} terms")]
    TermCount { premises: usize, terms: usize },
}
