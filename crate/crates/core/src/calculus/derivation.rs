//! Annotated Hilbert derivations and their checker.

use std::fmt;

use thiserror::Error;

use super::cs::ConstantSpec;
use super::schema::{AxiomSchema, CalculusId};
use crate::syntax::Formula;

/// How a step is obtained. All indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Justification {
    Premise(usize),
    /// An axiom instance, optionally naming the schema it claims to match.
    Axiom(Option<AxiomSchema>),
    /// The rule (CS): the formula is a member of the constant specification.
    Cs,
    /// Modus ponens from step `minor` (`ψ`) and step `major` (`ψ → φ`).
    Mp { minor: usize, major: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub justification: Justification,
}

impl Step {
    pub fn new(formula: Formula, justification: Justification) -> Self {
        Step { formula, justification }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub calculus: CalculusId,
    pub cs: ConstantSpec,
    pub premises: Vec<Formula>,
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn new(calculus: CalculusId, cs: ConstantSpec, premises: Vec<Formula>) -> Self {
        Derivation { calculus, cs, premises, steps: Vec::new() }
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepFault {
    #[error("premise index {0} out of range")]
    PremiseIndex(usize),
    #[error("formula differs from premise {0}")]
    PremiseMismatch(usize),
    #[error("not an axiom of {0}")]
    NotAnAxiom(CalculusId),
    #[error("claimed schema {0} does not match")]
    SchemaMismatch(AxiomSchema),
    #[error("schema {schema} is not part of {calculus}")]
    SchemaNotInCalculus { schema: AxiomSchema, calculus: CalculusId },
    #[error("formula is not in the constant specification")]
    NotInCs,
    #[error("modus ponens refers to step {0}, which does not precede it")]
    ForwardReference(usize),
    #[error("modus ponens shape mismatch: step {} is not step {} -> this formula", .major + 1, .minor + 1)]
    MpShape { minor: usize, major: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("derivation has no steps")]
    Empty,
    #[error("constant specification for {cs} cannot be used in {calculus}")]
    CsCalculus { cs: CalculusId, calculus: CalculusId },
    #[error("step {}: {fault}", .step + 1)]
    Step { step: usize, fault: StepFault },
}

impl DerivationError {
    pub fn step(&self) -> Option<usize> {
        match self {
            DerivationError::Step { step, .. } => Some(*step),
            _ => None,
        }
    }
}

/// Result of a successful check: the schema matched at every axiom step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckedDerivation {
    pub schemas: Vec<Option<AxiomSchema>>,
}

impl fmt::Display for CheckedDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OK ({} steps)", self.schemas.len())
    }
}

pub fn check_derivation(d: &Derivation) -> Result<CheckedDerivation, DerivationError> {
    if d.steps.is_empty() {
        return Err(DerivationError::Empty);
    }
    if !d.cs.calculus().is_sub_calculus_of(d.calculus) {
        return Err(DerivationError::CsCalculus { cs: d.cs.calculus(), calculus: d.calculus });
    }
    let mut schemas = Vec::with_capacity(d.steps.len());
    for (k, step) in d.steps.iter().enumerate() {
        let fail = |fault| DerivationError::Step { step: k, fault };
        let matched = match step.justification {
            Justification::Premise(i) => {
                let premise = d.premises.get(i).ok_or_else(|| fail(StepFault::PremiseIndex(i)))?;
                if *premise != step.formula {
                    return Err(fail(StepFault::PremiseMismatch(i)));
                }
                None
            }
            Justification::Axiom(None) => {
                let (schema, _) = d.calculus.match_axiom(&step.formula).ok_or_else(|| fail(StepFault::NotAnAxiom(d.calculus)))?;
                Some(schema)
            }
            Justification::Axiom(Some(schema)) => {
                if !d.calculus.includes(schema) {
                    return Err(fail(StepFault::SchemaNotInCalculus { schema, calculus: d.calculus }));
                }
                if schema.matches(&step.formula).is_none() {
                    return Err(fail(StepFault::SchemaMismatch(schema)));
                }
                Some(schema)
            }
            Justification::Cs => {
                if !d.cs.contains(&step.formula) {
                    return Err(fail(StepFault::NotInCs));
                }
                None
            }
            Justification::Mp { minor, major } => {
                for idx in [minor, major] {
                    if idx >= k {
                        return Err(fail(StepFault::ForwardReference(idx)));
                    }
                }
                let ok = match &d.steps[major].formula {
                    Formula::Implies(a, b) => **a == d.steps[minor].formula && **b == step.formula,
                    _ => false,
                };
                if !ok {
                    return Err(fail(StepFault::MpShape { minor, major }));
                }
                None
            }
        };
        schemas.push(matched);
    }
    Ok(CheckedDerivation { schemas })
}
