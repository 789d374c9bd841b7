//! Star translation of derivations into propositional Gödel derivations.
//!
//! The output lives in the augmented propositional language: justification
//! formulas are opaque atoms `φ_t`. Steps that depend on justification
//! axioms or on (CS) are discharged against a finite set of translated
//! theorems, the fragment of `Th⋆` the derivation actually touches.

use std::collections::BTreeMap;

use thiserror::Error;

use super::derivation::{check_derivation, Derivation, Justification};
use super::schema::AxiomSchema;
use super::TransformError;
use crate::syntax::{star, Formula, StarFormula};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropJustification {
    Premise(usize),
    Axiom(AxiomSchema),
    /// Index into [`PropDerivation::theorems`].
    Theorem(usize),
    Mp { minor: usize, major: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropDerivation {
    pub premises: Vec<StarFormula>,
    pub theorems: Vec<StarFormula>,
    pub steps: Vec<(StarFormula, PropJustification)>,
}

impl PropDerivation {
    pub fn conclusion(&self) -> Option<&StarFormula> {
        self.steps.last().map(|(f, _)| f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {}: {reason}", .step + 1)]
pub struct PropCheckError {
    pub step: usize,
    pub reason: String,
}

pub fn translate_derivation(d: &Derivation) -> Result<PropDerivation, TransformError> {
    let checked = check_derivation(d)?;
    let premises = d.premises.iter().map(star).collect();
    let mut theorems: Vec<StarFormula> = Vec::new();
    let mut theorem_index: BTreeMap<StarFormula, usize> = BTreeMap::new();
    let mut steps = Vec::with_capacity(d.steps.len());

    for (step, schema) in d.steps.iter().zip(&checked.schemas) {
        let s = star(&step.formula);
        let j = match (step.justification, schema) {
            (Justification::Premise(i), _) => PropJustification::Premise(i),
            (Justification::Mp { minor, major }, _) => PropJustification::Mp { minor, major },
            (Justification::Axiom(_), Some(sc)) if sc.is_propositional() => PropJustification::Axiom(*sc),
            _ => {
                let next = theorems.len();
                let idx = *theorem_index.entry(s.clone()).or_insert(next);
                if idx == next {
                    theorems.push(s.clone());
                }
                PropJustification::Theorem(idx)
            }
        };
        steps.push((s, j));
    }
    Ok(PropDerivation { premises, theorems, steps })
}

/// Checks a propositional derivation using only the schemas of 𝒢, matched
/// directly on star formulas.
pub fn check_prop_derivation(d: &PropDerivation) -> Result<(), PropCheckError> {
    if d.steps.is_empty() {
        return Err(PropCheckError { step: 0, reason: "derivation has no steps".into() });
    }
    for (k, (f, j)) in d.steps.iter().enumerate() {
        let fail = |reason: String| PropCheckError { step: k, reason };
        match *j {
            PropJustification::Premise(i) => {
                if d.premises.get(i) != Some(f) {
                    return Err(fail(format!("not premise {i}")));
                }
            }
            PropJustification::Theorem(i) => {
                if d.theorems.get(i) != Some(f) {
                    return Err(fail(format!("not theorem {i}")));
                }
            }
            PropJustification::Axiom(schema) => {
                if !schema.is_propositional() {
                    return Err(fail(format!("{schema} is not a schema of 𝒢")));
                }
                if !matches_prop(schema.template(), f, &mut [None, None, None]) {
                    return Err(fail(format!("not an instance of {schema}")));
                }
            }
            PropJustification::Mp { minor, major } => {
                if minor >= k || major >= k {
                    return Err(fail("modus ponens refers forward".into()));
                }
                let ok = matches!(&d.steps[major].0, StarFormula::Implies(a, b) if **a == d.steps[minor].0 && **b == *f);
                if !ok {
                    return Err(fail("modus ponens shape mismatch".into()));
                }
            }
        }
    }
    Ok(())
}

/// Matches a propositional schema template (metavariables `p1..p3`)
/// against a star formula.
fn matches_prop(template: &Formula, f: &StarFormula, binding: &mut [Option<StarFormula>; 3]) -> bool {
    match (template, f) {
        (Formula::Atom(i), _) => {
            let slot = &mut binding[*i as usize - 1];
            match slot {
                Some(bound) => bound == f,
                None => {
                    *slot = Some(f.clone());
                    true
                }
            }
        }
        (Formula::Bottom, StarFormula::Bottom) => true,
        (Formula::And(a, b), StarFormula::And(x, y)) | (Formula::Implies(a, b), StarFormula::Implies(x, y)) => {
            matches_prop(a, x, binding) && matches_prop(b, y, binding)
        }
        _ => false,
    }
}
