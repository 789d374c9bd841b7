//! The deduction theorem as a derivation transformation.

use super::builder::ProofBuilder;
use super::derivation::{check_derivation, Derivation, Justification};
use super::TransformError;
use crate::syntax::Formula;

/// Turns a derivation of `φ` from `Γ ∪ {α}` into one of `α → φ` from `Γ`.
///
/// Every occurrence of `α` is dropped from the premise list. Each step `χ`
/// becomes a proof of `α → χ`: premises equal to `α` by `α → α`, other
/// premises, axioms and (CS) steps by weakening, and modus ponens by the
/// distribution lemma followed by two applications of modus ponens.
pub fn deduction_transform(d: &Derivation, alpha: &Formula) -> Result<Derivation, TransformError> {
    check_derivation(d)?;

    let mut remap = Vec::with_capacity(d.premises.len());
    let mut premises = Vec::new();
    for p in &d.premises {
        if p == alpha {
            remap.push(None);
        } else {
            remap.push(Some(premises.len()));
            premises.push(p.clone());
        }
    }

    let mut b = ProofBuilder::new(d.calculus, d.cs.clone(), premises);
    let mut out: Vec<usize> = Vec::with_capacity(d.steps.len());
    for step in &d.steps {
        let chi = &step.formula;
        let idx = match step.justification {
            Justification::Premise(i) => match remap[i] {
                None => b.identity(alpha),
                Some(j) => {
                    let s = b.premise(j);
                    weaken(&mut b, s, chi, alpha)
                }
            },
            Justification::Axiom(_) => {
                let (schema, sub) = d.calculus.match_axiom(chi).expect("checked above");
                let s = b.axiom(schema, &sub);
                weaken(&mut b, s, chi, alpha)
            }
            Justification::Cs => {
                let s = b.cs(chi.clone());
                weaken(&mut b, s, chi, alpha)
            }
            Justification::Mp { minor, major } => {
                let psi = &d.steps[minor].formula;
                let dist = b.distribution(alpha, psi, chi);
                let partial = b.mp(out[major], dist);
                b.mp(out[minor], partial)
            }
        };
        out.push(idx);
    }
    let last = *out.last().expect("non-empty after check");
    Ok(b.finish(last))
}

/// From a proof of `χ` at `s`, proves `α → χ`.
fn weaken(b: &mut ProofBuilder, s: usize, chi: &Formula, alpha: &Formula) -> usize {
    let w = b.weakening(chi, alpha);
    b.mp(s, w)
}
