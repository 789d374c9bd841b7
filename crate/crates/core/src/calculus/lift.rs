//! Internalization: turning a derivation into a justification term.

use super::builder::ProofBuilder;
use super::derivation::{check_derivation, Derivation, Justification};
use super::schema::{AxiomSchema, Substitution};
use super::TransformError;
use crate::syntax::{Formula, Term};

/// Lifts a derivation of `φ` from `ψ₁,…,ψₙ` to one of `t:φ` from
/// `t₁:ψ₁,…,tₙ:ψₙ`, returning `t` together with the new derivation.
///
/// Axiom and (CS) steps are justified by a constant found in the constant
/// specification (`c1` for the total one); if none exists the
/// specification is not appropriate for this derivation and lifting fails.
pub fn lift(d: &Derivation, terms: &[Term]) -> Result<(Term, Derivation), TransformError> {
    check_derivation(d)?;
    if terms.len() != d.premises.len() {
        return Err(TransformError::TermCount { premises: d.premises.len(), terms: terms.len() });
    }
    let premises: Vec<Formula> =
        d.premises.iter().zip(terms).map(|(p, t)| Formula::just(t.clone(), p.clone())).collect();
    let mut b = ProofBuilder::new(d.calculus, d.cs.clone(), premises);

    let mut lifted: Vec<(Term, usize)> = Vec::with_capacity(d.steps.len());
    for step in &d.steps {
        let chi = &step.formula;
        let entry = match step.justification {
            Justification::Premise(i) => (terms[i].clone(), b.premise(i)),
            Justification::Axiom(_) | Justification::Cs => {
                let c = d.cs.justifying_constant(chi).ok_or_else(|| TransformError::NotAppropriate(chi.clone()))?;
                let idx = b.cs(Formula::just(c.clone(), chi.clone()));
                (c, idx)
            }
            Justification::Mp { minor, major } => {
                let (u, u_idx) = lifted[major].clone();
                let (v, v_idx) = lifted[minor].clone();
                let psi = &d.steps[minor].formula;
                let sub = Substitution::default().phi(psi.clone()).psi(chi.clone()).t(u.clone()).s(v.clone());
                let j = b.axiom(AxiomSchema::J, &sub);
                let partial = b.mp(u_idx, j);
                (Term::app(u, v), b.mp(v_idx, partial))
            }
        };
        lifted.push(entry);
    }
    let (t, last) = lifted.pop().expect("non-empty after check");
    Ok((t, b.finish(last)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{CalculusId, ConstantSpec, Step};
    use crate::syntax::{parse_formula, parse_term};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn premise_case() {
        let mut d = Derivation::new(CalculusId::Gj, ConstantSpec::total(CalculusId::Gj), vec![f("p1")]);
        d.steps.push(Step::new(f("p1"), Justification::Premise(0)));
        let (t, out) = lift(&d, &[Term::var(1)]).unwrap();
        assert_eq!(t, Term::var(1));
        check_derivation(&out).unwrap();
        assert_eq!(out.conclusion(), Some(&f("x1:p1")));
    }

    #[test]
    fn modus_ponens_case() {
        let mut d = Derivation::new(CalculusId::Gj, ConstantSpec::total(CalculusId::Gj), vec![f("p1"), f("p1 -> p2")]);
        d.steps.push(Step::new(f("p1"), Justification::Premise(0)));
        d.steps.push(Step::new(f("p1 -> p2"), Justification::Premise(1)));
        d.steps.push(Step::new(f("p2"), Justification::Mp { minor: 0, major: 1 }));
        let (t, out) = lift(&d, &[Term::var(1), Term::var(2)]).unwrap();
        assert_eq!(t, parse_term("[x2.x1]").unwrap());
        check_derivation(&out).unwrap();
        assert_eq!(out.conclusion(), Some(&f("[x2.x1]:p2")));
    }

    #[test]
    fn axiom_case() {
        let mut d = Derivation::new(CalculusId::Gj, ConstantSpec::total(CalculusId::Gj), vec![]);
        d.steps.push(Step::new(f("bot -> p1"), Justification::Axiom(None)));
        let (t, out) = lift(&d, &[]).unwrap();
        assert_eq!(t, Term::constant(1));
        assert_eq!(out.len(), 1);
        assert_eq!(out.steps[0].justification, Justification::Cs);
        check_derivation(&out).unwrap();
    }

    #[test]
    fn cs_steps_nest_constants() {
        let cs = ConstantSpec::extensional(CalculusId::Gj, [f("c1:(bot -> p1)"), f("c2:c1:(bot -> p1)")]).unwrap();
        let mut d = Derivation::new(CalculusId::Gj, cs, vec![]);
        d.steps.push(Step::new(f("c1:(bot -> p1)"), Justification::Cs));
        let (t, out) = lift(&d, &[]).unwrap();
        assert_eq!(t, Term::constant(2));
        check_derivation(&out).unwrap();
    }

    #[test]
    fn inappropriate_cs_is_reported() {
        let mut d = Derivation::new(CalculusId::Gj, ConstantSpec::empty(CalculusId::Gj), vec![]);
        d.steps.push(Step::new(f("bot -> p1"), Justification::Axiom(None)));
        assert!(matches!(lift(&d, &[]), Err(TransformError::NotAppropriate(_))));
        let mut d = Derivation::new(CalculusId::Gj, ConstantSpec::total(CalculusId::Gj), vec![f("p1")]);
        d.steps.push(Step::new(f("p1"), Justification::Premise(0)));
        assert!(matches!(lift(&d, &[]), Err(TransformError::TermCount { .. })));
    }
}
