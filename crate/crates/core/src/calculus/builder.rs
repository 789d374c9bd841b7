//! Incremental derivation construction and the derived propositional
//! lemmas used by the deduction and lifting transformations.
//!
//! Every lemma here emits ordinary axiom and modus-ponens steps, so the
//! result is always re-checkable by [`check_derivation`](super::check_derivation).

use std::collections::HashMap;

use super::cs::ConstantSpec;
use super::derivation::{Derivation, Justification, Step};
use super::schema::{AxiomSchema, CalculusId, Substitution};
use crate::syntax::Formula;

pub(crate) struct ProofBuilder {
    calculus: CalculusId,
    cs: ConstantSpec,
    premises: Vec<Formula>,
    steps: Vec<Step>,
    proved: HashMap<Formula, usize>,
}

fn and(a: &Formula, b: &Formula) -> Formula {
    Formula::and(a.clone(), b.clone())
}

fn imp(a: &Formula, b: &Formula) -> Formula {
    Formula::implies(a.clone(), b.clone())
}

fn sub3(phi: &Formula, psi: &Formula, chi: &Formula) -> Substitution {
    Substitution::default().phi(phi.clone()).psi(psi.clone()).chi(chi.clone())
}

fn sub2(phi: &Formula, psi: &Formula) -> Substitution {
    Substitution::default().phi(phi.clone()).psi(psi.clone())
}

impl ProofBuilder {
    pub fn new(calculus: CalculusId, cs: ConstantSpec, premises: Vec<Formula>) -> Self {
        ProofBuilder { calculus, cs, premises, steps: Vec::new(), proved: HashMap::new() }
    }

    pub fn formula(&self, idx: usize) -> &Formula {
        &self.steps[idx].formula
    }

    /// Appends a step unless the formula is already proved.
    pub fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        if let Some(&i) = self.proved.get(&formula) {
            return i;
        }
        let idx = self.steps.len();
        self.proved.insert(formula.clone(), idx);
        self.steps.push(Step::new(formula, justification));
        idx
    }

    pub fn premise(&mut self, i: usize) -> usize {
        let f = self.premises[i].clone();
        self.push(f, Justification::Premise(i))
    }

    pub fn axiom(&mut self, schema: AxiomSchema, sub: &Substitution) -> usize {
        debug_assert!(self.calculus.includes(schema));
        self.push(schema.instantiate(sub), Justification::Axiom(Some(schema)))
    }

    pub fn cs(&mut self, formula: Formula) -> usize {
        debug_assert!(self.cs.contains(&formula));
        self.push(formula, Justification::Cs)
    }

    /// Modus ponens; `major` must prove `minor → φ`.
    pub fn mp(&mut self, minor: usize, major: usize) -> usize {
        let conclusion = match &self.steps[major].formula {
            Formula::Implies(a, b) if **a == self.steps[minor].formula => (**b).clone(),
            other => panic!("internal: modus ponens on `{}` and `{other}`", self.steps[minor].formula),
        };
        self.push(conclusion, Justification::Mp { minor, major })
    }

    /// Finishes with `target` as the conclusion; later steps are dropped.
    pub fn finish(mut self, target: usize) -> Derivation {
        self.steps.truncate(target + 1);
        Derivation { calculus: self.calculus, cs: self.cs, premises: self.premises, steps: self.steps }
    }

    /// `A → B`, `B → C` ⊢ `A → C`
    pub fn syllogism(&mut self, ab: usize, bc: usize) -> usize {
        let (a, b) = split_imp(self.formula(ab));
        let (_, c) = split_imp(self.formula(bc));
        let a1 = self.axiom(AxiomSchema::A1, &sub3(&a, &b, &c));
        let bc_ac = self.mp(ab, a1);
        self.mp(bc, bc_ac)
    }

    /// `φ → (ψ → φ)`
    pub fn weakening(&mut self, phi: &Formula, psi: &Formula) -> usize {
        let a2 = self.axiom(AxiomSchema::A2, &sub2(phi, psi));
        let a5b = self.axiom(AxiomSchema::A5b, &sub3(phi, psi, phi));
        self.mp(a2, a5b)
    }

    /// `φ → φ`
    pub fn identity(&mut self, phi: &Formula) -> usize {
        let g4 = self.axiom(AxiomSchema::G4, &Substitution::default().phi(phi.clone()));
        let a2 = self.axiom(AxiomSchema::A2, &sub2(phi, phi));
        self.syllogism(g4, a2)
    }

    /// `B → (C → B ∧ C)`
    pub fn pair(&mut self, b: &Formula, c: &Formula) -> usize {
        let bc = and(b, c);
        let id = self.identity(&bc);
        let a5b = self.axiom(AxiomSchema::A5b, &sub3(b, c, &bc));
        self.mp(id, a5b)
    }

    /// `A → B` ⊢ `A ∧ C → B ∧ C`
    pub fn and_mono_left(&mut self, ab: usize, c: &Formula) -> usize {
        let (a, b) = split_imp(self.formula(ab));
        let bc = and(&b, c);
        let c_bc = imp(c, &bc);
        // (A → B) → ((B → (C → B∧C)) → (A → (C → B∧C)))
        let a1 = self.axiom(AxiomSchema::A1, &sub3(&a, &b, &c_bc));
        let inner = self.mp(ab, a1);
        let pair = self.pair(&b, c);
        let a_c_bc = self.mp(pair, inner);
        let a5a = self.axiom(AxiomSchema::A5a, &sub3(&a, c, &bc));
        self.mp(a_c_bc, a5a)
    }

    /// `A → B` ⊢ `C ∧ A → C ∧ B`
    pub fn and_mono_right(&mut self, ab: usize, c: &Formula) -> usize {
        let (a, b) = split_imp(self.formula(ab));
        let swap_in = self.axiom(AxiomSchema::A3, &sub2(c, &a));
        let mono = self.and_mono_left(ab, c);
        let swap_out = self.axiom(AxiomSchema::A3, &sub2(&b, c));
        let first = self.syllogism(swap_in, mono);
        self.syllogism(first, swap_out)
    }

    /// `A → B`, `C → D` ⊢ `A ∧ C → B ∧ D`
    pub fn and_both(&mut self, ab: usize, cd: usize) -> usize {
        let (_, b) = split_imp(self.formula(ab));
        let (c, _) = split_imp(self.formula(cd));
        let left = self.and_mono_left(ab, &c);
        let right = self.and_mono_right(cd, &b);
        self.syllogism(left, right)
    }

    /// `A → B`, `A → C` ⊢ `A → B ∧ C`
    pub fn conj_intro(&mut self, ab: usize, ac: usize) -> usize {
        let (a, _) = split_imp(self.formula(ab));
        let g4 = self.axiom(AxiomSchema::G4, &Substitution::default().phi(a));
        let both = self.and_both(ab, ac);
        self.syllogism(g4, both)
    }

    /// `A ∧ B → B`
    pub fn and_elim_right(&mut self, a: &Formula, b: &Formula) -> usize {
        let swap = self.axiom(AxiomSchema::A3, &sub2(a, b));
        let proj = self.axiom(AxiomSchema::A2, &sub2(b, a));
        self.syllogism(swap, proj)
    }

    /// `(A → B) ∧ A → B`
    pub fn apply(&mut self, a: &Formula, b: &Formula) -> usize {
        let ab = imp(a, b);
        let id = self.identity(&ab);
        let a5a = self.axiom(AxiomSchema::A5a, &sub3(&ab, a, b));
        self.mp(id, a5a)
    }

    /// `(φ → (ψ → χ)) → ((φ → ψ) → (φ → χ))`
    pub fn distribution(&mut self, phi: &Formula, psi: &Formula, chi: &Formula) -> usize {
        let h1 = imp(phi, &imp(psi, chi));
        let h2 = imp(phi, psi);
        let x = and(&h1, &h2);

        let m1 = self.apply(phi, &imp(psi, chi));
        let m2 = self.apply(phi, psi);
        let both = self.and_both(m1, m2);
        let m3 = self.apply(psi, chi);
        let collapse = self.syllogism(both, m3);

        let left = self.axiom(AxiomSchema::A2, &sub2(&h1, &h2));
        let proj1 = self.and_mono_left(left, phi);
        let right = self.and_elim_right(&h1, &h2);
        let proj2 = self.and_mono_left(right, phi);
        let split = self.conj_intro(proj1, proj2);
        let body = self.syllogism(split, collapse);

        let curry1 = self.axiom(AxiomSchema::A5b, &sub3(&x, phi, chi));
        let x_imp = self.mp(body, curry1);
        let curry2 = self.axiom(AxiomSchema::A5b, &sub3(&h1, &h2, &imp(phi, chi)));
        self.mp(x_imp, curry2)
    }
}

fn split_imp(f: &Formula) -> (Formula, Formula) {
    match f {
        Formula::Implies(a, b) => ((**a).clone(), (**b).clone()),
        other => panic!("internal: expected an implication, got `{other}`"),
    }
}
