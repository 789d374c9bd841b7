//! Finite fragments of the canonical Fitting and Mkrtychev models.
//!
//! A fragment takes a list of assignments to star atoms as its worlds and
//! a finite set of relevant atoms. The canonical accessibility relation
//! `R^c(v,w) = 1 iff v(φ_t) ≤ w(φ⋆)` is only evaluated over the boxed atoms
//! among the relevant ones, so it may be coarser than the true canonical
//! relation; statements about a fragment are always relative to that set.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::calculus::{CalculusId, ConstantSpec};
use crate::fitting::{Defaults, GjModel, ModelError};
use crate::goedel::{eval_prop, Assignment};
use crate::mkrtychev::GmModel;
use crate::signature::Signature;
use crate::syntax::{star, Formula, StarAtom, StarFormula, Term};
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error("a fragment needs at least one assignment")]
    NoAssignments,
    #[error("assignment {world} gives theorem `{theorem}` the value {value}")]
    TheoremViolated { world: usize, theorem: StarFormula, value: Value },
    #[error("fragment too small: atom `{0}` is not relevant")]
    FragmentTooSmall(StarAtom),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone)]
pub struct CanonicalFragment {
    pub model: GjModel,
    pub evaluations: Vec<Assignment>,
    pub relevant: BTreeSet<StarAtom>,
    pub theorems: Vec<StarFormula>,
}

/// Adds every star atom occurring in the body of a relevant boxed atom.
pub fn close_relevant<I: IntoIterator<Item = StarAtom>>(atoms: I) -> BTreeSet<StarAtom> {
    let mut out = BTreeSet::new();
    let mut todo: Vec<StarAtom> = atoms.into_iter().collect();
    while let Some(a) = todo.pop() {
        if let StarAtom::Boxed(body, _) = &a {
            todo.extend(star(body).atoms());
        }
        out.insert(a);
    }
    out
}

/// The relevant atoms needed to evaluate each formula.
pub fn relevant_for<'a, I: IntoIterator<Item = &'a Formula>>(fs: I) -> BTreeSet<StarAtom> {
    close_relevant(fs.into_iter().flat_map(|f| star(f).atoms()))
}

fn signature_of(relevant: &BTreeSet<StarAtom>) -> Signature {
    relevant
        .iter()
        .filter_map(|a| match a {
            StarAtom::Boxed(body, t) => Some(((**t).clone(), (**body).clone())),
            StarAtom::Plain(_) => None,
        })
        .collect()
}

fn validate(world: usize, v: &Assignment, theorems: &[StarFormula]) -> Result<(), CanonicalError> {
    for th in theorems {
        let value = eval_prop(v, th);
        if !value.is_one() {
            return Err(CanonicalError::TheoremViolated { world, theorem: th.clone(), value });
        }
    }
    Ok(())
}

/// Builds the fragment with worlds `v1, v2, …` (one per assignment).
/// Evidence and valuation outside the relevant atoms default to `0`.
pub fn build_fragment(
    evals: &[Assignment],
    theorems: &[StarFormula],
    relevant: &BTreeSet<StarAtom>,
) -> Result<CanonicalFragment, CanonicalError> {
    if evals.is_empty() {
        return Err(CanonicalError::NoAssignments);
    }
    for (i, v) in evals.iter().enumerate() {
        validate(i, v, theorems)?;
    }
    let relevant = close_relevant(relevant.iter().cloned());
    let boxed: Vec<(&StarAtom, StarFormula)> = relevant
        .iter()
        .filter_map(|a| match a {
            StarAtom::Boxed(body, _) => Some((a, star(body))),
            StarAtom::Plain(_) => None,
        })
        .collect();

    let names = (1..=evals.len()).map(|i| format!("v{i}")).collect();
    let mut model = GjModel::new(names, signature_of(&relevant), Defaults::default())?;
    for (w, v) in evals.iter().enumerate() {
        for a in &relevant {
            if let StarAtom::Plain(p) = a {
                model.set_valuation(w, *p, v.get(a));
            }
        }
        for (i, (t, body)) in model.pairs().to_vec().into_iter().enumerate() {
            let value = v.get(&StarAtom::boxed(body, t));
            model.set_evidence_at(i, w, value);
        }
    }
    // body values per world, computed once
    let body_values: Vec<Vec<Value>> =
        evals.iter().map(|w| boxed.iter().map(|(_, b)| eval_prop(w, b)).collect()).collect();
    for (vi, v) in evals.iter().enumerate() {
        for (wi, _) in evals.iter().enumerate() {
            let related = boxed.iter().enumerate().all(|(k, (atom, _))| v.get(atom) <= body_values[wi][k]);
            model.set_accessibility(vi, wi, if related { Value::ONE } else { Value::ZERO });
        }
    }
    Ok(CanonicalFragment { model, evaluations: evals.to_vec(), relevant, theorems: theorems.to_vec() })
}

fn covered(relevant: &BTreeSet<StarAtom>, f: &Formula) -> Result<StarFormula, CanonicalError> {
    let s = star(f);
    if let Some(a) = s.atoms().into_iter().find(|a| !relevant.contains(a)) {
        return Err(CanonicalError::FragmentTooSmall(a));
    }
    Ok(s)
}

/// Compares `e^c(v, φ)` with `v(φ⋆)` at world index `world`.
pub fn truth_lemma_check(frag: &CanonicalFragment, world: usize, f: &Formula) -> Result<bool, CanonicalError> {
    let s = covered(&frag.relevant, f)?;
    Ok(frag.model.eval_world(world, f)? == eval_prop(&frag.evaluations[world], &s))
}

/// The canonical Mkrtychev model of `v`: `ℰ^c(t,φ) = v(φ_t)`, `e^c(p) = v(p)`.
/// Pairs outside `relevant` are read through `v`'s default.
pub fn build_mkrtychev_canonical(
    v: &Assignment,
    theorems: &[StarFormula],
    relevant: &BTreeSet<StarAtom>,
) -> Result<GmModel, CanonicalError> {
    validate(0, v, theorems)?;
    let relevant = close_relevant(relevant.iter().cloned());
    let mut m = GmModel::new(signature_of(&relevant), v.default_value(), v.default_value())?;
    for (i, (t, body)) in m.pairs().to_vec().into_iter().enumerate() {
        m.set_evidence_at(i, v.get(&StarAtom::boxed(body, t)));
    }
    for (a, value) in v.entries() {
        if let StarAtom::Plain(p) = a {
            m.set_valuation(*p, value);
        }
    }
    Ok(m)
}

/// Star-translated justification theorems over the given formulas: every
/// instance of (J), (+), and of the extra schemas of `calculus`, whose
/// justification subformulas all occur in `fs`, plus the members of `cs`
/// among them. Propositional axioms are omitted since every assignment
/// satisfies them.
pub fn theorem_fragment<'a, I>(fs: I, calculus: CalculusId, cs: &ConstantSpec) -> Vec<StarFormula>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let pairs: BTreeSet<(Term, Formula)> = fs.into_iter().flat_map(|f| f.justifications()).collect();
    let has = |t: &Term, f: &Formula| pairs.contains(&(t.clone(), f.clone()));
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |f: Formula| {
        let s = star(&f);
        if seen.insert(s.clone()) {
            out.push(s);
        }
    };
    let just = |t: &Term, f: &Formula| Formula::just(t.clone(), f.clone());
    let imp = Formula::implies;

    for (t, f) in &pairs {
        if cs.contains(&just(t, f)) {
            push(just(t, f));
        }
        match t {
            Term::App(l, r) => {
                for (u, g) in &pairs {
                    if let Formula::Implies(phi, psi) = g {
                        if u == &**l && **psi == *f && has(r, phi) {
                            push(imp(just(l, g), imp(just(r, phi), just(t, f))));
                        }
                    }
                }
            }
            Term::Sum(l, r) => {
                if has(l, f) {
                    push(imp(just(l, f), just(t, f)));
                }
                if has(r, f) {
                    push(imp(just(r, f), just(t, f)));
                }
            }
            _ => {}
        }
        if calculus.has_factivity() {
            push(imp(just(t, f), f.clone()));
        }
        if calculus.has_positive_introspection() && has(&Term::bang(t.clone()), &just(t, f)) {
            push(imp(just(t, f), just(&Term::bang(t.clone()), &just(t, f))));
        }
        let neg_just = Formula::not(just(t, f));
        if calculus.has_negative_introspection() && has(&Term::query(t.clone()), &neg_just) {
            push(imp(neg_just.clone(), just(&Term::query(t.clone()), &neg_just)));
        }
    }
    out
}
