use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Formula, Term};

/// A propositional variable of the star language: either an ordinary atom
/// or the fresh variable `φ_t` standing for `t:φ`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StarAtom {
    Plain(u32),
    Boxed(Arc<Formula>, Arc<Term>),
}

impl StarAtom {
    pub fn boxed(body: Formula, term: Term) -> StarAtom {
        StarAtom::Boxed(Arc::new(body), Arc::new(term))
    }
}

/// Propositional formulas over [`StarAtom`]; no justification operator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StarFormula {
    Bottom,
    Atom(StarAtom),
    And(Arc<StarFormula>, Arc<StarFormula>),
    Implies(Arc<StarFormula>, Arc<StarFormula>),
}

impl StarFormula {
    pub fn atom(a: StarAtom) -> StarFormula {
        StarFormula::Atom(a)
    }

    pub fn plain(i: u32) -> StarFormula {
        StarFormula::Atom(StarAtom::Plain(i))
    }

    pub fn and(a: StarFormula, b: StarFormula) -> StarFormula {
        StarFormula::And(Arc::new(a), Arc::new(b))
    }

    pub fn implies(a: StarFormula, b: StarFormula) -> StarFormula {
        StarFormula::Implies(Arc::new(a), Arc::new(b))
    }

    pub fn atoms(&self) -> BTreeSet<StarAtom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<StarAtom>) {
        match self {
            StarFormula::Bottom => {}
            StarFormula::Atom(a) => {
                if !out.contains(a) {
                    out.insert(a.clone());
                }
            }
            StarFormula::And(a, b) | StarFormula::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            StarFormula::Bottom | StarFormula::Atom(_) => 0,
            StarFormula::And(a, b) | StarFormula::Implies(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

/// The star translation: homomorphic on `⊥`, atoms, `∧`, `→`, and sends
/// each `t:φ` to the single variable `φ_t`.
pub fn star(f: &Formula) -> StarFormula {
    match f {
        Formula::Bottom => StarFormula::Bottom,
        Formula::Atom(i) => StarFormula::plain(*i),
        Formula::And(a, b) => StarFormula::and(star(a), star(b)),
        Formula::Implies(a, b) => StarFormula::implies(star(a), star(b)),
        Formula::Just(t, body) => StarFormula::Atom(StarAtom::Boxed(body.clone(), t.clone())),
    }
}

/// Inverse of [`star`]: replaces every `φ_t` by `t:φ`.
pub fn unstar(f: &StarFormula) -> Formula {
    match f {
        StarFormula::Bottom => Formula::Bottom,
        StarFormula::Atom(StarAtom::Plain(i)) => Formula::Atom(*i),
        StarFormula::Atom(StarAtom::Boxed(body, t)) => Formula::Just(t.clone(), body.clone()),
        StarFormula::And(a, b) => Formula::and(unstar(a), unstar(b)),
        StarFormula::Implies(a, b) => Formula::implies(unstar(a), unstar(b)),
    }
}
