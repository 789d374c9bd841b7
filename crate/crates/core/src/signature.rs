//! Finite evidence signatures and the closure-condition instances they induce.
//!
//! Evidence functions are total (explicit entries plus a default) but the
//! application and sum conditions are only enforced on instances whose
//! conclusion lies in a finite signature of `(t, φ)` pairs:
//!
//! * for `([t·s], ψ)` in the signature, one application instance per `φ`
//!   with `(t, φ→ψ)` or `(s, φ)` in the signature, plus one instance with a
//!   fresh atom for `φ`, where both premises are read through the default;
//! * for `([t+s], φ)` in the signature, the single sum instance.
//!
//! Premises outside the signature are read through the evidence default.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::syntax::{Formula, Term};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pairs: BTreeSet<(Term, Formula)>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, term: Term, body: Formula) -> bool {
        self.pairs.insert((term, body))
    }

    pub fn contains(&self, term: &Term, body: &Formula) -> bool {
        // BTreeSet lookup needs an owned tuple; signatures are small.
        self.pairs.contains(&(term.clone(), body.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Term, Formula)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Signature covering every justification subformula of `fs`.
    pub fn covering<'a, I>(fs: I) -> Self
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        let mut pairs = BTreeSet::new();
        for f in fs {
            f.collect_justifications(&mut pairs);
        }
        Signature { pairs }
    }

    /// Adds every justification subformula of the bodies already present.
    pub fn close(&mut self) {
        let mut extra = BTreeSet::new();
        for (_, body) in &self.pairs {
            body.collect_justifications(&mut extra);
        }
        self.pairs.extend(extra);
    }

    pub fn closed(mut self) -> Self {
        self.close();
        self
    }

    /// First pair whose body mentions a `t:ψ` that is itself missing.
    pub fn first_unclosed(&self) -> Option<(&Term, &Formula, (Term, Formula))> {
        for (t, body) in &self.pairs {
            for inner in body.justifications() {
                if !self.pairs.contains(&inner) {
                    return Some((t, body, inner));
                }
            }
        }
        None
    }

    /// Checks that `f` can be evaluated: all its `t:ψ` subformulas are here.
    pub fn missing_for(&self, f: &Formula) -> Option<(Term, Formula)> {
        f.justifications().into_iter().find(|p| !self.pairs.contains(p))
    }

    pub fn closure_instances(&self) -> Vec<ClosureInstance> {
        let mut by_term: BTreeMap<&Term, Vec<&Formula>> = BTreeMap::new();
        let mut max_atom = 0;
        for (t, f) in &self.pairs {
            by_term.entry(t).or_default().push(f);
            max_atom = max_atom.max(f.atoms().into_iter().max().unwrap_or(0));
        }
        let fresh = Formula::atom(max_atom + 1);
        let mut out = BTreeSet::new();
        for (t, f) in &self.pairs {
            match t {
                Term::App(l, r) => {
                    let mut antecedents: BTreeSet<&Formula> = BTreeSet::new();
                    for g in by_term.get(&**l).into_iter().flatten() {
                        if let Formula::Implies(phi, psi) = g {
                            if **psi == *f {
                                antecedents.insert(phi);
                            }
                        }
                    }
                    antecedents.extend(by_term.get(&**r).into_iter().flatten().copied());
                    antecedents.insert(&fresh);
                    for phi in antecedents {
                        out.insert(ClosureInstance::Application {
                            left: (**l).clone(),
                            right: (**r).clone(),
                            antecedent: phi.clone(),
                            consequent: f.clone(),
                        });
                    }
                }
                Term::Sum(l, r) => {
                    out.insert(ClosureInstance::Sum { left: (**l).clone(), right: (**r).clone(), body: f.clone() });
                }
                _ => {}
            }
        }
        out.into_iter().collect()
    }
}

impl FromIterator<(Term, Formula)> for Signature {
    fn from_iter<I: IntoIterator<Item = (Term, Formula)>>(iter: I) -> Self {
        Signature { pairs: iter.into_iter().collect() }
    }
}

impl<'a> IntoIterator for &'a Signature {
    type Item = &'a (Term, Formula);
    type IntoIter = std::collections::btree_set::Iter<'a, (Term, Formula)>;

    fn into_iter(self) -> Self::IntoIter {
        self.pairs.iter()
    }
}

/// One instance of a closure condition on evidence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClosureInstance {
    /// `ℰ(t, φ→ψ) ⊙ ℰ(s, φ) ≤ ℰ([t·s], ψ)`
    Application { left: Term, right: Term, antecedent: Formula, consequent: Formula },
    /// `ℰ(t, φ) ⊕ ℰ(s, φ) ≤ ℰ([t+s], φ)`
    Sum { left: Term, right: Term, body: Formula },
}

impl ClosureInstance {
    /// The `(term, body)` lookups of the two premises and the conclusion.
    pub fn lookups(&self) -> [(Term, Formula); 3] {
        match self {
            ClosureInstance::Application { left, right, antecedent, consequent } => [
                (left.clone(), Formula::implies(antecedent.clone(), consequent.clone())),
                (right.clone(), antecedent.clone()),
                (Term::app(left.clone(), right.clone()), consequent.clone()),
            ],
            ClosureInstance::Sum { left, right, body } => [
                (left.clone(), body.clone()),
                (right.clone(), body.clone()),
                (Term::sum(left.clone(), right.clone()), body.clone()),
            ],
        }
    }

    pub fn is_application(&self) -> bool {
        matches!(self, ClosureInstance::Application { .. })
    }
}

impl fmt::Display for ClosureInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.lookups();
        let op = if self.is_application() { "⊙" } else { "⊕" };
        write!(f, "E({}, {}) {op} E({}, {}) <= E({}, {})", a.0, a.1, b.0, b.1, c.0, c.1)
    }
}
