//! Justification terms, formulas of the justification language, and the
//! star translation into an augmented propositional language.

mod parse;
mod print;
mod star;

use std::collections::BTreeSet;
use std::sync::Arc;

pub(crate) use parse::strip_comment;
pub use parse::{parse_formula, parse_formulas, parse_star_atom, parse_term, parse_term_prefix, ParseError};
pub use star::{star, unstar, StarAtom, StarFormula};

/// Justification terms: `x ∣ c ∣ [t·t] ∣ [t+t] ∣ !t ∣ ?t`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(u32),
    Const(u32),
    App(Arc<Term>, Arc<Term>),
    Sum(Arc<Term>, Arc<Term>),
    Bang(Arc<Term>),
    Query(Arc<Term>),
}

impl Term {
    pub fn var(i: u32) -> Term {
        Term::Var(i)
    }

    pub fn constant(i: u32) -> Term {
        Term::Const(i)
    }

    pub fn app(left: Term, right: Term) -> Term {
        Term::App(Arc::new(left), Arc::new(right))
    }

    pub fn sum(left: Term, right: Term) -> Term {
        Term::Sum(Arc::new(left), Arc::new(right))
    }

    pub fn bang(inner: Term) -> Term {
        Term::Bang(Arc::new(inner))
    }

    pub fn query(inner: Term) -> Term {
        Term::Query(Arc::new(inner))
    }

    pub fn is_const(&self) -> bool {
        matches!(self, Term::Const(_))
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::App(l, r) | Term::Sum(l, r) => 1 + l.size() + r.size(),
            Term::Bang(t) | Term::Query(t) => 1 + t.size(),
        }
    }
}

/// Formulas over `⊥`, atoms, `∧`, `→` and `t:φ`.
///
/// Negation, disjunction, equivalence and `⊤` are not constructors; the
/// helpers [`Formula::not`], [`Formula::or`], [`Formula::iff`] and
/// [`Formula::top`] expand them into the core connectives.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bottom,
    Atom(u32),
    And(Arc<Formula>, Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
    Just(Arc<Term>, Arc<Formula>),
}

impl Formula {
    pub fn bottom() -> Formula {
        Formula::Bottom
    }

    pub fn atom(i: u32) -> Formula {
        Formula::Atom(i)
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::And(Arc::new(left), Arc::new(right))
    }

    pub fn implies(left: Formula, right: Formula) -> Formula {
        Formula::Implies(Arc::new(left), Arc::new(right))
    }

    pub fn just(term: Term, body: Formula) -> Formula {
        Formula::Just(Arc::new(term), Arc::new(body))
    }

    /// `¬φ := φ → ⊥`
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::implies(f, Formula::Bottom)
    }

    /// `⊤ := ⊥ → ⊥`
    pub fn top() -> Formula {
        Formula::implies(Formula::Bottom, Formula::Bottom)
    }

    /// `φ ↔ ψ := (φ → ψ) ∧ (ψ → φ)`
    pub fn iff(left: Formula, right: Formula) -> Formula {
        Formula::and(
            Formula::implies(left.clone(), right.clone()),
            Formula::implies(right, left),
        )
    }

    /// `φ ∨ ψ := ((φ → ψ) → ψ) ∧ ((ψ → φ) → φ)`
    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula::and(
            Formula::implies(Formula::implies(left.clone(), right.clone()), right.clone()),
            Formula::implies(Formula::implies(right, left.clone()), left),
        )
    }

    pub fn as_implication(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Implies(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_just(&self) -> Option<(&Term, &Formula)> {
        match self {
            Formula::Just(t, f) => Some((t, f)),
            _ => None,
        }
    }

    /// True when the formula contains no justification operator.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Bottom | Formula::Atom(_) => true,
            Formula::And(a, b) | Formula::Implies(a, b) => a.is_propositional() && b.is_propositional(),
            Formula::Just(..) => false,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Bottom | Formula::Atom(_) => 1,
            Formula::And(a, b) | Formula::Implies(a, b) => 1 + a.size() + b.size(),
            Formula::Just(t, f) => t.size() + f.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Bottom | Formula::Atom(_) => 0,
            Formula::And(a, b) | Formula::Implies(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Just(_, f) => 1 + f.depth(),
        }
    }

    /// Atom indices occurring anywhere, including under justifications.
    pub fn atoms(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<u32>) {
        match self {
            Formula::Bottom => {}
            Formula::Atom(i) => {
                out.insert(*i);
            }
            Formula::And(a, b) | Formula::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Just(_, f) => f.collect_atoms(out),
        }
    }

    /// Every `(t, φ)` such that `t:φ` occurs as a subformula, at any depth.
    pub fn justifications(&self) -> BTreeSet<(Term, Formula)> {
        let mut out = BTreeSet::new();
        self.collect_justifications(&mut out);
        out
    }

    pub(crate) fn collect_justifications(&self, out: &mut BTreeSet<(Term, Formula)>) {
        match self {
            Formula::Bottom | Formula::Atom(_) => {}
            Formula::And(a, b) | Formula::Implies(a, b) => {
                a.collect_justifications(out);
                b.collect_justifications(out);
            }
            Formula::Just(t, f) => {
                out.insert(((**t).clone(), (**f).clone()));
                f.collect_justifications(out);
            }
        }
    }

    /// Immediate subformulas; the body of `t:φ` counts as one.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Bottom | Formula::Atom(_) => vec![],
            Formula::And(a, b) | Formula::Implies(a, b) => vec![a, b],
            Formula::Just(_, f) => vec![f],
        }
    }
}

/// Smallest superset of `fs` closed under immediate subformulas.
pub fn subformula_closure<'a, I>(fs: I) -> BTreeSet<Formula>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut out = BTreeSet::new();
    let mut stack: Vec<&Formula> = fs.into_iter().collect();
    while let Some(f) = stack.pop() {
        if out.insert(f.clone()) {
            stack.extend(f.children());
        }
    }
    out
}
