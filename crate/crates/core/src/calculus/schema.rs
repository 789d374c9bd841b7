//! Axiom schemas and the six calculi built from them.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::syntax::{parse_formula, Formula, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomSchema {
    A1,
    A2,
    A3,
    A5a,
    A5b,
    A6,
    A7,
    G4,
    J,
    Plus1,
    Plus2,
    F,
    PI,
    NI,
}

impl AxiomSchema {
    /// Matching order.
    pub const ALL: [AxiomSchema; 14] = [
        AxiomSchema::A1,
        AxiomSchema::A2,
        AxiomSchema::A3,
        AxiomSchema::A5a,
        AxiomSchema::A5b,
        AxiomSchema::A6,
        AxiomSchema::A7,
        AxiomSchema::G4,
        AxiomSchema::J,
        AxiomSchema::Plus1,
        AxiomSchema::Plus2,
        AxiomSchema::F,
        AxiomSchema::PI,
        AxiomSchema::NI,
    ];

    pub const PROPOSITIONAL: [AxiomSchema; 8] = [
        AxiomSchema::A1,
        AxiomSchema::A2,
        AxiomSchema::A3,
        AxiomSchema::A5a,
        AxiomSchema::A5b,
        AxiomSchema::A6,
        AxiomSchema::A7,
        AxiomSchema::G4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomSchema::A1 => "A1",
            AxiomSchema::A2 => "A2",
            AxiomSchema::A3 => "A3",
            AxiomSchema::A5a => "A5a",
            AxiomSchema::A5b => "A5b",
            AxiomSchema::A6 => "A6",
            AxiomSchema::A7 => "A7",
            AxiomSchema::G4 => "G4",
            AxiomSchema::J => "J",
            AxiomSchema::Plus1 => "Plus1",
            AxiomSchema::Plus2 => "Plus2",
            AxiomSchema::F => "F",
            AxiomSchema::PI => "PI",
            AxiomSchema::NI => "NI",
        }
    }

    /// Template in which `p1, p2, p3` stand for `φ, ψ, χ` and `x1, x2`
    /// for the term metavariables `t, s`.
    fn template_source(self) -> &'static str {
        match self {
            AxiomSchema::A1 => "(p1 -> p2) -> (p2 -> p3) -> p1 -> p3",
            AxiomSchema::A2 => "p1 & p2 -> p1",
            AxiomSchema::A3 => "p1 & p2 -> p2 & p1",
            AxiomSchema::A5a => "(p1 -> p2 -> p3) -> p1 & p2 -> p3",
            AxiomSchema::A5b => "(p1 & p2 -> p3) -> p1 -> p2 -> p3",
            AxiomSchema::A6 => "((p1 -> p2) -> p3) -> ((p2 -> p1) -> p3) -> p3",
            AxiomSchema::A7 => "bot -> p1",
            AxiomSchema::G4 => "p1 -> p1 & p1",
            AxiomSchema::J => "x1:(p1 -> p2) -> x2:p1 -> [x1.x2]:p2",
            AxiomSchema::Plus1 => "x1:p1 -> [x1+x2]:p1",
            AxiomSchema::Plus2 => "x2:p1 -> [x1+x2]:p1",
            AxiomSchema::F => "x1:p1 -> p1",
            AxiomSchema::PI => "x1:p1 -> !x1:x1:p1",
            AxiomSchema::NI => "~x1:p1 -> ?x1:~x1:p1",
        }
    }

    pub fn template(self) -> &'static Formula {
        static TEMPLATES: OnceLock<Vec<Formula>> = OnceLock::new();
        let all = TEMPLATES.get_or_init(|| {
            AxiomSchema::ALL
                .iter()
                .map(|s| parse_formula(s.template_source()).expect("schema templates parse"))
                .collect()
        });
        &all[self as usize]
    }

    /// Structural matching against the schema's metavariables.
    pub fn matches(self, f: &Formula) -> Option<Substitution> {
        let mut sub = Substitution::default();
        match_formula(self.template(), f, &mut sub).then_some(sub)
    }

    /// Instantiates the schema; unbound metavariables default to `⊥` and `c1`.
    pub fn instantiate(self, sub: &Substitution) -> Formula {
        instantiate_formula(self.template(), sub)
    }

    pub fn is_propositional(self) -> bool {
        AxiomSchema::PROPOSITIONAL.contains(&self)
    }
}

impl fmt::Display for AxiomSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomSchema {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomSchema::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown axiom schema `{s}`"))
    }
}

/// Bindings for the formula metavariables `φ, ψ, χ` and term metavariables `t, s`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    pub formulas: [Option<Formula>; 3],
    pub terms: [Option<Term>; 2],
}

impl Substitution {
    pub fn phi(mut self, f: Formula) -> Self {
        self.formulas[0] = Some(f);
        self
    }

    pub fn psi(mut self, f: Formula) -> Self {
        self.formulas[1] = Some(f);
        self
    }

    pub fn chi(mut self, f: Formula) -> Self {
        self.formulas[2] = Some(f);
        self
    }

    pub fn t(mut self, t: Term) -> Self {
        self.terms[0] = Some(t);
        self
    }

    pub fn s(mut self, t: Term) -> Self {
        self.terms[1] = Some(t);
        self
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, v) in ["φ", "ψ", "χ"].iter().zip(&self.formulas) {
            if let Some(v) = v {
                parts.push(format!("{name}↦{v}"));
            }
        }
        for (name, v) in ["t", "s"].iter().zip(&self.terms) {
            if let Some(v) = v {
                parts.push(format!("{name}↦{v}"));
            }
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn meta_index(i: u32) -> usize {
    (i - 1) as usize
}

fn match_formula(pat: &Formula, f: &Formula, sub: &mut Substitution) -> bool {
    match (pat, f) {
        (Formula::Atom(i), _) => {
            let slot = &mut sub.formulas[meta_index(*i)];
            match slot {
                Some(bound) => bound == f,
                None => {
                    *slot = Some(f.clone());
                    true
                }
            }
        }
        (Formula::Bottom, Formula::Bottom) => true,
        (Formula::And(pa, pb), Formula::And(a, b)) | (Formula::Implies(pa, pb), Formula::Implies(a, b)) => {
            match_formula(pa, a, sub) && match_formula(pb, b, sub)
        }
        (Formula::Just(pt, pb), Formula::Just(t, b)) => match_term(pt, t, sub) && match_formula(pb, b, sub),
        _ => false,
    }
}

fn match_term(pat: &Term, t: &Term, sub: &mut Substitution) -> bool {
    match (pat, t) {
        (Term::Var(i), _) => {
            let slot = &mut sub.terms[meta_index(*i)];
            match slot {
                Some(bound) => bound == t,
                None => {
                    *slot = Some(t.clone());
                    true
                }
            }
        }
        (Term::App(pl, pr), Term::App(l, r)) | (Term::Sum(pl, pr), Term::Sum(l, r)) => {
            match_term(pl, l, sub) && match_term(pr, r, sub)
        }
        (Term::Bang(p), Term::Bang(x)) | (Term::Query(p), Term::Query(x)) => match_term(p, x, sub),
        _ => false,
    }
}

fn instantiate_formula(pat: &Formula, sub: &Substitution) -> Formula {
    match pat {
        Formula::Atom(i) => sub.formulas[meta_index(*i)].clone().unwrap_or(Formula::Bottom),
        Formula::Bottom => Formula::Bottom,
        Formula::And(a, b) => Formula::and(instantiate_formula(a, sub), instantiate_formula(b, sub)),
        Formula::Implies(a, b) => Formula::implies(instantiate_formula(a, sub), instantiate_formula(b, sub)),
        Formula::Just(t, b) => Formula::just(instantiate_term(t, sub), instantiate_formula(b, sub)),
    }
}

fn instantiate_term(pat: &Term, sub: &Substitution) -> Term {
    match pat {
        Term::Var(i) => sub.terms[meta_index(*i)].clone().unwrap_or(Term::Const(1)),
        Term::Const(i) => Term::Const(*i),
        Term::App(l, r) => Term::app(instantiate_term(l, sub), instantiate_term(r, sub)),
        Term::Sum(l, r) => Term::sum(instantiate_term(l, sub), instantiate_term(r, sub)),
        Term::Bang(t) => Term::bang(instantiate_term(t, sub)),
        Term::Query(t) => Term::query(instantiate_term(t, sub)),
    }
}

/// The six calculi, each given by its set of axiom schemas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CalculusId {
    Gj,
    Gjt,
    Gj4,
    Glp,
    Gj45,
    Gjt45,
}

impl CalculusId {
    pub const ALL: [CalculusId; 6] =
        [CalculusId::Gj, CalculusId::Gjt, CalculusId::Gj4, CalculusId::Glp, CalculusId::Gj45, CalculusId::Gjt45];

    pub fn has_factivity(self) -> bool {
        matches!(self, CalculusId::Gjt | CalculusId::Glp | CalculusId::Gjt45)
    }

    pub fn has_positive_introspection(self) -> bool {
        matches!(self, CalculusId::Gj4 | CalculusId::Glp | CalculusId::Gj45 | CalculusId::Gjt45)
    }

    pub fn has_negative_introspection(self) -> bool {
        matches!(self, CalculusId::Gj45 | CalculusId::Gjt45)
    }

    pub fn includes(self, schema: AxiomSchema) -> bool {
        match schema {
            AxiomSchema::F => self.has_factivity(),
            AxiomSchema::PI => self.has_positive_introspection(),
            AxiomSchema::NI => self.has_negative_introspection(),
            _ => true,
        }
    }

    pub fn schemas(self) -> impl Iterator<Item = AxiomSchema> {
        AxiomSchema::ALL.into_iter().filter(move |s| self.includes(*s))
    }

    /// True when every axiom of `self` is an axiom of `other`.
    pub fn is_sub_calculus_of(self, other: CalculusId) -> bool {
        self.schemas().all(|s| other.includes(s))
    }

    /// First schema of this calculus that `f` instantiates.
    pub fn match_axiom(self, f: &Formula) -> Option<(AxiomSchema, Substitution)> {
        self.schemas().find_map(|s| s.matches(f).map(|sub| (s, sub)))
    }

    pub fn is_axiom(self, f: &Formula) -> bool {
        self.match_axiom(f).is_some()
    }

    pub fn name(self) -> &'static str {
        match self {
            CalculusId::Gj => "gj",
            CalculusId::Gjt => "gjt",
            CalculusId::Gj4 => "gj4",
            CalculusId::Glp => "glp",
            CalculusId::Gj45 => "gj45",
            CalculusId::Gjt45 => "gjt45",
        }
    }
}

impl fmt::Display for CalculusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CalculusId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase();
        let key = key.strip_suffix("_cs").unwrap_or(&key);
        let key = if key == "gj0" { "gj" } else { key };
        CalculusId::ALL
            .into_iter()
            .find(|c| c.name() == key)
            .ok_or_else(|| format!("unknown calculus `{s}` (expected gj, gjt, gj4, glp, gj45 or gjt45)"))
    }
}

/// `match_axiom` with the calculus as an argument.
pub fn match_axiom(f: &Formula, calc: CalculusId) -> Option<(AxiomSchema, Substitution)> {
    calc.match_axiom(f)
}
