//! Constant specifications.

use std::collections::BTreeSet;

use thiserror::Error;

use super::schema::CalculusId;
use crate::syntax::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CsKind {
    /// A finite, downward-closed set of formulas `c_n:…:c_1:φ`.
    Extensional(BTreeSet<Formula>),
    /// Every `c_n:…:c_1:φ` with `φ` an axiom and `c_i` arbitrary constants.
    Total,
}

/// A constant specification for a given calculus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantSpec {
    calculus: CalculusId,
    kind: CsKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsError {
    #[error("`{0}` is not of the form c_n:…:c_1:φ")]
    NotConstantChain(Formula),
    #[error("innermost body of `{member}` is not an axiom of {calculus}")]
    NotAnAxiom { member: Formula, calculus: CalculusId },
    #[error("`{member}` is in the specification but its prefix `{missing}` is not")]
    NotDownwardClosed { member: Formula, missing: Formula },
    #[error("no constant justifies `{0}`")]
    NoJustifyingConstant(Formula),
}

/// Splits `c_n:…:c_1:φ` into its constants (outermost first) and `φ`.
/// Returns `None` when the formula does not start with a constant.
pub fn constant_chain(f: &Formula) -> Option<(Vec<&Term>, &Formula)> {
    let mut constants = Vec::new();
    let mut cur = f;
    while let Formula::Just(t, body) = cur {
        if !t.is_const() {
            break;
        }
        constants.push(&**t);
        cur = body;
    }
    (!constants.is_empty()).then_some((constants, cur))
}

impl ConstantSpec {
    pub fn total(calculus: CalculusId) -> Self {
        ConstantSpec { calculus, kind: CsKind::Total }
    }

    pub fn empty(calculus: CalculusId) -> Self {
        ConstantSpec { calculus, kind: CsKind::Extensional(BTreeSet::new()) }
    }

    /// Builds an extensional specification, checking shape, axiom bodies and
    /// downward closure.
    pub fn extensional<I>(calculus: CalculusId, members: I) -> Result<Self, CsError>
    where
        I: IntoIterator<Item = Formula>,
    {
        let members: BTreeSet<Formula> = members.into_iter().collect();
        for m in &members {
            let (constants, body) = constant_chain(m).ok_or_else(|| CsError::NotConstantChain(m.clone()))?;
            if !calculus.is_axiom(body) {
                return Err(CsError::NotAnAxiom { member: m.clone(), calculus });
            }
            // every proper suffix c_i:…:c_1:φ must be present
            let mut prefix = body.clone();
            for c in constants.iter().rev().take(constants.len() - 1) {
                prefix = Formula::just((*c).clone(), prefix);
                if !members.contains(&prefix) {
                    return Err(CsError::NotDownwardClosed { member: m.clone(), missing: prefix });
                }
            }
        }
        Ok(ConstantSpec { calculus, kind: CsKind::Extensional(members) })
    }

    pub fn calculus(&self) -> CalculusId {
        self.calculus
    }

    pub fn kind(&self) -> &CsKind {
        &self.kind
    }

    pub fn is_total(&self) -> bool {
        matches!(self.kind, CsKind::Total)
    }

    pub fn members(&self) -> Option<&BTreeSet<Formula>> {
        match &self.kind {
            CsKind::Extensional(m) => Some(m),
            CsKind::Total => None,
        }
    }

    pub fn contains(&self, f: &Formula) -> bool {
        match &self.kind {
            CsKind::Extensional(m) => m.contains(f),
            CsKind::Total => constant_chain(f).is_some_and(|(_, body)| self.calculus.is_axiom(body)),
        }
    }

    /// Some constant `c` with `c:f` in the specification. The total
    /// specification always answers `c1`.
    pub fn justifying_constant(&self, f: &Formula) -> Option<Term> {
        match &self.kind {
            CsKind::Total => {
                let candidate = Formula::just(Term::Const(1), f.clone());
                self.contains(&candidate).then_some(Term::Const(1))
            }
            CsKind::Extensional(m) => m.iter().find_map(|member| match member {
                Formula::Just(t, body) if t.is_const() && **body == *f => Some((**t).clone()),
                _ => None,
            }),
        }
    }

    /// Axiomatic appropriateness restricted to the given axiom instances:
    /// each must carry a chain of justifying constants at least `depth`
    /// long. Extendability of arbitrary extensional sets cannot be decided,
    /// so the nesting depth is bounded by the caller.
    pub fn check_appropriate<'a, I>(&self, axioms: I, depth: usize) -> Result<(), CsError>
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        for ax in axioms {
            let mut cur = ax.clone();
            for _ in 0..depth {
                let c = self.justifying_constant(&cur).ok_or_else(|| CsError::NoJustifyingConstant(cur.clone()))?;
                cur = Formula::just(c, cur);
            }
        }
        Ok(())
    }
}
