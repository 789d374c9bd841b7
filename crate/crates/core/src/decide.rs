//! Propositional Gödel consequence over star formulas.
//!
//! Every Gödel truth function commutes with order-preserving maps of
//! `[0,1]` that fix `0` and `1`, because the connectives only compare their
//! arguments and select one of them or a constant. So whether an assignment
//! refutes a query depends only on how the `n` atom values are ordered
//! relative to each other and to `0` and `1`. Any such ordering is realised
//! on the chain `{0, 1/(n+1), …, n/(n+1), 1}`, which therefore suffices:
//! `(n+2)^n` assignments decide the query. The grid oracle checks the same
//! query on an arbitrary uniform grid and is used to validate this bound.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::fitting::{Defaults, GjModel};
use crate::goedel::{eval_prop, eval_prop_set, Assignment, EntailmentMode};
use crate::mkrtychev::GmModel;
use crate::signature::Signature;
use crate::syntax::{StarAtom, StarFormula};
use crate::value::Value;

pub const DEFAULT_ATOM_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsequenceQuery {
    pub premises: Vec<StarFormula>,
    pub goal: StarFormula,
    pub mode: EntailmentMode,
}

impl ConsequenceQuery {
    pub fn new(premises: Vec<StarFormula>, goal: StarFormula, mode: EntailmentMode) -> Self {
        ConsequenceQuery { premises, goal, mode }
    }

    /// Distinct atoms in a fixed (sorted) order.
    pub fn atoms(&self) -> Vec<StarAtom> {
        let mut set: BTreeSet<StarAtom> = self.goal.atoms();
        for p in &self.premises {
            set.extend(p.atoms());
        }
        set.into_iter().collect()
    }

    /// Whether `a` satisfies the query in its mode.
    pub fn satisfied_by(&self, a: &Assignment) -> bool {
        self.mode.holds(eval_prop_set(a, &self.premises), eval_prop(a, &self.goal))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Valid,
    Countermodel(Assignment),
}

impl Decision {
    pub fn is_valid(&self) -> bool {
        matches!(self, Decision::Valid)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("query has {atoms} atoms, more than the cap of {cap}")]
    TooManyAtoms { atoms: usize, cap: usize },
}

fn assignment_for(atoms: &[StarAtom], digits: &[u64], steps: u64) -> Assignment {
    atoms.iter().zip(digits).map(|(a, &d)| (a.clone(), Value::level(d, steps))).collect()
}

/// Decides the query over the `n + 2` element chain; the countermodel is
/// the first refuting assignment in lexicographic order of levels, first
/// atom most significant.
pub fn decide_consequence(q: &ConsequenceQuery, cap: usize) -> Result<Decision, DecideError> {
    let atoms = q.atoms();
    let n = atoms.len();
    if n > cap {
        return Err(DecideError::TooManyAtoms { atoms: n, cap });
    }
    let base = n as u64 + 2;
    let steps = n as u64 + 1;
    let total = base.pow(n as u32);
    let decode = |mut i: u64| {
        let mut digits = vec![0; n];
        for d in digits.iter_mut().rev() {
            *d = i % base;
            i /= base;
        }
        digits
    };
    let hit = (0..total).into_par_iter().find_first(|&i| !q.satisfied_by(&assignment_for(&atoms, &decode(i), steps)));
    Ok(match hit {
        None => Decision::Valid,
        Some(i) => Decision::Countermodel(assignment_for(&atoms, &decode(i), steps)),
    })
}

/// Exhaustive search over `{0, 1/levels, …, 1}`, sequential and recursive.
pub fn grid_oracle(q: &ConsequenceQuery, levels: u64, cap: usize) -> Result<Decision, DecideError> {
    let atoms = q.atoms();
    if atoms.len() > cap {
        return Err(DecideError::TooManyAtoms { atoms: atoms.len(), cap });
    }
    fn go(q: &ConsequenceQuery, atoms: &[StarAtom], levels: u64, current: &mut Assignment) -> Option<Assignment> {
        match atoms.split_first() {
            None => (!q.satisfied_by(current)).then(|| current.clone()),
            Some((a, rest)) => {
                for k in 0..=levels {
                    current.set(a.clone(), Value::level(k, levels));
                    if let Some(found) = go(q, rest, levels, current) {
                        return Some(found);
                    }
                }
                None
            }
        }
    }
    let mut scratch = Assignment::new(Value::ZERO);
    Ok(match go(q, &atoms, levels.max(1), &mut scratch) {
        None => Decision::Valid,
        Some(a) => Decision::Countermodel(a),
    })
}

/// One query whose two consequence relations were decided differently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeDisagreement {
    pub index: usize,
    pub leq_valid: bool,
    pub one_valid: bool,
}

/// Decides each `(Γ, φ)` under both `≤`-entailment and 1-entailment and
/// lists the queries where the answers differ.
pub fn check_leq_equals_one(
    queries: &[(Vec<StarFormula>, StarFormula)],
    cap: usize,
) -> Result<Vec<ModeDisagreement>, DecideError> {
    let mut out = Vec::new();
    for (index, (premises, goal)) in queries.iter().enumerate() {
        let leq = decide_consequence(&ConsequenceQuery::new(premises.clone(), goal.clone(), EntailmentMode::Leq), cap)?;
        let one = decide_consequence(&ConsequenceQuery::new(premises.clone(), goal.clone(), EntailmentMode::One), cap)?;
        if leq.is_valid() != one.is_valid() {
            out.push(ModeDisagreement { index, leq_valid: leq.is_valid(), one_valid: one.is_valid() });
        }
    }
    Ok(out)
}

fn plain_valuation(e: &Assignment) -> impl Iterator<Item = (u32, Value)> + '_ {
    e.entries().filter_map(|(a, v)| match a {
        StarAtom::Plain(p) => Some((*p, v)),
        StarAtom::Boxed(..) => None,
    })
}

/// One reflexive world `w`, all evidence `1` and `e(w, p) = ê(p)`. Every
/// propositional formula takes the same value as under `ê`.
pub fn conservativity_countermodel(e: &Assignment, signature: Signature) -> GjModel {
    let defaults = Defaults { accessibility: Value::ONE, evidence: Value::ONE, valuation: e.default_value() };
    let mut m = GjModel::new(vec!["w".to_string()], signature.closed(), defaults).expect("closed signature, one world");
    for (p, v) in plain_valuation(e) {
        m.set_valuation(0, p, v);
    }
    m
}

/// The Mkrtychev analogue: `ℰ ≡ 1` and `e = ê` on plain atoms.
pub fn conservativity_countermodel_m(e: &Assignment, signature: Signature) -> GmModel {
    let mut m = GmModel::new(signature.closed(), Value::ONE, e.default_value()).expect("closed signature");
    for (p, v) in plain_valuation(e) {
        m.set_valuation(p, v);
    }
    m
}
