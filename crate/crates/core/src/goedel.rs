//! Truth functions of Gödel logic and evaluation of star formulas.

use std::collections::BTreeMap;

use crate::syntax::{StarAtom, StarFormula};
use crate::value::Value;

/// Minimum t-norm `x ⊙ y`.
pub fn tnorm(x: Value, y: Value) -> Value {
    x.min(y)
}

/// Residuum of the minimum t-norm: `y` if `x > y`, otherwise `1`.
pub fn residuum(x: Value, y: Value) -> Value {
    if x > y {
        y
    } else {
        Value::ONE
    }
}

/// `∼x`: `1` at `0`, `0` elsewhere.
pub fn neg(x: Value) -> Value {
    residuum(x, Value::ZERO)
}

/// `x ⊕ y = max{x, y}`.
pub fn oplus(x: Value, y: Value) -> Value {
    x.max(y)
}

/// `x ⇔ y`: `1` when equal, otherwise `min{x, y}`.
pub fn iff_val(x: Value, y: Value) -> Value {
    if x == y {
        Value::ONE
    } else {
        tnorm(x, y)
    }
}

/// A total map from star atoms to truth values: finitely many explicit
/// entries and a default for everything else.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment {
    values: BTreeMap<StarAtom, Value>,
    default: Value,
}

impl Assignment {
    pub fn new(default: Value) -> Self {
        Assignment { values: BTreeMap::new(), default }
    }

    pub fn with(mut self, atom: StarAtom, value: Value) -> Self {
        self.set(atom, value);
        self
    }

    pub fn set(&mut self, atom: StarAtom, value: Value) {
        self.values.insert(atom, value);
    }

    pub fn get(&self, atom: &StarAtom) -> Value {
        self.values.get(atom).copied().unwrap_or(self.default)
    }

    pub fn default_value(&self) -> Value {
        self.default
    }

    pub fn entries(&self) -> impl Iterator<Item = (&StarAtom, Value)> {
        self.values.iter().map(|(a, v)| (a, *v))
    }

    pub fn is_explicit(&self, atom: &StarAtom) -> bool {
        self.values.contains_key(atom)
    }
}

impl FromIterator<(StarAtom, Value)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (StarAtom, Value)>>(iter: I) -> Self {
        Assignment { values: iter.into_iter().collect(), default: Value::ZERO }
    }
}

pub fn eval_prop(a: &Assignment, f: &StarFormula) -> Value {
    match f {
        StarFormula::Bottom => Value::ZERO,
        StarFormula::Atom(atom) => a.get(atom),
        StarFormula::And(l, r) => tnorm(eval_prop(a, l), eval_prop(a, r)),
        StarFormula::Implies(l, r) => residuum(eval_prop(a, l), eval_prop(a, r)),
    }
}

/// `e(Γ) = min{e(φ) | φ ∈ Γ}`, with the empty infimum equal to `1`.
pub fn eval_prop_set<'a, I>(a: &Assignment, fs: I) -> Value
where
    I: IntoIterator<Item = &'a StarFormula>,
{
    fs.into_iter().map(|f| eval_prop(a, f)).fold(Value::ONE, tnorm)
}

/// Which consequence relation to check: value dominance (`e(Γ) ≤ e(φ)`)
/// or preservation of full truth (`e(Γ) = 1` implies `e(φ) = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EntailmentMode {
    #[default]
    Leq,
    One,
}

impl EntailmentMode {
    /// Whether a premise value and a goal value are compatible under this mode.
    pub fn holds(self, premises: Value, goal: Value) -> bool {
        match self {
            EntailmentMode::Leq => premises <= goal,
            EntailmentMode::One => !premises.is_one() || goal.is_one(),
        }
    }
}

impl std::str::FromStr for EntailmentMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "leq" => Ok(EntailmentMode::Leq),
            "one" => Ok(EntailmentMode::One),
            other => Err(format!("unknown entailment mode `{other}` (expected leq or one)")),
        }
    }
}
