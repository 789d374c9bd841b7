//! Finite fuzzy Fitting models `⟨W, R, ℰ, e⟩`.
//!
//! `R` and the valuation are total through defaults. Evidence is stored
//! densely for every pair of the signature and read through the evidence
//! default elsewhere; see [`crate::signature`] for how the closure
//! conditions are instantiated. Introspection conditions follow the same
//! rule: `ℰ(t,φ) ≤ ℰ(!t, t:φ)` is only checked when `(!t, t:φ)` is in the
//! signature, and likewise for `?t`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::calculus::{ConstantSpec, CsKind};
use crate::goedel::{neg, oplus, residuum, tnorm, EntailmentMode};
use crate::signature::{ClosureInstance, Signature};
use crate::syntax::{Formula, Term};
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model has no worlds")]
    EmptyWorlds,
    #[error("world `{0}` declared twice")]
    DuplicateWorld(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("`{term}:{formula}` is outside the evidence signature")]
    OutsideSignature { term: Term, formula: Formula },
    #[error("signature contains `{term}:{formula}` but not its subformula `{missing_term}:{missing_formula}`")]
    SignatureNotClosed { term: Term, formula: Formula, missing_term: Term, missing_formula: Formula },
    #[error("constant specification member `{0}` is outside the signature and cannot be verified")]
    Unverifiable(Formula),
}

/// Values used where no explicit entry is given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Defaults {
    pub accessibility: Value,
    pub evidence: Value,
    pub valuation: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GjModel {
    worlds: Vec<String>,
    world_index: HashMap<String, usize>,
    defaults: Defaults,
    /// Row-major `|W| × |W|`.
    r: Vec<Value>,
    signature: Signature,
    pairs: Vec<(Term, Formula)>,
    pair_index: HashMap<(Term, Formula), usize>,
    /// `evidence[pair][world]`
    evidence: Vec<Vec<Value>>,
    valuation: BTreeMap<(usize, u32), Value>,
    instances: Vec<ClosureInstance>,
}

pub(crate) fn check_signature(signature: &Signature) -> Result<(), ModelError> {
    match signature.first_unclosed() {
        None => Ok(()),
        Some((t, f, (mt, mf))) => Err(ModelError::SignatureNotClosed {
            term: t.clone(),
            formula: f.clone(),
            missing_term: mt,
            missing_formula: mf,
        }),
    }
}

impl GjModel {
    /// A model whose every entry is given by `defaults`. The signature must
    /// contain `(s, ψ)` for every `s:ψ` occurring inside one of its bodies.
    pub fn new(worlds: Vec<String>, signature: Signature, defaults: Defaults) -> Result<Self, ModelError> {
        if worlds.is_empty() {
            return Err(ModelError::EmptyWorlds);
        }
        let mut world_index = HashMap::new();
        for (i, w) in worlds.iter().enumerate() {
            if world_index.insert(w.clone(), i).is_some() {
                return Err(ModelError::DuplicateWorld(w.clone()));
            }
        }
        check_signature(&signature)?;
        let n = worlds.len();
        let pairs: Vec<(Term, Formula)> = signature.iter().cloned().collect();
        let pair_index = pairs.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let instances = signature.closure_instances();
        Ok(GjModel {
            worlds,
            world_index,
            defaults,
            r: vec![defaults.accessibility; n * n],
            evidence: vec![vec![defaults.evidence; n]; pairs.len()],
            signature,
            pairs,
            pair_index,
            valuation: BTreeMap::new(),
            instances,
        })
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn world_index(&self, name: &str) -> Result<usize, ModelError> {
        self.world_index.get(name).copied().ok_or_else(|| ModelError::UnknownWorld(name.to_string()))
    }

    pub fn defaults(&self) -> Defaults {
        self.defaults
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Signature pairs in a fixed order; positions are the `pair` indices
    /// accepted by [`evidence_at`](Self::evidence_at).
    pub fn pairs(&self) -> &[(Term, Formula)] {
        &self.pairs
    }

    pub fn pair_index(&self, term: &Term, body: &Formula) -> Option<usize> {
        self.pair_index.get(&(term.clone(), body.clone())).copied()
    }

    pub fn accessibility(&self, w: usize, v: usize) -> Value {
        self.r[w * self.worlds.len() + v]
    }

    pub fn set_accessibility(&mut self, w: usize, v: usize, value: Value) {
        let n = self.worlds.len();
        self.r[w * n + v] = value;
    }

    pub fn evidence(&self, term: &Term, body: &Formula, w: usize) -> Value {
        match self.pair_index(term, body) {
            Some(i) => self.evidence[i][w],
            None => self.defaults.evidence,
        }
    }

    pub fn evidence_at(&self, pair: usize, w: usize) -> Value {
        self.evidence[pair][w]
    }

    pub fn set_evidence_at(&mut self, pair: usize, w: usize, value: Value) {
        self.evidence[pair][w] = value;
    }

    pub fn set_evidence(&mut self, term: &Term, body: &Formula, w: usize, value: Value) -> Result<(), ModelError> {
        let i = self
            .pair_index(term, body)
            .ok_or_else(|| ModelError::OutsideSignature { term: term.clone(), formula: body.clone() })?;
        self.evidence[i][w] = value;
        Ok(())
    }

    pub fn valuation(&self, w: usize, atom: u32) -> Value {
        self.valuation.get(&(w, atom)).copied().unwrap_or(self.defaults.valuation)
    }

    pub fn set_valuation(&mut self, w: usize, atom: u32, value: Value) {
        self.valuation.insert((w, atom), value);
    }

    /// Explicit valuation entries, in world-then-atom order.
    pub fn valuation_entries(&self) -> impl Iterator<Item = (usize, u32, Value)> + '_ {
        self.valuation.iter().map(|(&(w, p), &v)| (w, p, v))
    }

    /// `e(w, φ)` at every world at once.
    pub fn eval_all(&self, f: &Formula) -> Result<Vec<Value>, ModelError> {
        let n = self.worlds.len();
        Ok(match f {
            Formula::Bottom => vec![Value::ZERO; n],
            Formula::Atom(p) => (0..n).map(|w| self.valuation(w, *p)).collect(),
            Formula::And(a, b) => {
                let (x, y) = (self.eval_all(a)?, self.eval_all(b)?);
                x.into_iter().zip(y).map(|(x, y)| tnorm(x, y)).collect()
            }
            Formula::Implies(a, b) => {
                let (x, y) = (self.eval_all(a)?, self.eval_all(b)?);
                x.into_iter().zip(y).map(|(x, y)| residuum(x, y)).collect()
            }
            Formula::Just(t, body) => {
                let i = self
                    .pair_index(t, body)
                    .ok_or_else(|| ModelError::OutsideSignature { term: (**t).clone(), formula: (**body).clone() })?;
                let boxed = self.box_values(&self.eval_all(body)?);
                boxed.into_iter().enumerate().map(|(w, b)| tnorm(self.evidence[i][w], b)).collect()
            }
        })
    }

    /// `inf_v R(w,v) ⇒ inner[v]` for every `w`.
    fn box_values(&self, inner: &[Value]) -> Vec<Value> {
        let n = self.worlds.len();
        (0..n)
            .map(|w| (0..n).map(|v| residuum(self.accessibility(w, v), inner[v])).min().unwrap_or(Value::ONE))
            .collect()
    }

    pub fn eval_world(&self, w: usize, f: &Formula) -> Result<Value, ModelError> {
        Ok(self.eval_all(f)?[w])
    }

    /// `e(w, □φ) = inf_v R(w,v) ⇒ e(v,φ)`
    pub fn eval_box(&self, w: usize, f: &Formula) -> Result<Value, ModelError> {
        Ok(self.box_values(&self.eval_all(f)?)[w])
    }

    /// Every violated closure-condition instance, in a fixed order.
    pub fn check_closure(&self) -> Vec<ClosureViolation> {
        let mut out = Vec::new();
        for inst in &self.instances {
            let [a, b, c] = inst.lookups();
            for w in 0..self.worlds.len() {
                let (x, y, z) = (self.evidence(&a.0, &a.1, w), self.evidence(&b.0, &b.1, w), self.evidence(&c.0, &c.1, w));
                let lhs = if inst.is_application() { tnorm(x, y) } else { oplus(x, y) };
                if lhs > z {
                    out.push(ClosureViolation { instance: inst.clone(), world: self.worlds[w].clone(), lhs, rhs: z });
                }
            }
        }
        out
    }

    pub fn classify(&self) -> ClassReport {
        let n = self.worlds.len();
        let name = |w: usize| self.worlds[w].as_str();
        let mut report = ClassReport::default();

        if let Some(v) = self.check_closure().into_iter().next() {
            report.fail(Condition::Closure, v.to_string());
        }
        if let Some(w) = (0..n).find(|&w| !self.accessibility(w, w).is_one()) {
            report.fail(Condition::Reflexive, format!("R({0},{0}) = {1}", name(w), self.accessibility(w, w)));
        }
        'trans: for w in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let lhs = tnorm(self.accessibility(w, u), self.accessibility(u, v));
                    if lhs > self.accessibility(w, v) {
                        report.fail(
                            Condition::Transitive,
                            format!("R({a},{b}) ⊙ R({b},{c}) = {lhs} > R({a},{c}) = {}", self.accessibility(w, v), a = name(w), b = name(u), c = name(v)),
                        );
                        break 'trans;
                    }
                }
            }
        }
        'mono: for (i, (t, f)) in self.pairs.iter().enumerate() {
            for w in 0..n {
                for v in 0..n {
                    let lhs = tnorm(self.evidence[i][w], self.accessibility(w, v));
                    if lhs > self.evidence[i][v] {
                        report.fail(
                            Condition::Monotone,
                            format!("E({t}, {f}, {a}) ⊙ R({a},{b}) = {lhs} > E({t}, {f}, {b}) = {rhs}", a = name(w), b = name(v), rhs = self.evidence[i][v]),
                        );
                        break 'mono;
                    }
                }
            }
        }
        'pi: for (i, (t, f)) in self.pairs.iter().enumerate() {
            let up = Term::bang(t.clone());
            let upf = Formula::just(t.clone(), f.clone());
            let Some(j) = self.pair_index(&up, &upf) else { continue };
            for w in 0..n {
                let rhs = self.evidence[j][w];
                if self.evidence[i][w] > rhs {
                    report.fail(
                        Condition::PositiveIntrospection,
                        format!("E({t}, {f}, {a}) = {lhs} > E({up}, {upf}, {a}) = {rhs}", a = name(w), lhs = self.evidence[i][w]),
                    );
                    break 'pi;
                }
            }
        }
        'ni: for (i, (t, f)) in self.pairs.iter().enumerate() {
            let up = Term::query(t.clone());
            let upf = Formula::not(Formula::just(t.clone(), f.clone()));
            let Some(j) = self.pair_index(&up, &upf) else { continue };
            for w in 0..n {
                let rhs = self.evidence[j][w];
                if neg(self.evidence[i][w]) > rhs {
                    report.fail(
                        Condition::NegativeIntrospection,
                        format!("∼E({t}, {f}, {a}) = {lhs} > E({up}, {upf}, {a}) = {rhs}", a = name(w), lhs = neg(self.evidence[i][w])),
                    );
                    break 'ni;
                }
            }
        }
        'strong: for (i, (t, f)) in self.pairs.iter().enumerate() {
            let values = self.eval_all(&Formula::just(t.clone(), f.clone())).expect("signature is closed");
            for (w, &value) in values.iter().enumerate() {
                if self.evidence[i][w] > value {
                    report.fail(
                        Condition::StrongEvidence,
                        format!("E({t}, {f}, {a}) = {lhs} > e({a}, {t}:{f}) = {rhs}", a = name(w), lhs = self.evidence[i][w], rhs = value),
                    );
                    break 'strong;
                }
            }
        }
        report.crisp = self.r.iter().all(|v| v.is_zero() || v.is_one());
        report
    }

    /// Whether `ℰ(c, φ, w) = 1` for every `c:φ` in `cs` and every world.
    /// Members of an extensional specification must lie in the signature;
    /// the total specification is checked on the signature pairs it covers.
    pub fn respects_cs(&self, cs: &ConstantSpec) -> Result<bool, ModelError> {
        let n = self.worlds.len();
        match cs.kind() {
            CsKind::Extensional(members) => {
                for m in members {
                    let (c, body) = m.as_just().expect("constant specification members are justified formulas");
                    let i = self.pair_index(c, body).ok_or_else(|| ModelError::Unverifiable(m.clone()))?;
                    if (0..n).any(|w| !self.evidence[i][w].is_one()) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            CsKind::Total => Ok(self.pairs.iter().enumerate().all(|(i, (t, f))| {
                !cs.contains(&Formula::just(t.clone(), f.clone())) || self.evidence[i].iter().all(|v| v.is_one())
            })),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureViolation {
    pub instance: ClosureInstance,
    pub world: String,
    pub lhs: Value,
    pub rhs: Value,
}

impl fmt::Display for ClosureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.instance.is_application() { "application" } else { "sum" };
        write!(f, "{kind} at {}: {} ({} > {})", self.world, self.instance, self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    Closure,
    Reflexive,
    Transitive,
    Monotone,
    PositiveIntrospection,
    NegativeIntrospection,
    StrongEvidence,
}

impl Condition {
    pub const ALL: [Condition; 7] = [
        Condition::Closure,
        Condition::Reflexive,
        Condition::Transitive,
        Condition::Monotone,
        Condition::PositiveIntrospection,
        Condition::NegativeIntrospection,
        Condition::StrongEvidence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Closure => "closure",
            Condition::Reflexive => "reflexive",
            Condition::Transitive => "transitive",
            Condition::Monotone => "monotone",
            Condition::PositiveIntrospection => "positive-introspection",
            Condition::NegativeIntrospection => "negative-introspection",
            Condition::StrongEvidence => "strong-evidence",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelClass {
    Gj,
    Gjt,
    Gj4,
    Glp,
    Gj45,
    Gjt45,
}

impl ModelClass {
    pub const ALL: [ModelClass; 6] =
        [ModelClass::Gj, ModelClass::Gjt, ModelClass::Gj4, ModelClass::Glp, ModelClass::Gj45, ModelClass::Gjt45];

    pub fn name(self) -> &'static str {
        match self {
            ModelClass::Gj => "GJ",
            ModelClass::Gjt => "GJT",
            ModelClass::Gj4 => "GJ4",
            ModelClass::Glp => "GLP",
            ModelClass::Gj45 => "GJ45",
            ModelClass::Gjt45 => "GJT45",
        }
    }

    /// Frame and evidence conditions defining the class.
    pub fn conditions(self) -> &'static [Condition] {
        use Condition::*;
        match self {
            ModelClass::Gj => &[Closure],
            ModelClass::Gjt => &[Closure, Reflexive],
            ModelClass::Gj4 => &[Closure, Monotone, Transitive, PositiveIntrospection],
            ModelClass::Glp => &[Closure, Monotone, Transitive, PositiveIntrospection, Reflexive],
            ModelClass::Gj45 => &[Closure, Monotone, Transitive, PositiveIntrospection, NegativeIntrospection, StrongEvidence],
            ModelClass::Gjt45 => {
                &[Closure, Monotone, Transitive, PositiveIntrospection, NegativeIntrospection, StrongEvidence, Reflexive]
            }
        }
    }

    pub fn of_calculus(c: crate::calculus::CalculusId) -> ModelClass {
        use crate::calculus::CalculusId as C;
        match c {
            C::Gj => ModelClass::Gj,
            C::Gjt => ModelClass::Gjt,
            C::Gj4 => ModelClass::Gj4,
            C::Glp => ModelClass::Glp,
            C::Gj45 => ModelClass::Gj45,
            C::Gjt45 => ModelClass::Gjt45,
        }
    }
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of [`GjModel::classify`]: the first witness against each
/// violated condition, and whether `R` is crisp.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassReport {
    pub failures: BTreeMap<Condition, String>,
    pub crisp: bool,
}

impl ClassReport {
    fn fail(&mut self, c: Condition, witness: String) {
        self.failures.entry(c).or_insert(witness);
    }

    pub fn holds(&self, c: Condition) -> bool {
        !self.failures.contains_key(&c)
    }

    pub fn is(&self, class: ModelClass) -> bool {
        class.conditions().iter().all(|&c| self.holds(c))
    }

    pub fn classes(&self) -> Vec<ModelClass> {
        ModelClass::ALL.into_iter().filter(|&c| self.is(c)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entailment {
    Holds,
    Fails { model: usize, world: String, premises: Value, goal: Value },
}

impl Entailment {
    pub fn holds(&self) -> bool {
        matches!(self, Entailment::Holds)
    }
}

/// Checks `Γ ⊨ φ` (or `⊨_≤`) over every world of every model.
pub fn entails(
    models: &[GjModel],
    premises: &[Formula],
    goal: &Formula,
    mode: EntailmentMode,
) -> Result<Entailment, ModelError> {
    for (mi, m) in models.iter().enumerate() {
        let mut gamma = vec![Value::ONE; m.world_count()];
        for p in premises {
            for (g, v) in gamma.iter_mut().zip(m.eval_all(p)?) {
                *g = tnorm(*g, v);
            }
        }
        let phi = m.eval_all(goal)?;
        for w in 0..m.world_count() {
            if !mode.holds(gamma[w], phi[w]) {
                return Ok(Entailment::Fails { model: mi, world: m.worlds[w].clone(), premises: gamma[w], goal: phi[w] });
            }
        }
    }
    Ok(Entailment::Holds)
}
