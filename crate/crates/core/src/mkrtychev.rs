//! Gödel-Mkrtychev models `⟨ℰ, e⟩`: world-free evidence semantics where
//! `e(t:φ) = ℰ(t, φ)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::calculus::{ConstantSpec, CsKind};
use crate::fitting::{check_signature, ClosureViolation, Defaults, GjModel, ModelError};
use crate::goedel::{neg, oplus, residuum, tnorm, EntailmentMode};
use crate::signature::{ClosureInstance, Signature};
use crate::syntax::{Formula, Term};
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GmModel {
    evidence_default: Value,
    valuation_default: Value,
    signature: Signature,
    pairs: Vec<(Term, Formula)>,
    pair_index: HashMap<(Term, Formula), usize>,
    evidence: Vec<Value>,
    valuation: BTreeMap<u32, Value>,
    instances: Vec<ClosureInstance>,
}

impl GmModel {
    pub fn new(signature: Signature, evidence_default: Value, valuation_default: Value) -> Result<Self, ModelError> {
        check_signature(&signature)?;
        let pairs: Vec<(Term, Formula)> = signature.iter().cloned().collect();
        let pair_index = pairs.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(GmModel {
            evidence_default,
            valuation_default,
            evidence: vec![evidence_default; pairs.len()],
            instances: signature.closure_instances(),
            signature,
            pairs,
            pair_index,
            valuation: BTreeMap::new(),
        })
    }

    pub fn evidence_default(&self) -> Value {
        self.evidence_default
    }

    pub fn valuation_default(&self) -> Value {
        self.valuation_default
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn pairs(&self) -> &[(Term, Formula)] {
        &self.pairs
    }

    pub fn pair_index(&self, term: &Term, body: &Formula) -> Option<usize> {
        self.pair_index.get(&(term.clone(), body.clone())).copied()
    }

    pub fn evidence(&self, term: &Term, body: &Formula) -> Value {
        self.pair_index(term, body).map_or(self.evidence_default, |i| self.evidence[i])
    }

    pub fn evidence_at(&self, pair: usize) -> Value {
        self.evidence[pair]
    }

    pub fn set_evidence_at(&mut self, pair: usize, value: Value) {
        self.evidence[pair] = value;
    }

    pub fn set_evidence(&mut self, term: &Term, body: &Formula, value: Value) -> Result<(), ModelError> {
        let i = self
            .pair_index(term, body)
            .ok_or_else(|| ModelError::OutsideSignature { term: term.clone(), formula: body.clone() })?;
        self.evidence[i] = value;
        Ok(())
    }

    pub fn valuation(&self, atom: u32) -> Value {
        self.valuation.get(&atom).copied().unwrap_or(self.valuation_default)
    }

    pub fn set_valuation(&mut self, atom: u32, value: Value) {
        self.valuation.insert(atom, value);
    }

    pub fn valuation_entries(&self) -> impl Iterator<Item = (u32, Value)> + '_ {
        self.valuation.iter().map(|(&p, &v)| (p, v))
    }

    pub fn eval(&self, f: &Formula) -> Result<Value, ModelError> {
        Ok(match f {
            Formula::Bottom => Value::ZERO,
            Formula::Atom(p) => self.valuation(*p),
            Formula::And(a, b) => tnorm(self.eval(a)?, self.eval(b)?),
            Formula::Implies(a, b) => residuum(self.eval(a)?, self.eval(b)?),
            Formula::Just(t, body) => {
                let i = self
                    .pair_index(t, body)
                    .ok_or_else(|| ModelError::OutsideSignature { term: (**t).clone(), formula: (**body).clone() })?;
                self.evidence[i]
            }
        })
    }

    pub fn check_closure(&self) -> Vec<ClosureViolation> {
        let mut out = Vec::new();
        for inst in &self.instances {
            let [a, b, c] = inst.lookups();
            let (x, y, z) = (self.evidence(&a.0, &a.1), self.evidence(&b.0, &b.1), self.evidence(&c.0, &c.1));
            let lhs = if inst.is_application() { tnorm(x, y) } else { oplus(x, y) };
            if lhs > z {
                out.push(ClosureViolation { instance: inst.clone(), world: "-".into(), lhs, rhs: z });
            }
        }
        out
    }

    pub fn classify(&self) -> MkrtychevReport {
        let mut report = MkrtychevReport::default();
        if let Some(v) = self.check_closure().into_iter().next() {
            report.failures.insert(MConditionKind::Closure, v.to_string());
        }
        for (i, (t, f)) in self.pairs.iter().enumerate() {
            let ev = self.evidence[i];
            let body = self.eval(f).expect("signature is closed");
            if ev > body {
                report
                    .failures
                    .entry(MConditionKind::Factive)
                    .or_insert_with(|| format!("E({t}, {f}) = {ev} > e({f}) = {body}"));
            }
            let (up, upf) = (Term::bang(t.clone()), Formula::just(t.clone(), f.clone()));
            if let Some(rhs) = self.pair_index(&up, &upf).map(|j| self.evidence[j]).filter(|&rhs| ev > rhs) {
                report
                    .failures
                    .entry(MConditionKind::PositiveIntrospection)
                    .or_insert_with(|| format!("E({t}, {f}) = {ev} > E({up}, {upf}) = {rhs}"));
            }
            let (q, qf) = (Term::query(t.clone()), Formula::not(Formula::just(t.clone(), f.clone())));
            if let Some(rhs) = self.pair_index(&q, &qf).map(|j| self.evidence[j]).filter(|&rhs| neg(ev) > rhs) {
                report
                    .failures
                    .entry(MConditionKind::NegativeIntrospection)
                    .or_insert_with(|| format!("∼E({t}, {f}) = {} > E({q}, {qf}) = {rhs}", neg(ev)));
            }
        }
        report
    }

    pub fn respects_cs(&self, cs: &ConstantSpec) -> Result<bool, ModelError> {
        match cs.kind() {
            CsKind::Extensional(members) => {
                for m in members {
                    let (c, body) = m.as_just().expect("constant specification members are justified formulas");
                    let i = self.pair_index(c, body).ok_or_else(|| ModelError::Unverifiable(m.clone()))?;
                    if !self.evidence[i].is_one() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            CsKind::Total => Ok(self
                .pairs
                .iter()
                .enumerate()
                .all(|(i, (t, f))| !cs.contains(&Formula::just(t.clone(), f.clone())) || self.evidence[i].is_one())),
        }
    }

    /// The single-world Fitting model with `R ≡ 0` and the same evidence
    /// and valuation; there `□φ = 1`, so `t:φ` evaluates to `ℰ(t, φ)`.
    pub fn to_fitting(&self) -> GjModel {
        let defaults = Defaults {
            accessibility: Value::ZERO,
            evidence: self.evidence_default,
            valuation: self.valuation_default,
        };
        let mut m = GjModel::new(vec!["w".to_string()], self.signature.clone(), defaults).expect("signature is closed");
        for (i, &v) in self.evidence.iter().enumerate() {
            m.set_evidence_at(i, 0, v);
        }
        for (&p, &v) in &self.valuation {
            m.set_valuation(0, p, v);
        }
        m
    }
}

/// The Fitting model a Mkrtychev model is identified with.
pub fn fitting_of_mkrtychev(m: &GmModel) -> GjModel {
    m.to_fitting()
}

/// Conditions on Mkrtychev evidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MConditionKind {
    Closure,
    /// `ℰ(t,φ) ≤ e(φ)`
    Factive,
    /// `ℰ(t,φ) ≤ ℰ(!t, t:φ)`
    PositiveIntrospection,
    /// `∼ℰ(t,φ) ≤ ℰ(?t, ¬t:φ)`
    NegativeIntrospection,
}

impl MConditionKind {
    pub fn name(self) -> &'static str {
        match self {
            MConditionKind::Closure => "closure",
            MConditionKind::Factive => "factive",
            MConditionKind::PositiveIntrospection => "positive-introspection",
            MConditionKind::NegativeIntrospection => "negative-introspection",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MkrtychevClass {
    Gm,
    Gmt,
    Gm4,
    Gmlp,
    Gm45,
    Gmt45,
}

impl MkrtychevClass {
    pub const ALL: [MkrtychevClass; 6] = [
        MkrtychevClass::Gm,
        MkrtychevClass::Gmt,
        MkrtychevClass::Gm4,
        MkrtychevClass::Gmlp,
        MkrtychevClass::Gm45,
        MkrtychevClass::Gmt45,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MkrtychevClass::Gm => "GM",
            MkrtychevClass::Gmt => "GMT",
            MkrtychevClass::Gm4 => "GM4",
            MkrtychevClass::Gmlp => "GMLP",
            MkrtychevClass::Gm45 => "GM45",
            MkrtychevClass::Gmt45 => "GMT45",
        }
    }

    /// Note that GMT45 asks for factivity and negative introspection only.
    pub fn conditions(self) -> &'static [MConditionKind] {
        use MConditionKind::*;
        match self {
            MkrtychevClass::Gm => &[Closure],
            MkrtychevClass::Gmt => &[Closure, Factive],
            MkrtychevClass::Gm4 => &[Closure, PositiveIntrospection],
            MkrtychevClass::Gmlp => &[Closure, Factive, PositiveIntrospection],
            MkrtychevClass::Gm45 => &[Closure, PositiveIntrospection, NegativeIntrospection],
            MkrtychevClass::Gmt45 => &[Closure, Factive, NegativeIntrospection],
        }
    }

    pub fn of_calculus(c: crate::calculus::CalculusId) -> MkrtychevClass {
        use crate::calculus::CalculusId as C;
        match c {
            C::Gj => MkrtychevClass::Gm,
            C::Gjt => MkrtychevClass::Gmt,
            C::Gj4 => MkrtychevClass::Gm4,
            C::Glp => MkrtychevClass::Gmlp,
            C::Gj45 => MkrtychevClass::Gm45,
            C::Gjt45 => MkrtychevClass::Gmt45,
        }
    }
}

impl fmt::Display for MkrtychevClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MkrtychevReport {
    pub failures: BTreeMap<MConditionKind, String>,
}

impl MkrtychevReport {
    pub fn holds(&self, c: MConditionKind) -> bool {
        !self.failures.contains_key(&c)
    }

    pub fn is(&self, class: MkrtychevClass) -> bool {
        class.conditions().iter().all(|&c| self.holds(c))
    }

    pub fn classes(&self) -> Vec<MkrtychevClass> {
        MkrtychevClass::ALL.into_iter().filter(|&c| self.is(c)).collect()
    }
}

/// `Γ ⊨ φ` in each listed model; returns the index of the first failure.
pub fn entails_m(
    models: &[GmModel],
    premises: &[Formula],
    goal: &Formula,
    mode: EntailmentMode,
) -> Result<Option<usize>, ModelError> {
    for (i, m) in models.iter().enumerate() {
        let mut gamma = Value::ONE;
        for p in premises {
            gamma = tnorm(gamma, m.eval(p)?);
        }
        if !mode.holds(gamma, m.eval(goal)?) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
