//! Seeded random generators shared by the integration tests.
//!
//! Models are built to lie in a requested class and the generator checks
//! this with `classify` before handing them out, so a generator bug shows
//! up as a panic rather than as a bogus counterexample.

#![allow(dead_code)]

use std::collections::BTreeSet;

use gjl_core::calculus::{AxiomSchema, CalculusId, ConstantSpec, Derivation, Justification, Step, Substitution};
use gjl_core::fitting::{Defaults, GjModel, ModelClass};
use gjl_core::goedel::{eval_prop, Assignment};
use gjl_core::mkrtychev::GmModel;
use gjl_core::syntax::{StarAtom, StarFormula};
use gjl_core::{Formula, Signature, Term, Value};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Gen {
    pub rng: ChaCha8Rng,
    /// Atoms are drawn from `p1..=atoms`.
    pub atoms: u32,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), atoms: 3 }
    }

    /// A rational in `[0,1]` with denominator at most 12, biased to the ends.
    pub fn value(&mut self) -> Value {
        match self.rng.gen_range(0..8) {
            0 => Value::ZERO,
            1 => Value::ONE,
            _ => {
                let d = self.rng.gen_range(1..=12);
                Value::new(self.rng.gen_range(0..=d), d).unwrap()
            }
        }
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn term(&mut self, size: usize) -> Term {
        if size <= 1 || self.coin(0.4) {
            let i = self.rng.gen_range(1..=2);
            return if self.coin(0.5) { Term::var(i) } else { Term::constant(i) };
        }
        match self.rng.gen_range(0..4) {
            0 => Term::app(self.term(size / 2), self.term(size / 2)),
            1 => Term::sum(self.term(size / 2), self.term(size / 2)),
            2 => Term::bang(self.term(size - 1)),
            _ => Term::query(self.term(size - 1)),
        }
    }

    /// A formula of depth at most `depth`; `just` controls whether `t:φ`
    /// may appear.
    pub fn formula(&mut self, depth: usize, just: bool) -> Formula {
        if depth == 0 || self.coin(0.25) {
            return if self.coin(0.15) { Formula::Bottom } else { Formula::atom(self.rng.gen_range(1..=self.atoms)) };
        }
        let roll = self.rng.gen_range(0..if just { 5 } else { 4 });
        match roll {
            0 | 1 => Formula::implies(self.formula(depth - 1, just), self.formula(depth - 1, just)),
            2 => Formula::and(self.formula(depth - 1, just), self.formula(depth - 1, just)),
            3 => Formula::not(self.formula(depth - 1, just)),
            _ => Formula::just(self.term(3), self.formula(depth - 1, just)),
        }
    }

    /// A propositional star formula over `p1..=atoms` with exact depth bound.
    pub fn prop(&mut self, atoms: u32, depth: usize) -> StarFormula {
        if depth == 0 || self.coin(0.2) {
            return if self.coin(0.1) { StarFormula::Bottom } else { StarFormula::plain(self.rng.gen_range(1..=atoms)) };
        }
        if self.coin(0.55) {
            StarFormula::implies(self.prop(atoms, depth - 1), self.prop(atoms, depth - 1))
        } else {
            StarFormula::and(self.prop(atoms, depth - 1), self.prop(atoms, depth - 1))
        }
    }

    pub fn substitution(&mut self) -> Substitution {
        Substitution::default()
            .phi(self.formula(2, true))
            .psi(self.formula(2, true))
            .chi(self.formula(1, true))
            .t(self.term(3))
            .s(self.term(3))
    }

    pub fn axiom_instance(&mut self, schema: AxiomSchema) -> Formula {
        let sub = self.substitution();
        schema.instantiate(&sub)
    }

    /// `c_k:…:c_1:A` for a random axiom `A` of `calc`; every such formula is
    /// in the total specification.
    pub fn cs_member(&mut self, calc: CalculusId) -> Formula {
        let schemas: Vec<_> = calc.schemas().collect();
        let schema = *schemas.choose(&mut self.rng).unwrap();
        let mut f = self.axiom_instance(schema);
        for _ in 0..self.rng.gen_range(1..=2) {
            f = Formula::just(Term::constant(self.rng.gen_range(1..=3)), f);
        }
        f
    }

    // ---------------------------------------------------------------- models

    /// A model of `class` whose signature covers `formulas` and which
    /// respects `cs` (pairs of the signature only).
    pub fn model(&mut self, class: ModelClass, formulas: &[Formula], cs: &ConstantSpec) -> GjModel {
        let sig = Signature::covering(formulas).closed();
        let m = match class {
            ModelClass::Gj45 | ModelClass::Gjt45 => self.box_model(class, sig, formulas),
            _ if self.coin(0.3) => self.box_model(class, sig, formulas),
            _ => self.repaired_model(class, sig, formulas, cs),
        };
        let report = m.classify();
        assert!(report.is(class), "generator produced a model outside {class}: {:?}", report.failures);
        assert!(m.respects_cs(cs).unwrap(), "generator produced a model violating the CS");
        m
    }

    fn worlds(&mut self, max: usize) -> Vec<String> {
        (1..=self.rng.gen_range(1..=max)).map(|i| format!("w{i}")).collect()
    }

    fn random_valuation(&mut self, m: &mut GjModel, formulas: &[Formula]) {
        let atoms: BTreeSet<u32> = formulas.iter().flat_map(|f| f.atoms()).chain(1..=self.atoms).collect();
        for w in 0..m.world_count() {
            for &p in &atoms {
                let v = self.value();
                m.set_valuation(w, p, v);
            }
        }
    }

    /// Crisp frame in which every world sees exactly one cluster (or
    /// nothing), with `ℰ(t,φ,w) := e(w,□φ)`. Such models satisfy every
    /// condition except possibly reflexivity, which holds when each world
    /// lies in the cluster it sees.
    fn box_model(&mut self, class: ModelClass, sig: Signature, formulas: &[Formula]) -> GjModel {
        let reflexive = matches!(class, ModelClass::Gjt | ModelClass::Glp | ModelClass::Gjt45);
        let names = self.worlds(4);
        let n = names.len();
        let mut m = GjModel::new(names, sig, Defaults::default()).unwrap();
        let clusters = self.rng.gen_range(1..=n);
        let home: Vec<usize> = (0..n).map(|_| self.rng.gen_range(0..clusters)).collect();
        // a world outside every cluster looks into `sees`, or nowhere
        let member: Vec<bool> = (0..n).map(|_| reflexive || self.coin(0.6)).collect();
        let sees: Vec<Option<usize>> =
            (0..n).map(|w| if member[w] { Some(home[w]) } else { self.coin(0.7).then_some(home[w]) }).collect();
        for (w, seen) in sees.iter().enumerate() {
            for v in 0..n {
                let r = seen.is_some_and(|c| member[v] && home[v] == c);
                m.set_accessibility(w, v, if r { Value::ONE } else { Value::ZERO });
            }
        }
        self.random_valuation(&mut m, formulas);
        let mut pairs: Vec<(usize, Term, Formula)> =
            m.pairs().iter().cloned().enumerate().map(|(i, (t, f))| (i, t, f)).collect();
        pairs.sort_by_key(|(_, _, f)| f.size());
        for (i, _, f) in pairs {
            for w in 0..n {
                let b = m.eval_box(w, &f).unwrap();
                m.set_evidence_at(i, w, b);
            }
        }
        m
    }

    /// Random fuzzy `R` and evidence, then raised until the conditions of
    /// a class without strong evidence hold.
    fn repaired_model(&mut self, class: ModelClass, sig: Signature, formulas: &[Formula], cs: &ConstantSpec) -> GjModel {
        let names = self.worlds(3);
        let n = names.len();
        let mut m = GjModel::new(names, sig, Defaults::default()).unwrap();
        for w in 0..n {
            for v in 0..n {
                let r = if self.coin(0.3) { Value::ZERO } else { self.value() };
                m.set_accessibility(w, v, r);
            }
        }
        let pairs = m.pairs().to_vec();
        for (i, (t, f)) in pairs.iter().enumerate() {
            let forced = cs.contains(&Formula::just(t.clone(), f.clone()));
            for w in 0..n {
                let e = if forced { Value::ONE } else { self.value() };
                m.set_evidence_at(i, w, e);
            }
        }
        self.random_valuation(&mut m, formulas);

        let conds = class.conditions();
        let reflexive = conds.contains(&gjl_core::fitting::Condition::Reflexive);
        let introspective = conds.contains(&gjl_core::fitting::Condition::PositiveIntrospection);
        let ups: Vec<Option<usize>> = pairs
            .iter()
            .map(|(t, f)| m.pair_index(&Term::bang(t.clone()), &Formula::just(t.clone(), f.clone())))
            .collect();
        loop {
            let mut changed = false;
            let mut raise = |m: &mut GjModel, i: usize, w: usize, v: Value| {
                if m.evidence_at(i, w) < v {
                    m.set_evidence_at(i, w, v);
                    changed = true;
                }
            };
            for inst in m.check_closure() {
                let [_, _, (t, f)] = inst.instance.lookups();
                let i = m.pair_index(&t, &f).unwrap();
                let w = m.world_index(&inst.world).unwrap();
                raise(&mut m, i, w, inst.lhs);
            }
            if introspective {
                for (i, up) in ups.iter().enumerate() {
                    for w in 0..n {
                        for v in 0..n {
                            let e = m.evidence_at(i, w).min(m.accessibility(w, v));
                            raise(&mut m, i, v, e);
                        }
                        if let Some(j) = *up {
                            let e = m.evidence_at(i, w);
                            raise(&mut m, j, w, e);
                        }
                    }
                }
            }
            for w in 0..n {
                if reflexive && !m.accessibility(w, w).is_one() {
                    m.set_accessibility(w, w, Value::ONE);
                    changed = true;
                }
                if introspective {
                    for u in 0..n {
                        for v in 0..n {
                            let r = m.accessibility(w, u).min(m.accessibility(u, v));
                            if r > m.accessibility(w, v) {
                                m.set_accessibility(w, v, r);
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                return m;
            }
        }
    }

    /// A Mkrtychev model covering `formulas` with arbitrary evidence.
    pub fn gm_model(&mut self, formulas: &[Formula]) -> GmModel {
        let sig = Signature::covering(formulas).closed();
        let (ed, vd) = (self.value(), self.value());
        let mut m = GmModel::new(sig, ed, vd).unwrap();
        for i in 0..m.pairs().len() {
            let v = self.value();
            m.set_evidence_at(i, v);
        }
        for p in 1..=self.atoms {
            if self.coin(0.8) {
                let v = self.value();
                m.set_valuation(p, v);
            }
        }
        m
    }

    // ----------------------------------------------------------- derivations

    /// A random derivation that passes the checker, with roughly `len`
    /// steps (never more). `cs` should be total for (CS) steps to appear.
    pub fn derivation(&mut self, calc: CalculusId, cs: ConstantSpec, premises: usize, len: usize) -> Derivation {
        let ps: Vec<Formula> = (0..premises).map(|_| self.formula(2, true)).collect();
        let mut d = Derivation::new(calc, cs, ps);
        let schemas: Vec<AxiomSchema> = calc.schemas().collect();
        while d.steps.len() < len {
            let room = len - d.steps.len();
            let roll = self.rng.gen_range(0..10);
            if roll < 2 && !d.premises.is_empty() {
                let i = self.rng.gen_range(0..d.premises.len());
                d.steps.push(Step::new(d.premises[i].clone(), Justification::Premise(i)));
            } else if roll < 3 && d.cs.is_total() {
                let f = self.cs_member(calc);
                d.steps.push(Step::new(f, Justification::Cs));
            } else if roll < 5 || d.steps.is_empty() {
                let s = *schemas.choose(&mut self.rng).unwrap();
                let f = self.axiom_instance(s);
                let claim = if self.coin(0.5) { Some(s) } else { None };
                d.steps.push(Step::new(f, Justification::Axiom(claim)));
            } else if let Some((minor, major)) = self.direct_mp(&d) {
                let f = d.steps[major].formula.as_implication().unwrap().1.clone();
                d.steps.push(Step::new(f, Justification::Mp { minor, major }));
            } else if room >= 2 {
                let minor = self.rng.gen_range(0..d.steps.len());
                let head = self.head(calc, &d.steps[minor].formula);
                let major = d.steps.len();
                let f = head.as_implication().unwrap().1.clone();
                d.steps.push(Step::new(head, Justification::Axiom(None)));
                d.steps.push(Step::new(f, Justification::Mp { minor, major }));
            }
        }
        d
    }

    fn direct_mp(&mut self, d: &Derivation) -> Option<(usize, usize)> {
        let mut found = Vec::new();
        for (j, s) in d.steps.iter().enumerate() {
            if let Some((a, _)) = s.formula.as_implication() {
                for (i, m) in d.steps.iter().enumerate() {
                    if &m.formula == a {
                        found.push((i, j));
                    }
                }
            }
        }
        found.choose(&mut self.rng).copied()
    }

    /// An axiom of `calc` of the form `ψ → …` for the given `ψ`.
    fn head(&mut self, calc: CalculusId, psi: &Formula) -> Formula {
        let mut options = vec![AxiomSchema::G4];
        if psi.as_implication().is_some() {
            options.push(AxiomSchema::A1);
            options.push(AxiomSchema::A6);
        }
        if matches!(psi, Formula::And(..)) {
            options.extend([AxiomSchema::A2, AxiomSchema::A3]);
        }
        if let Some((_, body)) = psi.as_just() {
            options.extend([AxiomSchema::Plus1, AxiomSchema::Plus2]);
            if body.as_implication().is_some() {
                options.push(AxiomSchema::J);
            }
            for s in [AxiomSchema::F, AxiomSchema::PI] {
                if calc.includes(s) {
                    options.push(s);
                }
            }
        }
        if let Some((Formula::Just(..), Formula::Bottom)) = psi.as_implication() {
            if calc.includes(AxiomSchema::NI) {
                options.push(AxiomSchema::NI);
            }
        }
        let schema = *options.choose(&mut self.rng).unwrap();
        let mut sub = self.substitution();
        match schema {
            AxiomSchema::G4 => sub.formulas[0] = Some(psi.clone()),
            AxiomSchema::A1 => {
                let (a, b) = psi.as_implication().unwrap();
                sub.formulas[0] = Some(a.clone());
                sub.formulas[1] = Some(b.clone());
            }
            AxiomSchema::A6 => {
                // ((φ→ψ)→χ) with the minor as a whole
                let (a, chi) = psi.as_implication().unwrap();
                match a.as_implication() {
                    Some((x, y)) => {
                        sub.formulas = [Some(x.clone()), Some(y.clone()), Some(chi.clone())];
                    }
                    None => {
                        sub.formulas[0] = Some(psi.clone());
                        return AxiomSchema::G4.instantiate(&sub);
                    }
                }
            }
            AxiomSchema::A2 | AxiomSchema::A3 => {
                let Formula::And(a, b) = psi else { unreachable!() };
                sub.formulas[0] = Some((**a).clone());
                sub.formulas[1] = Some((**b).clone());
            }
            AxiomSchema::Plus1 | AxiomSchema::F | AxiomSchema::PI => {
                let (t, body) = psi.as_just().unwrap();
                sub.formulas[0] = Some(body.clone());
                sub.terms[0] = Some(t.clone());
            }
            AxiomSchema::Plus2 => {
                let (t, body) = psi.as_just().unwrap();
                sub.formulas[0] = Some(body.clone());
                sub.terms[1] = Some(t.clone());
            }
            AxiomSchema::J => {
                let (t, body) = psi.as_just().unwrap();
                let (a, b) = body.as_implication().unwrap();
                sub.formulas[0] = Some(a.clone());
                sub.formulas[1] = Some(b.clone());
                sub.terms[0] = Some(t.clone());
            }
            AxiomSchema::NI => {
                let (j, _) = psi.as_implication().unwrap();
                let (t, body) = j.as_just().unwrap();
                sub.formulas[0] = Some(body.clone());
                sub.terms[0] = Some(t.clone());
            }
            _ => unreachable!(),
        }
        let f = schema.instantiate(&sub);
        debug_assert_eq!(f.as_implication().map(|(a, _)| a), Some(psi));
        f
    }

    // ----------------------------------------------------------- assignments

    /// Random values on `atoms`, then conclusions of the theorems raised
    /// until every theorem holds. Works for theorems shaped `a`, `A → c`
    /// and `A → (B → c)` with `c` an atom; returns `None` otherwise.
    pub fn raised_assignment(&mut self, atoms: &BTreeSet<StarAtom>, theorems: &[StarFormula]) -> Option<Assignment> {
        let mut a = Assignment::new(Value::ZERO);
        for atom in atoms {
            let v = self.value();
            a.set(atom.clone(), v);
        }
        for _ in 0..1000 {
            let mut changed = false;
            for th in theorems {
                if eval_prop(&a, th).is_one() {
                    continue;
                }
                let (lhs, target) = match th {
                    StarFormula::Atom(c) => (Value::ONE, c),
                    StarFormula::Implies(x, y) => match &**y {
                        StarFormula::Atom(c) => (eval_prop(&a, x), c),
                        StarFormula::Implies(z, w) => match &**w {
                            StarFormula::Atom(c) => (eval_prop(&a, x).min(eval_prop(&a, z)), c),
                            _ => return None,
                        },
                        _ => return None,
                    },
                    _ => return None,
                };
                if a.get(target) < lhs {
                    a.set(target.clone(), lhs);
                    changed = true;
                }
            }
            if !changed {
                return theorems.iter().all(|th| eval_prop(&a, th).is_one()).then_some(a);
            }
        }
        None
    }

    /// The assignment read off world `w` of a Fitting model: `v(p) = e(w,p)`
    /// and `v(φ_t) = e(w, t:φ)` on the given atoms.
    pub fn assignment_from_model(m: &GjModel, w: usize, atoms: &BTreeSet<StarAtom>) -> Assignment {
        let mut a = Assignment::new(Value::ZERO);
        for atom in atoms {
            let f = match atom {
                StarAtom::Plain(p) => Formula::atom(*p),
                StarAtom::Boxed(body, t) => Formula::Just(t.clone(), body.clone()),
            };
            a.set(atom.clone(), m.eval_world(w, &f).unwrap());
        }
        a
    }
}

/// All propositional formulas over `p1..=atoms` of depth at most `depth`.
pub fn all_props(atoms: u32, depth: usize) -> Vec<StarFormula> {
    let mut layer: Vec<StarFormula> = std::iter::once(StarFormula::Bottom).chain((1..=atoms).map(StarFormula::plain)).collect();
    for _ in 0..depth {
        let mut next = vec![StarFormula::Bottom];
        next.extend((1..=atoms).map(StarFormula::plain));
        for a in &layer {
            for b in &layer {
                next.push(StarFormula::and(a.clone(), b.clone()));
                next.push(StarFormula::implies(a.clone(), b.clone()));
            }
        }
        layer = next;
    }
    layer
}
