//! Acceptance suite: every criterion at its full count and time bound.
//!
//! Runs without the libtest harness so that one PASS/FAIL line per
//! criterion is always printed; the process fails if any criterion does.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use common::{all_props, Gen};
use gjl_core::calculus::{
    check_derivation, check_prop_derivation, lift, translate_derivation, AxiomSchema, CalculusId, ConstantSpec,
    Justification,
};
use gjl_core::canonical::{build_fragment, relevant_for, theorem_fragment, truth_lemma_check};
use gjl_core::decide::{
    check_leq_equals_one, conservativity_countermodel, conservativity_countermodel_m, decide_consequence, grid_oracle,
    ConsequenceQuery, Decision,
};
use gjl_core::fitting::{entails, GjModel, ModelClass};
use gjl_core::goedel::{neg, residuum, tnorm};
use gjl_core::mkrtychev::{entails_m, MkrtychevClass};
use gjl_core::syntax::{star, subformula_closure, unstar, StarFormula};
use gjl_core::{EntailmentMode, Formula, Signature, Term, Value};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ------------------------------------------------------------------ algebra

fn residuum_adjunction() -> Outcome {
    let mut g = Gen::new(1);
    for _ in 0..100_000 {
        let (x, y, z) = (g.value(), g.value(), g.value());
        ensure((tnorm(x, y) <= z) == (x <= residuum(y, z)), || format!("adjunction fails at {x}, {y}, {z}"))?;
    }
    Ok("100000 triples".into())
}

fn tnorm_monotonicity() -> Outcome {
    let mut g = Gen::new(2);
    for _ in 0..100_000 {
        let (a, b) = (g.value(), g.value());
        let (x, x2) = (a.min(b), a.max(b));
        let (c, d) = (g.value(), g.value());
        let (y, y2) = (c.min(d), c.max(d));
        let z = g.value();
        ensure(tnorm(x, y) <= tnorm(x2, y2), || format!("⊙ not monotone at {x},{y} / {x2},{y2}"))?;
        ensure(residuum(z, y) <= residuum(z, y2), || format!("⇒ not monotone in 2nd at {z},{y},{y2}"))?;
        ensure(residuum(x2, z) <= residuum(x, z), || format!("⇒ not antitone in 1st at {x2},{x},{z}"))?;
        ensure(neg(x2) <= neg(x), || format!("∼ not antitone at {x2},{x}"))?;
    }
    Ok("100000 tuples, 4 clauses".into())
}

// -------------------------------------------------------------------- models

/// The weakest class whose calculus contains `schema`, and every class
/// above it.
fn classes_for(schema: AxiomSchema) -> Vec<(ModelClass, CalculusId)> {
    CalculusId::ALL.into_iter().filter(|c| c.includes(schema)).map(|c| (ModelClass::of_calculus(c), c)).collect()
}

fn axiom_validity() -> Outcome {
    let mut g = Gen::new(3);
    let mut evaluations = 0usize;
    for schema in AxiomSchema::ALL {
        let instances: Vec<Formula> = (0..200).map(|_| g.axiom_instance(schema)).collect();
        let classes = classes_for(schema);
        for k in 0..50 {
            let (class, calc) = classes[k % classes.len()];
            let m = g.model(class, &instances, &ConstantSpec::total(calc));
            for f in &instances {
                let vals = m.eval_all(f).map_err(|e| e.to_string())?;
                ensure(vals.iter().all(|v| v.is_one()), || format!("{schema} instance `{f}` not valid in a {class} model: {vals:?}"))?;
                evaluations += 1;
            }
        }
    }
    // negative controls: schemas outside a class must fail somewhere, or
    // the generated models are too tame to mean anything
    for (schema, class, calc) in [
        (AxiomSchema::F, ModelClass::Gj, CalculusId::Gj),
        (AxiomSchema::PI, ModelClass::Gjt, CalculusId::Gjt),
        (AxiomSchema::NI, ModelClass::Glp, CalculusId::Glp),
    ] {
        let instances: Vec<Formula> = (0..200).map(|_| g.axiom_instance(schema)).collect();
        let mut refuted = false;
        for _ in 0..50 {
            let m = g.model(class, &instances, &ConstantSpec::total(calc));
            refuted |= instances.iter().any(|f| m.eval_all(f).unwrap().iter().any(|v| !v.is_one()));
        }
        ensure(refuted, || format!("{schema} never fails in {class} models"))?;
    }
    // the (CS) rule: c:A holds in models respecting the specification
    for calc in CalculusId::ALL {
        let members: Vec<Formula> = (0..200).map(|_| g.cs_member(calc)).collect();
        for _ in 0..50 {
            let m = g.model(ModelClass::of_calculus(calc), &members, &ConstantSpec::total(calc));
            for f in &members {
                let vals = m.eval_all(f).map_err(|e| e.to_string())?;
                ensure(vals.iter().all(|v| v.is_one()), || format!("CS member `{f}` not valid for {calc}"))?;
            }
        }
    }
    Ok(format!("14 schemas x 200 instances x 50 models ({evaluations} checks) + CS rule + 3 controls"))
}

/// `inf_v R(w,v) ⇒ e(v,φ)`, recomputed from `eval_world`.
fn box_oracle(m: &GjModel, w: usize, f: &Formula) -> Value {
    (0..m.world_count())
        .map(|v| residuum(m.accessibility(w, v), m.eval_world(v, f).unwrap()))
        .min()
        .unwrap_or(Value::ONE)
}

fn k_lemma() -> Outcome {
    let mut g = Gen::new(4);
    let (mut n, mut strict) = (0, 0);
    for k in 0..100 {
        let class = ModelClass::ALL[k % 6];
        let pairs: Vec<(Formula, Formula)> = (0..100).map(|_| (g.formula(2, true), g.formula(2, true))).collect();
        let cover: Vec<Formula> = pairs.iter().map(|(a, b)| Formula::implies(a.clone(), b.clone())).collect();
        let calc = CalculusId::ALL[k % 6];
        let m = g.model(class, &cover, &ConstantSpec::empty(calc));
        for (phi, psi) in &pairs {
            let w = g.rng_world(m.world_count());
            let imp = Formula::implies(phi.clone(), psi.clone());
            let (bi, bp, bq) = (box_oracle(&m, w, &imp), box_oracle(&m, w, phi), box_oracle(&m, w, psi));
            ensure(m.eval_box(w, &imp).unwrap() == bi, || format!("eval_box disagrees with the oracle on `{imp}`"))?;
            ensure(tnorm(bi, bp) <= bq, || format!("K fails: □({imp}) = {bi}, □{phi} = {bp}, □{psi} = {bq}"))?;
            n += 1;
            strict += usize::from(bq < Value::ONE && bi > Value::ZERO);
        }
    }
    ensure(strict > n / 10, || format!("only {strict} tuples with □ψ < 1 and □(φ→ψ) > 0"))?;
    Ok(format!("{n} tuples, {strict} with □ψ < 1 and □(φ→ψ) > 0"))
}

fn soundness() -> Outcome {
    let mut g = Gen::new(5);
    let (mut mp, mut fuzzy) = (0, 0);
    for calc in CalculusId::ALL {
        let class = ModelClass::of_calculus(calc);
        for _ in 0..100 {
            let premises = g.range(0, 2);
            let len = g.range(3, 10);
            let d = g.derivation(calc, ConstantSpec::total(calc), premises, len);
            check_derivation(&d).map_err(|e| format!("generator produced a bad derivation: {e}"))?;
            let mut cover = d.premises.clone();
            cover.extend(d.steps.iter().map(|s| s.formula.clone()));
            let goal = d.conclusion().unwrap().clone();
            mp += d.steps.iter().filter(|s| matches!(s.justification, Justification::Mp { .. })).count();
            for _ in 0..20 {
                let m = g.model(class, &cover, &ConstantSpec::total(calc));
                fuzzy += m.eval_all(&goal).unwrap().iter().filter(|v| !v.is_one()).count();
                let outcome = entails(&[m], &d.premises, &goal, EntailmentMode::Leq).map_err(|e| e.to_string())?;
                ensure(outcome.holds(), || format!("{calc}: `{goal}` fails: {outcome:?}"))?;
            }
        }
    }
    ensure(mp > 0 && fuzzy > 0, || "derivations or models are degenerate".into())?;
    Ok(format!("6 calculi x 100 derivations x 20 models; {mp} mp steps, {fuzzy} worlds with conclusion < 1"))
}

// ------------------------------------------------------------------- syntax

fn star_translation() -> Outcome {
    let mut g = Gen::new(6);
    for _ in 0..10_000 {
        let f = g.formula(4, true);
        let s = star(&f);
        ensure(unstar(&s) == f, || format!("unstar(star({f})) differs"))?;
        ensure(star(&unstar(&s)) == s, || format!("star(unstar({s})) differs"))?;
    }
    for k in 0..100 {
        let calc = CalculusId::ALL[k % 6];
        let premises = g.range(0, 2);
        let len = g.range(3, 12);
        let d = g.derivation(calc, ConstantSpec::total(calc), premises, len);
        let p = translate_derivation(&d).map_err(|e| e.to_string())?;
        check_prop_derivation(&p).map_err(|e| format!("{calc}: translated derivation rejected: {e}"))?;
        ensure(p.conclusion() == Some(&star(d.conclusion().unwrap())), || "translation changed the conclusion".into())?;
    }
    Ok("10000 round trips, 100 translated derivations".into())
}

fn lifting() -> Outcome {
    let mut g = Gen::new(7);
    for k in 0..200 {
        let calc = CalculusId::ALL[k % 6];
        let premises = g.range(0, 2);
        let len = g.range(1, 6);
        let d = g.derivation(calc, ConstantSpec::total(calc), premises, len);
        ensure(d.len() <= 6, || "derivation too long".into())?;
        let terms: Vec<Term> = (1..=premises as u32).map(Term::var).collect();
        let (t, out) = lift(&d, &terms).map_err(|e| format!("{calc}: lift failed: {e}"))?;
        check_derivation(&out).map_err(|e| format!("{calc}: lifted derivation rejected: {e}"))?;
        let want = Formula::just(t.clone(), d.conclusion().unwrap().clone());
        ensure(out.conclusion() == Some(&want), || format!("lifted conclusion is not {want}"))?;
        let boxed: Vec<Formula> = d.premises.iter().zip(&terms).map(|(p, x)| Formula::just(x.clone(), p.clone())).collect();
        ensure(out.premises == boxed, || "lifted premises are not x_i:φ_i".into())?;
    }
    Ok("200 derivations".into())
}

// ------------------------------------------------------------------- decide

fn agree(premises: Vec<StarFormula>, goal: StarFormula) -> Result<(), String> {
    let q = ConsequenceQuery::new(premises, goal, EntailmentMode::Leq);
    let n = q.atoms().len() as u64;
    let chain = decide_consequence(&q, 8).map_err(|e| e.to_string())?;
    let grid = grid_oracle(&q, n + 2, 8).map_err(|e| e.to_string())?;
    if let Decision::Countermodel(a) = &chain {
        ensure(!q.satisfied_by(a), || "reported countermodel satisfies the query".into())?;
    }
    ensure(chain.is_valid() == grid.is_valid(), || {
        format!("disagreement on {:?} ⊨ {}: chain {}, grid {}", q.premises, q.goal, chain.is_valid(), grid.is_valid())
    })
}

fn decision_equivalence() -> Outcome {
    let depth3 = all_props(2, 3);
    let depth2 = all_props(2, 2);
    depth3.par_iter().try_for_each(|goal| agree(vec![], goal.clone()))?;
    depth2.par_iter().try_for_each(|p| depth2.iter().try_for_each(|goal| agree(vec![p.clone()], goal.clone())))?;
    let exhaustive = depth3.len() + depth2.len() * depth2.len();

    let mut g = Gen::new(8);
    let mut random = 0;
    while random < 10_000 {
        let premises: Vec<StarFormula> = (0..g.range(0, 2)).map(|_| g.prop(3, 3)).collect();
        let goal = g.prop(3, 3);
        let q = ConsequenceQuery::new(premises.clone(), goal.clone(), EntailmentMode::Leq);
        if q.atoms().len() != 3 {
            continue;
        }
        agree(premises, goal)?;
        random += 1;
    }
    Ok(format!("{exhaustive} exhaustive + {random} random queries"))
}

fn baaz_zach() -> Outcome {
    let mut g = Gen::new(9);
    let queries: Vec<(Vec<StarFormula>, StarFormula)> =
        (0..1000).map(|_| ((0..g.range(0, 3)).map(|_| g.prop(3, 3)).collect(), g.prop(3, 3))).collect();
    let diff = check_leq_equals_one(&queries, 8).map_err(|e| e.to_string())?;
    ensure(diff.is_empty(), || format!("{} disagreements, first {:?}", diff.len(), diff[0]))?;
    Ok("1000 queries".into())
}

// ---------------------------------------------------------------- canonical

fn truth_lemma() -> Outcome {
    let mut g = Gen::new(10);
    let mut assignments = 0;
    let mut checks = 0;
    let mut k = 0;
    let (mut raised_count, mut blocked) = (0, 0);
    while assignments < 100 {
        let calc = CalculusId::ALL[k % 6];
        k += 1;
        let cs = ConstantSpec::total(calc);
        let fs: Vec<Formula> = (0..4).map(|_| g.formula(3, true)).collect();
        let relevant = relevant_for(&fs);
        let theorems = theorem_fragment(&fs, calc, &cs);
        let mut evals = Vec::new();
        for _ in 0..5 {
            let raised = if calc.has_factivity() { None } else { g.raised_assignment(&relevant, &theorems) };
            let v = match raised {
                Some(v) => {
                    raised_count += 1;
                    v
                }
                None => {
                    let m = g.model(ModelClass::Gjt45, &fs, &cs);
                    let w = g.rng_world(m.world_count());
                    Gen::assignment_from_model(&m, w, &relevant)
                }
            };
            evals.push(v);
        }
        let frag = build_fragment(&evals, &theorems, &relevant).map_err(|e| format!("{calc}: {e}"))?;
        let n = evals.len();
        blocked += (0..n).flat_map(|v| (0..n).map(move |w| (v, w))).filter(|&(v, w)| frag.model.accessibility(v, w).is_zero()).count();
        let covered: BTreeSet<Formula> = subformula_closure(&fs).into_iter().filter(|f| f.depth() <= 3).collect();
        for w in 0..evals.len() {
            for f in &covered {
                ensure(truth_lemma_check(&frag, w, f).map_err(|e| e.to_string())?, || format!("truth lemma fails for `{f}`"))?;
                checks += 1;
            }
            for (t, body) in frag.model.pairs() {
                let e = frag.model.evidence(t, body, w);
                let val = frag.model.eval_world(w, &Formula::just(t.clone(), body.clone())).unwrap();
                ensure(e == val, || format!("E^c({t}, {body}) = {e} but e^c({t}:{body}) = {val}"))?;
            }
        }
        assignments += evals.len();
    }
    ensure(blocked > 0, || "every fragment has total accessibility".into())?;
    Ok(format!("{assignments} assignments ({raised_count} by raising), {checks} formula checks, {blocked} pairs with R^c = 0"))
}

fn conservativity() -> Outcome {
    let mut g = Gen::new(11);
    let mut found = 0;
    while found < 100 {
        let premises: Vec<Formula> = (0..g.range(0, 2)).map(|_| g.formula(3, false)).collect();
        let goal = g.formula(3, false);
        let q = ConsequenceQuery::new(premises.iter().map(star).collect(), star(&goal), EntailmentMode::Leq);
        let Decision::Countermodel(a) = decide_consequence(&q, 8).map_err(|e| e.to_string())? else { continue };
        let m = conservativity_countermodel(&a, Signature::new());
        let report = m.classify();
        for class in [ModelClass::Gj, ModelClass::Gjt, ModelClass::Gj4, ModelClass::Glp] {
            ensure(report.is(class), || format!("countermodel is not in {class}: {:?}", report.failures))?;
        }
        let refuted = entails(&[m], &premises, &goal, EntailmentMode::Leq).map_err(|e| e.to_string())?;
        ensure(!refuted.holds(), || format!("countermodel does not refute {premises:?} ⊨ {goal}"))?;
        let gm = conservativity_countermodel_m(&a, Signature::new());
        ensure(gm.classify().is(MkrtychevClass::Gm45), || "Mkrtychev countermodel is not in GM45".into())?;
        let refuted = entails_m(&[gm], &premises, &goal, EntailmentMode::Leq).map_err(|e| e.to_string())?;
        ensure(refuted == Some(0), || format!("Mkrtychev countermodel does not refute {goal}"))?;
        found += 1;
    }
    Ok("100 non-consequences".into())
}

fn mkrtychev_embedding() -> Outcome {
    let mut g = Gen::new(12);
    for _ in 0..100 {
        let fs: Vec<Formula> = (0..100).map(|_| g.formula(3, true)).collect();
        let m = g.gm_model(&fs);
        let fit = m.to_fitting();
        for f in &fs {
            let (a, b) = (m.eval(f).unwrap(), fit.eval_world(0, f).unwrap());
            ensure(a == b, || format!("`{f}`: Mkrtychev {a}, Fitting {b}"))?;
        }
    }
    Ok("10000 formulas".into())
}

trait GenExt {
    fn range(&mut self, lo: usize, hi: usize) -> usize;
    fn rng_world(&mut self, n: usize) -> usize;
}

impl GenExt for Gen {
    fn range(&mut self, lo: usize, hi: usize) -> usize {
        use rand::Rng;
        self.rng.gen_range(lo..=hi)
    }

    fn rng_world(&mut self, n: usize) -> usize {
        self.range(0, n - 1)
    }
}

fn main() {
    type Criterion = (&'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 12] = [
        ("residuum adjunction", 5, residuum_adjunction),
        ("t-norm monotonicity", 5, tnorm_monotonicity),
        ("axiom validity", 60, axiom_validity),
        ("K inequality", 30, k_lemma),
        ("soundness", 120, soundness),
        ("star translation", 30, star_translation),
        ("lifting", 30, lifting),
        ("decision procedure vs grid", 300, decision_equivalence),
        ("<= and 1-entailment agree", 60, baaz_zach),
        ("truth lemma on fragments", 60, truth_lemma),
        ("conservativity", 60, conservativity),
        ("Mkrtychev embedding", 10, mkrtychev_embedding),
    ];
    let mut failures = 0;
    for (name, bound, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(bound);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the time bound")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("{status} {name}: {detail} [{:.2}s / {bound}s]", elapsed.as_secs_f64());
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
