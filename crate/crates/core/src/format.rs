//! Plain-text file formats for models, assignments, constant
//! specifications and derivations.
//!
//! All formats are line based; `#` starts a comment and blank lines are
//! ignored. Truth values are exact rationals written `p/q`, `0` or `1`.
//!
//! Fitting model:
//!
//! ```text
//! worlds: w1 w2
//! defaults: 0 0 0        # R, E, e
//! signature:
//!   x1 p1
//! R:
//!   w1 w2 1
//! E:
//!   x1 p1 w1 3/4         # term, formula, world, value
//! e:
//!   w2 p1 1/2
//! ```
//!
//! A Mkrtychev model uses `E:` lines without the world, `e:` lines
//! without the world, and two defaults (`E`, `e`).
//!
//! Derivation:
//!
//! ```text
//! calculus: gj
//! cs: total
//! assume p1
//! assume p1 -> p2
//! p1 ; premise 1
//! p1 -> p2 ; premise 2
//! p2 ; mp 1 2
//! ```
//!
//! Premise and step numbers are 1-based; `mp i j` takes the minor premise
//! `ψ` at step `i` and the major premise `ψ → φ` at step `j`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::calculus::{AxiomSchema, CalculusId, ConstantSpec, Derivation, Justification, Step};
use crate::fitting::{Defaults, GjModel, ModelError};
use crate::goedel::Assignment;
use crate::mkrtychev::GmModel;
use crate::signature::Signature;
use crate::syntax::{parse_formula, parse_star_atom, parse_term_prefix, Formula, Term};
use crate::value::Value;

/// `line` is 0 for errors that concern the file as a whole.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{message}", line_prefix(*.line))]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn line_prefix(line: usize) -> String {
    if line == 0 {
        String::new()
    } else {
        format!("line {line}: ")
    }
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

fn model_err(line: usize, e: ModelError) -> FormatError {
    err(line, e.to_string())
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = crate::syntax::strip_comment(l).trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn value(line: usize, s: &str) -> Result<Value, FormatError> {
    s.parse().map_err(|e| err(line, format!("bad value `{s}`: {e}")))
}

fn atom_index(line: usize, s: &str) -> Result<u32, FormatError> {
    s.strip_prefix('p')
        .and_then(|n| n.parse::<u32>().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| err(line, format!("expected an atom `pN`, found `{s}`")))
}

fn formula(line: usize, s: &str) -> Result<Formula, FormatError> {
    parse_formula(s).map_err(|e| err(line, e.to_string()))
}

/// `term rest…`
fn term_and_rest(line: usize, s: &str) -> Result<(Term, &str), FormatError> {
    let (t, rest) = parse_term_prefix(s).map_err(|e| err(line, e.to_string()))?;
    Ok((t, rest.trim()))
}

/// Splits off the last `n` whitespace-separated fields.
fn split_tail(line: usize, s: &str, n: usize) -> Result<(&str, Vec<&str>), FormatError> {
    let mut rest = s.trim_end();
    let mut tail = Vec::with_capacity(n);
    for _ in 0..n {
        let cut = rest.rfind(char::is_whitespace).ok_or_else(|| err(line, "too few fields"))?;
        tail.push(rest[cut..].trim());
        rest = rest[..cut].trim_end();
    }
    tail.reverse();
    Ok((rest, tail))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Worlds,
    Defaults,
    Signature,
    R,
    E,
    Valuation,
}

fn section_header(l: &str) -> Option<(Section, &str)> {
    let table = [
        ("worlds:", Section::Worlds),
        ("defaults:", Section::Defaults),
        ("signature:", Section::Signature),
        ("R:", Section::R),
        ("E:", Section::E),
        ("e:", Section::Valuation),
    ];
    table.iter().find_map(|(h, s)| l.strip_prefix(h).map(|rest| (*s, rest.trim())))
}

/// Lines grouped by section, keeping inline content after a header.
fn sections(text: &str) -> Result<Vec<(Section, usize, &str)>, FormatError> {
    let mut out = Vec::new();
    let mut current = None;
    for (n, l) in lines(text) {
        if let Some((s, rest)) = section_header(l) {
            current = Some(s);
            if !rest.is_empty() {
                out.push((s, n, rest));
            }
            continue;
        }
        let s = current.ok_or_else(|| err(n, "content before the first section header"))?;
        out.push((s, n, l));
    }
    Ok(out)
}

pub fn parse_gj_model(text: &str) -> Result<GjModel, FormatError> {
    let entries = sections(text)?;
    let mut worlds = Vec::new();
    let mut defaults = Defaults::default();
    let mut signature = Signature::new();
    for &(s, n, l) in &entries {
        match s {
            Section::Worlds => worlds.extend(l.split_whitespace().map(str::to_string)),
            Section::Defaults => {
                let v: Vec<&str> = l.split_whitespace().collect();
                if v.len() != 3 {
                    return Err(err(n, "defaults need three values: R E e"));
                }
                defaults = Defaults { accessibility: value(n, v[0])?, evidence: value(n, v[1])?, valuation: value(n, v[2])? };
            }
            Section::Signature => {
                let (t, rest) = term_and_rest(n, l)?;
                signature.insert(t, formula(n, rest)?);
            }
            _ => {}
        }
    }
    let mut m = GjModel::new(worlds, signature, defaults).map_err(|e| model_err(0, e))?;
    for &(s, n, l) in &entries {
        match s {
            Section::R => {
                let f: Vec<&str> = l.split_whitespace().collect();
                if f.len() != 3 {
                    return Err(err(n, "R entries are `world world value`"));
                }
                let (w, v) = (m.world_index(f[0]).map_err(|e| model_err(n, e))?, m.world_index(f[1]).map_err(|e| model_err(n, e))?);
                m.set_accessibility(w, v, value(n, f[2])?);
            }
            Section::E => {
                let (t, rest) = term_and_rest(n, l)?;
                let (body, tail) = split_tail(n, rest, 2)?;
                let w = m.world_index(tail[0]).map_err(|e| model_err(n, e))?;
                m.set_evidence(&t, &formula(n, body)?, w, value(n, tail[1])?).map_err(|e| model_err(n, e))?;
            }
            Section::Valuation => {
                let f: Vec<&str> = l.split_whitespace().collect();
                if f.len() != 3 {
                    return Err(err(n, "e entries are `world pN value`"));
                }
                let w = m.world_index(f[0]).map_err(|e| model_err(n, e))?;
                m.set_valuation(w, atom_index(n, f[1])?, value(n, f[2])?);
            }
            _ => {}
        }
    }
    Ok(m)
}

pub fn write_gj_model(m: &GjModel) -> String {
    let d = m.defaults();
    let mut out = String::new();
    let _ = writeln!(out, "worlds: {}", m.worlds().join(" "));
    let _ = writeln!(out, "defaults: {} {} {}", d.accessibility, d.evidence, d.valuation);
    out.push_str("signature:\n");
    for (t, f) in m.pairs() {
        let _ = writeln!(out, "  {t} {f}");
    }
    out.push_str("R:\n");
    let n = m.world_count();
    for w in 0..n {
        for v in 0..n {
            let r = m.accessibility(w, v);
            if r != d.accessibility {
                let _ = writeln!(out, "  {} {} {r}", m.worlds()[w], m.worlds()[v]);
            }
        }
    }
    out.push_str("E:\n");
    for (i, (t, f)) in m.pairs().iter().enumerate() {
        for w in 0..n {
            let e = m.evidence_at(i, w);
            if e != d.evidence {
                let _ = writeln!(out, "  {t} {f} {} {e}", m.worlds()[w]);
            }
        }
    }
    out.push_str("e:\n");
    for (w, p, v) in m.valuation_entries() {
        let _ = writeln!(out, "  {} p{p} {v}", m.worlds()[w]);
    }
    out
}

pub fn parse_gm_model(text: &str) -> Result<GmModel, FormatError> {
    let entries = sections(text)?;
    let (mut ev_default, mut val_default) = (Value::ZERO, Value::ZERO);
    let mut signature = Signature::new();
    for &(s, n, l) in &entries {
        match s {
            Section::Worlds | Section::R => return Err(err(n, "Mkrtychev models have no worlds or accessibility")),
            Section::Defaults => {
                let v: Vec<&str> = l.split_whitespace().collect();
                if v.len() != 2 {
                    return Err(err(n, "defaults need two values: E e"));
                }
                ev_default = value(n, v[0])?;
                val_default = value(n, v[1])?;
            }
            Section::Signature => {
                let (t, rest) = term_and_rest(n, l)?;
                signature.insert(t, formula(n, rest)?);
            }
            _ => {}
        }
    }
    let mut m = GmModel::new(signature, ev_default, val_default).map_err(|e| model_err(0, e))?;
    for &(s, n, l) in &entries {
        match s {
            Section::E => {
                let (t, rest) = term_and_rest(n, l)?;
                let (body, tail) = split_tail(n, rest, 1)?;
                m.set_evidence(&t, &formula(n, body)?, value(n, tail[0])?).map_err(|e| model_err(n, e))?;
            }
            Section::Valuation => {
                let f: Vec<&str> = l.split_whitespace().collect();
                if f.len() != 2 {
                    return Err(err(n, "e entries are `pN value`"));
                }
                m.set_valuation(atom_index(n, f[0])?, value(n, f[1])?);
            }
            _ => {}
        }
    }
    Ok(m)
}

pub fn write_gm_model(m: &GmModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "defaults: {} {}", m.evidence_default(), m.valuation_default());
    out.push_str("signature:\n");
    for (t, f) in m.pairs() {
        let _ = writeln!(out, "  {t} {f}");
    }
    out.push_str("E:\n");
    for (i, (t, f)) in m.pairs().iter().enumerate() {
        if m.evidence_at(i) != m.evidence_default() {
            let _ = writeln!(out, "  {t} {f} {}", m.evidence_at(i));
        }
    }
    out.push_str("e:\n");
    for (p, v) in m.valuation_entries() {
        let _ = writeln!(out, "  p{p} {v}");
    }
    out
}

/// Lines `atom value` (an optional `->` may separate them) and an optional
/// `default: value`; the default is `0` when absent.
pub fn parse_assignment(text: &str) -> Result<Assignment, FormatError> {
    let mut default = Value::ZERO;
    let mut entries = Vec::new();
    for (n, l) in lines(text) {
        if let Some(rest) = l.strip_prefix("default:") {
            default = value(n, rest.trim())?;
            continue;
        }
        let (atom, tail) = split_tail(n, l, 1)?;
        let atom = atom.trim_end().strip_suffix("->").unwrap_or(atom).trim();
        let a = parse_star_atom(atom).map_err(|e| err(n, e.to_string()))?;
        entries.push((a, value(n, tail[0])?));
    }
    let mut a = Assignment::new(default);
    for (atom, v) in entries {
        a.set(atom, v);
    }
    Ok(a)
}

pub fn write_assignment(a: &Assignment) -> String {
    let mut out = String::new();
    if !a.default_value().is_zero() {
        let _ = writeln!(out, "default: {}", a.default_value());
    }
    for (atom, v) in a.entries() {
        let _ = writeln!(out, "{atom} -> {v}");
    }
    out
}

/// `total`, `empty`, or the text of a file with one member per line.
pub fn parse_cs(calculus: CalculusId, spec: &str) -> Result<ConstantSpec, FormatError> {
    match spec.trim() {
        "total" => Ok(ConstantSpec::total(calculus)),
        "empty" => Ok(ConstantSpec::empty(calculus)),
        text => {
            let mut members = Vec::new();
            for (n, l) in lines(text) {
                members.push(formula(n, l)?);
            }
            ConstantSpec::extensional(calculus, members).map_err(|e| err(0, e.to_string()))
        }
    }
}

/// A parsed derivation file. Header values are optional so that command
/// line flags can supply or override them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationFile {
    pub calculus: Option<CalculusId>,
    pub cs: Option<String>,
    pub premises: Vec<Formula>,
    pub steps: Vec<Step>,
}

impl DerivationFile {
    pub fn into_derivation(self, calculus: CalculusId, cs: ConstantSpec) -> Derivation {
        Derivation { calculus, cs, premises: self.premises, steps: self.steps }
    }
}

fn index(n: usize, s: Option<&str>, what: &str) -> Result<usize, FormatError> {
    s.and_then(|s| s.parse::<usize>().ok())
        .filter(|&i| i > 0)
        .map(|i| i - 1)
        .ok_or_else(|| err(n, format!("expected a {what} number (1-based)")))
}

pub fn parse_derivation(text: &str) -> Result<DerivationFile, FormatError> {
    let mut file = DerivationFile { calculus: None, cs: None, premises: Vec::new(), steps: Vec::new() };
    for (n, l) in lines(text) {
        if let Some(rest) = l.strip_prefix("calculus:") {
            file.calculus = Some(rest.trim().parse().map_err(|e: String| err(n, e))?);
            continue;
        }
        if let Some(rest) = l.strip_prefix("cs:") {
            file.cs = Some(rest.trim().to_string());
            continue;
        }
        if let Some(rest) = l.strip_prefix("assume ") {
            file.premises.push(formula(n, rest.trim())?);
            continue;
        }
        let (f, j) = l.rsplit_once(';').ok_or_else(|| err(n, "expected `formula ; justification`"))?;
        let mut words = j.split_whitespace();
        let justification = match words.next() {
            Some("premise") => Justification::Premise(index(n, words.next(), "premise")?),
            Some("axiom") => match words.next() {
                None => Justification::Axiom(None),
                Some(name) => Justification::Axiom(Some(name.parse::<AxiomSchema>().map_err(|e| err(n, e))?)),
            },
            Some("cs") => Justification::Cs,
            Some("mp") => {
                let minor = index(n, words.next(), "step")?;
                let major = index(n, words.next(), "step")?;
                Justification::Mp { minor, major }
            }
            other => return Err(err(n, format!("unknown justification `{}`", other.unwrap_or("")))),
        };
        if let Some(extra) = words.next() {
            return Err(err(n, format!("unexpected `{extra}`")));
        }
        file.steps.push(Step::new(formula(n, f.trim())?, justification));
    }
    Ok(file)
}

pub fn write_derivation(d: &Derivation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "calculus: {}", d.calculus);
    if d.cs.is_total() {
        out.push_str("cs: total\n");
    }
    for p in &d.premises {
        let _ = writeln!(out, "assume {p}");
    }
    for s in &d.steps {
        let j = match s.justification {
            Justification::Premise(i) => format!("premise {}", i + 1),
            Justification::Axiom(None) => "axiom".to_string(),
            Justification::Axiom(Some(schema)) => format!("axiom {schema}"),
            Justification::Cs => "cs".to_string(),
            Justification::Mp { minor, major } => format!("mp {} {}", minor + 1, major + 1),
        };
        let _ = writeln!(out, "{} ; {j}", s.formula);
    }
    out
}
