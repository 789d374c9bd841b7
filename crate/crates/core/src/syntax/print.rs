//! Minimal-parenthesis rendering that round-trips through the parser.

use std::fmt;

use super::{Formula, StarAtom, StarFormula, Term};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::Const(i) => write!(f, "c{i}"),
            Term::App(l, r) => write!(f, "[{l}.{r}]"),
            Term::Sum(l, r) => write!(f, "[{l}+{r}]"),
            Term::Bang(t) => write!(f, "!{t}"),
            Term::Query(t) => write!(f, "?{t}"),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Binding levels: implication 0, conjunction 1, prefix forms and atoms 2.
const IMP: u8 = 0;
const AND: u8 = 1;
const PREFIX: u8 = 2;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => IMP,
        Formula::And(..) => AND,
        _ => PREFIX,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if level(f) < min {
        write!(out, "(")?;
        write_formula(f, out)?;
        write!(out, ")")
    } else {
        write_formula(f, out)
    }
}

fn write_formula(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match f {
        Formula::Bottom => write!(out, "bot"),
        Formula::Atom(i) => write!(out, "p{i}"),
        Formula::And(a, b) => {
            write_at(a, AND, out)?;
            write!(out, " & ")?;
            write_at(b, PREFIX, out)
        }
        Formula::Implies(a, b) => {
            write_at(a, AND, out)?;
            write!(out, " -> ")?;
            write_at(b, IMP, out)
        }
        Formula::Just(t, body) => {
            write!(out, "{t}:")?;
            write_at(body, PREFIX, out)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for StarAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarAtom::Plain(i) => write!(f, "p{i}"),
            StarAtom::Boxed(body, t) => write!(f, "{{{body}}}_{t}"),
        }
    }
}

impl fmt::Debug for StarAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn star_level(f: &StarFormula) -> u8 {
    match f {
        StarFormula::Implies(..) => IMP,
        StarFormula::And(..) => AND,
        _ => PREFIX,
    }
}

fn write_star_at(f: &StarFormula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if star_level(f) < min {
        write!(out, "({f})")
    } else {
        write!(out, "{f}")
    }
}

impl fmt::Display for StarFormula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarFormula::Bottom => write!(out, "bot"),
            StarFormula::Atom(a) => write!(out, "{a}"),
            StarFormula::And(a, b) => {
                write_star_at(a, AND, out)?;
                write!(out, " & ")?;
                write_star_at(b, PREFIX, out)
            }
            StarFormula::Implies(a, b) => {
                write_star_at(a, AND, out)?;
                write!(out, " -> ")?;
                write_star_at(b, IMP, out)
            }
        }
    }
}

impl fmt::Debug for StarFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
