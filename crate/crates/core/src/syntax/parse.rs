use std::fmt;

use thiserror::Error;

use super::{Formula, StarAtom, Term};

/// A syntax error: byte offset into the input, the tokens that would have
/// been accepted there, and what was found instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: expected {}, found {found}", ExpectedList(.expected))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

struct ExpectedList<'a>(&'a [&'static str]);

impl fmt::Display for ExpectedList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            [] => write!(f, "nothing"),
            [one] => write!(f, "{one}"),
            many => {
                write!(f, "one of ")?;
                for (i, e) in many.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Atom(u32),
    Var(u32),
    Const(u32),
    Bot,
    Top,
    And,
    Or,
    Imp,
    Iff,
    Not,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Dot,
    Plus,
    Bang,
    Query,
    Colon,
    End,
}

impl Tok {
    fn describe(self) -> String {
        match self {
            Tok::Atom(i) => format!("`p{i}`"),
            Tok::Var(i) => format!("`x{i}`"),
            Tok::Const(i) => format!("`c{i}`"),
            Tok::Bot => "`bot`".into(),
            Tok::Top => "`top`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Imp => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::Not => "`~`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Query => "`?`".into(),
            Tok::Colon => "`:`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

const FORMULA_START: &[&str] = &["`p<N>`", "`bot`", "`top`", "`~`", "`(`", "a justification term"];
const TERM_START: &[&str] = &["`x<N>`", "`c<N>`", "`[`", "`!`", "`?`"];
const AFTER_FORMULA: &[&str] = &["`&`", "`|`", "`->`", "`<->`", "end of input"];

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let single = match c {
            b'&' => Some(Tok::And),
            b'|' => Some(Tok::Or),
            b'~' => Some(Tok::Not),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBrack),
            b']' => Some(Tok::RBrack),
            b'.' => Some(Tok::Dot),
            b'+' => Some(Tok::Plus),
            b'!' => Some(Tok::Bang),
            b'?' => Some(Tok::Query),
            b':' => Some(Tok::Colon),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, start));
            i += 1;
            continue;
        }
        if src[i..].starts_with("->") {
            out.push((Tok::Imp, start));
            i += 2;
            continue;
        }
        if src[i..].starts_with("<->") {
            out.push((Tok::Iff, start));
            i += 3;
            continue;
        }
        if src[i..].starts_with('·') {
            out.push((Tok::Dot, start));
            i += '·'.len_utf8();
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut j = i;
            while j < bytes.len() && bytes[j].is_ascii_alphanumeric() {
                j += 1;
            }
            let word = &src[i..j];
            let tok = match word {
                "bot" => Tok::Bot,
                "top" => Tok::Top,
                _ => {
                    let (head, digits) = word.split_at(1);
                    let index = digits
                        .parse::<u32>()
                        .ok()
                        .filter(|n| *n > 0 && digits.bytes().all(|b| b.is_ascii_digit()));
                    match (head, index) {
                        ("p", Some(n)) => Tok::Atom(n),
                        ("x", Some(n)) => Tok::Var(n),
                        ("c", Some(n)) => Tok::Const(n),
                        _ => {
                            return Err(ParseError {
                                offset: start,
                                expected: vec!["`p<N>`", "`x<N>`", "`c<N>`", "`bot`", "`top`"],
                                found: format!("`{word}`"),
                            })
                        }
                    }
                }
            };
            out.push((tok, start));
            i = j;
            continue;
        }
        let ch = src[i..].chars().next().unwrap_or('?');
        return Err(ParseError {
            offset: start,
            expected: vec!["a formula token"],
            found: format!("`{ch}`"),
        });
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Tok {
        self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: expected.to_vec(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok, name: &'static str) -> Result<(), ParseError> {
        if self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.imp()?;
        while self.peek() == Tok::Iff {
            self.bump();
            let right = self.imp()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let left = self.or()?;
        if self.peek() == Tok::Imp {
            self.bump();
            let right = self.imp()?;
            Ok(Formula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.and()?;
        while self.peek() == Tok::Or {
            self.bump();
            let right = self.and()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while self.peek() == Tok::And {
            self.bump();
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.iff()?;
                if self.peek() != Tok::RParen {
                    return Err(self.error(&["`&`", "`|`", "`->`", "`<->`", "`)`"]));
                }
                self.bump();
                Ok(f)
            }
            Tok::Bot => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::top())
            }
            Tok::Atom(i) => {
                self.bump();
                Ok(Formula::Atom(i))
            }
            Tok::Var(_) | Tok::Const(_) | Tok::LBrack | Tok::Bang | Tok::Query => {
                let t = self.term()?;
                self.expect(Tok::Colon, "`:`")?;
                let body = self.unary()?;
                Ok(Formula::just(t, body))
            }
            _ => Err(self.error(FORMULA_START)),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Tok::Var(i) => {
                self.bump();
                Ok(Term::Var(i))
            }
            Tok::Const(i) => {
                self.bump();
                Ok(Term::Const(i))
            }
            Tok::Bang => {
                self.bump();
                Ok(Term::bang(self.term()?))
            }
            Tok::Query => {
                self.bump();
                Ok(Term::query(self.term()?))
            }
            Tok::LBrack => {
                self.bump();
                let left = self.term()?;
                let op = self.bump();
                let right = match op {
                    Tok::Dot | Tok::Plus => self.term()?,
                    _ => {
                        self.pos -= 1;
                        return Err(self.error(&["`.`", "`+`"]));
                    }
                };
                self.expect(Tok::RBrack, "`]`")?;
                Ok(match op {
                    Tok::Dot => Term::app(left, right),
                    _ => Term::sum(left, right),
                })
            }
            _ => Err(self.error(TERM_START)),
        }
    }
}

/// Parses one formula of the ASCII grammar.
///
/// Precedence from loosest to tightest: `<->` (left), `->` (right), `|`
/// (left), `&` (left), then the prefix forms `~φ` and `t:φ`.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let f = p.iff()?;
    if p.peek() != Tok::End {
        return Err(p.error(AFTER_FORMULA));
    }
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let t = p.term()?;
    if p.peek() != Tok::End {
        return Err(p.error(&["end of input"]));
    }
    Ok(t)
}

/// Parses a term at the start of `text` and returns it together with the
/// unconsumed remainder.
pub fn parse_term_prefix(text: &str) -> Result<(Term, &str), ParseError> {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    let end = term_extent(trimmed).ok_or_else(|| ParseError {
        offset: lead,
        expected: TERM_START.to_vec(),
        found: trimmed.chars().next().map(|c| format!("`{c}`")).unwrap_or_else(|| "end of input".into()),
    })?;
    let term = parse_term(&trimmed[..end]).map_err(|mut e| {
        e.offset += lead;
        e
    })?;
    Ok((term, &trimmed[end..]))
}

/// Byte length of the leading term, found by bracket matching.
fn term_extent(s: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() && (bytes[i] == b'!' || bytes[i] == b'?') {
        i += 1;
    }
    match bytes.get(i)? {
        b'[' => {
            let mut depth = 0usize;
            for (j, &b) in bytes.iter().enumerate().skip(i) {
                match b {
                    b'[' => depth += 1,
                    b']' => {
                        depth -= 1;
                        if depth == 0 {
                            return Some(j + 1);
                        }
                    }
                    _ => {}
                }
            }
            None
        }
        b'x' | b'c' => {
            let mut j = i + 1;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            (j > i + 1).then_some(j)
        }
        _ => None,
    }
}

/// Parses a propositional atom of the star language: `p<N>` or `{φ}_t`.
pub fn parse_star_atom(text: &str) -> Result<StarAtom, ParseError> {
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    if let Some(rest) = trimmed.strip_prefix('{') {
        let close = rest.rfind("}_").ok_or_else(|| ParseError {
            offset: lead + trimmed.len(),
            expected: vec!["`}_`"],
            found: "end of input".into(),
        })?;
        let body = parse_formula(&rest[..close]).map_err(|mut e| {
            e.offset += lead + 1;
            e
        })?;
        let term = parse_term(&rest[close + 2..]).map_err(|mut e| {
            e.offset += lead + 1 + close + 2;
            e
        })?;
        return Ok(StarAtom::Boxed(body.into(), term.into()));
    }
    match parse_formula(trimmed) {
        Ok(Formula::Atom(i)) => Ok(StarAtom::Plain(i)),
        Ok(_) | Err(_) => Err(ParseError {
            offset: lead,
            expected: vec!["`p<N>`", "`{φ}_t`"],
            found: format!("`{trimmed}`"),
        }),
    }
}

/// Parses a formula file: one formula per line, `#` starts a comment,
/// blank lines are skipped. Errors carry the 1-based line number.
pub fn parse_formulas(text: &str) -> Result<Vec<Formula>, (usize, ParseError)> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let content = strip_comment(line);
        if content.trim().is_empty() {
            continue;
        }
        out.push(parse_formula(content).map_err(|e| (n + 1, e))?);
    }
    Ok(out)
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}
