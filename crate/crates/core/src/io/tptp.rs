//! The clause-normal-form subset of TPTP: `cnf(name, role, lit | ... | lit).`
//!
//! Variables start with an uppercase letter or `_`; functors and predicates with a
//! lowercase letter, `$`, or are single-quoted (quotes are kept in the symbol). Equality,
//! non-clausal languages and includes are rejected as unsupported.

use std::fmt::Write as _;

use super::{Format, ParseError, ProblemFile};
use crate::logic::{sym, Clause, ClauseSet, Literal, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Lower(String),
    Upper(String),
    Dollar(String),
    Quoted(String),
    Distinct(String),
    Number(String),
    Punct(&'static str),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Lower(s) | Tok::Upper(s) | Tok::Dollar(s) | Tok::Quoted(s) | Tok::Distinct(s) | Tok::Number(s) => {
                format!("`{s}`")
            }
            Tok::Punct(p) => format!("`{p}`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

const PUNCT: [&str; 18] =
    ["<=>", "<~>", "=>", "<=", "!=", "~|", "~&", "(", ")", ",", ".", "|", "~", "=", "&", "[", "]", ":"];

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
        } else if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, 1);
            }
        } else if c == '/' && chars.get(i + 1) == Some(&'*') {
            advance(&mut i, &mut line, &mut col, 2);
            while i < chars.len() && !(chars[i] == '*' && chars.get(i + 1) == Some(&'/')) {
                advance(&mut i, &mut line, &mut col, 1);
            }
            if i >= chars.len() {
                return Err(ParseError::Syntax { line: l0, column: c0, message: "unterminated comment".into() });
            }
            advance(&mut i, &mut line, &mut col, 2);
        } else if c == '\'' || c == '"' {
            let mut j = i + 1;
            while j < chars.len() && chars[j] != c {
                j += if chars[j] == '\\' { 2 } else { 1 };
            }
            if j >= chars.len() {
                return Err(ParseError::Syntax { line: l0, column: c0, message: "unterminated quoted name".into() });
            }
            let s: String = chars[i..=j].iter().collect();
            let n = j + 1 - i;
            advance(&mut i, &mut line, &mut col, n);
            out.push(Spanned { tok: if c == '\'' { Tok::Quoted(s) } else { Tok::Distinct(s) }, line: l0, column: c0 });
        } else if c.is_alphanumeric() || c == '_' || c == '$' {
            let mut j = i + 1;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_' || (c == '$' && chars[j] == '$')) {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            let tok = if c == '$' {
                Tok::Dollar(s)
            } else if c.is_ascii_digit() {
                Tok::Number(s)
            } else if c.is_uppercase() || c == '_' {
                Tok::Upper(s)
            } else {
                Tok::Lower(s)
            };
            let n = j - i;
            advance(&mut i, &mut line, &mut col, n);
            out.push(Spanned { tok, line: l0, column: c0 });
        } else {
            let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
            let Some(p) = PUNCT.iter().find(|p| rest.starts_with(**p)) else {
                return Err(ParseError::Syntax {
                    line: l0,
                    column: c0,
                    message: format!("unexpected character `{c}`"),
                });
            };
            advance(&mut i, &mut line, &mut col, p.len());
            out.push(Spanned { tok: Tok::Punct(p), line: l0, column: c0 });
        }
    }
    Ok(out)
}

/// Clauses in file order with their `(name, role)` annotations.
type Statements = (Vec<Clause>, Vec<(String, String)>);

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    /// Predicates must be lowercase words, as the TPTP grammar requires.
    strict: bool,
    end: (usize, usize),
}

impl Parser {
    fn new(text: &str, strict: bool) -> Result<Parser, ParseError> {
        let toks = lex(text)?;
        let end = text.lines().count().max(1);
        let last_col = text.lines().last().map_or(1, |l| l.chars().count() + 1);
        Ok(Parser { toks, pos: 0, strict, end: (end, last_col) })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.column))
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, column) = self.here();
        Err(ParseError::Syntax { line, column, message: message.into() })
    }

    fn unsupported<T>(&self, feature: impl Into<String>) -> Result<T, ParseError> {
        let (line, column) = self.here();
        Err(ParseError::Unsupported { line, column, feature: feature.into() })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, p: &str) -> bool {
        if self.peek() == Some(&Tok::Punct(punct(p))) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, p: &str) -> Result<(), ParseError> {
        if self.eat(p) {
            return Ok(());
        }
        let found = self.peek().map_or("end of input".to_string(), Tok::describe);
        self.error(format!("expected `{p}`, found {found}"))
    }

    fn file(&mut self) -> Result<Statements, ParseError> {
        let mut clauses = Vec::new();
        let mut annotations = Vec::new();
        while let Some(tok) = self.peek().cloned() {
            match tok {
                Tok::Lower(w) if w == "cnf" => {
                    self.pos += 1;
                    self.expect("(")?;
                    let name = self.name()?;
                    self.expect(",")?;
                    let role = match self.next() {
                        Some(Tok::Lower(r)) => r,
                        _ => {
                            self.pos -= 1;
                            return self.error("expected a role");
                        }
                    };
                    self.expect(",")?;
                    let clause = self.formula()?;
                    if self.eat(",") {
                        self.skip_annotations()?;
                    }
                    self.expect(")")?;
                    self.expect(".")?;
                    clauses.push(clause);
                    annotations.push((name, role));
                }
                Tok::Lower(w) if ["fof", "tff", "thf", "tcf", "tpi"].contains(&w.as_str()) => {
                    return self.unsupported(format!("`{w}` formulas"));
                }
                Tok::Lower(w) if w == "include" => return self.unsupported("`include` directives"),
                other => return self.error(format!("expected `cnf(`, found {}", other.describe())),
            }
        }
        Ok((clauses, annotations))
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match self.next() {
            Some(Tok::Lower(s) | Tok::Quoted(s) | Tok::Number(s) | Tok::Upper(s)) => Ok(s),
            _ => {
                self.pos -= 1;
                self.error("expected a name")
            }
        }
    }

    fn skip_annotations(&mut self) -> Result<(), ParseError> {
        let mut depth = 0usize;
        loop {
            match self.peek() {
                None => return self.error("unterminated annotation"),
                Some(Tok::Punct("(")) => depth += 1,
                Some(Tok::Punct(")")) if depth == 0 => return Ok(()),
                Some(Tok::Punct(")")) => depth -= 1,
                _ => {}
            }
            self.pos += 1;
        }
    }

    fn formula(&mut self) -> Result<Clause, ParseError> {
        if self.eat("(") {
            let c = self.formula()?;
            self.expect(")")?;
            return Ok(c);
        }
        let mut lits = Vec::new();
        loop {
            lits.extend(self.literal()?);
            if !self.eat("|") {
                break;
            }
        }
        if let Some(Tok::Punct(p @ ("&" | "=>" | "<=" | "<=>" | "<~>" | "~|" | "~&"))) = self.peek() {
            let p = *p;
            return self.unsupported(format!("connective `{p}` in a clause"));
        }
        Ok(Clause::new(lits))
    }

    /// None for `$false`, which contributes no literal.
    fn literal(&mut self) -> Result<Option<Literal>, ParseError> {
        let positive = !self.eat("~");
        if self.eat("(") {
            let inner = self.literal()?;
            self.expect(")")?;
            return match inner {
                Some(l) if !positive => Ok(Some(l.complement())),
                other if positive => Ok(other),
                None => self.unsupported("negated `$false`"),
                Some(_) => unreachable!("handled above"),
            };
        }
        let (line, column) = self.here();
        let head = self.next();
        let predicate = match head {
            Some(Tok::Dollar(w)) if w == "$false" => {
                return if positive { Ok(None) } else { self.unsupported("`~$false`") }
            }
            Some(Tok::Dollar(w)) if w == "$true" => return self.unsupported("`$true`"),
            Some(Tok::Lower(w) | Tok::Quoted(w)) => w,
            Some(Tok::Upper(w)) if !self.strict => w,
            Some(Tok::Upper(_)) => {
                if matches!(self.peek(), Some(Tok::Punct("=" | "!="))) {
                    return self.unsupported("equality");
                }
                return Err(ParseError::Syntax { line, column, message: "a variable cannot be a predicate".into() });
            }
            Some(Tok::Distinct(_) | Tok::Number(_)) => {
                return Err(ParseError::Unsupported { line, column, feature: "numbers and distinct objects".into() })
            }
            Some(t) => {
                return Err(ParseError::Syntax {
                    line,
                    column,
                    message: format!("expected a literal, found {}", t.describe()),
                })
            }
            None => return Err(ParseError::Syntax { line, column, message: "expected a literal".into() }),
        };
        let args = self.arguments()?;
        if matches!(self.peek(), Some(Tok::Punct("=" | "!="))) {
            return self.unsupported("equality");
        }
        Ok(Some(Literal::new(positive, &predicate, args)))
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = Vec::new();
        if self.eat("(") {
            loop {
                args.push(self.term()?);
                if !self.eat(",") {
                    break;
                }
            }
            self.expect(")")?;
        }
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let (line, column) = self.here();
        match self.next() {
            Some(Tok::Upper(v)) => Ok(Term::Var(sym(&v))),
            Some(Tok::Lower(f) | Tok::Quoted(f) | Tok::Dollar(f)) => {
                let args = self.arguments()?;
                Ok(Term::App(sym(&f), args))
            }
            Some(Tok::Distinct(_) | Tok::Number(_)) => {
                Err(ParseError::Unsupported { line, column, feature: "numbers and distinct objects".into() })
            }
            Some(t) => {
                Err(ParseError::Syntax { line, column, message: format!("expected a term, found {}", t.describe()) })
            }
            None => Err(ParseError::Syntax { line, column, message: "expected a term".into() }),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => self.error(format!("unexpected {}", t.describe())),
        }
    }
}

fn punct(p: &str) -> &'static str {
    PUNCT.iter().find(|q| **q == p).copied().expect("known punctuation")
}

pub fn parse_tptp_cnf(text: &str) -> Result<ProblemFile, ParseError> {
    let mut parser = Parser::new(text, true)?;
    let (clauses, annotations) = parser.file()?;
    Ok(ProblemFile {
        format: Format::TptpCnf,
        name: String::new(),
        clauses: ClauseSet::from_clauses(clauses)?,
        annotations,
        declared: None,
        warnings: Vec::new(),
    })
}

/// A term in the printed form `f(g(X),a)`.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, false)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// A literal in the printed form `~p(a,X)`. Predicates may start with either case.
pub fn parse_literal(text: &str) -> Result<Literal, ParseError> {
    let mut p = Parser::new(text, false)?;
    let l = p.literal()?;
    p.finish()?;
    l.ok_or_else(|| ParseError::Document("`$false` is not a literal".into()))
}

/// One `cnf` statement per clause, named after its id.
pub fn write_tptp_cnf(s: &ClauseSet) -> String {
    let mut out = String::new();
    for c in s {
        let _ = writeln!(out, "cnf(c{}, axiom, {c}).", c.id);
    }
    out
}
