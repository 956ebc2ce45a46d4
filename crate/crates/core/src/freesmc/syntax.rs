//! Terms of the free symmetric monoidal category and their concrete syntax.
//!
//! ```text
//! seq  := par (';' par)*
//! par  := atom ('*' atom)*
//! atom := NAME | 'id' '[' word ']' | 'sym' '[' word '|' word ']' | '(' seq ')'
//! word := NAME*
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Word = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Term {
    Id(Word),
    Gen(String),
    Seq(Box<Term>, Box<Term>),
    Par(Box<Term>, Box<Term>),
    Sym(Word, Word),
}

impl Term {
    pub fn seq(self, next: Term) -> Term {
        Term::Seq(Box::new(self), Box::new(next))
    }

    pub fn par(self, other: Term) -> Term {
        Term::Par(Box::new(self), Box::new(other))
    }

    pub fn id<S: AsRef<str>>(word: &[S]) -> Term {
        Term::Id(to_word(word))
    }

    pub fn sym<S: AsRef<str>, T: AsRef<str>>(w1: &[S], w2: &[T]) -> Term {
        Term::Sym(to_word(w1), to_word(w2))
    }

    pub fn generator(name: &str) -> Term {
        Term::Gen(name.to_string())
    }

    /// Generators in order of first occurrence.
    pub fn generators(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Gen(g) => {
                if !out.contains(&g.as_str()) {
                    out.push(g);
                }
            }
            Term::Seq(a, b) | Term::Par(a, b) => {
                a.collect_generators(out);
                b.collect_generators(out);
            }
            Term::Id(_) | Term::Sym(..) => {}
        }
    }
}

pub fn to_word<S: AsRef<str>>(word: &[S]) -> Word {
    word.iter().map(|s| s.as_ref().to_string()).collect()
}

fn write_word(f: &mut fmt::Formatter<'_>, w: &[String]) -> fmt::Result {
    write!(f, "{}", w.join(" "))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Id(w) => {
                write!(f, "id[")?;
                write_word(f, w)?;
                write!(f, "]")
            }
            Term::Gen(g) => write!(f, "{g}"),
            Term::Sym(a, b) => {
                write!(f, "sym[")?;
                write_word(f, a)?;
                write!(f, "|")?;
                write_word(f, b)?;
                write!(f, "]")
            }
            Term::Seq(a, b) => {
                write!(f, "{a} ; ")?;
                match **b {
                    Term::Seq(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
            Term::Par(a, b) => {
                match **a {
                    Term::Seq(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                write!(f, " * ")?;
                match **b {
                    Term::Seq(..) | Term::Par(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Name(String),
    Semi,
    Star,
    Open,
    Close,
    LBracket,
    RBracket,
    Bar,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

pub(crate) fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

pub(crate) fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Lexer> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        let simple = match c {
            ';' => Some(Tok::Semi),
            '*' => Some(Tok::Star),
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '|' => Some(Tok::Bar),
            _ => None,
        };
        if let Some(t) = simple {
            toks.push((t, line, col));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if is_name_start(c) {
            let start = i;
            while i < chars.len() && is_name_char(chars[i]) {
                i += 1;
            }
            toks.push((Tok::Name(chars[start..i].iter().collect()), line, col));
        } else {
            return Err(syntax(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end: (line, col0 + chars.len()),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |&(_, l, c)| (l, c))
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (l, c) = self.here();
        syntax(l, c, message)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn seq(&mut self) -> Result<Term> {
        let mut t = self.par()?;
        while self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
            t = t.seq(self.par()?);
        }
        Ok(t)
    }

    fn par(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            t = t.par(self.atom()?);
        }
        Ok(t)
    }

    fn word(&mut self) -> Word {
        let mut w = Vec::new();
        while let Some(Tok::Name(n)) = self.peek() {
            w.push(n.clone());
            self.pos += 1;
        }
        w
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek().cloned() {
            Some(Tok::Open) => {
                self.pos += 1;
                let t = self.seq()?;
                self.expect(Tok::Close, "`)`")?;
                Ok(t)
            }
            Some(Tok::Name(n)) if n == "id" && self.toks.get(self.pos + 1).map(|t| &t.0) == Some(&Tok::LBracket) => {
                self.pos += 2;
                let w = self.word();
                self.expect(Tok::RBracket, "`]` closing id")?;
                Ok(Term::Id(w))
            }
            Some(Tok::Name(n)) if n == "sym" && self.toks.get(self.pos + 1).map(|t| &t.0) == Some(&Tok::LBracket) => {
                self.pos += 2;
                let a = self.word();
                self.expect(Tok::Bar, "`|` in sym")?;
                let b = self.word();
                self.expect(Tok::RBracket, "`]` closing sym")?;
                Ok(Term::Sym(a, b))
            }
            Some(Tok::Name(n)) => {
                self.pos += 1;
                Ok(Term::Gen(n))
            }
            Some(_) => Err(self.error("expected a term")),
            None => Err(self.error("unexpected end of term")),
        }
    }
}

/// Parses a term. Errors report 1-based line and column.
pub fn parse_term(text: &str) -> Result<Term> {
    parse_term_at(text, 1, 1)
}

pub(crate) fn parse_term_at(text: &str, line: usize, column: usize) -> Result<Term> {
    let mut lx = lex(text, line, column)?;
    let t = lx.seq()?;
    if lx.pos != lx.toks.len() {
        return Err(lx.error("trailing input after term"));
    }
    Ok(t)
}

/// Parses a bracketed word `[a b c]`.
pub(crate) fn parse_word_at(text: &str, line: usize, column: usize) -> Result<(Word, usize)> {
    let mut lx = lex(text, line, column)?;
    lx.expect(Tok::LBracket, "`[`")?;
    let w = lx.word();
    lx.expect(Tok::RBracket, "`]`")?;
    Ok((w, lx.pos))
}
