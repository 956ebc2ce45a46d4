//! Text documents declaring a signature, named terms and formal learners.
//!
//! ```text
//! # comment
//! obj a b
//! gen f : a -> b
//! gen unit : -> a
//! term t = f ; id[b]
//! learner m
//!   boundary [a] [] -> [b] []
//!   params [] []
//!   l = f
//!   r = id[]
//! end
//! ```

use super::formal::FormalLearner;
use super::signature::Signature;
use super::syntax::{is_name_char, is_name_start, parse_term_at, parse_word_at, Term, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub signature: Signature,
    pub terms: Vec<(String, Term)>,
    pub learners: Vec<(String, FormalLearner)>,
}

impl Document {
    pub fn term(&self, name: &str) -> Result<&Term> {
        self.terms
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
            .ok_or_else(|| Error::Invalid(format!("no term named `{name}`")))
    }

    pub fn learner(&self, name: &str) -> Result<&FormalLearner> {
        self.learners
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, l)| l)
            .ok_or_else(|| Error::Invalid(format!("no learner named `{name}`")))
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// A line with its number and the column of its first character.
struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn col(&self, rest: &str) -> usize {
        self.text[..self.text.len() - rest.len()].chars().count() + 1
    }

    /// Splits off a leading name, skipping whitespace.
    fn name(&self, rest: &'a str) -> Result<(&'a str, &'a str)> {
        let rest = rest.trim_start();
        let end = rest
            .char_indices()
            .find(|&(i, c)| if i == 0 { !is_name_start(c) } else { !is_name_char(c) })
            .map_or(rest.len(), |(i, _)| i);
        if end == 0 {
            return Err(err(self.no, self.col(rest), "expected a name"));
        }
        Ok((&rest[..end], &rest[end..]))
    }

    fn keyword(&self, rest: &'a str, kw: &str) -> Result<&'a str> {
        let trimmed = rest.trim_start();
        trimmed
            .strip_prefix(kw)
            .ok_or_else(|| err(self.no, self.col(trimmed), format!("expected `{kw}`")))
    }

    fn word(&self, rest: &'a str) -> Result<(Word, &'a str)> {
        let trimmed = rest.trim_start();
        let close = trimmed
            .find(']')
            .ok_or_else(|| err(self.no, self.col(trimmed), "expected `[...]`"))?;
        let (w, _) = parse_word_at(&trimmed[..=close], self.no, self.col(trimmed))?;
        Ok((w, &trimmed[close + 1..]))
    }

    fn end(&self, rest: &str) -> Result<()> {
        let trimmed = rest.trim_start();
        if trimmed.is_empty() {
            Ok(())
        } else {
            Err(err(self.no, self.col(trimmed), "unexpected trailing input"))
        }
    }

    fn term(&self, rest: &str) -> Result<Term> {
        parse_term_at(rest, self.no, self.col(rest))
    }
}

fn strip_comment(s: &str) -> &str {
    s.find('#').map_or(s, |i| &s[..i])
}

#[derive(Default)]
struct PendingLearner {
    name: String,
    start: usize,
    boundary: Option<(Word, Word, Word, Word)>,
    params: Option<(Word, Word)>,
    l: Option<Term>,
    r: Option<Term>,
}

/// Parses a document and typechecks every term and learner in it.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut doc = Document::default();
    let mut pending: Option<PendingLearner> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = Line {
            no: i + 1,
            text: strip_comment(raw),
        };
        if line.text.trim().is_empty() {
            continue;
        }
        let (kw, rest) = line.name(line.text)?;
        if let Some(pl) = pending.as_mut() {
            match kw {
                "boundary" => {
                    let (a, rest) = line.word(rest)?;
                    let (a_, rest) = line.word(rest)?;
                    let rest = line.keyword(rest, "->")?;
                    let (b, rest) = line.word(rest)?;
                    let (b_, rest) = line.word(rest)?;
                    line.end(rest)?;
                    pl.boundary = Some((a, a_, b, b_));
                }
                "params" => {
                    let (p, rest) = line.word(rest)?;
                    let (q, rest) = line.word(rest)?;
                    line.end(rest)?;
                    pl.params = Some((p, q));
                }
                "l" | "r" => {
                    let rest = line.keyword(rest, "=")?;
                    let t = line.term(rest)?;
                    if kw == "l" {
                        pl.l = Some(t);
                    } else {
                        pl.r = Some(t);
                    }
                }
                "end" => {
                    line.end(rest)?;
                    let pl = pending.take().expect("pending learner");
                    let missing = |what: &str| {
                        err(pl.start, 1, format!("learner `{}` has no {what}", pl.name))
                    };
                    let (a, a_prime, b, b_prime) = pl.boundary.clone().ok_or_else(|| missing("boundary"))?;
                    let (p, q) = pl.params.clone().ok_or_else(|| missing("params"))?;
                    let fl = FormalLearner {
                        a,
                        a_prime,
                        b,
                        b_prime,
                        p,
                        q,
                        l: pl.l.clone().ok_or_else(|| missing("l"))?,
                        r: pl.r.clone().ok_or_else(|| missing("r"))?,
                    };
                    fl.typecheck(&doc.signature)?;
                    doc.learners.push((pl.name, fl));
                }
                other => {
                    return Err(err(line.no, line.col(line.text.trim_start()), format!("unexpected `{other}` inside learner")))
                }
            }
            continue;
        }
        match kw {
            "obj" => {
                let mut rest = rest;
                while !rest.trim().is_empty() {
                    let (name, r) = line.name(rest)?;
                    doc.signature.add_object(name)?;
                    rest = r;
                }
            }
            "gen" => {
                let (name, rest) = line.name(rest)?;
                let rest = line.keyword(rest, ":")?;
                let arrow = rest
                    .find("->")
                    .ok_or_else(|| err(line.no, line.col(rest), "expected `->`"))?;
                let words = |s: &str| -> Word { s.split_whitespace().map(str::to_string).collect() };
                doc.signature
                    .add_generator(name, words(&rest[..arrow]), words(&rest[arrow + 2..]))?;
            }
            "term" => {
                let (name, rest) = line.name(rest)?;
                let rest = line.keyword(rest, "=")?;
                let t = line.term(rest)?;
                doc.signature.typecheck(&t)?;
                doc.terms.push((name.to_string(), t));
            }
            "learner" => {
                let (name, rest) = line.name(rest)?;
                line.end(rest)?;
                pending = Some(PendingLearner {
                    name: name.to_string(),
                    start: line.no,
                    ..Default::default()
                });
            }
            other => {
                return Err(err(line.no, line.col(line.text.trim_start()), format!("unknown declaration `{other}`")))
            }
        }
    }
    if let Some(pl) = pending {
        return Err(err(pl.start, 1, format!("learner `{}` is missing `end`", pl.name)));
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = "\
# a small document
obj a b
gen f : a -> b
gen e : -> a   # a state
term t = e ; f
learner m
  boundary [a] [] -> [b] []
  params [] []
  l = f
  r = id[]
end
";

    #[test]
    fn parses_all_declarations() {
        let doc = parse_document(DOC).unwrap();
        assert_eq!(doc.signature.objects(), ["a", "b"]);
        assert_eq!(doc.signature.generator("e").unwrap().dom, Vec::<String>::new());
        assert_eq!(doc.term("t").unwrap().to_string(), "e ; f");
        assert_eq!(doc.learner("m").unwrap().l, Term::generator("f"));
    }

    #[test]
    fn errors_point_into_the_file() {
        let bad = DOC.replace("term t = e ; f", "term t = e ; ; f");
        match parse_document(&bad) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (5, 14)),
            other => panic!("{other:?}"),
        }
        let bad = DOC.replace("  l = f", "  l = id[a]");
        assert!(matches!(parse_document(&bad), Err(Error::BoundaryMismatch { .. })));
        let bad = DOC.replace("end\n", "");
        assert!(matches!(parse_document(&bad), Err(Error::Syntax { line: 6, .. })));
    }
}
