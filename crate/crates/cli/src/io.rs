use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use extlearn::equivalence::{Closure, Refutation, Witness};
use extlearn::finbase::{FinFun, FinRel};
use extlearn::intensional::{to_coend, to_int, IntLearner};
use extlearn::learner::Learner;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

/// What a command produced: a JSON value, its human rendering and whether
/// the question it asked was settled.
pub struct Report {
    pub value: Value,
    pub text: String,
    pub undecided: bool,
}

impl Report {
    pub fn new(value: impl Serialize, text: impl Into<String>) -> Result<Self> {
        Ok(Report {
            value: serde_json::to_value(value)?,
            text: text.into(),
            undecided: false,
        })
    }

    /// A report whose text form is the pretty-printed JSON itself.
    pub fn data(value: impl Serialize) -> Result<Self> {
        let value = serde_json::to_value(value)?;
        let text = serde_json::to_string_pretty(&value)?;
        Ok(Report {
            value,
            text,
            undecided: false,
        })
    }

    pub fn undecided(mut self, undecided: bool) -> Self {
        self.undecided = undecided;
        self
    }
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("{}: malformed input", path.display()))
}

/// A learner file holds either a coend representative (`P`, `Q`, `l`, `r`)
/// or an intensional learner (`P`, `I`, `U`, `r`).
pub enum AnyLearner {
    Coend(Learner),
    Int(IntLearner),
}

impl AnyLearner {
    pub fn load(path: &Path) -> Result<Self> {
        let value: Value = serde_json::from_str(&read(path)?)
            .with_context(|| format!("{}: malformed JSON", path.display()))?;
        let is_int = value.get("I").is_some();
        let parsed = if is_int {
            serde_json::from_value(value).map(AnyLearner::Int)
        } else {
            serde_json::from_value(value).map(AnyLearner::Coend)
        };
        parsed.with_context(|| format!("{}: not a learner", path.display()))
    }

    pub fn into_int(self) -> IntLearner {
        match self {
            AnyLearner::Coend(m) => to_int(&m),
            AnyLearner::Int(m) => m,
        }
    }

    pub fn into_coend(self) -> Learner {
        match self {
            AnyLearner::Coend(m) => m,
            AnyLearner::Int(m) => to_coend(&m),
        }
    }
}

pub fn coend(path: &Path) -> Result<Learner> {
    Ok(AnyLearner::load(path)?.into_coend())
}

pub fn int(path: &Path) -> Result<IntLearner> {
    Ok(AnyLearner::load(path)?.into_int())
}

pub fn fun_table(name: &str, f: &FinFun) -> String {
    let mut out = format!("{name} : {} -> {}\n", f.dom(), f.cod());
    for (i, &j) in f.table().iter().enumerate() {
        let _ = writeln!(out, "  {} -> {}", f.dom().label(i), f.cod().label(j));
    }
    out
}

pub fn witness_tables(w: &Witness) -> String {
    match w {
        Witness::Bijection { f } | Witness::OuterSquare { f } | Witness::Surjective { f } => fun_table("f", f),
        Witness::DiagonalFiller { f, uhat } => fun_table("f", f) + &fun_table("uhat", uhat),
        Witness::CoendSlide { u, v } => fun_table("u", u) + &fun_table("v", v),
    }
}

pub fn relation_pairs(r: &FinRel) -> String {
    let mut out = format!("{} -> {}\n", r.dom(), r.cod());
    for (x, y) in r.labelled_pairs() {
        let _ = writeln!(out, "  {x} ~ {y}");
    }
    out
}

pub fn closure_text(c: &Closure, bound: usize) -> String {
    match c {
        Closure::Yes { chain } => format!("yes, zig-zag of {} steps", chain.len()),
        Closure::NoWithinBound { refutation } => match refutation {
            Refutation::StableBehaviour => "no (stable behaviour differs)".into(),
            Refutation::FixedPoints => "no (fixed-point counts differ)".into(),
            Refutation::Exhausted { explored } => {
                format!("no zig-zag through parameter sets of size <= {bound} ({explored} classes explored)")
            }
        },
        Closure::Unknown { explored } => format!("undecided: budget spent after {explored} learners"),
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
