//! Strict monoidal evaluation of terms in `FinSet`.
//!
//! A word `x₁ … xₙ` is sent to the flat product of the chosen sets, with
//! labels `(e₁,…,eₙ)` in first-factor-major order. The empty word is the unit
//! and a one-letter word is the set itself, so evaluation is strict.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::signature::{concat, Signature};
use super::syntax::Term;
use crate::error::{Error, Result};
use crate::finbase::{FinFun, FinSet};

/// Sets for object generators and functions for morphism generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interpretation {
    pub objects: BTreeMap<String, FinSet>,
    pub generators: BTreeMap<String, FinFun>,
}

/// JSON-friendly form: element labels per object, image tables per generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpretationSpec {
    pub objects: BTreeMap<String, Vec<String>>,
    pub generators: BTreeMap<String, Vec<usize>>,
}

fn decode(sizes: &[usize], mut i: usize) -> Vec<usize> {
    let mut xs = vec![0; sizes.len()];
    for k in (0..sizes.len()).rev() {
        xs[k] = i % sizes[k];
        i /= sizes[k];
    }
    xs
}

fn encode(sizes: &[usize], xs: &[usize]) -> usize {
    xs.iter().zip(sizes).fold(0, |acc, (&x, &n)| acc * n + x)
}

impl Interpretation {
    pub fn from_spec(sig: &Signature, spec: &InterpretationSpec) -> Result<Self> {
        let mut interp = Interpretation::default();
        for (o, labels) in &spec.objects {
            interp
                .objects
                .insert(o.clone(), FinSet::new(labels.iter().cloned())?);
        }
        for (g, table) in &spec.generators {
            let decl = sig.generator(g)?;
            let dom = interp.word_set(&decl.dom)?;
            let cod = interp.word_set(&decl.cod)?;
            interp
                .generators
                .insert(g.clone(), FinFun::new(dom, cod, table.clone())?);
        }
        interp.validate(sig)?;
        Ok(interp)
    }

    pub fn to_spec(&self) -> InterpretationSpec {
        InterpretationSpec {
            objects: self
                .objects
                .iter()
                .map(|(o, s)| (o.clone(), s.elements().to_vec()))
                .collect(),
            generators: self
                .generators
                .iter()
                .map(|(g, f)| (g.clone(), f.table().to_vec()))
                .collect(),
        }
    }

    fn object(&self, o: &str) -> Result<&FinSet> {
        self.objects
            .get(o)
            .ok_or_else(|| Error::MissingInterpretation(o.to_string()))
    }

    fn sizes(&self, w: &[String]) -> Result<Vec<usize>> {
        w.iter().map(|o| Ok(self.object(o)?.len())).collect()
    }

    /// The set assigned to a word.
    pub fn word_set(&self, w: &[String]) -> Result<FinSet> {
        match w {
            [] => Ok(FinSet::unit()),
            [o] => Ok(self.object(o)?.clone()),
            _ => {
                let sets: Vec<&FinSet> = w.iter().map(|o| self.object(o)).collect::<Result<_>>()?;
                let sizes: Vec<usize> = sets.iter().map(|s| s.len()).collect();
                let total: usize = sizes.iter().product();
                let labels = (0..total).map(|i| {
                    let parts: Vec<&str> = decode(&sizes, i)
                        .iter()
                        .zip(&sets)
                        .map(|(&x, s)| s.label(x))
                        .collect();
                    format!("({})", parts.join(","))
                });
                FinSet::new(labels)
            }
        }
    }

    /// Every signature symbol is interpreted, with the declared types.
    pub fn validate(&self, sig: &Signature) -> Result<()> {
        for o in sig.objects() {
            self.object(o)?;
        }
        for g in sig.generators() {
            let f = self
                .generators
                .get(&g.name)
                .ok_or_else(|| Error::MissingInterpretation(g.name.clone()))?;
            let dom = self.word_set(&g.dom)?;
            let cod = self.word_set(&g.cod)?;
            if f.dom() != &dom || f.cod() != &cod {
                return Err(Error::Invalid(format!(
                    "generator `{}` is interpreted as {} -> {}, expected {} -> {}",
                    g.name,
                    f.dom(),
                    f.cod(),
                    dom,
                    cod
                )));
            }
        }
        Ok(())
    }

    /// The function denoted by `t`.
    pub fn eval(&self, t: &Term, sig: &Signature) -> Result<FinFun> {
        let (dom, cod) = sig.typecheck(t)?;
        let table = self.table(t, sig)?;
        FinFun::new(self.word_set(&dom)?, self.word_set(&cod)?, table)
    }

    fn table(&self, t: &Term, sig: &Signature) -> Result<Vec<usize>> {
        Ok(match t {
            Term::Id(w) => (0..self.sizes(w)?.iter().product()).collect(),
            Term::Gen(g) => self
                .generators
                .get(g)
                .ok_or_else(|| Error::MissingInterpretation(g.clone()))?
                .table()
                .to_vec(),
            Term::Sym(a, b) => {
                let sizes = self.sizes(&concat(a, b))?;
                let out_sizes = self.sizes(&concat(b, a))?;
                let k = a.len();
                (0..sizes.iter().product())
                    .map(|i| {
                        let xs = decode(&sizes, i);
                        let swapped: Vec<usize> = xs[k..].iter().chain(&xs[..k]).copied().collect();
                        encode(&out_sizes, &swapped)
                    })
                    .collect()
            }
            Term::Seq(s, t) => {
                let f = self.table(s, sig)?;
                let g = self.table(t, sig)?;
                f.iter().map(|&y| g[y]).collect()
            }
            Term::Par(s, t) => {
                let (d2, c2) = sig.typecheck(t)?;
                let f = self.table(s, sig)?;
                let g = self.table(t, sig)?;
                let n2: usize = self.sizes(&d2)?.iter().product();
                let m2: usize = self.sizes(&c2)?.iter().product();
                let n1 = f.len();
                (0..n1 * n2).map(|i| f[i / n2] * m2 + g[i % n2]).collect()
            }
        })
    }
}

/// Uniformly random sets of size `1..=max_size` and random functions.
pub fn random_interpretation<R: Rng>(sig: &Signature, rng: &mut R, max_size: usize) -> Interpretation {
    let mut interp = Interpretation::default();
    for o in sig.objects() {
        let n = rng.gen_range(1..=max_size.max(1));
        interp
            .objects
            .insert(o.clone(), FinSet::new((0..n).map(|i| format!("{o}{i}"))).expect("distinct"));
    }
    for g in sig.generators() {
        let dom = interp.word_set(&g.dom).expect("objects interpreted");
        let cod = interp.word_set(&g.cod).expect("objects interpreted");
        let table = (0..dom.len()).map(|_| rng.gen_range(0..cod.len())).collect();
        interp
            .generators
            .insert(g.name.clone(), FinFun::new(dom, cod, table).expect("table in range"));
    }
    interp
}
