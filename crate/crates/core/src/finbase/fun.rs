use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::set::FinSet;
use crate::error::{mismatch, Error, Result};

/// A total function between finite sets, stored as an index table.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFinFun", into = "RawFinFun")]
pub struct FinFun {
    dom: FinSet,
    cod: FinSet,
    map: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawFinFun {
    dom: FinSet,
    cod: FinSet,
    map: BTreeMap<String, String>,
}

impl TryFrom<RawFinFun> for FinFun {
    type Error = Error;

    fn try_from(raw: RawFinFun) -> Result<Self> {
        let mut table = vec![usize::MAX; raw.dom.len()];
        for (x, y) in &raw.map {
            let i = raw.dom.require(x)?;
            table[i] = raw.cod.require(y)?;
        }
        if let Some(i) = table.iter().position(|&j| j == usize::MAX) {
            return Err(Error::NotTotal(raw.dom.label(i).to_string()));
        }
        FinFun::new(raw.dom, raw.cod, table)
    }
}

impl From<FinFun> for RawFinFun {
    fn from(f: FinFun) -> Self {
        let map = (0..f.dom.len())
            .map(|i| (f.dom.label(i).to_string(), f.cod.label(f.map[i]).to_string()))
            .collect();
        RawFinFun {
            dom: f.dom,
            cod: f.cod,
            map,
        }
    }
}

/// Index of `(x, y)` in `X × Y` given `|Y|`.
#[inline]
pub fn pair_index(y_len: usize, x: usize, y: usize) -> usize {
    x * y_len + y
}

/// Inverse of [`pair_index`].
#[inline]
pub fn split_index(y_len: usize, i: usize) -> (usize, usize) {
    (i / y_len, i % y_len)
}

impl FinFun {
    pub fn new(dom: FinSet, cod: FinSet, map: Vec<usize>) -> Result<Self> {
        if map.len() != dom.len() {
            return Err(mismatch("function table", dom.len(), map.len()));
        }
        if let Some(bad) = map.iter().position(|&j| j >= cod.len()) {
            return Err(Error::UnknownElement {
                element: format!("#{} (image of {})", map[bad], dom.label(bad)),
                set: cod.to_string(),
            });
        }
        Ok(FinFun { dom, cod, map })
    }

    /// Builds a function from an index-level closure. The closure must land in `cod`.
    pub fn from_fn(dom: &FinSet, cod: &FinSet, f: impl Fn(usize) -> usize) -> Self {
        let map: Vec<usize> = (0..dom.len()).map(f).collect();
        debug_assert!(map.iter().all(|&j| j < cod.len()));
        FinFun {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        }
    }

    pub fn from_labels<'a>(
        dom: &FinSet,
        cod: &FinSet,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let raw = RawFinFun {
            dom: dom.clone(),
            cod: cod.clone(),
            map: pairs
                .into_iter()
                .map(|(x, y)| (x.to_string(), y.to_string()))
                .collect(),
        };
        FinFun::try_from(raw)
    }

    pub fn identity(x: &FinSet) -> Self {
        FinFun::from_fn(x, x, |i| i)
    }

    pub fn constant(dom: &FinSet, cod: &FinSet, value: usize) -> Self {
        FinFun::from_fn(dom, cod, |_| value)
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn apply_label(&self, x: &str) -> Result<&str> {
        let i = self.dom.require(x)?;
        Ok(self.cod.label(self.map[i]))
    }

    /// `g ∘ self`, i.e. first `self` then `g`.
    pub fn then(&self, g: &FinFun) -> Result<FinFun> {
        compose_fun(self, g)
    }

    /// `self × g : X × Y → X' × Y'`.
    pub fn times(&self, g: &FinFun) -> FinFun {
        let dom = self.dom.product(&g.dom);
        let cod = self.cod.product(&g.cod);
        let (gd, gc) = (g.dom.len(), g.cod.len());
        FinFun::from_fn(&dom, &cod, |i| {
            let (x, y) = split_index(gd, i);
            pair_index(gc, self.map[x], g.map[y])
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.map.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for &j in &self.map {
            seen[j] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijection(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinFun> {
        if !self.is_bijection() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        Some(FinFun {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            map: inv,
        })
    }
}

/// `g ∘ f`; requires `cod(f) = dom(g)`.
pub fn compose_fun(f: &FinFun, g: &FinFun) -> Result<FinFun> {
    if f.cod != g.dom {
        return Err(mismatch("compose_fun", &g.dom, &f.cod));
    }
    Ok(FinFun {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        map: f.map.iter().map(|&j| g.map[j]).collect(),
    })
}

pub fn id_fun(x: &FinSet) -> FinFun {
    FinFun::identity(x)
}

/// `s_{X,Y} : X × Y → Y × X`.
pub fn symmetry(x: &FinSet, y: &FinSet) -> FinFun {
    let (xl, yl) = (x.len(), y.len());
    FinFun::from_fn(&x.product(y), &y.product(x), |i| {
        let (a, b) = split_index(yl, i);
        pair_index(xl, b, a)
    })
}

/// `λ_X : I × X → X`.
pub fn left_unitor(x: &FinSet) -> FinFun {
    FinFun::from_fn(&FinSet::unit().product(x), x, |i| i)
}

/// `ρ_X : X × I → X`.
pub fn right_unitor(x: &FinSet) -> FinFun {
    FinFun::from_fn(&x.product(&FinSet::unit()), x, |i| i)
}

pub fn left_unitor_inv(x: &FinSet) -> FinFun {
    FinFun::from_fn(x, &FinSet::unit().product(x), |i| i)
}

pub fn right_unitor_inv(x: &FinSet) -> FinFun {
    FinFun::from_fn(x, &x.product(&FinSet::unit()), |i| i)
}

/// `α_{X,Y,Z} : (X × Y) × Z → X × (Y × Z)`.
///
/// With first-factor-major indexing both sides enumerate triples in the same
/// order, so the table is the identity on indices; only the labels differ.
pub fn associator(x: &FinSet, y: &FinSet, z: &FinSet) -> FinFun {
    FinFun::from_fn(&x.product(y).product(z), &x.product(&y.product(z)), |i| i)
}

pub fn associator_inv(x: &FinSet, y: &FinSet, z: &FinSet) -> FinFun {
    FinFun::from_fn(&x.product(&y.product(z)), &x.product(y).product(z), |i| i)
}

impl fmt::Debug for FinFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinFun {} -> {} [", self.dom, self.cod)?;
        for (i, &j) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}↦{}", self.dom.label(i), self.cod.label(j))?;
        }
        write!(f, "]")
    }
}
