use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::fun::{pair_index, FinFun};
use super::set::FinSet;
use crate::error::{mismatch, Error, Result};

/// A relation between finite sets. Pairs are kept as index pairs, which sorts
/// them in canonical element order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFinRel", into = "RawFinRel")]
pub struct FinRel {
    dom: FinSet,
    cod: FinSet,
    pairs: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawFinRel {
    dom: FinSet,
    cod: FinSet,
    pairs: Vec<(String, String)>,
}

impl TryFrom<RawFinRel> for FinRel {
    type Error = Error;

    fn try_from(raw: RawFinRel) -> Result<Self> {
        let pairs = raw
            .pairs
            .iter()
            .map(|(x, y)| Ok((raw.dom.require(x)?, raw.cod.require(y)?)))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(FinRel {
            dom: raw.dom,
            cod: raw.cod,
            pairs,
        })
    }
}

impl From<FinRel> for RawFinRel {
    fn from(r: FinRel) -> Self {
        let pairs = r.labelled_pairs();
        RawFinRel {
            dom: r.dom,
            cod: r.cod,
            pairs,
        }
    }
}

impl FinRel {
    pub fn new(
        dom: FinSet,
        cod: FinSet,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        if let Some(&(x, y)) = pairs.iter().find(|(x, y)| *x >= dom.len() || *y >= cod.len()) {
            return Err(Error::Invalid(format!(
                "pair ({x},{y}) outside {dom} × {cod}"
            )));
        }
        Ok(FinRel { dom, cod, pairs })
    }

    pub(crate) fn from_set(dom: FinSet, cod: FinSet, pairs: BTreeSet<(usize, usize)>) -> Self {
        FinRel { dom, cod, pairs }
    }

    pub fn empty(dom: &FinSet, cod: &FinSet) -> Self {
        FinRel::from_set(dom.clone(), cod.clone(), BTreeSet::new())
    }

    pub fn identity(x: &FinSet) -> Self {
        FinRel::from_set(x.clone(), x.clone(), (0..x.len()).map(|i| (i, i)).collect())
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs as labels, in canonical (domain-major) order.
    pub fn labelled_pairs(&self) -> Vec<(String, String)> {
        self.pairs
            .iter()
            .map(|&(x, y)| (self.dom.label(x).to_string(), self.cod.label(y).to_string()))
            .collect()
    }

    pub fn is_subset(&self, other: &FinRel) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.pairs.is_subset(&other.pairs)
    }

    /// Conjugates by bijections: `{(f x, g y) : (x, y) ∈ self}`.
    pub fn relabel(&self, on_dom: &FinFun, on_cod: &FinFun) -> Result<FinRel> {
        if on_dom.dom() != &self.dom {
            return Err(mismatch("relabel domain", &self.dom, on_dom.dom()));
        }
        if on_cod.dom() != &self.cod {
            return Err(mismatch("relabel codomain", &self.cod, on_cod.dom()));
        }
        Ok(FinRel::from_set(
            on_dom.cod().clone(),
            on_cod.cod().clone(),
            self.pairs
                .iter()
                .map(|&(x, y)| (on_dom.apply(x), on_cod.apply(y)))
                .collect(),
        ))
    }
}

/// The graph functor `FinSet → FinRel`.
pub fn graph_rel(f: &FinFun) -> FinRel {
    FinRel::from_set(
        f.dom().clone(),
        f.cod().clone(),
        f.table().iter().copied().enumerate().collect(),
    )
}

/// `R ; S` (first `R`, then `S`).
pub fn rel_compose(r: &FinRel, s: &FinRel) -> Result<FinRel> {
    if r.cod != s.dom {
        return Err(mismatch("rel_compose", &s.dom, &r.cod));
    }
    let mut out_of = vec![Vec::new(); s.dom.len()];
    for &(y, z) in &s.pairs {
        out_of[y].push(z);
    }
    let pairs = r
        .pairs
        .iter()
        .flat_map(|&(x, y)| out_of[y].iter().map(move |&z| (x, z)))
        .collect();
    Ok(FinRel::from_set(r.dom.clone(), s.cod.clone(), pairs))
}

pub fn rel_tensor(r: &FinRel, s: &FinRel) -> FinRel {
    let (sd, sc) = (s.dom.len(), s.cod.len());
    let pairs = r
        .pairs
        .iter()
        .flat_map(|&(x, y)| {
            s.pairs
                .iter()
                .map(move |&(u, v)| (pair_index(sd, x, u), pair_index(sc, y, v)))
        })
        .collect();
    FinRel::from_set(r.dom.product(&s.dom), r.cod.product(&s.cod), pairs)
}

pub fn rel_converse(r: &FinRel) -> FinRel {
    FinRel::from_set(
        r.cod.clone(),
        r.dom.clone(),
        r.pairs.iter().map(|&(x, y)| (y, x)).collect(),
    )
}

/// Diagonal `I → X × X`.
pub fn rel_cup(x: &FinSet) -> FinRel {
    let n = x.len();
    FinRel::from_set(
        FinSet::unit(),
        x.product(x),
        (0..n).map(|i| (0, pair_index(n, i, i))).collect(),
    )
}

/// Diagonal `X × X → I`.
pub fn rel_cap(x: &FinSet) -> FinRel {
    rel_converse(&rel_cup(x))
}

impl fmt::Debug for FinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinRel {} -> {} ", self.dom, self.cod)?;
        f.debug_set()
            .entries(
                self.pairs
                    .iter()
                    .map(|&(x, y)| format!("{}~{}", self.dom.label(x), self.cod.label(y))),
            )
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finbase::fun::{left_unitor, left_unitor_inv, right_unitor, right_unitor_inv};
    use crate::finbase::{associator, associator_inv, compose_fun, id_fun};

    fn rel_id(x: &FinSet) -> FinRel {
        FinRel::identity(x)
    }

    /// `X ≅ X×I → X×(X×X) ≅ (X×X)×X → I×X ≅ X`.
    fn snake(x: &FinSet) -> FinRel {
        let steps = [
            graph_rel(&right_unitor_inv(x)),
            rel_tensor(&rel_id(x), &rel_cup(x)),
            graph_rel(&associator_inv(x, x, x)),
            rel_tensor(&rel_cap(x), &rel_id(x)),
            graph_rel(&left_unitor(x)),
        ];
        steps
            .iter()
            .skip(1)
            .try_fold(steps[0].clone(), |acc, s| rel_compose(&acc, s))
            .unwrap()
    }

    /// `X ≅ I×X → (X×X)×X ≅ X×(X×X) → X×I ≅ X`.
    fn snake_other(x: &FinSet) -> FinRel {
        let steps = [
            graph_rel(&left_unitor_inv(x)),
            rel_tensor(&rel_cup(x), &rel_id(x)),
            graph_rel(&associator(x, x, x)),
            rel_tensor(&rel_id(x), &rel_cap(x)),
            graph_rel(&right_unitor(x)),
        ];
        steps
            .iter()
            .skip(1)
            .try_fold(steps[0].clone(), |acc, s| rel_compose(&acc, s))
            .unwrap()
    }

    #[test]
    fn snake_identities_exhaustive_up_to_six() {
        for n in 0..=6 {
            let x = FinSet::range(n);
            assert_eq!(snake(&x), rel_id(&x), "n = {n}");
            assert_eq!(snake_other(&x), rel_id(&x), "n = {n}");
        }
    }

    #[test]
    fn cup_is_diagonal() {
        let c = rel_cup(&FinSet::range(2));
        assert_eq!(
            c.labelled_pairs(),
            vec![
                ("*".to_string(), "(0,0)".to_string()),
                ("*".to_string(), "(1,1)".to_string())
            ]
        );
    }

    #[test]
    fn graph_is_functorial() {
        let x = FinSet::range(3);
        let y = FinSet::range(2);
        let f = FinFun::from_fn(&x, &y, |i| i % 2);
        let g = FinFun::from_fn(&y, &x, |i| 2 - i);
        assert_eq!(graph_rel(&id_fun(&x)), rel_id(&x));
        assert_eq!(
            graph_rel(&compose_fun(&f, &g).unwrap()),
            rel_compose(&graph_rel(&f), &graph_rel(&g)).unwrap()
        );
        let c = FinFun::constant(&x, &y, 1);
        assert_eq!(
            graph_rel(&c).pairs().iter().copied().collect::<Vec<_>>(),
            vec![(0, 1), (1, 1), (2, 1)]
        );
    }

    #[test]
    fn graph_is_strict_monoidal() {
        let x = FinSet::range(2);
        let y = FinSet::named("y", 3);
        let f = FinFun::from_fn(&x, &y, |i| i + 1);
        let g = FinFun::from_fn(&y, &x, |i| i % 2);
        assert_eq!(
            graph_rel(&f.times(&g)),
            rel_tensor(&graph_rel(&f), &graph_rel(&g))
        );
    }

    #[test]
    fn converse_of_injective_graph_contains_identity() {
        let x = FinSet::range(2);
        let y = FinSet::range(3);
        let f = FinFun::from_fn(&x, &y, |i| 2 * i);
        let back = rel_compose(&graph_rel(&f), &rel_converse(&graph_rel(&f))).unwrap();
        assert!(rel_id(&x).is_subset(&back));
    }

    #[test]
    fn json_pairs_sorted() {
        let x = FinSet::range(2);
        let r = FinRel::new(x.clone(), x.clone(), [(1, 0), (0, 1), (0, 0)]).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.ends_with(r#""pairs":[["0","0"],["0","1"],["1","0"]]}"#));
        assert_eq!(serde_json::from_str::<FinRel>(&text).unwrap(), r);
    }

    #[test]
    fn compose_checks_boundaries() {
        let r = rel_id(&FinSet::range(2));
        let s = rel_id(&FinSet::range(3));
        assert!(rel_compose(&r, &s).is_err());
    }
}
