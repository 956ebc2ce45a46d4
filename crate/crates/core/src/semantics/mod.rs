//! The compact closed semantics `F̂` of learners.
//!
//! A learner `(l, r) : (A, A') ⇸ (B, B')` is sent to the morphism
//! `A' ⊗ A → B' ⊗ B` obtained by bending the parameter wire with a cup on `P`
//! and a cap on `P`, and the backward inputs with a cup on `B'` and a cap on
//! `A'`. In `FinRel` this is
//!
//! ```text
//! (a', a) ~ (b', b)  ⟺  ∃ p, q.  l(p, a) = (q, b)  ∧  r(q, b') = (p, a')
//! ```
//!
//! Any model in which every object is self-dual can be used; the image only
//! depends on the learner up to extensional equivalence, and snake composites
//! become identities.

mod model;

pub use model::{snakes_hold, CompactClosedModel, CountingModel, NatMatrix, RelModel};

use serde::{Deserialize, Serialize};

use crate::error::{mismatch, Result};
use crate::finbase::{pair_index, FinFun, FinRel, FinSet};
use crate::learner::{Learner, Object};

/// `F̂(A, A') = A' × A`.
pub fn fhat_object(obj: &Object) -> FinSet {
    obj.bwd.product(&obj.fwd)
}

/// The image of `m` in `FinRel`, by direct evaluation of the existential
/// formula.
pub fn fhat_rel(m: &Learner) -> FinRel {
    let bd = m.boundary();
    let (na, nb) = (bd.a().len(), bd.b().len());
    let mut pairs = Vec::new();
    for p in 0..m.p().len() {
        for a in 0..na {
            let (q, b) = m.forward(p, a);
            for b_ in 0..bd.b_prime().len() {
                let (p2, a_) = m.backward(q, b_);
                if p2 == p {
                    pairs.push((pair_index(na, a_, a), pair_index(nb, b_, b)));
                }
            }
        }
    }
    FinRel::new(fhat_object(m.source()), fhat_object(m.target()), pairs)
        .expect("indices in range")
}

/// Left-nested product of `factors`.
fn nest(factors: &[&FinSet]) -> FinSet {
    factors[1..]
        .iter()
        .fold(factors[0].clone(), |acc, s| acc.product(s))
}

/// Reorders the factors of a left-nested product; position `k` of the result
/// holds factor `order[k]`.
fn permute(factors: &[&FinSet], order: &[usize]) -> FinFun {
    let dom = nest(factors);
    let reordered: Vec<&FinSet> = order.iter().map(|&k| factors[k]).collect();
    let cod = nest(&reordered);
    let lens: Vec<usize> = factors.iter().map(|s| s.len()).collect();
    FinFun::from_fn(&dom, &cod, |mut i| {
        let mut xs = vec![0; lens.len()];
        for k in (0..lens.len()).rev() {
            xs[k] = i % lens[k];
            i /= lens[k];
        }
        order.iter().fold(0, |acc, &k| acc * lens[k] + xs[k])
    })
}

/// The same elements, re-bracketed or with unit factors inserted or removed.
fn regroup(from: &FinSet, to: &FinSet) -> FinFun {
    debug_assert_eq!(from.len(), to.len());
    FinFun::from_fn(from, to, |i| i)
}

/// `F̂(m)` in an arbitrary model, built from cups, caps and the images of
/// `l` and `r`:
///
/// ```text
/// A'A ≅ II·A'A ─η_P η_B'→ P P̄ B'ₒ B'ᵢ A' A ≅ P A · P̄ B'ₒ B'ᵢ A'
///     ─l→ Q B · P̄ B'ₒ B'ᵢ A' ≅ Q B'ᵢ · P̄ A' B'ₒ B ─r→ P A'ᵣ · P̄ A' B'ₒ B
///     ≅ P P̄ · A'ᵣ A' · B'ₒ B ─ε_P ε_A'→ II·B'B ≅ B'B
/// ```
pub fn fhat<M: CompactClosedModel>(model: &M, m: &Learner) -> Result<M::Hom> {
    let bd = m.boundary();
    let (p, q) = (m.p(), m.q());
    let (a, a_, b, b_) = (bd.a(), bd.a_prime(), bd.b(), bd.b_prime());
    let unit = FinSet::unit();
    let id = |x: &FinSet| model.identity(x);

    let s0 = fhat_object(m.source());
    let s1 = nest(&[&unit, &unit, &s0]);
    let cups = model.tensor(&model.tensor(&model.cup(p), &model.cup(b_)), &id(&s0));
    let s2 = [p, p, b_, b_, a_, a];
    let to_l = permute(&s2, &[0, 5, 1, 2, 3, 4]);
    let rest_l = nest(&[p, b_, b_, a_]);
    let apply_l = model.tensor(&model.base(m.l()), &id(&rest_l));
    let s4 = [q, b, p, b_, b_, a_];
    let to_r = permute(&s4, &[0, 4, 2, 5, 3, 1]);
    let rest_r = nest(&[p, a_, b_, b]);
    let apply_r = model.tensor(&model.base(m.r()), &id(&rest_r));
    let s6 = [p, a_, p, a_, b_, b];
    let to_caps = permute(&s6, &[0, 2, 1, 3, 4, 5]);
    let caps = model.tensor(
        &model.tensor(&model.cap(p), &model.cap(a_)),
        &id(&b_.product(b)),
    );
    let s8 = nest(&[&unit, &unit, &b_.product(b)]);

    let steps = [
        model.base(&regroup(&s0, &s1)),
        cups,
        model.base(&regroup(
            &nest(&[&p.product(p), &b_.product(b_), &s0]),
            to_l.dom(),
        )),
        model.base(&to_l),
        model.base(&regroup(to_l.cod(), &p.product(a).product(&rest_l))),
        apply_l,
        model.base(&regroup(&q.product(b).product(&rest_l), to_r.dom())),
        model.base(&to_r),
        model.base(&regroup(to_r.cod(), &q.product(b_).product(&rest_r))),
        apply_r,
        model.base(&regroup(&p.product(a_).product(&rest_r), to_caps.dom())),
        model.base(&to_caps),
        model.base(&regroup(
            to_caps.cod(),
            &nest(&[&p.product(p), &a_.product(a_), &b_.product(b)]),
        )),
        caps,
        model.base(&regroup(&s8, &fhat_object(m.target()))),
    ];
    steps[1..]
        .iter()
        .try_fold(steps[0].clone(), |acc, s| model.compose(&acc, s))
}

/// The models available to [`atemp_compare`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Rel,
    Count,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Rel => RelModel.name(),
            Model::Count => CountingModel.name(),
        }
    }
}

impl std::str::FromStr for Model {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rel" => Ok(Model::Rel),
            "count" => Ok(Model::Count),
            other => Err(crate::Error::Invalid(format!("unknown model `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Meaning {
    /// Some model separates the learners, so they differ after identifying
    /// snakes.
    Distinguished,
    /// No model separates them. This does not establish equality.
    ConsistentWithEquality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtempVerdict {
    pub relation1: FinRel,
    pub relation2: FinRel,
    /// Whether the `FinRel` images agree.
    pub equal: bool,
    pub meaning: Meaning,
    /// First model that separates the learners.
    pub separated_by: Option<Model>,
}

/// Compares `m1` and `m2` under `FinRel` and then each of `extra`.
pub fn atemp_compare(m1: &Learner, m2: &Learner, extra: &[Model]) -> Result<AtempVerdict> {
    if m1.boundary() != m2.boundary() {
        return Err(mismatch("atemp_compare", m1.boundary(), m2.boundary()));
    }
    let relation1 = fhat_rel(m1);
    let relation2 = fhat_rel(m2);
    let equal = relation1 == relation2;
    let mut separated_by = (!equal).then_some(Model::Rel);
    for &model in extra {
        if separated_by.is_some() {
            break;
        }
        let differs = match model {
            Model::Rel => false,
            Model::Count => fhat(&CountingModel, m1)? != fhat(&CountingModel, m2)?,
        };
        if differs {
            separated_by = Some(model);
        }
    }
    Ok(AtempVerdict {
        relation1,
        relation2,
        equal,
        meaning: if separated_by.is_some() {
            Meaning::Distinguished
        } else {
            Meaning::ConsistentWithEquality
        },
        separated_by,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learner::{identity, snake_composite};

    #[test]
    fn permute_moves_factors() {
        let x = FinSet::range(2);
        let y = FinSet::named("y", 3);
        let z = FinSet::unit();
        let f = permute(&[&x, &y, &z], &[1, 2, 0]);
        assert_eq!(f.apply_label("((1,y2),*)").unwrap(), "((y2,*),1)");
    }

    #[test]
    fn identity_and_snake_map_to_identity() {
        for n in 1..=3 {
            let obj = Object::forward(&FinSet::range(n));
            let id = FinRel::identity(&fhat_object(&obj));
            assert_eq!(fhat_rel(&identity(&obj)), id);
            assert_eq!(fhat_rel(&snake_composite(&obj)), id);
            assert_eq!(fhat(&RelModel, &snake_composite(&obj)).unwrap(), id);
        }
    }

    #[test]
    fn snakes_hold_in_both_models() {
        for n in 0..=4 {
            let x = FinSet::range(n);
            assert!(snakes_hold(&RelModel, &x).unwrap());
            assert!(snakes_hold(&CountingModel, &x).unwrap());
        }
    }
}
