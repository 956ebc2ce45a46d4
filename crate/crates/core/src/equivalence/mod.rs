//! Equivalences of learners: intensional (isomorphism), the extensional
//! one-step relation and its closure, 2-morphisms, surjective 2-morphisms and
//! their closure, and coend slides.
//!
//! All searches return the lexicographically least witness table.

mod behaviour;
mod canonical;
mod closure;
mod search;
mod slide;
mod witness;

pub use behaviour::{eventual_image, fixed_point_counts, stable_behaviour_differs};
pub use closure::{Chain, Closure, ClosureOptions, Link, Refutation};
pub use witness::{filler_from_bijection, Witness};

use closure::Relation;
use search::{find_map, Mode};

use crate::error::{mismatch, Error, Result};
use crate::finbase::FinFun;
use crate::intensional::{to_int, IntLearner};
use crate::learner::Learner;

fn same_boundary(m1: &IntLearner, m2: &IntLearner) -> Result<()> {
    if m1.boundary() != m2.boundary() {
        return Err(mismatch("equivalence", m1.boundary(), m2.boundary()));
    }
    Ok(())
}

fn map_witness(m1: &IntLearner, m2: &IntLearner, mode: Mode) -> Option<FinFun> {
    find_map(m1, m2, mode)
        .map(|f| FinFun::new(m1.p().clone(), m2.p().clone(), f).expect("map in range"))
}

/// A bijection `f : P₁ → P₂` commuting with `I`, `U` and `r`.
pub fn int_equiv(m1: &IntLearner, m2: &IntLearner) -> Result<Option<Witness>> {
    same_boundary(m1, m2)?;
    Ok(map_witness(m1, m2, Mode::Bijection).map(|f| Witness::Bijection { f }))
}

/// Intensional equivalence of coend representatives, decided on their
/// intensional forms.
pub fn int_equiv_learners(l1: &Learner, l2: &Learner) -> Result<Option<Witness>> {
    int_equiv(&to_int(l1), &to_int(l2))
}

/// A one-step extensional witness `(f, Û)` from `m1` to `m2`.
pub fn ext_onestep(m1: &IntLearner, m2: &IntLearner) -> Result<Option<Witness>> {
    same_boundary(m1, m2)?;
    Ok(Relation::Extensional.witness(m1, m2))
}

/// Any homomorphism `f : P₁ → P₂` preserving `I` and `r`.
pub fn two_morphism(m1: &IntLearner, m2: &IntLearner) -> Result<Option<Witness>> {
    same_boundary(m1, m2)?;
    Ok(map_witness(m1, m2, Mode::Outer).map(|f| Witness::OuterSquare { f }))
}

/// A surjective 2-morphism from `m1` to `m2`.
pub fn surj_onestep(m1: &IntLearner, m2: &IntLearner) -> Result<Option<Witness>> {
    same_boundary(m1, m2)?;
    Ok(Relation::Surjective.witness(m1, m2))
}

fn closure(
    rel: Relation,
    m1: &IntLearner,
    m2: &IntLearner,
    opts: &ClosureOptions,
) -> Result<Closure> {
    same_boundary(m1, m2)?;
    let size = m1.p().len().max(m2.p().len());
    if opts.bound < size {
        return Err(Error::BoundTooSmall {
            bound: opts.bound,
            size,
        });
    }
    for (a, b, forward) in [(m1, m2, true), (m2, m1, false)] {
        if let Some(witness) = rel.witness(a, b) {
            return Ok(Closure::Yes {
                chain: Chain {
                    nodes: vec![m1.clone(), m2.clone()],
                    links: vec![Link { forward, witness }],
                },
            });
        }
    }
    if rel == Relation::Extensional && opts.use_invariant {
        if stable_behaviour_differs(m1, m2) {
            return Ok(Closure::NoWithinBound {
                refutation: Refutation::StableBehaviour,
            });
        }
        if fixed_point_counts(m1) != fixed_point_counts(m2) {
            return Ok(Closure::NoWithinBound {
                refutation: Refutation::FixedPoints,
            });
        }
    }
    Ok(closure::search(rel, m1, m2, opts))
}

/// The equivalence relation generated by [`ext_onestep`], searched over
/// learners whose parameter sets have at most `opts.bound` elements.
///
/// `Yes` carries a validated zig-zag of one-step witnesses. `NoWithinBound`
/// either comes from an invariant of the unbounded closure (stable behaviour,
/// fixed-point counts) or from exhausting the bounded component. `Unknown`
/// means the candidate budget ran out.
pub fn ext_equiv(m1: &IntLearner, m2: &IntLearner, opts: &ClosureOptions) -> Result<Closure> {
    closure(Relation::Extensional, m1, m2, opts)
}

/// The equivalence relation generated by surjective 2-morphisms.
pub fn surj_equiv(m1: &IntLearner, m2: &IntLearner, opts: &ClosureOptions) -> Result<Closure> {
    closure(Relation::Surjective, m1, m2, opts)
}

/// A single slide `(u, v)` from `l1` to `l2`.
pub fn coend_slide(l1: &Learner, l2: &Learner) -> Result<Option<Witness>> {
    if l1.boundary() != l2.boundary() {
        return Err(mismatch("coend slide", l1.boundary(), l2.boundary()));
    }
    Ok(slide::find_slide(l1, l2).map(|(u, v)| Witness::CoendSlide {
        u: FinFun::new(l1.p().clone(), l2.p().clone(), u).expect("u in range"),
        v: FinFun::new(l2.q().clone(), l1.q().clone(), v).expect("v in range"),
    }))
}

/// Result of [`coend_equiv`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "via", rename_all = "snake_case")]
pub enum CoendVerdict {
    /// One slide relates the representatives directly.
    Slide { witness: Witness, forward: bool },
    /// Decided on intensional forms.
    Intensional { closure: Closure },
}

impl CoendVerdict {
    pub fn is_yes(&self) -> bool {
        match self {
            CoendVerdict::Slide { .. } => true,
            CoendVerdict::Intensional { closure } => closure.is_yes(),
        }
    }
}

/// Equality in the coend. The residual `Q` is eliminated exactly by
/// [`to_int`]; slides in `P` then correspond to extensional one-step
/// witnesses with `f = u`, so the remaining question is [`ext_equiv`] on the
/// intensional forms.
pub fn coend_equiv(l1: &Learner, l2: &Learner, opts: &ClosureOptions) -> Result<CoendVerdict> {
    if let Some(witness) = coend_slide(l1, l2)? {
        return Ok(CoendVerdict::Slide {
            witness,
            forward: true,
        });
    }
    if let Some(witness) = coend_slide(l2, l1)? {
        return Ok(CoendVerdict::Slide {
            witness,
            forward: false,
        });
    }
    Ok(CoendVerdict::Intensional {
        closure: ext_equiv(&to_int(l1), &to_int(l2), opts)?,
    })
}
