use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finbase::FinFun;
use crate::intensional::IntLearner;
use crate::learner::Learner;

/// Evidence that two learners with the same boundary are related.
///
/// The first four kinds relate intensional learners `m1 → m2`; a coend slide
/// relates two coend representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A bijective homomorphism `f : P₁ → P₂`.
    Bijection { f: FinFun },
    /// A homomorphism `f : P₁ → P₂` together with `Û : (P₂ × A) × B' → P₁`
    /// satisfying `Û ∘ (f × id) = U₁` and `f ∘ Û = U₂`.
    DiagonalFiller { f: FinFun, uhat: FinFun },
    /// A homomorphism `f : P₁ → P₂` with no further condition.
    OuterSquare { f: FinFun },
    /// A surjective homomorphism.
    Surjective { f: FinFun },
    /// `u : P₁ → P₂`, `v : Q₂ → Q₁` with `l₁ = (v × B) ∘ l₂ ∘ (u × A)` and
    /// `r₂ = (u × A') ∘ r₁ ∘ (v × B')`.
    CoendSlide { u: FinFun, v: FinFun },
}

fn reject(msg: String) -> Error {
    Error::Invalid(format!("witness rejected: {msg}"))
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Bijection { .. } => "bijection",
            Witness::DiagonalFiller { .. } => "diagonal_filler",
            Witness::OuterSquare { .. } => "outer_square",
            Witness::Surjective { .. } => "surjective",
            Witness::CoendSlide { .. } => "coend_slide",
        }
    }

    /// The parameter map, for every kind except coend slides.
    pub fn map(&self) -> Option<&FinFun> {
        match self {
            Witness::Bijection { f }
            | Witness::DiagonalFiller { f, .. }
            | Witness::OuterSquare { f }
            | Witness::Surjective { f } => Some(f),
            Witness::CoendSlide { .. } => None,
        }
    }

    /// Checks every defining equation of the witness from `m1` to `m2`.
    pub fn validate(&self, m1: &IntLearner, m2: &IntLearner) -> Result<()> {
        if m1.boundary() != m2.boundary() {
            return Err(crate::error::mismatch(
                "witness",
                m1.boundary(),
                m2.boundary(),
            ));
        }
        let f = self.map().ok_or_else(|| {
            reject("a coend slide relates coend representatives; use validate_slide".into())
        })?;
        if f.dom() != m1.p() || f.cod() != m2.p() {
            return Err(reject("parameter map has the wrong type".into()));
        }
        check_outer_square(f, m1, m2)?;
        match self {
            Witness::Bijection { .. } if !f.is_bijection() => {
                Err(reject("map is not a bijection".into()))
            }
            Witness::Surjective { .. } if !f.is_surjective() => {
                Err(reject("map is not surjective".into()))
            }
            Witness::DiagonalFiller { uhat, .. } => check_filler(f, uhat, m1, m2),
            _ => Ok(()),
        }
    }

    /// Checks a coend slide from `l1` to `l2`.
    pub fn validate_slide(&self, l1: &Learner, l2: &Learner) -> Result<()> {
        let Witness::CoendSlide { u, v } = self else {
            return Err(reject(format!("{} is not a coend slide", self.kind())));
        };
        if l1.boundary() != l2.boundary() {
            return Err(crate::error::mismatch("slide", l1.boundary(), l2.boundary()));
        }
        if u.dom() != l1.p() || u.cod() != l2.p() || v.dom() != l2.q() || v.cod() != l1.q() {
            return Err(reject("slide maps have the wrong type".into()));
        }
        let bd = l1.boundary();
        for p in 0..l1.p().len() {
            for a in 0..bd.a().len() {
                let (q2, b2) = l2.forward(u.apply(p), a);
                if l1.forward(p, a) != (v.apply(q2), b2) {
                    return Err(reject(format!("forward square fails at ({p}, {a})")));
                }
            }
        }
        for q in 0..l2.q().len() {
            for b in 0..bd.b_prime().len() {
                let (p1, a1) = l1.backward(v.apply(q), b);
                if l2.backward(q, b) != (u.apply(p1), a1) {
                    return Err(reject(format!("backward square fails at ({q}, {b})")));
                }
            }
        }
        Ok(())
    }
}

fn check_outer_square(f: &FinFun, m1: &IntLearner, m2: &IntLearner) -> Result<()> {
    for p in 0..m1.p().len() {
        let fp = f.apply(p);
        for a in 0..m1.boundary().a().len() {
            if m1.implement(p, a) != m2.implement(fp, a) {
                return Err(reject(format!("implement differs at ({p}, {a})")));
            }
        }
        for x in 0..m1.inputs() {
            if m1.request_at(p, x) != m2.request_at(fp, x) {
                return Err(reject(format!("request differs at parameter {p}, input {x}")));
            }
            if f.apply(m1.update_at(p, x)) != m2.update_at(fp, x) {
                return Err(reject(format!("update square fails at parameter {p}, input {x}")));
            }
        }
    }
    Ok(())
}

fn check_filler(f: &FinFun, uhat: &FinFun, m1: &IntLearner, m2: &IntLearner) -> Result<()> {
    if uhat.dom() != m2.update_fun().dom() || uhat.cod() != m1.p() {
        return Err(reject("filler has the wrong type".into()));
    }
    let nx = m1.inputs();
    for p in 0..m1.p().len() {
        for x in 0..nx {
            if uhat.apply(f.apply(p) * nx + x) != m1.update_at(p, x) {
                return Err(reject(format!("upper triangle fails at parameter {p}, input {x}")));
            }
        }
    }
    for q in 0..m2.p().len() {
        for x in 0..nx {
            if f.apply(uhat.apply(q * nx + x)) != m2.update_at(q, x) {
                return Err(reject(format!("lower triangle fails at parameter {q}, input {x}")));
            }
        }
    }
    Ok(())
}

/// The filler `Û(p', x) = U(f⁻¹(p'), x)` attached to a bijective homomorphism.
pub fn filler_from_bijection(f: &FinFun, m1: &IntLearner, m2: &IntLearner) -> Result<Witness> {
    let inv = f
        .inverse()
        .ok_or_else(|| reject("map is not a bijection".into()))?;
    let nx = m1.inputs();
    let uhat = FinFun::from_fn(m2.update_fun().dom(), m1.p(), |i| {
        m1.update_at(inv.apply(i / nx.max(1)), i % nx.max(1))
    });
    Ok(Witness::DiagonalFiller { f: f.clone(), uhat })
}
