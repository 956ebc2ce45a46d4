//! Learners whose maps are terms of the free symmetric monoidal category.
//!
//! Conventions follow the `FinSet` learners with words in place of nested
//! products: composites carry `P₂P₁` and `Q₁Q₂`, tensors carry `P_L P_R` and
//! `Q_R Q_L`, and `(A, A') ⊗ (B, B') = (AB, B'A')`. Evaluation therefore
//! produces the same tables as the corresponding `FinSet` constructions.

use serde::{Deserialize, Serialize};

use super::eval::Interpretation;
use super::signature::{concat, Signature};
use super::syntax::{Term, Word};
use crate::error::{mismatch, Error, Result};
use crate::finbase::FinFun;
use crate::learner::{Boundary, Learner, Object};
use crate::semantics::fhat_rel;

/// `(l, r) : (A, A') ⇸ (B, B')` with `l : P A → Q B` and `r : Q B' → P A'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalLearner {
    pub a: Word,
    pub a_prime: Word,
    pub b: Word,
    pub b_prime: Word,
    pub p: Word,
    pub q: Word,
    pub l: Term,
    pub r: Term,
}

fn show(w: &[String]) -> String {
    format!("[{}]", w.join(" "))
}

impl FormalLearner {
    pub fn boundary_words(&self) -> [&Word; 4] {
        [&self.a, &self.a_prime, &self.b, &self.b_prime]
    }

    /// Checks the types of `l` and `r` against the declared words.
    pub fn typecheck(&self, sig: &Signature) -> Result<()> {
        for w in [&self.a, &self.a_prime, &self.b, &self.b_prime, &self.p, &self.q] {
            sig.check_word(w)?;
        }
        let expect = |t: &Term, dom: Word, cod: Word, which: &str| -> Result<()> {
            let (d, c) = sig.typecheck(t)?;
            if d != dom || c != cod {
                return Err(mismatch(
                    format!("formal learner map {which}"),
                    format!("{} -> {}", show(&dom), show(&cod)),
                    format!("{} -> {}", show(&d), show(&c)),
                ));
            }
            Ok(())
        };
        expect(&self.l, concat(&self.p, &self.a), concat(&self.q, &self.b), "l")?;
        expect(&self.r, concat(&self.q, &self.b_prime), concat(&self.p, &self.a_prime), "r")
    }
}

fn id(w: &[String]) -> Term {
    Term::Id(w.to_vec())
}

fn sym(a: &[String], b: &[String]) -> Term {
    Term::Sym(a.to_vec(), b.to_vec())
}

pub fn formal_identity(a: &[String], a_prime: &[String]) -> FormalLearner {
    FormalLearner {
        a: a.to_vec(),
        a_prime: a_prime.to_vec(),
        b: a.to_vec(),
        b_prime: a_prime.to_vec(),
        p: vec![],
        q: vec![],
        l: id(a),
        r: id(a_prime),
    }
}

/// `ι(t)` for `t : A → B`, with trivial residuals and backward words.
pub fn formal_iota(t: &Term, sig: &Signature) -> Result<FormalLearner> {
    let (a, b) = sig.typecheck(t)?;
    Ok(FormalLearner {
        a,
        a_prime: vec![],
        b,
        b_prime: vec![],
        p: vec![],
        q: vec![],
        l: t.clone(),
        r: id(&[]),
    })
}

pub fn formal_compose(m1: &FormalLearner, m2: &FormalLearner) -> Result<FormalLearner> {
    if m1.b != m2.a || m1.b_prime != m2.a_prime {
        return Err(mismatch(
            "formal_compose",
            format!("({}, {})", show(&m1.b), show(&m1.b_prime)),
            format!("({}, {})", show(&m2.a), show(&m2.a_prime)),
        ));
    }
    let (p1, q1, p2, q2) = (&m1.p, &m1.q, &m2.p, &m2.q);
    let l = id(p2)
        .par(m1.l.clone())
        .seq(sym(p2, q1).par(id(&m1.b)))
        .seq(id(q1).par(m2.l.clone()));
    let r = id(q1)
        .par(m2.r.clone())
        .seq(sym(q1, p2).par(id(&m1.b_prime)))
        .seq(id(p2).par(m1.r.clone()));
    Ok(FormalLearner {
        a: m1.a.clone(),
        a_prime: m1.a_prime.clone(),
        b: m2.b.clone(),
        b_prime: m2.b_prime.clone(),
        p: concat(p2, p1),
        q: concat(q1, q2),
        l,
        r,
    })
}

pub fn formal_tensor(ml: &FormalLearner, mr: &FormalLearner) -> FormalLearner {
    let (pl, pr, ql, qr) = (&ml.p, &mr.p, &ml.q, &mr.q);
    let l = id(pl)
        .par(sym(pr, &ml.a))
        .par(id(&mr.a))
        .seq(ml.l.clone().par(mr.l.clone()))
        .seq(sym(&concat(ql, &ml.b), qr).par(id(&mr.b)));
    let r = id(qr)
        .par(sym(ql, &mr.b_prime))
        .par(id(&ml.b_prime))
        .seq(mr.r.clone().par(ml.r.clone()))
        .seq(sym(&concat(pr, &mr.a_prime), pl).par(id(&ml.a_prime)));
    FormalLearner {
        a: concat(&ml.a, &mr.a),
        a_prime: concat(&mr.a_prime, &ml.a_prime),
        b: concat(&ml.b, &mr.b),
        b_prime: concat(&mr.b_prime, &ml.b_prime),
        p: concat(pl, pr),
        q: concat(qr, ql),
        l,
        r,
    }
}

/// `(l, r)* = (r, l)` with the boundary `(B', B) ⇸ (A', A)`.
pub fn formal_dual(m: &FormalLearner) -> FormalLearner {
    FormalLearner {
        a: m.b_prime.clone(),
        a_prime: m.b.clone(),
        b: m.a_prime.clone(),
        b_prime: m.a.clone(),
        p: m.q.clone(),
        q: m.p.clone(),
        l: m.r.clone(),
        r: m.l.clone(),
    }
}

/// `(I, I) ⇸ (A, A') ⊗ (A, A')*` with `P = A A'`.
pub fn formal_cup(a: &[String], a_prime: &[String]) -> FormalLearner {
    let w = concat(a, a_prime);
    FormalLearner {
        a: vec![],
        a_prime: vec![],
        b: w.clone(),
        b_prime: w.clone(),
        p: w.clone(),
        q: vec![],
        l: id(&w),
        r: id(&w),
    }
}

/// `(A, A')* ⊗ (A, A') ⇸ (I, I)` with `Q = A' A`.
pub fn formal_cap(a: &[String], a_prime: &[String]) -> FormalLearner {
    let w = concat(a_prime, a);
    FormalLearner {
        a: w.clone(),
        a_prime: w.clone(),
        b: vec![],
        b_prime: vec![],
        p: vec![],
        q: w.clone(),
        l: id(&w),
        r: id(&w),
    }
}

/// `(η ⊗ id) ; (id ⊗ ε)` on `(A, A')`; the unitors and associator are
/// identities on words.
pub fn formal_snake(a: &[String], a_prime: &[String]) -> FormalLearner {
    let x = formal_identity(a, a_prime);
    formal_compose(
        &formal_tensor(&formal_cup(a, a_prime), &x),
        &formal_tensor(&x, &formal_cap(a, a_prime)),
    )
    .expect("snake composite is well-typed")
}

/// The `FinSet` learner obtained by evaluating both maps.
pub fn eval_learner(fl: &FormalLearner, sig: &Signature, interp: &Interpretation) -> Result<Learner> {
    fl.typecheck(sig)?;
    let ws = |w: &Word| interp.word_set(w);
    let boundary = Boundary::new(
        Object::new(ws(&fl.a)?, ws(&fl.a_prime)?),
        Object::new(ws(&fl.b)?, ws(&fl.b_prime)?),
    );
    let (p, q) = (ws(&fl.p)?, ws(&fl.q)?);
    // Flat words and nested pairs share first-factor-major indices.
    let l = interp.eval(&fl.l, sig)?;
    let r = interp.eval(&fl.r, sig)?;
    let l = FinFun::new(
        p.product(boundary.a()),
        q.product(boundary.b()),
        l.table().to_vec(),
    )?;
    let r = FinFun::new(
        q.product(boundary.b_prime()),
        p.product(boundary.a_prime()),
        r.table().to_vec(),
    )?;
    Learner::new(boundary, p, q, l, r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FormalVerdict {
    /// The relational images differ under this interpretation.
    Distinguished { interpretation: usize },
    /// No sampled interpretation separates the learners.
    Consistent,
}

/// Compares the relational images of `fl1` and `fl2` under each interpretation.
pub fn atemp_check_formal(
    fl1: &FormalLearner,
    fl2: &FormalLearner,
    sig: &Signature,
    interps: &[Interpretation],
) -> Result<FormalVerdict> {
    if fl1.boundary_words() != fl2.boundary_words() {
        let b = |f: &FormalLearner| {
            format!(
                "({}, {}) -> ({}, {})",
                show(&f.a),
                show(&f.a_prime),
                show(&f.b),
                show(&f.b_prime)
            )
        };
        return Err(mismatch("atemp_check_formal", b(fl1), b(fl2)));
    }
    if interps.is_empty() {
        return Err(Error::Invalid("no interpretations given".into()));
    }
    for (k, interp) in interps.iter().enumerate() {
        let m1 = eval_learner(fl1, sig, interp)?;
        let m2 = eval_learner(fl2, sig, interp)?;
        if fhat_rel(&m1) != fhat_rel(&m2) {
            return Ok(FormalVerdict::Distinguished { interpretation: k });
        }
    }
    Ok(FormalVerdict::Consistent)
}
