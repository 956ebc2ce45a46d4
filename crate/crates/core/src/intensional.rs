//! Intensional learners `(P, I, U, r)` with the generalised typing
//! `(A, A') ⇸ (B, B')`:
//!
//! ```text
//! I : P × A → B      U : (P × A) × B' → P      r : (P × A) × B' → A'
//! ```
//!
//! Multi-argument functions are curried through canonical pairs, so `U(p, a, b')`
//! is stored at index `((p, a), b')`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{mismatch, Error, Result};
use crate::finbase::{pair_index, split_index, FinFun, FinSet};
use crate::learner::{Boundary, Learner, Object};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawIntLearner", into = "RawIntLearner")]
pub struct IntLearner {
    boundary: Boundary,
    p: FinSet,
    implement: FinFun,
    update: FinFun,
    request: FinFun,
}

#[derive(Serialize, Deserialize)]
struct RawIntLearner {
    #[serde(rename = "A")]
    a: FinSet,
    #[serde(rename = "A'")]
    a_prime: FinSet,
    #[serde(rename = "B")]
    b: FinSet,
    #[serde(rename = "B'")]
    b_prime: FinSet,
    #[serde(rename = "P")]
    p: FinSet,
    #[serde(rename = "I")]
    implement: FinFun,
    #[serde(rename = "U")]
    update: FinFun,
    r: FinFun,
}

impl TryFrom<RawIntLearner> for IntLearner {
    type Error = Error;

    fn try_from(raw: RawIntLearner) -> Result<Self> {
        IntLearner::new(
            Boundary::new(
                Object::new(raw.a, raw.a_prime),
                Object::new(raw.b, raw.b_prime),
            ),
            raw.p,
            raw.implement,
            raw.update,
            raw.r,
        )
    }
}

impl From<IntLearner> for RawIntLearner {
    fn from(m: IntLearner) -> Self {
        RawIntLearner {
            a: m.boundary.source.fwd,
            a_prime: m.boundary.source.bwd,
            b: m.boundary.target.fwd,
            b_prime: m.boundary.target.bwd,
            p: m.p,
            implement: m.implement,
            update: m.update,
            r: m.request,
        }
    }
}

impl IntLearner {
    pub fn new(
        boundary: Boundary,
        p: FinSet,
        implement: FinFun,
        update: FinFun,
        request: FinFun,
    ) -> Result<Self> {
        let pa = p.product(boundary.a());
        let pab = pa.product(boundary.b_prime());
        let checks = [
            ("I domain", &pa, implement.dom()),
            ("I codomain", boundary.b(), implement.cod()),
            ("U domain", &pab, update.dom()),
            ("U codomain", &p, update.cod()),
            ("r domain", &pab, request.dom()),
            ("r codomain", boundary.a_prime(), request.cod()),
        ];
        for (what, expected, found) in checks {
            if expected != found {
                return Err(mismatch(format!("intensional learner {what}"), expected, found));
            }
        }
        Ok(IntLearner {
            boundary,
            p,
            implement,
            update,
            request,
        })
    }

    /// Builds a learner from index-level closures `I(p, a)`, `U(p, a, b')`, `r(p, a, b')`.
    pub fn from_fns(
        boundary: Boundary,
        p: FinSet,
        implement: impl Fn(usize, usize) -> usize,
        update: impl Fn(usize, usize, usize) -> usize,
        request: impl Fn(usize, usize, usize) -> usize,
    ) -> Self {
        let (na, nb_) = (boundary.a().len(), boundary.b_prime().len());
        let pa = p.product(boundary.a());
        let pab = pa.product(boundary.b_prime());
        let implement = FinFun::from_fn(&pa, boundary.b(), |i| {
            let (x, a) = split_index(na, i);
            implement(x, a)
        });
        let update = FinFun::from_fn(&pab, &p, |i| {
            let (xa, b) = split_index(nb_, i);
            let (x, a) = split_index(na, xa);
            update(x, a, b)
        });
        let request = FinFun::from_fn(&pab, boundary.a_prime(), |i| {
            let (xa, b) = split_index(nb_, i);
            let (x, a) = split_index(na, xa);
            request(x, a, b)
        });
        IntLearner {
            boundary,
            p,
            implement,
            update,
            request,
        }
    }

    pub fn boundary(&self) -> &Boundary {
        &self.boundary
    }

    pub fn p(&self) -> &FinSet {
        &self.p
    }

    pub fn implement_fun(&self) -> &FinFun {
        &self.implement
    }

    pub fn update_fun(&self) -> &FinFun {
        &self.update
    }

    pub fn request_fun(&self) -> &FinFun {
        &self.request
    }

    /// Number of `(a, b')` inputs fed to `U` and `r` per state.
    pub fn inputs(&self) -> usize {
        self.boundary.a().len() * self.boundary.b_prime().len()
    }

    /// Index of the input `(a, b')` among [`inputs`](Self::inputs).
    #[inline]
    pub fn input_index(&self, a: usize, b_prime: usize) -> usize {
        pair_index(self.boundary.b_prime().len(), a, b_prime)
    }

    #[inline]
    pub fn implement(&self, p: usize, a: usize) -> usize {
        self.implement
            .apply(pair_index(self.boundary.a().len(), p, a))
    }

    #[inline]
    pub fn update(&self, p: usize, a: usize, b_prime: usize) -> usize {
        self.update.apply(self.state_input(p, a, b_prime))
    }

    #[inline]
    pub fn request(&self, p: usize, a: usize, b_prime: usize) -> usize {
        self.request.apply(self.state_input(p, a, b_prime))
    }

    /// `U(p, x)` with `x` an index from [`input_index`](Self::input_index).
    #[inline]
    pub fn update_at(&self, p: usize, x: usize) -> usize {
        self.update.apply(p * self.inputs() + x)
    }

    #[inline]
    pub fn request_at(&self, p: usize, x: usize) -> usize {
        self.request.apply(p * self.inputs() + x)
    }

    #[inline]
    fn state_input(&self, p: usize, a: usize, b_prime: usize) -> usize {
        p * self.inputs() + self.input_index(a, b_prime)
    }

    /// Renames parameters along a bijection `σ : P → P'`.
    pub fn relabel(&self, sigma: &FinFun) -> Result<IntLearner> {
        if sigma.dom() != &self.p {
            return Err(mismatch("relabel", &self.p, sigma.dom()));
        }
        let inv = sigma
            .inverse()
            .ok_or_else(|| Error::Invalid("relabelling must be a bijection".into()))?;
        let m = self;
        Ok(IntLearner::from_fns(
            self.boundary.clone(),
            sigma.cod().clone(),
            |p, a| m.implement(inv.apply(p), a),
            |p, a, b| sigma.apply(m.update(inv.apply(p), a, b)),
            |p, a, b| m.request(inv.apply(p), a, b),
        ))
    }

    /// Feeds a stream of `(a, b')` from `p0`; returns the outputs `I(p_t, a_t)`
    /// and the final state.
    pub fn run(&self, p0: usize, stream: &[(usize, usize)]) -> (Vec<usize>, usize) {
        let mut p = p0;
        let mut out = Vec::with_capacity(stream.len());
        for &(a, b) in stream {
            out.push(self.implement(p, a));
            p = self.update(p, a, b);
        }
        (out, p)
    }
}

impl fmt::Debug for IntLearner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntLearner")
            .field("boundary", &format_args!("{}", self.boundary))
            .field("P", &self.p)
            .field("I", &self.implement)
            .field("U", &self.update)
            .field("r", &self.request)
            .finish()
    }
}

/// `Q := P × A`, `l(p, a) = ((p, a), I(p, a))`, `r((p, a), b') = (U(p, a, b'), r(p, a, b'))`.
pub fn to_coend(m: &IntLearner) -> Learner {
    let bd = m.boundary();
    let q = m.p.product(bd.a());
    let (nb, na_) = (bd.b().len(), bd.a_prime().len());
    let l = FinFun::from_fn(&q, &q.product(bd.b()), |pa| {
        pair_index(nb, pa, m.implement.apply(pa))
    });
    let r = FinFun::from_fn(&q.product(bd.b_prime()), &m.p.product(bd.a_prime()), |i| {
        pair_index(na_, m.update.apply(i), m.request.apply(i))
    });
    Learner::new(bd.clone(), m.p.clone(), q, l, r).expect("coend form is well-typed")
}

/// Eliminates the residual: `I = π_B ∘ l`, and `U`, `r` read off
/// `r_coend(π_Q l(p, a), b')`.
pub fn to_int(m: &Learner) -> IntLearner {
    IntLearner::from_fns(
        m.boundary().clone(),
        m.p().clone(),
        |p, a| m.forward(p, a).1,
        |p, a, b| m.backward(m.forward(p, a).0, b).0,
        |p, a, b| m.backward(m.forward(p, a).0, b).1,
    )
}

/// The dual `(B', B) ⇸ (A', A)` with `P* = P × A`:
///
/// ```text
/// I*((p, p_a), b')    = r(p, p_a, b')
/// U*((p, p_a), b', a) = (U(p, p_a, b'), a)
/// r*((p, p_a), b', a) = I(U(p, p_a, b'), a)
/// ```
pub fn dual_int(m: &IntLearner) -> IntLearner {
    let bd = m.boundary();
    let na = bd.a().len();
    let dual_boundary = Boundary::new(bd.target.dual(), bd.source.dual());
    IntLearner::from_fns(
        dual_boundary,
        m.p.product(bd.a()),
        |s, b| {
            let (p, pa) = split_index(na, s);
            m.request(p, pa, b)
        },
        |s, b, a| {
            let (p, pa) = split_index(na, s);
            pair_index(na, m.update(p, pa, b), a)
        },
        |s, b, a| {
            let (p, pa) = split_index(na, s);
            m.implement(m.update(p, pa, b), a)
        },
    )
}

/// The double dual, `P** = (P × A) × B'`:
///
/// ```text
/// I**((p, p_a, p_b'), a)     = I(U(p, p_a, p_b'), a)
/// U**((p, p_a, p_b'), a, b') = (U(p, p_a, p_b'), a, b')
/// r**((p, p_a, p_b'), a, b') = r(U(p, p_a, p_b'), a, b')
/// ```
pub fn double_dual_int(m: &IntLearner) -> IntLearner {
    let bd = m.boundary();
    let (na, nb_) = (bd.a().len(), bd.b_prime().len());
    let pp = m.p.product(bd.a()).product(bd.b_prime());
    let unpack = |s: usize| {
        let (pa, pb) = split_index(nb_, s);
        let (p, a) = split_index(na, pa);
        m.update(p, a, pb)
    };
    IntLearner::from_fns(
        bd.clone(),
        pp,
        |s, a| m.implement(unpack(s), a),
        |s, a, b| pair_index(nb_, pair_index(na, unpack(s), a), b),
        |s, a, b| m.request(unpack(s), a, b),
    )
}

/// The learner `(A, I) ⇸ (A, I)` with `P = A` that outputs its stored value
/// and stores the incoming one: the identity delayed one step.
pub fn delayed_identity(a: &FinSet) -> IntLearner {
    let obj = Object::forward(a);
    IntLearner::from_fns(
        Boundary::new(obj.clone(), obj),
        a.clone(),
        |p, _a| p,
        |_p, a, _b| a,
        |_p, _a, _b| 0,
    )
}
