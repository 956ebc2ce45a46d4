//! Extensional learners over `FinSet`, represented by a pair of maps
//! `l : P × A → Q × B` and `r : Q × B' → P × A'`.
//!
//! Every operation here works on representatives. Two representatives of the
//! same learner may differ in their residual sets; the equivalence module
//! decides when they agree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{mismatch, Error, Result};
use crate::finbase::{
    associator, associator_inv, id_fun, left_unitor, left_unitor_inv, pair_index, right_unitor,
    right_unitor_inv, split_index, symmetry, FinFun, FinSet,
};

/// An object `(A, A')` of the learner category: forward set and backward set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Object {
    pub fwd: FinSet,
    pub bwd: FinSet,
}

impl Object {
    pub fn new(fwd: FinSet, bwd: FinSet) -> Self {
        Object { fwd, bwd }
    }

    /// `(I, I)`.
    pub fn unit() -> Self {
        Object::new(FinSet::unit(), FinSet::unit())
    }

    /// `ι A = (A, I)`.
    pub fn forward(a: &FinSet) -> Self {
        Object::new(a.clone(), FinSet::unit())
    }

    /// `(A, A')^* = (A', A)`.
    pub fn dual(&self) -> Self {
        Object::new(self.bwd.clone(), self.fwd.clone())
    }

    /// `(A, A') ⊗ (B, B') = (A × B, B' × A')`.
    pub fn tensor(&self, other: &Object) -> Self {
        Object::new(self.fwd.product(&other.fwd), other.bwd.product(&self.bwd))
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.fwd, self.bwd)
    }
}

/// The boundary `(A, A') ⇸ (B, B')` of a learner.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Boundary {
    pub source: Object,
    pub target: Object,
}

impl Boundary {
    pub fn new(source: Object, target: Object) -> Self {
        Boundary { source, target }
    }

    pub fn a(&self) -> &FinSet {
        &self.source.fwd
    }

    pub fn a_prime(&self) -> &FinSet {
        &self.source.bwd
    }

    pub fn b(&self) -> &FinSet {
        &self.target.fwd
    }

    pub fn b_prime(&self) -> &FinSet {
        &self.target.bwd
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⇸ {}", self.source, self.target)
    }
}

/// A representative `(l | r)` of an extensional learner.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLearner", into = "RawLearner")]
pub struct Learner {
    boundary: Boundary,
    p: FinSet,
    q: FinSet,
    l: FinFun,
    r: FinFun,
}

#[derive(Serialize, Deserialize)]
struct RawLearner {
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
    #[serde(rename = "Q")]
    q: FinSet,
    l: FinFun,
    r: FinFun,
}

impl TryFrom<RawLearner> for Learner {
    type Error = Error;

    fn try_from(raw: RawLearner) -> Result<Self> {
        Learner::new(
            Boundary::new(
                Object::new(raw.a, raw.a_prime),
                Object::new(raw.b, raw.b_prime),
            ),
            raw.p,
            raw.q,
            raw.l,
            raw.r,
        )
    }
}

impl From<Learner> for RawLearner {
    fn from(m: Learner) -> Self {
        RawLearner {
            a: m.boundary.source.fwd,
            a_prime: m.boundary.source.bwd,
            b: m.boundary.target.fwd,
            b_prime: m.boundary.target.bwd,
            p: m.p,
            q: m.q,
            l: m.l,
            r: m.r,
        }
    }
}

impl Learner {
    /// Checks that `l : P × A → Q × B` and `r : Q × B' → P × A'` exactly,
    /// canonical pair labels included.
    pub fn new(boundary: Boundary, p: FinSet, q: FinSet, l: FinFun, r: FinFun) -> Result<Self> {
        let checks = [
            ("l domain", p.product(boundary.a()), l.dom()),
            ("l codomain", q.product(boundary.b()), l.cod()),
            ("r domain", q.product(boundary.b_prime()), r.dom()),
            ("r codomain", p.product(boundary.a_prime()), r.cod()),
        ];
        for (what, expected, found) in checks {
            if &expected != found {
                return Err(mismatch(format!("learner {what}"), expected, found));
            }
        }
        Ok(Learner {
            boundary,
            p,
            q,
            l,
            r,
        })
    }

    pub fn boundary(&self) -> &Boundary {
        &self.boundary
    }

    pub fn source(&self) -> &Object {
        &self.boundary.source
    }

    pub fn target(&self) -> &Object {
        &self.boundary.target
    }

    pub fn p(&self) -> &FinSet {
        &self.p
    }

    pub fn q(&self) -> &FinSet {
        &self.q
    }

    pub fn l(&self) -> &FinFun {
        &self.l
    }

    pub fn r(&self) -> &FinFun {
        &self.r
    }

    /// Runs the forward map on indices: `(p, a) ↦ (q, b)`.
    #[inline]
    pub fn forward(&self, p: usize, a: usize) -> (usize, usize) {
        let i = pair_index(self.boundary.a().len(), p, a);
        split_index(self.boundary.b().len(), self.l.apply(i))
    }

    /// Runs the backward map on indices: `(q, b') ↦ (p, a')`.
    #[inline]
    pub fn backward(&self, q: usize, b_prime: usize) -> (usize, usize) {
        let i = pair_index(self.boundary.b_prime().len(), q, b_prime);
        split_index(self.boundary.a_prime().len(), self.r.apply(i))
    }
}

impl fmt::Debug for Learner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Learner")
            .field("boundary", &format_args!("{}", self.boundary))
            .field("P", &self.p)
            .field("Q", &self.q)
            .field("l", &self.l)
            .field("r", &self.r)
            .finish()
    }
}

/// Composes a non-empty sequence of functions left to right.
fn chain(steps: &[FinFun]) -> Result<FinFun> {
    let (first, rest) = steps.split_first().expect("non-empty chain");
    rest.iter().try_fold(first.clone(), |acc, g| acc.then(g))
}

/// `((S0×S1)×(S2×S3)) → ((S_o0×S_o1)×(S_o2×S_o3))` for a permutation `order`.
fn shuffle4(sets: [&FinSet; 4], order: [usize; 4]) -> FinFun {
    let dom = sets[0].product(sets[1]).product(&sets[2].product(sets[3]));
    let out: [&FinSet; 4] = order.map(|k| sets[k]);
    let cod = out[0].product(out[1]).product(&out[2].product(out[3]));
    let lens = sets.map(|s| s.len());
    FinFun::from_fn(&dom, &cod, |i| {
        let (left, right) = split_index(lens[2] * lens[3], i);
        let (x0, x1) = split_index(lens[1], left);
        let (x2, x3) = split_index(lens[3], right);
        let xs = [x0, x1, x2, x3];
        let ys = order.map(|k| xs[k]);
        let olens = order.map(|k| lens[k]);
        pair_index(
            olens[2] * olens[3],
            pair_index(olens[1], ys[0], ys[1]),
            pair_index(olens[3], ys[2], ys[3]),
        )
    })
}

/// `(id_{I×A} | id_{I×A'})`.
pub fn identity(obj: &Object) -> Learner {
    let i = FinSet::unit();
    Learner {
        boundary: Boundary::new(obj.clone(), obj.clone()),
        l: id_fun(&i.product(&obj.fwd)),
        r: id_fun(&i.product(&obj.bwd)),
        p: i.clone(),
        q: i,
    }
}

/// Sequential composite `m1 ; m2` with `P = P₂ × P₁` and `Q = Q₁ × Q₂`.
///
/// With these orders `dual(compose(m1, m2))` is field-equal to
/// `compose(dual m2, dual m1)`.
pub fn compose(m1: &Learner, m2: &Learner) -> Result<Learner> {
    if m1.target() != m2.source() {
        return Err(mismatch("compose", m2.source(), m1.target()));
    }
    let (p1, q1, p2, q2) = (&m1.p, &m1.q, &m2.p, &m2.q);
    let (a, a_) = (m1.boundary.a(), m1.boundary.a_prime());
    let (b, b_) = (m1.boundary.b(), m1.boundary.b_prime());
    let (c, c_) = (m2.boundary.b(), m2.boundary.b_prime());

    let l = chain(&[
        associator(p2, p1, a),
        id_fun(p2).times(&m1.l),
        associator_inv(p2, q1, b),
        symmetry(p2, q1).times(&id_fun(b)),
        associator(q1, p2, b),
        id_fun(q1).times(&m2.l),
        associator_inv(q1, q2, c),
    ])?;
    let r = chain(&[
        associator(q1, q2, c_),
        id_fun(q1).times(&m2.r),
        associator_inv(q1, p2, b_),
        symmetry(q1, p2).times(&id_fun(b_)),
        associator(p2, q1, b_),
        id_fun(p2).times(&m1.r),
        associator_inv(p2, p1, a_),
    ])?;
    Learner::new(
        Boundary::new(m1.source().clone(), m2.target().clone()),
        p2.product(p1),
        q1.product(q2),
        l,
        r,
    )
}

/// Composes a non-empty sequence of learners left to right.
pub fn compose_all(ms: &[Learner]) -> Result<Learner> {
    let (first, rest) = ms
        .split_first()
        .ok_or_else(|| Error::Invalid("empty composite".into()))?;
    rest.iter().try_fold(first.clone(), |acc, m| compose(&acc, m))
}

/// Parallel composite with `P = P_L × P_R` and `Q = Q_R × Q_L`.
///
/// Both components use the same pair of shuffles, so the duality functor is
/// strictly monoidal: `dual(tensor(L, R)) == tensor(dual R, dual L)`.
pub fn tensor(ml: &Learner, mr: &Learner) -> Learner {
    let (pl, ql, pr, qr) = (&ml.p, &ml.q, &mr.p, &mr.q);
    let bl = &ml.boundary;
    let br = &mr.boundary;

    let l = chain(&[
        shuffle4([pl, pr, bl.a(), br.a()], [0, 2, 1, 3]),
        ml.l.times(&mr.l),
        shuffle4([ql, bl.b(), qr, br.b()], [2, 0, 1, 3]),
    ])
    .expect("tensor left component is well-typed");
    let r = chain(&[
        shuffle4([qr, ql, br.b_prime(), bl.b_prime()], [0, 2, 1, 3]),
        mr.r.times(&ml.r),
        shuffle4([pr, br.a_prime(), pl, bl.a_prime()], [2, 0, 1, 3]),
    ])
    .expect("tensor right component is well-typed");
    Learner {
        boundary: Boundary::new(
            ml.source().tensor(mr.source()),
            ml.target().tensor(mr.target()),
        ),
        p: pl.product(pr),
        q: qr.product(ql),
        l,
        r,
    }
}

/// `(l | r)^* = (r | l)` on the boundary `(B', B) ⇸ (A', A)`.
pub fn dual(m: &Learner) -> Learner {
    Learner {
        boundary: Boundary::new(m.target().dual(), m.source().dual()),
        p: m.q.clone(),
        q: m.p.clone(),
        l: m.r.clone(),
        r: m.l.clone(),
    }
}

/// The cup `η_(A,A') : (I, I) ⇸ (A × A', A × A')`, holding `P = A × A'`.
pub fn cup(obj: &Object) -> Learner {
    let i = FinSet::unit();
    let p = obj.fwd.product(&obj.bwd);
    let l = chain(&[right_unitor(&p), left_unitor_inv(&p)]).expect("unit relabelling");
    let r = chain(&[left_unitor(&p), right_unitor_inv(&p)]).expect("unit relabelling");
    Learner {
        boundary: Boundary::new(Object::unit(), obj.tensor(&obj.dual())),
        p,
        q: i,
        l,
        r,
    }
}

/// The cap `ε_(A,A') : (A' × A, A' × A) ⇸ (I, I)`, holding `Q = A' × A`.
pub fn cap(obj: &Object) -> Learner {
    let i = FinSet::unit();
    let q = obj.bwd.product(&obj.fwd);
    let l = chain(&[left_unitor(&q), right_unitor_inv(&q)]).expect("unit relabelling");
    let r = chain(&[right_unitor(&q), left_unitor_inv(&q)]).expect("unit relabelling");
    Learner {
        boundary: Boundary::new(obj.dual().tensor(obj), Object::unit()),
        p: i,
        q,
        l,
        r,
    }
}

/// `ι(f, g) : (A, A') ⇸ (B, B')` for `f : A → B` and `g : B' → A'`.
pub fn iota_pair(f: &FinFun, g: &FinFun) -> Learner {
    let i = FinSet::unit();
    let unit_id = id_fun(&i);
    Learner {
        boundary: Boundary::new(
            Object::new(f.dom().clone(), g.cod().clone()),
            Object::new(f.cod().clone(), g.dom().clone()),
        ),
        p: i.clone(),
        q: i,
        l: unit_id.times(f),
        r: unit_id.times(g),
    }
}

/// `ι f = (I × f | id_{I×I}) : (A, I) ⇸ (B, I)`.
pub fn iota_fun(f: &FinFun) -> Learner {
    iota_pair(f, &id_fun(&FinSet::unit()))
}

/// The learner with trivial parameter set induced by the optic `⟨l | r⟩`,
/// `l : A → M × B`, `r : M × B' → A'`.
pub fn from_optic(m: &FinSet, l: &FinFun, r: &FinFun) -> Result<Learner> {
    let a = l.dom();
    if !r.dom().len().is_multiple_of(m.len().max(1)) || !l.cod().len().is_multiple_of(m.len().max(1)) {
        return Err(mismatch("optic residual", m, l.cod()));
    }
    let b = residual_factor(m, l.cod(), "optic forward codomain")?;
    let b_prime = residual_factor(m, r.dom(), "optic backward domain")?;
    let a_prime = r.cod();
    Learner::new(
        Boundary::new(
            Object::new(a.clone(), a_prime.clone()),
            Object::new(b, b_prime),
        ),
        FinSet::unit(),
        m.clone(),
        left_unitor(a).then(l)?,
        r.then(&left_unitor_inv(a_prime))?,
    )
}

/// Recovers `X` from a set known to be `M × X`.
fn residual_factor(m: &FinSet, mx: &FinSet, context: &str) -> Result<FinSet> {
    if m.is_empty() {
        return Err(Error::Invalid(format!(
            "{context}: empty residual leaves the factor undetermined"
        )));
    }
    let n = mx.len() / m.len();
    let first = m.label(0);
    let prefix = format!("({first},");
    let labels: Vec<String> = mx.elements()[..n]
        .iter()
        .map(|s| {
            s.strip_prefix(&prefix)
                .and_then(|t| t.strip_suffix(')'))
                .map(str::to_string)
                .ok_or_else(|| mismatch(context, format!("{m} × X"), mx))
        })
        .collect::<Result<_>>()?;
    let x = FinSet::new(labels)?;
    if &m.product(&x) != mx {
        return Err(mismatch(context, m.product(&x), mx));
    }
    Ok(x)
}

/// Symmetry `s_{X,Y} : X ⊗ Y ⇸ Y ⊗ X`, the image of the base symmetries.
pub fn symmetry_learner(x: &Object, y: &Object) -> Learner {
    iota_pair(&symmetry(&x.fwd, &y.fwd), &symmetry(&x.bwd, &y.bwd))
}

/// `α : (X ⊗ Y) ⊗ Z ⇸ X ⊗ (Y ⊗ Z)`.
pub fn associator_learner(x: &Object, y: &Object, z: &Object) -> Learner {
    iota_pair(
        &associator(&x.fwd, &y.fwd, &z.fwd),
        &associator(&z.bwd, &y.bwd, &x.bwd),
    )
}

/// `α⁻¹ : X ⊗ (Y ⊗ Z) ⇸ (X ⊗ Y) ⊗ Z`.
pub fn associator_inv_learner(x: &Object, y: &Object, z: &Object) -> Learner {
    iota_pair(
        &associator_inv(&x.fwd, &y.fwd, &z.fwd),
        &associator_inv(&z.bwd, &y.bwd, &x.bwd),
    )
}

/// `λ : (I, I) ⊗ X ⇸ X`.
pub fn left_unitor_learner(x: &Object) -> Learner {
    iota_pair(&left_unitor(&x.fwd), &right_unitor_inv(&x.bwd))
}

pub fn left_unitor_inv_learner(x: &Object) -> Learner {
    iota_pair(&left_unitor_inv(&x.fwd), &right_unitor(&x.bwd))
}

/// `ρ : X ⊗ (I, I) ⇸ X`.
pub fn right_unitor_learner(x: &Object) -> Learner {
    iota_pair(&right_unitor(&x.fwd), &left_unitor_inv(&x.bwd))
}

pub fn right_unitor_inv_learner(x: &Object) -> Learner {
    iota_pair(&right_unitor_inv(&x.fwd), &left_unitor(&x.bwd))
}

/// `X ≅ I ⊗ X → (X ⊗ X*) ⊗ X → X ⊗ (X* ⊗ X) → X ⊗ I ≅ X`, the zig-zag that
/// fails to be the identity.
pub fn snake_composite(obj: &Object) -> Learner {
    let x = obj;
    let xs = obj.dual();
    compose_all(&[
        left_unitor_inv_learner(x),
        tensor(&cup(x), &identity(x)),
        associator_learner(x, &xs, x),
        tensor(&identity(x), &cap(x)),
        right_unitor_learner(x),
    ])
    .expect("snake composite is well-typed")
}

/// Rebuilds `m : (S, S') ⇸ (A, A')` from a cup on `(P, I)`, the base pair
/// `ι(l, r)` and a cap on `(Q, I)`, glued by structural isomorphisms:
///
/// ```text
/// (S,S') ≅ (I,I)⊗(S,S') ─η⊗id→ ((P,I)⊗(I,P))⊗(S,S') ≅ (P×S, P×S')
///        ─ι(l,r)→ (Q×A, Q×A') ≅ ((I,Q)⊗(Q,I))⊗(A,A') ─ε⊗id→ (I,I)⊗(A,A') ≅ (A,A')
/// ```
pub fn decompose(m: &Learner) -> Learner {
    let (p, q) = (&m.p, &m.q);
    let src = m.source();
    let tgt = m.target();
    let (s, s_) = (&src.fwd, &src.bwd);
    let (a, a_) = (&tgt.fwd, &tgt.bwd);
    let p_obj = Object::forward(p);
    let q_obj = Object::forward(q);

    let into_pair = iota_pair(
        &right_unitor(p).times(&id_fun(s)),
        &chain(&[symmetry(p, s_), id_fun(s_).times(&right_unitor_inv(p))]).expect("typed"),
    );
    let out_of_pair = iota_pair(
        &left_unitor_inv(q).times(&id_fun(a)),
        &chain(&[id_fun(a_).times(&left_unitor(q)), symmetry(a_, q)]).expect("typed"),
    );
    debug_assert_eq!(into_pair.target().fwd, p.product(s));
    debug_assert_eq!(out_of_pair.source().bwd, q.product(a_));

    compose_all(&[
        left_unitor_inv_learner(src),
        tensor(&cup(&p_obj), &identity(src)),
        into_pair,
        iota_pair(&m.l, &m.r),
        out_of_pair,
        tensor(&cap(&q_obj), &identity(tgt)),
        left_unitor_learner(tgt),
    ])
    .expect("decomposition is well-typed")
}
