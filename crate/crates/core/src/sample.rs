//! Random learners for tests, benchmarks and the command line.

use rand::Rng;

use crate::finbase::{FinFun, FinSet};
use crate::intensional::IntLearner;
use crate::learner::{Boundary, Learner, Object};

pub fn random_fun<R: Rng + ?Sized>(rng: &mut R, dom: &FinSet, cod: &FinSet) -> FinFun {
    let table = (0..dom.len()).map(|_| rng.gen_range(0..cod.len())).collect();
    FinFun::new(dom.clone(), cod.clone(), table).expect("codomain is non-empty")
}

/// Boundary with the given sizes `(|A|, |A'|, |B|, |B'|)` and element labels
/// `a0, a'0, b0, b'0, …`.
pub fn boundary(a: usize, a_prime: usize, b: usize, b_prime: usize) -> Boundary {
    Boundary::new(
        Object::new(FinSet::named("a", a), FinSet::named("a'", a_prime)),
        Object::new(FinSet::named("b", b), FinSet::named("b'", b_prime)),
    )
}

/// Uniformly random `(I, U, r)` on `n` parameters. Codomains must be
/// non-empty whenever the corresponding domain is.
pub fn random_int<R: Rng + ?Sized>(rng: &mut R, bd: &Boundary, n: usize) -> IntLearner {
    let p = FinSet::named("p", n);
    let pa = p.product(bd.a());
    let pab = pa.product(bd.b_prime());
    IntLearner::new(
        bd.clone(),
        p.clone(),
        random_fun(rng, &pa, bd.b()),
        random_fun(rng, &pab, &p),
        random_fun(rng, &pab, bd.a_prime()),
    )
    .expect("random learner is well-typed")
}

/// Uniformly random coend representative with `|P| = n`, `|Q| = m`.
pub fn random_learner<R: Rng + ?Sized>(rng: &mut R, bd: &Boundary, n: usize, m: usize) -> Learner {
    let p = FinSet::named("p", n);
    let q = FinSet::named("q", m);
    let l = random_fun(rng, &p.product(bd.a()), &q.product(bd.b()));
    let r = random_fun(rng, &q.product(bd.b_prime()), &p.product(bd.a_prime()));
    Learner::new(bd.clone(), p, q, l, r).expect("random learner is well-typed")
}

/// Every intensional learner on `n` parameters, in odometer order of the
/// concatenated `(I, U, r)` tables. Use only for tiny sizes.
pub fn all_int(bd: &Boundary, n: usize) -> impl Iterator<Item = IntLearner> + '_ {
    let na = bd.a().len();
    let nx = na * bd.b_prime().len();
    let bases: Vec<usize> = std::iter::repeat_n(bd.b().len(), n * na)
        .chain(std::iter::repeat_n(n, n * nx))
        .chain(std::iter::repeat_n(bd.a_prime().len(), n * nx))
        .collect();
    let total: Option<usize> = bases
        .iter()
        .try_fold(1usize, |acc, &b| acc.checked_mul(b));
    let total = total.expect("enumeration too large");
    let p = FinSet::named("p", n);
    (0..total).map(move |mut k| {
        let digits: Vec<usize> = bases
            .iter()
            .map(|&b| {
                let d = k % b;
                k /= b;
                d
            })
            .collect();
        let (i, rest) = digits.split_at(n * na);
        let (u, r) = rest.split_at(n * nx);
        let pa = p.product(bd.a());
        let pab = pa.product(bd.b_prime());
        IntLearner::new(
            bd.clone(),
            p.clone(),
            FinFun::new(pa, bd.b().clone(), i.to_vec()).expect("in range"),
            FinFun::new(pab.clone(), p.clone(), u.to_vec()).expect("in range"),
            FinFun::new(pab, bd.a_prime().clone(), r.to_vec()).expect("in range"),
        )
        .expect("well-typed")
    })
}

/// Number of learners yielded by [`all_int`], or `None` on overflow.
pub fn count_int(bd: &Boundary, n: usize) -> Option<usize> {
    let na = bd.a().len();
    let nx = na * bd.b_prime().len();
    let pow = |b: usize, e: usize| b.checked_pow(e as u32);
    pow(bd.b().len(), n * na)?
        .checked_mul(pow(n, n * nx)?)?
        .checked_mul(pow(bd.a_prime().len(), n * nx)?)
}
