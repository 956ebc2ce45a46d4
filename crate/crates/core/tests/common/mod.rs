//! Brute-force oracles shared by the integration tests. They enumerate
//! whole function tables and check equations pointwise, independently of the
//! propagation-based searches in the library.

#![allow(dead_code)]

use extlearn::intensional::IntLearner;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All tables `n → m` in lexicographic order, first entry most significant.
pub fn all_tables(n: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let total = m.pow(n as u32);
    (0..total)
        .map(|mut k| {
            let mut t = vec![0; n];
            for slot in t.iter_mut().rev() {
                *slot = k % m;
                k /= m;
            }
            t
        })
        .collect()
}

fn outer_square(m1: &IntLearner, m2: &IntLearner, f: &[usize]) -> bool {
    let bd = m1.boundary();
    (0..m1.p().len()).all(|p| {
        (0..bd.a().len()).all(|a| {
            m1.implement(p, a) == m2.implement(f[p], a)
                && (0..bd.b_prime().len()).all(|b| {
                    m1.request(p, a, b) == m2.request(f[p], a, b)
                        && f[m1.update(p, a, b)] == m2.update(f[p], a, b)
                })
        })
    })
}

fn is_bijection(f: &[usize], m: usize) -> bool {
    let mut seen = vec![false; m];
    f.len() == m && f.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
}

pub fn oracle_int(m1: &IntLearner, m2: &IntLearner) -> Option<Vec<usize>> {
    let n2 = m2.p().len();
    all_tables(m1.p().len(), n2)
        .into_iter()
        .find(|f| is_bijection(f, n2) && outer_square(m1, m2, f))
}

pub fn oracle_outer(m1: &IntLearner, m2: &IntLearner) -> Option<Vec<usize>> {
    all_tables(m1.p().len(), m2.p().len())
        .into_iter()
        .find(|f| outer_square(m1, m2, f))
}

pub fn oracle_surj(m1: &IntLearner, m2: &IntLearner) -> Option<Vec<usize>> {
    let n2 = m2.p().len();
    all_tables(m1.p().len(), n2)
        .into_iter()
        .find(|f| (0..n2).all(|y| f.contains(&y)) && outer_square(m1, m2, f))
}

/// First `(f, Û)` in lexicographic order satisfying the four equations,
/// enumerating every `Û` table. Only for tiny sizes.
pub fn oracle_ext(m1: &IntLearner, m2: &IntLearner) -> Option<(Vec<usize>, Vec<usize>)> {
    let bd = m1.boundary();
    let (na, nb) = (bd.a().len(), bd.b_prime().len());
    let (n1, n2) = (m1.p().len(), m2.p().len());
    let inputs: Vec<(usize, usize)> = (0..na).flat_map(|a| (0..nb).map(move |b| (a, b))).collect();
    let nx = inputs.len();
    let uhats = all_tables(n2 * nx, n1);
    for f in all_tables(n1, n2) {
        let sig = (0..n1).all(|p| {
            (0..na).all(|a| m1.implement(p, a) == m2.implement(f[p], a))
                && inputs
                    .iter()
                    .all(|&(a, b)| m1.request(p, a, b) == m2.request(f[p], a, b))
        });
        if !sig {
            continue;
        }
        for uhat in &uhats {
            let upper = (0..n1).all(|p| {
                inputs
                    .iter()
                    .enumerate()
                    .all(|(x, &(a, b))| uhat[f[p] * nx + x] == m1.update(p, a, b))
            });
            let lower = (0..n2).all(|q| {
                inputs
                    .iter()
                    .enumerate()
                    .all(|(x, &(a, b))| f[uhat[q * nx + x]] == m2.update(q, a, b))
            });
            if upper && lower {
                return Some((f, uhat.clone()));
            }
        }
    }
    None
}

/// A learner `m1` with a one-step extensional witness `m1 → m2`, built from a
/// random `f : P₁ → P₂` and a random section-like `Û`. Returns `None` when
/// the drawn `f` misses some update value of `m2`.
pub fn pullback<R: Rng>(rng: &mut R, m2: &IntLearner, n1: usize) -> Option<IntLearner> {
    let n2 = m2.p().len();
    let f: Vec<usize> = (0..n1).map(|_| rng.gen_range(0..n2)).collect();
    let nx = m2.inputs();
    let mut uhat = vec![0; n2 * nx];
    for q in 0..n2 {
        for x in 0..nx {
            let pre: Vec<usize> = (0..n1).filter(|&p| f[p] == m2.update_at(q, x)).collect();
            if pre.is_empty() {
                return None;
            }
            uhat[q * nx + x] = pre[rng.gen_range(0..pre.len())];
        }
    }
    let nb = m2.boundary().b_prime().len();
    Some(IntLearner::from_fns(
        m2.boundary().clone(),
        extlearn::finbase::FinSet::named("s", n1),
        |p, a| m2.implement(f[p], a),
        |p, a, b| uhat[f[p] * nx + a * nb + b],
        |p, a, b| m2.request(f[p], a, b),
    ))
}
