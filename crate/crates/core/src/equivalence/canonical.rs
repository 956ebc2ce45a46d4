//! Canonical representatives of intensional learners up to renaming of
//! parameters.

use std::collections::HashMap;

use crate::finbase::FinSet;
use crate::intensional::IntLearner;

/// Row of parameter `p` with updates renamed by `sigma` (old → new).
fn row(m: &IntLearner, p: usize, sigma: &[usize], out: &mut Vec<usize>) {
    let na = m.boundary().a().len();
    out.extend((0..na).map(|a| m.implement(p, a)));
    for x in 0..m.inputs() {
        out.push(m.request_at(p, x));
        out.push(sigma[m.update_at(p, x)]);
    }
}

/// Colour refinement on a single learner; colours are numbered in order of
/// their sorted signatures, so they are invariant under renaming.
fn colours(m: &IntLearner) -> Vec<usize> {
    let n = m.p().len();
    let na = m.boundary().a().len();
    let nx = m.inputs();
    let rank = |sigs: &[Vec<usize>]| -> Vec<usize> {
        let mut sorted: Vec<&Vec<usize>> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let ids: HashMap<&Vec<usize>, usize> =
            sorted.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        sigs.iter().map(|s| ids[s]).collect()
    };
    let base: Vec<Vec<usize>> = (0..n)
        .map(|p| {
            (0..na)
                .map(|a| m.implement(p, a))
                .chain((0..nx).map(|x| m.request_at(p, x)))
                .collect()
        })
        .collect();
    let mut colour = rank(&base);
    let mut count = colour.iter().max().map_or(0, |c| c + 1);
    loop {
        let sigs: Vec<Vec<usize>> = (0..n)
            .map(|p| {
                let mut s = vec![colour[p]];
                s.extend((0..nx).map(|x| colour[m.update_at(p, x)]));
                // Incoming edges distinguish states that only differ in
                // who points at them.
                let mut incoming: Vec<(usize, usize)> = (0..n)
                    .flat_map(|q| (0..nx).map(move |x| (q, x)))
                    .filter(|&(q, x)| m.update_at(q, x) == p)
                    .map(|(q, x)| (colour[q], x))
                    .collect();
                incoming.sort_unstable();
                s.push(usize::MAX);
                s.extend(incoming.into_iter().flat_map(|(c, x)| [c, x]));
                s
            })
            .collect();
        let next = rank(&sigs);
        let next_count = next.iter().max().map_or(0, |c| c + 1);
        colour = next;
        if next_count == count {
            return colour;
        }
        count = next_count;
    }
}

/// Canonical key and the renaming `σ : P → {0..n}` that produces it.
pub(crate) fn canonical_key(m: &IntLearner) -> (Vec<usize>, Vec<usize>) {
    let n = m.p().len();
    let colour = colours(m);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&p| (colour[p], p));
    for &p in &order {
        match classes.last_mut() {
            Some(c) if colour[c[0]] == colour[p] => c.push(p),
            _ => classes.push(vec![p]),
        }
    }
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut perms: Vec<Vec<usize>> = classes.clone();
    loop {
        // new index i is held by old parameter `flat[i]`
        let flat: Vec<usize> = perms.iter().flatten().copied().collect();
        let mut sigma = vec![0; n];
        for (i, &p) in flat.iter().enumerate() {
            sigma[p] = i;
        }
        let mut key = vec![n];
        for &p in &flat {
            row(m, p, &sigma, &mut key);
        }
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, sigma));
        }
        if !advance(&mut perms) {
            break;
        }
    }
    best.expect("at least one ordering")
}

/// Steps the product of per-class permutations; false when exhausted.
fn advance(perms: &mut [Vec<usize>]) -> bool {
    for class in perms.iter_mut().rev() {
        if next_permutation(class) {
            return true;
        }
        class.sort_unstable();
    }
    false
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// The representative of `m` on parameters `{0, …, n-1}`.
pub(crate) fn canonical(m: &IntLearner) -> (Vec<usize>, IntLearner) {
    let (key, sigma) = canonical_key(m);
    let n = m.p().len();
    let mut inv = vec![0; n];
    for (p, &i) in sigma.iter().enumerate() {
        inv[i] = p;
    }
    let rep = IntLearner::from_fns(
        m.boundary().clone(),
        FinSet::range(n),
        |i, a| m.implement(inv[i], a),
        |i, a, b| sigma[m.update(inv[i], a, b)],
        |i, a, b| m.request(inv[i], a, b),
    );
    (key, rep)
}
