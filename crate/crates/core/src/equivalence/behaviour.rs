//! Stable behaviour: the bisimulation classes of parameters that survive
//! arbitrarily many updates.
//!
//! A learner is a Mealy machine over inputs `(a, b')` with output
//! `(I(p, a), r(p, a, b'))`. Write `R₀ = P` and `R_{n+1} = U(R_n × A × B')`;
//! the eventual image `R_∞` is reached after at most `|P|` steps. If `m₁ → m₂`
//! is an extensional one-step relation then `f` maps `R_n(m₁)` onto a subset of
//! `R_n(m₂)` and `Û` maps `R_{n+1}(m₂)` into `R_n(m₁)`, both preserving
//! behaviour, so the set of behaviours of `R_∞` is shared by every learner in
//! the same extensional class.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::intensional::IntLearner;

/// Bisimulation class of each parameter, over the disjoint union of `ms`.
/// Parameters of `ms[k]` are numbered after those of `ms[..k]`.
pub(crate) fn bisimulation_classes(ms: &[&IntLearner]) -> Vec<usize> {
    let nx = ms[0].inputs();
    let na = ms[0].boundary().a().len();
    let mut offsets = Vec::with_capacity(ms.len());
    let mut total = 0;
    for m in ms {
        offsets.push(total);
        total += m.p().len();
    }
    let locate = |s: usize| {
        let k = offsets.iter().rposition(|&o| o <= s).expect("offset");
        (k, s - offsets[k])
    };
    let mut class: Vec<usize> = {
        let mut ids = HashMap::new();
        (0..total)
            .map(|s| {
                let (k, p) = locate(s);
                let m = ms[k];
                let sig: Vec<usize> = (0..na)
                    .map(|a| m.implement(p, a))
                    .chain((0..nx).map(|x| m.request_at(p, x)))
                    .collect();
                let next = ids.len();
                *ids.entry(sig).or_insert(next)
            })
            .collect()
    };
    loop {
        let mut ids = HashMap::new();
        let refined: Vec<usize> = (0..total)
            .map(|s| {
                let (k, p) = locate(s);
                let m = ms[k];
                let sig: Vec<usize> = std::iter::once(class[s])
                    .chain((0..nx).map(|x| class[offsets[k] + m.update_at(p, x)]))
                    .collect();
                let next = ids.len();
                *ids.entry(sig).or_insert(next)
            })
            .collect();
        let before = class.iter().collect::<BTreeSet<_>>().len();
        let after = ids.len();
        class = refined;
        if after == before {
            return class;
        }
    }
}

/// The eventual image `R_∞ ⊆ P` of iterated updates.
pub fn eventual_image(m: &IntLearner) -> Vec<usize> {
    let mut current: BTreeSet<usize> = (0..m.p().len()).collect();
    loop {
        let next: BTreeSet<usize> = current
            .iter()
            .flat_map(|&p| (0..m.inputs()).map(move |x| m.update_at(p, x)))
            .collect();
        if next == current {
            return current.into_iter().collect();
        }
        current = next;
    }
}

/// True when the stable behaviours of `m1` and `m2` differ, which rules out
/// extensional equivalence.
pub fn stable_behaviour_differs(m1: &IntLearner, m2: &IntLearner) -> bool {
    let class = bisimulation_classes(&[m1, m2]);
    let n1 = m1.p().len();
    let left: BTreeSet<usize> = eventual_image(m1).into_iter().map(|p| class[p]).collect();
    let right: BTreeSet<usize> = eventual_image(m2)
        .into_iter()
        .map(|p| class[n1 + p])
        .collect();
    left != right
}

/// Fixed-point counts: for each `(a, b')`, the number of parameters `p` with
/// `U(p, a, b') = p`, split by the outputs `(I(p, a), r(p, a, b'))`.
///
/// A one-step witness `(f, Û)` restricts to a bijection between fixed points
/// with equal outputs (`f` one way, `Û` the other), so these counts are shared
/// by extensionally equivalent learners. They are the matrix entries of the
/// image in the counting model.
pub fn fixed_point_counts(m: &IntLearner) -> BTreeMap<(usize, usize, usize, usize), usize> {
    let bd = m.boundary();
    let mut counts = BTreeMap::new();
    for p in 0..m.p().len() {
        for a in 0..bd.a().len() {
            for b in 0..bd.b_prime().len() {
                if m.update(p, a, b) == p {
                    let key = (a, b, m.implement(p, a), m.request(p, a, b));
                    *counts.entry(key).or_insert(0) += 1;
                }
            }
        }
    }
    counts
}
