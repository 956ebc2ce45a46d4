//! Bounded breadth-first search over the equivalence closure of a one-step
//! relation.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::canonical::canonical;
use super::search::{diagonal_filler, find_map, Mode};
use super::witness::Witness;
use crate::error::Result;
use crate::finbase::{FinFun, FinSet};
use crate::intensional::IntLearner;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureOptions {
    /// Largest parameter set visited.
    pub bound: usize,
    /// Candidate learners generated before giving up.
    pub budget: usize,
    /// Whether to try the invariant refutations before searching.
    pub use_invariant: bool,
}

impl ClosureOptions {
    pub fn with_bound(bound: usize) -> Self {
        ClosureOptions {
            bound,
            budget: 2_000_000,
            use_invariant: true,
        }
    }
}

/// One step of a chain. When `forward` is set the witness relates
/// `nodes[i] → nodes[i+1]`, otherwise `nodes[i+1] → nodes[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub forward: bool,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub nodes: Vec<IntLearner>,
    pub links: Vec<Link>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// Re-checks every witness along the chain.
    pub fn validate(&self) -> Result<()> {
        for (i, link) in self.links.iter().enumerate() {
            let (a, b) = (&self.nodes[i], &self.nodes[i + 1]);
            if link.forward {
                link.witness.validate(a, b)?;
            } else {
                link.witness.validate(b, a)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Refutation {
    /// The learners have different stable behaviour.
    StableBehaviour,
    /// The learners have different fixed-point counts.
    FixedPoints,
    /// Every learner reachable within the bound was visited.
    Exhausted { explored: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Closure {
    Yes { chain: Chain },
    NoWithinBound { refutation: Refutation },
    Unknown { explored: usize },
}

impl Closure {
    pub fn is_yes(&self) -> bool {
        matches!(self, Closure::Yes { .. })
    }

    pub fn chain(&self) -> Option<&Chain> {
        match self {
            Closure::Yes { chain } => Some(chain),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Relation {
    Extensional,
    Surjective,
}

impl Relation {
    fn mode(self) -> Mode {
        match self {
            Relation::Extensional => Mode::Diagonal,
            Relation::Surjective => Mode::Surjective,
        }
    }

    pub(crate) fn witness(self, m1: &IntLearner, m2: &IntLearner) -> Option<Witness> {
        let f = find_map(m1, m2, self.mode())?;
        let fun = FinFun::new(m1.p().clone(), m2.p().clone(), f.clone()).expect("map in range");
        Some(match self {
            Relation::Extensional => Witness::DiagonalFiller {
                f: fun,
                uhat: FinFun::new(
                    m2.update_fun().dom().clone(),
                    m1.p().clone(),
                    diagonal_filler(m1, m2, &f),
                )
                .expect("filler in range"),
            },
            Relation::Surjective => Witness::Surjective { f: fun },
        })
    }

    fn link(self, a: &IntLearner, b: &IntLearner) -> Option<Link> {
        if let Some(w) = self.witness(a, b) {
            return Some(Link {
                forward: true,
                witness: w,
            });
        }
        self.witness(b, a).map(|w| Link {
            forward: false,
            witness: w,
        })
    }

    fn neighbours(self, m: &IntLearner, bound: usize, emit: &mut dyn FnMut(IntLearner) -> bool) {
        match self {
            Relation::Extensional => {
                ext_forward(m, bound, emit);
                ext_backward(m, bound, emit);
            }
            Relation::Surjective => {
                surj_forward(m, emit);
                surj_backward(m, bound, emit);
            }
        }
    }
}

/// One direction of the bidirectional search.
struct Side {
    nodes: Vec<IntLearner>,
    parent: Vec<Option<usize>>,
    seen: HashMap<Vec<usize>, usize>,
    frontier: Vec<usize>,
}

impl Side {
    fn new(root: &IntLearner) -> Self {
        let (key, _) = canonical(root);
        Side {
            nodes: vec![root.clone()],
            parent: vec![None],
            seen: HashMap::from([(key, 0)]),
            frontier: vec![0],
        }
    }

    /// Nodes from the root to `i`.
    fn path(&self, mut i: usize) -> Vec<IntLearner> {
        let mut out = vec![self.nodes[i].clone()];
        while let Some(p) = self.parent[i] {
            out.push(self.nodes[p].clone());
            i = p;
        }
        out.reverse();
        out
    }
}

/// Meeting point: node `i` of the expanded side, its neighbour (the other
/// side's node `j`).
struct Meeting {
    expanded: usize,
    i: usize,
    j: usize,
}

pub(crate) fn search(
    rel: Relation,
    m1: &IntLearner,
    m2: &IntLearner,
    opts: &ClosureOptions,
) -> Closure {
    let mut sides = [Side::new(m1), Side::new(m2)];
    let mut generated = 0usize;
    let mut out_of_budget = false;
    let mut meeting = sides[0]
        .seen
        .contains_key(canonical(m2).0.as_slice())
        .then_some(Meeting {
            expanded: 0,
            i: 0,
            j: 0,
        });

    while meeting.is_none() && !out_of_budget {
        // An exhausted side is a whole component that never met the other.
        if sides.iter().any(|side| side.frontier.is_empty()) {
            break;
        }
        let s = usize::from(sides[1].frontier.len() < sides[0].frontier.len());
        let [a, b] = &mut sides;
        let (this, other) = if s == 0 { (a, b) } else { (b, a) };
        let frontier = std::mem::take(&mut this.frontier);
        let mut next = Vec::new();
        'expand: for i in frontier {
            let current = this.nodes[i].clone();
            let mut fresh = Vec::new();
            let mut hit = None;
            rel.neighbours(&current, opts.bound, &mut |cand| {
                generated += 1;
                if generated >= opts.budget {
                    out_of_budget = true;
                }
                let (key, rep) = canonical(&cand);
                if let Some(&j) = other.seen.get(&key) {
                    hit = Some(j);
                    return false;
                }
                if !this.seen.contains_key(&key) {
                    this.seen.insert(key.clone(), usize::MAX);
                    fresh.push((key, rep));
                }
                !out_of_budget
            });
            for (key, rep) in fresh {
                let idx = this.nodes.len();
                this.seen.insert(key, idx);
                this.nodes.push(rep);
                this.parent.push(Some(i));
                next.push(idx);
            }
            if let Some(j) = hit {
                meeting = Some(Meeting { expanded: s, i, j });
                break 'expand;
            }
            if out_of_budget {
                break;
            }
        }
        this.frontier = next;
    }

    let Some(Meeting { expanded, i, j }) = meeting else {
        let explored = sides[0].nodes.len() + sides[1].nodes.len();
        return if out_of_budget {
            Closure::Unknown { explored }
        } else {
            Closure::NoWithinBound {
                refutation: Refutation::Exhausted { explored },
            }
        };
    };
    let (i0, i1) = if expanded == 0 { (i, j) } else { (j, i) };
    let mut nodes = sides[0].path(i0);
    let mut back = sides[1].path(i1);
    back.reverse();
    nodes.extend(back);
    nodes.dedup();
    let links = nodes
        .windows(2)
        .map(|w| rel.link(&w[0], &w[1]).expect("generated neighbour is related"))
        .collect();
    Closure::Yes {
        chain: Chain { nodes, links },
    }
}

/// Calls `visit` on every restricted-growth string of length `n` (a set
/// partition with blocks numbered by first occurrence).
fn for_each_partition(n: usize, visit: &mut dyn FnMut(&[usize], usize) -> bool) {
    fn go(
        f: &mut Vec<usize>,
        n: usize,
        blocks: usize,
        visit: &mut dyn FnMut(&[usize], usize) -> bool,
    ) -> bool {
        if f.len() == n {
            return visit(f, blocks);
        }
        for b in 0..=blocks {
            f.push(b);
            let more = go(f, n, blocks.max(b + 1), visit);
            f.pop();
            if !more {
                return false;
            }
        }
        true
    }
    go(&mut Vec::with_capacity(n), n, 0, visit);
}

/// Advances a non-decreasing sequence over `0..base`; false when exhausted.
fn next_multiset(seq: &mut [usize], base: usize) -> bool {
    for k in (0..seq.len()).rev() {
        if seq[k] + 1 < base {
            let v = seq[k] + 1;
            seq[k..].iter_mut().for_each(|s| *s = v);
            return true;
        }
    }
    false
}

/// Odometer over `digits` positions each ranging over `0..base`.
#[cfg(test)]
fn for_each_tuple(digits: usize, base: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    if base == 0 && digits > 0 {
        return;
    }
    let mut t = vec![0; digits];
    loop {
        if !visit(&t) {
            return;
        }
        let mut k = digits;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            t[k] += 1;
            if t[k] < base {
                break;
            }
            t[k] = 0;
        }
    }
}

fn pow(base: usize, exp: usize) -> usize {
    base.checked_pow(exp as u32).unwrap_or(usize::MAX)
}

/// A parameter described by its implement, request and update rows.
#[derive(Clone)]
struct Row {
    implement: Vec<usize>,
    request: Vec<usize>,
    update: Vec<usize>,
}

fn row_of(m: &IntLearner, p: usize) -> Row {
    let na = m.boundary().a().len();
    Row {
        implement: (0..na).map(|a| m.implement(p, a)).collect(),
        request: (0..m.inputs()).map(|x| m.request_at(p, x)).collect(),
        update: (0..m.inputs()).map(|x| m.update_at(p, x)).collect(),
    }
}

fn build(m: &IntLearner, rows: &[Row]) -> IntLearner {
    let nb = m.boundary().b_prime().len();
    IntLearner::from_fns(
        m.boundary().clone(),
        FinSet::range(rows.len()),
        |p, a| rows[p].implement[a],
        |p, a, b| rows[p].update[a * nb + b],
        |p, a, b| rows[p].request[a * nb + b],
    )
}

/// Decodes junk descriptor `d` into a row with updates in `0..image`.
fn junk_row(m: &IntLearner, image: usize, mut d: usize) -> Row {
    let na = m.boundary().a().len();
    let nx = m.inputs();
    let (nb, na_) = (m.boundary().b().len(), m.boundary().a_prime().len());
    let mut digits = |n: usize, base: usize| -> Vec<usize> {
        (0..n)
            .map(|_| {
                let v = d % base;
                d /= base;
                v
            })
            .collect()
    };
    Row {
        implement: digits(na, nb),
        request: digits(nx, na_),
        update: digits(nx, image),
    }
}

/// All `m'` with a one-step extensional witness `m → m'`, up to renaming.
fn ext_forward(m: &IntLearner, bound: usize, emit: &mut dyn FnMut(IntLearner) -> bool) {
    let n = m.p().len();
    let rows: Vec<Row> = (0..n).map(|p| row_of(m, p)).collect();
    let na = m.boundary().a().len();
    let nx = m.inputs();
    let (nb, na_) = (m.boundary().b().len(), m.boundary().a_prime().len());
    for_each_partition(n, &mut |f, blocks| {
        let mut rep = vec![usize::MAX; blocks];
        for p in 0..n {
            let r = &rows[p];
            match rep[f[p]] {
                usize::MAX => rep[f[p]] = p,
                q => {
                    let s = &rows[q];
                    if r.implement != s.implement || r.request != s.request || r.update != s.update
                    {
                        return true;
                    }
                }
            }
        }
        let image: Vec<Row> = rep
            .iter()
            .map(|&p| Row {
                implement: rows[p].implement.clone(),
                request: rows[p].request.clone(),
                update: rows[p].update.iter().map(|&q| f[q]).collect(),
            })
            .collect();
        let descriptors = pow(nb, na)
            .saturating_mul(pow(na_, nx))
            .saturating_mul(pow(blocks, nx));
        for junk in 0..=bound.saturating_sub(blocks) {
            if junk > 0 && descriptors == 0 {
                break;
            }
            // multisets of descriptors, as non-decreasing sequences
            let mut seq = vec![0usize; junk];
            loop {
                let mut all = image.clone();
                all.extend(seq.iter().map(|&d| junk_row(m, blocks, d)));
                if !emit(build(m, &all)) {
                    return false;
                }
                if !next_multiset(&mut seq, descriptors) {
                    break;
                }
            }
        }
        true
    });
}

/// Non-negative vectors of length `n` with entries summing to at most `bound`.
fn for_each_multiplicity(
    n: usize,
    bound: usize,
    min: usize,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    fn go(
        c: &mut Vec<usize>,
        n: usize,
        left: usize,
        min: usize,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if c.len() == n {
            return visit(c);
        }
        for k in min..=left {
            c.push(k);
            let more = go(c, n, left - k, min, visit);
            c.pop();
            if !more {
                return false;
            }
        }
        true
    }
    if n * min <= bound {
        go(&mut Vec::with_capacity(n), n, bound, min, visit);
    }
}

/// Copies `(p, k)` of each parameter, laid out parameter-major.
fn copies(c: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut owner = Vec::new();
    let mut start = Vec::with_capacity(c.len());
    for (p, &k) in c.iter().enumerate() {
        start.push(owner.len());
        owner.extend(std::iter::repeat_n(p, k));
    }
    (owner, start)
}

/// All `m''` with a one-step extensional witness `m'' → m`, up to renaming.
fn ext_backward(m: &IntLearner, bound: usize, emit: &mut dyn FnMut(IntLearner) -> bool) {
    let n = m.p().len();
    let nx = m.inputs();
    let rows: Vec<Row> = (0..n).map(|p| row_of(m, p)).collect();
    for_each_multiplicity(n, bound, 0, &mut |c| {
        if (0..n).any(|p| (0..nx).any(|x| c[rows[p].update[x]] == 0)) {
            return true;
        }
        let (owner, start) = copies(c);
        // Û(p, x) = start[U(p, x)] + choice
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|p| (0..nx).map(move |x| (p, x))).collect();
        let mut choice = vec![0usize; slots.len()];
        loop {
            let uhat = |p: usize, x: usize| {
                let u = rows[p].update[x];
                start[u] + choice[p * nx + x]
            };
            let new_rows: Vec<Row> = owner
                .iter()
                .map(|&p| Row {
                    implement: rows[p].implement.clone(),
                    request: rows[p].request.clone(),
                    update: (0..nx).map(|x| uhat(p, x)).collect(),
                })
                .collect();
            if !emit(build(m, &new_rows)) {
                return false;
            }
            let mut k = slots.len();
            loop {
                if k == 0 {
                    return true;
                }
                k -= 1;
                let (p, x) = slots[k];
                choice[k] += 1;
                if choice[k] < c[rows[p].update[x]] {
                    break;
                }
                choice[k] = 0;
            }
        }
    });
}

/// All surjective quotients of `m` by congruences.
fn surj_forward(m: &IntLearner, emit: &mut dyn FnMut(IntLearner) -> bool) {
    let n = m.p().len();
    let nx = m.inputs();
    let rows: Vec<Row> = (0..n).map(|p| row_of(m, p)).collect();
    for_each_partition(n, &mut |f, blocks| {
        if blocks == n {
            return true;
        }
        let mut rep = vec![usize::MAX; blocks];
        for p in 0..n {
            match rep[f[p]] {
                usize::MAX => rep[f[p]] = p,
                q => {
                    let (r, s) = (&rows[p], &rows[q]);
                    if r.implement != s.implement
                        || r.request != s.request
                        || (0..nx).any(|x| f[r.update[x]] != f[s.update[x]])
                    {
                        return true;
                    }
                }
            }
        }
        let quotient: Vec<Row> = rep
            .iter()
            .map(|&p| Row {
                implement: rows[p].implement.clone(),
                request: rows[p].request.clone(),
                update: rows[p].update.iter().map(|&q| f[q]).collect(),
            })
            .collect();
        emit(build(m, &quotient))
    });
}

/// All `m''` with a surjective homomorphism onto `m`, up to renaming.
fn surj_backward(m: &IntLearner, bound: usize, emit: &mut dyn FnMut(IntLearner) -> bool) {
    let n = m.p().len();
    let nx = m.inputs();
    let rows: Vec<Row> = (0..n).map(|p| row_of(m, p)).collect();
    for_each_multiplicity(n, bound, 1, &mut |c| {
        if c.iter().all(|&k| k == 1) {
            return true;
        }
        let (owner, start) = copies(c);
        let total = owner.len();
        let mut choice = vec![0usize; total * nx];
        loop {
            let new_rows: Vec<Row> = owner
                .iter()
                .enumerate()
                .map(|(s, &p)| Row {
                    implement: rows[p].implement.clone(),
                    request: rows[p].request.clone(),
                    update: (0..nx)
                        .map(|x| start[rows[p].update[x]] + choice[s * nx + x])
                        .collect(),
                })
                .collect();
            if !emit(build(m, &new_rows)) {
                return false;
            }
            let mut k = total * nx;
            loop {
                if k == 0 {
                    return true;
                }
                k -= 1;
                let (s, x) = (k / nx, k % nx);
                choice[k] += 1;
                if choice[k] < c[rows[owner[s]].update[x]] {
                    break;
                }
                choice[k] = 0;
            }
        }
    });
}
