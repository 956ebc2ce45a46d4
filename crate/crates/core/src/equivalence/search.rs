//! Backtracking search for parameter maps `f : P → P'` between intensional
//! learners.
//!
//! Every relation decided here forces `U'(f p, x) = f(U(p, x))`, so fixing
//! `f(p)` fixes `f` on all successors of `p`. Candidates are tried in
//! ascending order with the smallest unassigned parameter first, which makes
//! the first solution the lexicographically least table.

use crate::intensional::IntLearner;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Bijective homomorphism.
    Bijection,
    /// Homomorphism with a diagonal filler: `U` constant on fibres of `f`,
    /// and every `U'` value lands in the image of `f`.
    Diagonal,
    /// Plain homomorphism (outer square only).
    Outer,
    /// Surjective homomorphism.
    Surjective,
}

pub(crate) fn find_map(m1: &IntLearner, m2: &IntLearner, mode: Mode) -> Option<Vec<usize>> {
    let n1 = m1.p().len();
    let n2 = m2.p().len();
    if mode == Mode::Bijection && n1 != n2 {
        return None;
    }
    if mode == Mode::Surjective && n1 < n2 {
        return None;
    }
    if n1 == 0 {
        return accept_leaf(m2, mode, &[]).then(Vec::new);
    }
    let na = m1.boundary().a().len();
    let nx = m1.inputs();

    // compat[p][p']: same implement and request rows.
    let compat: Vec<Vec<bool>> = (0..n1)
        .map(|p| {
            (0..n2)
                .map(|q| {
                    (0..na).all(|a| m1.implement(p, a) == m2.implement(q, a))
                        && (0..nx).all(|x| m1.request_at(p, x) == m2.request_at(q, x))
                })
                .collect()
        })
        .collect();
    if compat.iter().any(|row| !row.contains(&true)) {
        return None;
    }
    let same_update: Vec<Vec<bool>> = if mode == Mode::Diagonal {
        (0..n1)
            .map(|p| {
                (0..n1)
                    .map(|q| (0..nx).all(|x| m1.update_at(p, x) == m1.update_at(q, x)))
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };

    let mut st = State {
        m1,
        m2,
        mode,
        compat,
        same_update,
        f: vec![None; n1],
        hits: vec![0; n2],
        trail: Vec::new(),
    };
    st.dfs().then(|| st.f.iter().map(|v| v.expect("complete")).collect())
}

struct State<'a> {
    m1: &'a IntLearner,
    m2: &'a IntLearner,
    mode: Mode,
    compat: Vec<Vec<bool>>,
    same_update: Vec<Vec<bool>>,
    f: Vec<Option<usize>>,
    hits: Vec<usize>,
    trail: Vec<usize>,
}

impl State<'_> {
    fn dfs(&mut self) -> bool {
        let Some(p) = self.f.iter().position(Option::is_none) else {
            let f: Vec<usize> = self.f.iter().map(|v| v.expect("complete")).collect();
            return accept_leaf(self.m2, self.mode, &f);
        };
        if self.mode == Mode::Surjective {
            let free = self.f.iter().filter(|v| v.is_none()).count();
            let missing = self.hits.iter().filter(|&&h| h == 0).count();
            if free < missing {
                return false;
            }
        }
        for y in 0..self.m2.p().len() {
            let mark = self.trail.len();
            if self.assign(p, y) && self.dfs() {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    fn assign(&mut self, p: usize, y: usize) -> bool {
        let mut queue = vec![(p, y)];
        while let Some((p, y)) = queue.pop() {
            match self.f[p] {
                Some(z) if z == y => continue,
                Some(_) => return false,
                None => {}
            }
            if !self.compat[p][y] {
                return false;
            }
            if self.mode == Mode::Bijection && self.hits[y] > 0 {
                return false;
            }
            if self.mode == Mode::Diagonal {
                let clash = self
                    .f
                    .iter()
                    .enumerate()
                    .any(|(q, fq)| *fq == Some(y) && !self.same_update[p][q]);
                if clash {
                    return false;
                }
            }
            self.f[p] = Some(y);
            self.hits[y] += 1;
            self.trail.push(p);
            for x in 0..self.m1.inputs() {
                queue.push((self.m1.update_at(p, x), self.m2.update_at(y, x)));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let p = self.trail.pop().expect("trail entry");
            let y = self.f[p].take().expect("assigned");
            self.hits[y] -= 1;
        }
    }
}

fn accept_leaf(m2: &IntLearner, mode: Mode, f: &[usize]) -> bool {
    let n2 = m2.p().len();
    let mut in_image = vec![false; n2];
    for &y in f {
        in_image[y] = true;
    }
    match mode {
        Mode::Bijection | Mode::Outer => true,
        Mode::Surjective => in_image.iter().all(|&b| b),
        Mode::Diagonal => (0..n2).all(|q| {
            in_image[q] || (0..m2.inputs()).all(|x| in_image[m2.update_at(q, x)])
        }),
    }
}

/// Lexicographically least filler `Û : P' × X → P` for a diagonal-mode map.
pub(crate) fn diagonal_filler(m1: &IntLearner, m2: &IntLearner, f: &[usize]) -> Vec<usize> {
    let n2 = m2.p().len();
    let nx = m1.inputs();
    let mut first_preimage = vec![None; n2];
    for (p, &y) in f.iter().enumerate() {
        first_preimage[y].get_or_insert(p);
    }
    let mut table = Vec::with_capacity(n2 * nx);
    for q in 0..n2 {
        for x in 0..nx {
            let value = match first_preimage[q] {
                Some(p) => m1.update_at(p, x),
                None => first_preimage[m2.update_at(q, x)].expect("image covers updates"),
            };
            table.push(value);
        }
    }
    table
}
