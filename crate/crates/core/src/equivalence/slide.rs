//! Search for a single coend slide `(u, v)` between two representatives.

use crate::learner::Learner;

/// Lexicographically least `(u, v)` (comparing `u` first) such that
/// `l₁ = (v × B) ∘ l₂ ∘ (u × A)` and `r₂ = (u × A') ∘ r₁ ∘ (v × B')`.
pub(crate) fn find_slide(l1: &Learner, l2: &Learner) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut st = Slide {
        l1,
        l2,
        u: vec![None; l1.p().len()],
        v: vec![None; l2.q().len()],
        trail: Vec::new(),
    };
    if !st.dfs() {
        return None;
    }
    let u = st.u.iter().map(|x| x.expect("complete")).collect();
    let v = st.v.iter().map(|x| x.expect("complete")).collect();
    Some((u, v))
}

#[derive(Clone, Copy)]
enum Var {
    U(usize),
    V(usize),
}

struct Slide<'a> {
    l1: &'a Learner,
    l2: &'a Learner,
    u: Vec<Option<usize>>,
    v: Vec<Option<usize>>,
    trail: Vec<Var>,
}

impl Slide<'_> {
    fn dfs(&mut self) -> bool {
        let (var, range) = if let Some(p) = self.u.iter().position(Option::is_none) {
            (Var::U(p), self.l2.p().len())
        } else if let Some(q) = self.v.iter().position(Option::is_none) {
            (Var::V(q), self.l1.q().len())
        } else {
            return true;
        };
        for value in 0..range {
            let mark = self.trail.len();
            if self.assign(var, value) && self.dfs() {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    fn assign(&mut self, var: Var, value: usize) -> bool {
        let bd = self.l1.boundary();
        let (na, nb_) = (bd.a().len(), bd.b_prime().len());
        let mut queue = vec![(var, value)];
        while let Some((var, value)) = queue.pop() {
            let slot = match var {
                Var::U(p) => &mut self.u[p],
                Var::V(q) => &mut self.v[q],
            };
            match *slot {
                Some(w) if w == value => continue,
                Some(_) => return false,
                None => *slot = Some(value),
            }
            self.trail.push(var);
            match var {
                Var::U(p1) => {
                    for a in 0..na {
                        let (q1, b1) = self.l1.forward(p1, a);
                        let (q2, b2) = self.l2.forward(value, a);
                        if b1 != b2 {
                            return false;
                        }
                        queue.push((Var::V(q2), q1));
                    }
                }
                Var::V(q2) => {
                    for b in 0..nb_ {
                        let (p2, a2) = self.l2.backward(q2, b);
                        let (p1, a1) = self.l1.backward(value, b);
                        if a1 != a2 {
                            return false;
                        }
                        queue.push((Var::U(p1), p2));
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail entry") {
                Var::U(p) => self.u[p] = None,
                Var::V(q) => self.v[q] = None,
            }
        }
    }
}
