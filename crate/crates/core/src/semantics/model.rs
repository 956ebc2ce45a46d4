use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{mismatch, Result};
use crate::finbase::{
    graph_rel, pair_index, rel_cap, rel_compose, rel_cup, rel_tensor, FinFun, FinRel, FinSet,
};

/// A compact closed category whose objects are finite sets, each its own
/// dual, receiving a symmetric monoidal functor from `FinSet`.
pub trait CompactClosedModel {
    type Hom: Clone + PartialEq + fmt::Debug;

    fn name(&self) -> &'static str;
    /// The functor on base morphisms.
    fn base(&self, f: &FinFun) -> Self::Hom;
    fn identity(&self, x: &FinSet) -> Self::Hom;
    /// `f ; g`.
    fn compose(&self, f: &Self::Hom, g: &Self::Hom) -> Result<Self::Hom>;
    fn tensor(&self, f: &Self::Hom, g: &Self::Hom) -> Self::Hom;
    /// `η_X : I → X ⊗ X`.
    fn cup(&self, x: &FinSet) -> Self::Hom;
    /// `ε_X : X ⊗ X → I`.
    fn cap(&self, x: &FinSet) -> Self::Hom;
    /// The relation of nonzero entries, used to compare across models.
    fn support(&self, f: &Self::Hom) -> FinRel;
}

/// Relations with the cartesian product as tensor; the base functor is the
/// graph.
#[derive(Clone, Copy, Debug, Default)]
pub struct RelModel;

impl CompactClosedModel for RelModel {
    type Hom = FinRel;

    fn name(&self) -> &'static str {
        "rel"
    }

    fn base(&self, f: &FinFun) -> FinRel {
        graph_rel(f)
    }

    fn identity(&self, x: &FinSet) -> FinRel {
        FinRel::identity(x)
    }

    fn compose(&self, f: &FinRel, g: &FinRel) -> Result<FinRel> {
        rel_compose(f, g)
    }

    fn tensor(&self, f: &FinRel, g: &FinRel) -> FinRel {
        rel_tensor(f, g)
    }

    fn cup(&self, x: &FinSet) -> FinRel {
        rel_cup(x)
    }

    fn cap(&self, x: &FinSet) -> FinRel {
        rel_cap(x)
    }

    fn support(&self, f: &FinRel) -> FinRel {
        f.clone()
    }
}

/// A matrix over the natural numbers, rows indexed by `dom`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NatMatrix {
    dom: FinSet,
    cod: FinSet,
    entries: Vec<u64>,
}

impl NatMatrix {
    pub fn zeros(dom: &FinSet, cod: &FinSet) -> Self {
        NatMatrix {
            dom: dom.clone(),
            cod: cod.clone(),
            entries: vec![0; dom.len() * cod.len()],
        }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cod.len() + j]
    }

    fn set(&mut self, i: usize, j: usize, v: u64) {
        let n = self.cod.len();
        self.entries[i * n + j] = v;
    }
}

impl fmt::Debug for NatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NatMatrix {} -> {} ", self.dom, self.cod)?;
        let nonzero = (0..self.dom.len()).flat_map(|i| {
            (0..self.cod.len())
                .filter(move |&j| self.get(i, j) != 0)
                .map(move |j| (i, j))
        });
        f.debug_map()
            .entries(nonzero.map(|(i, j)| {
                (
                    format!("{}~{}", self.dom.label(i), self.cod.label(j)),
                    self.get(i, j),
                )
            }))
            .finish()
    }
}

/// Matrices over `ℕ` with the Kronecker product. The image of a learner
/// counts parameter witnesses instead of recording their existence.
#[derive(Clone, Copy, Debug, Default)]
pub struct CountingModel;

impl CompactClosedModel for CountingModel {
    type Hom = NatMatrix;

    fn name(&self) -> &'static str {
        "count"
    }

    fn base(&self, f: &FinFun) -> NatMatrix {
        let mut m = NatMatrix::zeros(f.dom(), f.cod());
        for (i, &j) in f.table().iter().enumerate() {
            m.set(i, j, 1);
        }
        m
    }

    fn identity(&self, x: &FinSet) -> NatMatrix {
        self.base(&FinFun::identity(x))
    }

    fn compose(&self, f: &NatMatrix, g: &NatMatrix) -> Result<NatMatrix> {
        if f.cod != g.dom {
            return Err(mismatch("matrix product", &g.dom, &f.cod));
        }
        let mut out = NatMatrix::zeros(&f.dom, &g.cod);
        for i in 0..f.dom.len() {
            for k in 0..f.cod.len() {
                let a = f.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..g.cod.len() {
                    let v = out.get(i, j) + a * g.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn tensor(&self, f: &NatMatrix, g: &NatMatrix) -> NatMatrix {
        let mut out = NatMatrix::zeros(&f.dom.product(&g.dom), &f.cod.product(&g.cod));
        let (gd, gc) = (g.dom.len(), g.cod.len());
        for x in 0..f.dom.len() {
            for y in 0..f.cod.len() {
                let a = f.get(x, y);
                if a == 0 {
                    continue;
                }
                for u in 0..gd {
                    for v in 0..gc {
                        out.set(pair_index(gd, x, u), pair_index(gc, y, v), a * g.get(u, v));
                    }
                }
            }
        }
        out
    }

    fn cup(&self, x: &FinSet) -> NatMatrix {
        let mut m = NatMatrix::zeros(&FinSet::unit(), &x.product(x));
        for i in 0..x.len() {
            m.set(0, pair_index(x.len(), i, i), 1);
        }
        m
    }

    fn cap(&self, x: &FinSet) -> NatMatrix {
        let mut m = NatMatrix::zeros(&x.product(x), &FinSet::unit());
        for i in 0..x.len() {
            m.set(pair_index(x.len(), i, i), 0, 1);
        }
        m
    }

    fn support(&self, f: &NatMatrix) -> FinRel {
        let pairs = (0..f.dom.len()).flat_map(|i| {
            (0..f.cod.len())
                .filter(move |&j| f.get(i, j) != 0)
                .map(move |j| (i, j))
        });
        FinRel::new(f.dom.clone(), f.cod.clone(), pairs).expect("indices in range")
    }
}

/// Checks both snake identities for `x` in `model`.
pub fn snakes_hold<M: CompactClosedModel>(model: &M, x: &FinSet) -> Result<bool> {
    let id = model.identity(x);
    let regroup = |from: &FinSet, to: &FinSet| {
        model.base(&FinFun::from_fn(from, to, |i| i))
    };
    let unit = FinSet::unit();
    let xx = x.product(x);
    // X ≅ X×I → X×(X×X) ≅ (X×X)×X → I×X ≅ X
    let one = [
        regroup(x, &x.product(&unit)),
        model.tensor(&id, &model.cup(x)),
        regroup(&x.product(&xx), &xx.product(x)),
        model.tensor(&model.cap(x), &id),
        regroup(&unit.product(x), x),
    ];
    // X ≅ I×X → (X×X)×X ≅ X×(X×X) → X×I ≅ X
    let two = [
        regroup(x, &unit.product(x)),
        model.tensor(&model.cup(x), &id),
        regroup(&xx.product(x), &x.product(&xx)),
        model.tensor(&id, &model.cap(x)),
        regroup(&x.product(&unit), x),
    ];
    let run = |steps: &[M::Hom]| -> Result<M::Hom> {
        steps[1..]
            .iter()
            .try_fold(steps[0].clone(), |acc, s| model.compose(&acc, s))
    };
    Ok(run(&one)? == id && run(&two)? == id)
}
