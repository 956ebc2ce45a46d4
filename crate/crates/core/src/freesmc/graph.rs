//! Open hypergraphs of free symmetric monoidal terms.
//!
//! Wires are vertices and generator occurrences are hyperedges with ordered
//! input and output ports. A term denotes an acyclic hypergraph in which every
//! wire has at most one producer and at most one consumer; two terms are equal
//! in the free symmetric monoidal category exactly when their hypergraphs are
//! isomorphic as open hypergraphs (preserving boundary order and port order).
//!
//! Isomorphism is decided by a canonical numbering. Starting from the input
//! wires and then the output wires, a breadth-first walk visits the producer
//! and then the consumer of each wire, and the input and then the output ports
//! of each edge. Ports are ordered, so the walk needs no tie-breaking.
//! Components not reachable from the boundary (scalars) are numbered from each
//! of their edges in turn; the least encoding is kept and the components are
//! sorted.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::signature::Signature;
use super::syntax::Term;
use crate::error::{mismatch, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub label: String,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    /// Object type of each wire.
    pub wires: Vec<String>,
    pub edges: Vec<Edge>,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

/// A scalar component, numbered locally.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Floating {
    pub wires: Vec<String>,
    pub edges: Vec<(String, Vec<usize>, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub wires: Vec<String>,
    pub edges: Vec<(String, Vec<usize>, Vec<usize>)>,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub floating: Vec<Floating>,
}

struct Builder<'a> {
    sig: &'a Signature,
    g: Hypergraph,
}

impl Builder<'_> {
    fn wire(&mut self, ty: &str) -> usize {
        self.g.wires.push(ty.to_string());
        self.g.wires.len() - 1
    }

    fn build(&mut self, t: &Term, ins: Vec<usize>) -> Result<Vec<usize>> {
        Ok(match t {
            Term::Id(_) => ins,
            Term::Gen(name) => {
                let cod = self.sig.generator(name)?.cod.clone();
                let outputs: Vec<usize> = cod.iter().map(|o| self.wire(o)).collect();
                self.g.edges.push(Edge {
                    label: name.clone(),
                    inputs: ins,
                    outputs: outputs.clone(),
                });
                outputs
            }
            Term::Sym(a, _) => {
                let (x, y) = ins.split_at(a.len());
                y.iter().chain(x).copied().collect()
            }
            Term::Seq(s, t) => {
                let mid = self.build(s, ins)?;
                self.build(t, mid)?
            }
            Term::Par(s, t) => {
                let k = self.sig.typecheck(s)?.0.len();
                let mut left = ins;
                let right = left.split_off(k);
                let mut out = self.build(s, left)?;
                out.extend(self.build(t, right)?);
                out
            }
        })
    }
}

/// The hypergraph of a well-typed term.
pub fn to_hypergraph(t: &Term, sig: &Signature) -> Result<Hypergraph> {
    let (dom, _) = sig.typecheck(t)?;
    let mut b = Builder {
        sig,
        g: Hypergraph {
            wires: Vec::new(),
            edges: Vec::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        },
    };
    let inputs: Vec<usize> = dom.iter().map(|o| b.wire(o)).collect();
    let outputs = b.build(t, inputs.clone())?;
    b.g.inputs = inputs;
    b.g.outputs = outputs;
    Ok(b.g)
}

struct Incidence {
    producer: Vec<Option<usize>>,
    consumer: Vec<Option<usize>>,
}

fn incidence(h: &Hypergraph) -> Incidence {
    let mut producer = vec![None; h.wires.len()];
    let mut consumer = vec![None; h.wires.len()];
    for (e, edge) in h.edges.iter().enumerate() {
        for &w in &edge.inputs {
            consumer[w] = Some(e);
        }
        for &w in &edge.outputs {
            producer[w] = Some(e);
        }
    }
    Incidence { producer, consumer }
}

/// Numbering of wires and edges reached from the given roots.
struct Walk {
    wire_no: Vec<Option<usize>>,
    edge_no: Vec<Option<usize>>,
    wire_order: Vec<usize>,
    edge_order: Vec<usize>,
}

impl Walk {
    fn new(h: &Hypergraph) -> Self {
        Walk {
            wire_no: vec![None; h.wires.len()],
            edge_no: vec![None; h.edges.len()],
            wire_order: Vec::new(),
            edge_order: Vec::new(),
        }
    }

    fn run(&mut self, h: &Hypergraph, inc: &Incidence, wires: &[usize], edge: Option<usize>) {
        let mut queue = VecDeque::new();
        if let Some(e) = edge {
            self.visit_edge(h, e, &mut queue);
        }
        for &w in wires {
            self.visit_wire(w, &mut queue);
        }
        while let Some(w) = queue.pop_front() {
            for e in [inc.producer[w], inc.consumer[w]].into_iter().flatten() {
                self.visit_edge(h, e, &mut queue);
            }
        }
    }

    fn visit_wire(&mut self, w: usize, queue: &mut VecDeque<usize>) {
        if self.wire_no[w].is_none() {
            self.wire_no[w] = Some(self.wire_order.len());
            self.wire_order.push(w);
            queue.push_back(w);
        }
    }

    fn visit_edge(&mut self, h: &Hypergraph, e: usize, queue: &mut VecDeque<usize>) {
        if self.edge_no[e].is_some() {
            return;
        }
        self.edge_no[e] = Some(self.edge_order.len());
        self.edge_order.push(e);
        let edge = &h.edges[e];
        for &w in edge.inputs.iter().chain(&edge.outputs) {
            self.visit_wire(w, queue);
        }
    }

    fn encode(&self, h: &Hypergraph) -> (Vec<String>, Vec<(String, Vec<usize>, Vec<usize>)>) {
        let num = |w: &usize| self.wire_no[*w].expect("reached");
        let wires = self
            .wire_order
            .iter()
            .map(|&w| h.wires[w].clone())
            .collect();
        let edges = self
            .edge_order
            .iter()
            .map(|&e| {
                let edge = &h.edges[e];
                (
                    edge.label.clone(),
                    edge.inputs.iter().map(num).collect(),
                    edge.outputs.iter().map(num).collect(),
                )
            })
            .collect();
        (wires, edges)
    }
}

/// The canonical form of `h`; isomorphic open hypergraphs and only those have
/// equal forms.
pub fn hypergraph_canonical(h: &Hypergraph) -> CanonicalForm {
    let inc = incidence(h);
    let mut walk = Walk::new(h);
    let roots: Vec<usize> = h.inputs.iter().chain(&h.outputs).copied().collect();
    walk.run(h, &inc, &roots, None);
    let (wires, edges) = walk.encode(h);
    let num = |w: &usize| walk.wire_no[*w].expect("boundary wire");
    let inputs = h.inputs.iter().map(num).collect();
    let outputs = h.outputs.iter().map(num).collect();

    let mut floating = Vec::new();
    for e in 0..h.edges.len() {
        if walk.edge_no[e].is_some() {
            continue;
        }
        // Collect the component once, then try each of its edges as anchor.
        let e0 = walk.edge_order.len();
        walk.run(h, &inc, &[], Some(e));
        let component: Vec<usize> = walk.edge_order[e0..].to_vec();
        let mut best: Option<Floating> = None;
        for &anchor in &component {
            let mut local = Walk::new(h);
            local.run(h, &inc, &[], Some(anchor));
            let (wires, edges) = local.encode(h);
            let cand = Floating { wires, edges };
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        floating.push(best.expect("component has an edge"));
    }
    floating.sort();
    CanonicalForm {
        wires,
        edges,
        inputs,
        outputs,
        floating,
    }
}

impl CanonicalForm {
    /// The hypergraph described by this form.
    pub fn to_hypergraph(&self) -> Hypergraph {
        let mut g = Hypergraph {
            wires: self.wires.clone(),
            edges: Vec::new(),
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
        };
        let push = |g: &mut Hypergraph, offset: usize, edges: &[(String, Vec<usize>, Vec<usize>)]| {
            for (label, ins, outs) in edges {
                g.edges.push(Edge {
                    label: label.clone(),
                    inputs: ins.iter().map(|w| w + offset).collect(),
                    outputs: outs.iter().map(|w| w + offset).collect(),
                });
            }
        };
        push(&mut g, 0, &self.edges);
        for f in &self.floating {
            let offset = g.wires.len();
            g.wires.extend(f.wires.iter().cloned());
            push(&mut g, offset, &f.edges);
        }
        g
    }
}

pub fn canonical(t: &Term, sig: &Signature) -> Result<CanonicalForm> {
    Ok(hypergraph_canonical(&to_hypergraph(t, sig)?))
}

/// Whether `t1` and `t2` denote the same morphism of the free symmetric
/// monoidal category on `sig`.
pub fn structural_eq(t1: &Term, t2: &Term, sig: &Signature) -> Result<bool> {
    let ty1 = sig.typecheck(t1)?;
    let ty2 = sig.typecheck(t2)?;
    if ty1 != ty2 {
        let show = |(d, c): &(Vec<String>, Vec<String>)| format!("[{}] -> [{}]", d.join(" "), c.join(" "));
        return Err(mismatch("structural_eq", show(&ty1), show(&ty2)));
    }
    Ok(canonical(t1, sig)? == canonical(t2, sig)?)
}
