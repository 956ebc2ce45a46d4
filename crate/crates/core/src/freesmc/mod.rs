//! The free symmetric monoidal category on a signature: terms, typing,
//! hypergraph normal forms, evaluation in `FinSet`, and learners whose maps
//! are formal terms.

mod eval;
mod file;
mod formal;
mod graph;
mod signature;
mod syntax;

pub use eval::{random_interpretation, Interpretation, InterpretationSpec};
pub use file::{parse_document, Document};
pub use formal::{
    atemp_check_formal, eval_learner, formal_cap, formal_compose, formal_cup, formal_dual,
    formal_identity, formal_iota, formal_snake, formal_tensor, FormalLearner, FormalVerdict,
};
pub use graph::{
    canonical, hypergraph_canonical, structural_eq, to_hypergraph, CanonicalForm, Edge, Floating,
    Hypergraph,
};
pub use signature::{GenDecl, Signature};
pub use syntax::{parse_term, to_word, Term, Word};
