//! Finite sets, total functions and relations.
//!
//! `FinSet` is the cartesian base category; `FinRel` with the product tensor
//! is the compact closed target, reached through [`graph_rel`].

mod fun;
mod rel;
mod set;

pub use fun::{
    associator, associator_inv, compose_fun, id_fun, left_unitor, left_unitor_inv, pair_index,
    right_unitor, right_unitor_inv, split_index, symmetry, FinFun,
};
pub use rel::{graph_rel, rel_cap, rel_compose, rel_converse, rel_cup, rel_tensor, FinRel};
pub use set::{product, FinSet, UNIT_LABEL};
