pub mod equivalence;
pub mod error;
pub mod finbase;
pub mod freesmc;
pub mod intensional;
pub mod learner;
pub mod sample;
pub mod semantics;
pub mod smooth;

pub use error::{Error, Result};
