//! Diagonal measurements over outcome tables, information-bounded toy
//! states, an exact CHSH calculus for local hidden variables, a two-qubit
//! engine and a checker for reasoning chains that fuse inferences across
//! contexts.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod feasibility;
pub mod lhv;
pub mod outcome;
pub mod quantum;
pub mod reasoner;
pub mod toy;

pub use error::{Error, Result};
pub use outcome::Outcome;
