//! Exact computer algebra for matching (multi-indexed) Rota-Baxter,
//! dendriform, tridendriform, pre-Lie and PostLie structures.

pub mod axioms;
pub mod error;
pub mod exactalg;
pub mod freedend;
pub mod operators;
pub mod prelie_trees;
pub mod structure;
pub mod transforms;
pub mod trees;

pub use error::{Error, Result};
