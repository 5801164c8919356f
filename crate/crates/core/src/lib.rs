//! Deciding equality of canonical arrows in free monoidal categories with a
//! strong monad or comonad, by comparing their graphs.

pub mod cli;
pub mod decide;
pub mod error;
pub mod relgraph;
pub mod rewrite;
pub mod sample;
pub mod semantics;
pub mod syntax;
pub mod terms;

pub use error::{Error, Result};
