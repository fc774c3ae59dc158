pub mod backtrack;
pub mod carter;
pub mod chain;
pub mod cli;
pub mod engine;
pub mod error;
pub mod group;
pub mod grpspec;
pub mod hom;
pub mod inducedaut;
pub mod perm;
pub mod series;
pub mod subgrp;

pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;
pub use engine::Engine;
