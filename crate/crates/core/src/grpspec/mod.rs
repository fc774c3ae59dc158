//! A small language for building permutation groups.

pub mod ast;
pub mod build;
pub mod corpus;
pub mod field;
pub mod parse;

pub use ast::{Construction, Generator};
pub use build::{build, build_paper_example, build_spec, BuiltGroup};
pub use parse::{parse_spec, validate};
