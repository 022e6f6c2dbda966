//! Identity-free set theory on a desk.
//!
//! Formulas of the first-order language with `in` and `=` are parsed and
//! printed in a canonical ASCII form ([`syntax`]). [`rewrite`] replaces
//! every identity atom by a membership condition, [`axioms`] holds the ZF
//! axioms and their identity-free translations, and [`semantics`]
//! evaluates formulas in finite interpretations whose elements are
//! hereditarily finite sets, possibly with atoms. [`constructions`] builds
//! the standard example models and [`metacheck`] compares ZF with its
//! translation across them.

pub mod axioms;
pub mod cli;
pub mod constructions;
pub mod metacheck;
pub mod rewrite;
pub mod semantics;
pub mod syntax;

use thiserror::Error;

/// Any failure reported by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] syntax::ParseError),
    #[error(transparent)]
    Axiom(#[from] axioms::AxiomError),
    #[error(transparent)]
    Eval(#[from] semantics::EvalError),
    #[error(transparent)]
    Model(#[from] semantics::ModelError),
    #[error(transparent)]
    Collapse(#[from] semantics::CollapseError),
    #[error(transparent)]
    Construction(#[from] constructions::ConstructionError),
    #[error(transparent)]
    Metacheck(#[from] metacheck::MetacheckError),
    #[error("{path}: {source}")]
    File {
        path: String,
        source: semantics::files::FileError,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}
