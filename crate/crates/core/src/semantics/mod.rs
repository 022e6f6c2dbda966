//! Finite interpretations of the language of set theory and truth in them.
//!
//! An [`Interpretation`] is a finite universe of [`Descriptor`]s. Membership
//! inside the model (internal membership) is external membership restricted
//! to the universe, so a universe element may have members that are not
//! themselves in the universe. Those are invisible to formulas, which is how
//! non-transitive models arise.
//!
//! Evaluation and the similarity checks work over any [`Structure`], which
//! is also implemented by [`AbstractStructure`] so that arbitrary (possibly
//! cyclic) membership relations can be examined.

mod collapse;
mod descriptor;
mod eval;
pub mod files;
mod interpretation;
mod similarity;

pub use collapse::{mostowski_collapse, AbstractStructure, Collapse, CollapseError};
pub use descriptor::{Descriptor, Members};
pub use eval::{
    evaluate, evaluate_full, verify_witness, Env, EvalError, EvalStats, Evaluation, Witness,
};
pub use interpretation::{Counterexample, Interpretation, ModelError};
pub use similarity::{
    similarity, similarity_classes, similarity_formula, substitutivity_witness,
    SubstitutivityWitness,
};

/// A finite first-order structure for the language of set theory.
pub trait Structure {
    /// Number of universe elements; elements are `0..size()`.
    fn size(&self) -> usize;

    /// Internal membership: `member ∈ container` inside the model.
    fn is_member(&self, member: usize, container: usize) -> bool;

    /// The element a constant name denotes, if any.
    fn constant(&self, name: &str) -> Option<usize>;

    /// Whether the identity predicate is interpreted.
    fn has_identity(&self) -> bool;

    /// Display name of an element.
    fn label(&self, index: usize) -> String;
}

impl<S: Structure + ?Sized> Structure for &S {
    fn size(&self) -> usize {
        (**self).size()
    }
    fn is_member(&self, member: usize, container: usize) -> bool {
        (**self).is_member(member, container)
    }
    fn constant(&self, name: &str) -> Option<usize> {
        (**self).constant(name)
    }
    fn has_identity(&self) -> bool {
        (**self).has_identity()
    }
    fn label(&self, index: usize) -> String {
        (**self).label(index)
    }
}
