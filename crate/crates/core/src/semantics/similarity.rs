//! Similarity: two elements are similar when they have the same internal
//! members, i.e. when `forall t (t in a <-> t in b)` holds of them. This
//! needs no identity predicate.

use super::{EvalError, Structure};
use crate::rewrite::membership_equivalence;
use crate::syntax::{Formula, Term};

fn check_index<S: Structure + ?Sized>(m: &S, i: usize) -> Result<(), EvalError> {
    if i >= m.size() {
        return Err(EvalError::IndexOutOfRange {
            index: i,
            size: m.size(),
        });
    }
    Ok(())
}

fn similar_unchecked<S: Structure + ?Sized>(m: &S, x: usize, y: usize) -> bool {
    (0..m.size()).all(|t| m.is_member(t, x) == m.is_member(t, y))
}

/// `x` and `y` have the same internal members.
pub fn similarity<S: Structure + ?Sized>(m: &S, x: usize, y: usize) -> Result<bool, EvalError> {
    check_index(m, x)?;
    check_index(m, y)?;
    Ok(similar_unchecked(m, x, y))
}

/// The defining formula of similarity between two variables, with a bound
/// variable distinct from both.
pub fn similarity_formula(a: &str, b: &str) -> Formula {
    let t = crate::rewrite::fresh_variable(&[a.to_owned(), b.to_owned()].into());
    membership_equivalence(&t, &Term::var(a), &Term::var(b))
}

/// The universe partitioned into similarity classes. Each class is sorted
/// and classes are ordered by their least index.
pub fn similarity_classes<S: Structure + ?Sized>(m: &S) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..m.size() {
        match classes.iter_mut().find(|c| similar_unchecked(m, c[0], i)) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

/// Two similar elements `x < y` and a container holding exactly one of
/// them: a failure of substitutivity for similarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubstitutivityWitness {
    pub x: usize,
    pub y: usize,
    pub container: usize,
}

/// The lexicographically least substitutivity failure `(x, y, container)`,
/// or `None` when similar elements always belong to the same elements.
pub fn substitutivity_witness<S: Structure + ?Sized>(m: &S) -> Option<SubstitutivityWitness> {
    let n = m.size();
    for x in 0..n {
        for y in x + 1..n {
            if !similar_unchecked(m, x, y) {
                continue;
            }
            if let Some(c) = (0..n).find(|&c| m.is_member(x, c) != m.is_member(y, c)) {
                return Some(SubstitutivityWitness { x, y, container: c });
            }
        }
    }
    None
}
