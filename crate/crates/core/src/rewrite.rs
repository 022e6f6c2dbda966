//! Identity elimination.
//!
//! Two rules turn a formula of set theory with identity into one that only
//! uses membership:
//!
//! * `NEQ`: `~(x = y)` becomes
//!   `exists t ((t in x & ~(t in y)) | (t in y & ~(t in x)))`
//! * `EQ`: any remaining `x = y` becomes `forall t (t in x <-> t in y)`
//!
//! `NEQ` is matched first, traversal is outside-in and left to right. The
//! bound variable `t` is chosen once per input so that it avoids every
//! name (free, bound or constant) occurring in the input. Since the
//! operands of an identity are terms, a replacement never contains
//! another identity, so one pass suffices.

use crate::syntax::{Formula, Term};
use std::collections::BTreeSet;
use std::fmt;

/// The rule applied at a position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Eq,
    Neq,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Eq => "EQ",
            Rule::Neq => "NEQ",
        })
    }
}

/// A child-index path from the root of a formula. Binary connectives
/// number their operands 0 and 1; negation and quantifiers have child 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Position(pub Vec<usize>);

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replacement {
    pub position: Position,
    pub rule: Rule,
}

/// Result of identity elimination together with where each rule fired.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteTrace {
    pub original: Formula,
    pub result: Formula,
    pub replacements: Vec<Replacement>,
}

impl RewriteTrace {
    /// One line per replacement: `path<TAB>rule`.
    pub fn trace_lines(&self) -> Vec<String> {
        self.replacements
            .iter()
            .map(|r| format!("{}\t{}", r.position, r.rule))
            .collect()
    }
}

/// First of `t, t0, t1, ...` not in `avoid`.
pub fn fresh_variable(avoid: &BTreeSet<String>) -> String {
    if !avoid.contains("t") {
        return "t".to_owned();
    }
    crate::syntax::indexed_fresh("t", avoid)
}

/// `forall t (t in a <-> t in b)`
pub fn membership_equivalence(t: &str, a: &Term, b: &Term) -> Formula {
    Formula::forall(
        t,
        Formula::iff(
            Formula::Member(Term::var(t), a.clone()),
            Formula::Member(Term::var(t), b.clone()),
        ),
    )
}

/// `exists t ((t in a & ~(t in b)) | (t in b & ~(t in a)))`
pub fn membership_difference(t: &str, a: &Term, b: &Term) -> Formula {
    let mem = |x: &Term| Formula::Member(Term::var(t), x.clone());
    Formula::exists(
        t,
        Formula::or(
            Formula::and(mem(a), Formula::not(mem(b))),
            Formula::and(mem(b), Formula::not(mem(a))),
        ),
    )
}

/// Replaces every identity atom by its membership rendering.
pub fn eliminate_identity(f: &Formula) -> RewriteTrace {
    let mut avoid = f.variables();
    avoid.extend(f.constants());
    let t = fresh_variable(&avoid);
    let mut replacements = Vec::new();
    let result = rewrite(f, &t, &mut Vec::new(), &mut replacements);
    RewriteTrace {
        original: f.clone(),
        result,
        replacements,
    }
}

fn rewrite(f: &Formula, t: &str, path: &mut Vec<usize>, out: &mut Vec<Replacement>) -> Formula {
    fn child(
        i: usize,
        g: &Formula,
        t: &str,
        path: &mut Vec<usize>,
        out: &mut Vec<Replacement>,
    ) -> Formula {
        path.push(i);
        let r = rewrite(g, t, path, out);
        path.pop();
        r
    }
    match f {
        Formula::Not(inner) => {
            if let Formula::Equal(a, b) = inner.as_ref() {
                out.push(Replacement {
                    position: Position(path.clone()),
                    rule: Rule::Neq,
                });
                return membership_difference(t, a, b);
            }
            Formula::not(child(0, inner, t, path, out))
        }
        Formula::Equal(a, b) => {
            out.push(Replacement {
                position: Position(path.clone()),
                rule: Rule::Eq,
            });
            membership_equivalence(t, a, b)
        }
        Formula::Member(..) => f.clone(),
        Formula::And(l, r) => {
            let l = child(0, l, t, path, out);
            Formula::and(l, child(1, r, t, path, out))
        }
        Formula::Or(l, r) => {
            let l = child(0, l, t, path, out);
            Formula::or(l, child(1, r, t, path, out))
        }
        Formula::Implies(l, r) => {
            let l = child(0, l, t, path, out);
            Formula::implies(l, child(1, r, t, path, out))
        }
        Formula::Iff(l, r) => {
            let l = child(0, l, t, path, out);
            Formula::iff(l, child(1, r, t, path, out))
        }
        Formula::Forall(v, b) => Formula::forall(v.clone(), child(0, b, t, path, out)),
        Formula::Exists(v, b) => Formula::exists(v.clone(), child(0, b, t, path, out)),
    }
}
