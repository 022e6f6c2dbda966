//! Abstract syntax of the first-order language of set theory.
//!
//! The language has two binary predicates, membership (`in`) and identity
//! (`=`), the usual connectives and the two quantifiers. Terms are plain
//! variables or constants; there are no function symbols. Constants are
//! resolved against the named elements of a model at evaluation time.

mod parse;

use std::collections::BTreeSet;
use std::fmt;

pub use parse::{parse, ParseError};

/// Returns true if `name` is a well-formed identifier: a letter followed by
/// letters, digits or underscores, and not one of the reserved words.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !parse::is_keyword(name)
}

/// A term of the language: a variable or a constant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) | Term::Const(n) => n,
        }
    }

    fn is_var(&self, name: &str) -> bool {
        matches!(self, Term::Var(n) if n == name)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A formula of the first-order language of set theory.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    /// `lhs in rhs`
    Member(Term, Term),
    /// `lhs = rhs`
    Equal(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

/// The two quantifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantifier::Forall => "forall",
            Quantifier::Exists => "exists",
        })
    }
}

impl Formula {
    /// Membership between two variables.
    pub fn member(lhs: &str, rhs: &str) -> Self {
        Formula::Member(Term::var(lhs), Term::var(rhs))
    }

    /// Identity between two variables.
    pub fn equal(lhs: &str, rhs: &str) -> Self {
        Formula::Equal(Term::var(lhs), Term::var(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Self {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Self {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Self {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn iff(lhs: Formula, rhs: Formula) -> Self {
        Formula::Iff(Box::new(lhs), Box::new(rhs))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(var.into(), Box::new(body))
    }

    /// Builds a quantified formula from a quantifier kind.
    pub fn quantified(q: Quantifier, var: impl Into<String>, body: Formula) -> Self {
        match q {
            Quantifier::Forall => Formula::forall(var, body),
            Quantifier::Exists => Formula::exists(var, body),
        }
    }

    /// Splits a quantified formula into its parts.
    pub fn as_quantified(&self) -> Option<(Quantifier, &str, &Formula)> {
        match self {
            Formula::Forall(v, b) => Some((Quantifier::Forall, v, b)),
            Formula::Exists(v, b) => Some((Quantifier::Exists, v, b)),
            _ => None,
        }
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Member(..) | Formula::Equal(..) => vec![],
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => vec![f],
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                vec![l, r]
            }
        }
    }

    /// The subformula at a child-index path, if the path is valid.
    pub fn at(&self, path: &[usize]) -> Option<&Formula> {
        path.iter()
            .try_fold(self, |f, &i| f.children().get(i).copied())
    }

    fn is_binary(&self) -> bool {
        matches!(
            self,
            Formula::And(..) | Formula::Or(..) | Formula::Implies(..) | Formula::Iff(..)
        )
    }

    /// Variables occurring free.
    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Member(a, b) | Formula::Equal(a, b) => {
                for t in [a, b] {
                    if let Term::Var(n) = t {
                        if !bound.contains(&n.as_str()) {
                            out.insert(n.clone());
                        }
                    }
                }
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                bound.push(v);
                f.collect_free(bound, out);
                bound.pop();
            }
            _ => {
                for c in self.children() {
                    c.collect_free(bound, out);
                }
            }
        }
    }

    /// True if `var` occurs free.
    pub fn is_free(&self, var: &str) -> bool {
        match self {
            Formula::Member(a, b) | Formula::Equal(a, b) => a.is_var(var) || b.is_var(var),
            Formula::Forall(v, f) | Formula::Exists(v, f) => v != var && f.is_free(var),
            _ => self.children().into_iter().any(|c| c.is_free(var)),
        }
    }

    /// Every variable name occurring in the formula, free or bound.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Member(a, b) | Formula::Equal(a, b) => {
                for t in [a, b] {
                    if let Term::Var(n) = t {
                        out.insert(n.clone());
                    }
                }
            }
            Formula::Forall(v, _) | Formula::Exists(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    /// Variables bound by some quantifier in the formula.
    pub fn bound_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Some((_, v, _)) = f.as_quantified() {
                out.insert(v.to_owned());
            }
        });
        out
    }

    /// Constant names occurring in the formula.
    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Member(a, b) | Formula::Equal(a, b) = f {
                for t in [a, b] {
                    if let Term::Const(n) = t {
                        out.insert(n.clone());
                    }
                }
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, visitor: &mut impl FnMut(&'a Formula)) {
        visitor(self);
        for c in self.children() {
            c.visit(visitor);
        }
    }

    /// True iff no identity atom occurs.
    pub fn is_identity_free(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, Formula::Equal(..)));
        !found
    }

    pub fn is_closed(&self) -> bool {
        self.free_variables().is_empty()
    }

    /// Number of quantifier occurrences.
    pub fn quantifier_count(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |f| n += usize::from(f.as_quantified().is_some()));
        n
    }

    /// Height of the syntax tree; atoms have depth 0.
    pub fn depth(&self) -> usize {
        self.children()
            .into_iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    /// Replaces the free occurrences of variable `var` by `term`.
    ///
    /// Bound variables that would capture `term` are renamed to the first
    /// unused name in the family `b0, b1, ...` where `b` is the bound name.
    pub fn substitute(&self, var: &str, term: &Term) -> Formula {
        if !self.is_free(var) {
            return self.clone();
        }
        let map_term = |t: &Term| {
            if t.is_var(var) {
                term.clone()
            } else {
                t.clone()
            }
        };
        match self {
            Formula::Member(a, b) => Formula::Member(map_term(a), map_term(b)),
            Formula::Equal(a, b) => Formula::Equal(map_term(a), map_term(b)),
            Formula::Not(f) => Formula::not(f.substitute(var, term)),
            Formula::And(l, r) => Formula::and(l.substitute(var, term), r.substitute(var, term)),
            Formula::Or(l, r) => Formula::or(l.substitute(var, term), r.substitute(var, term)),
            Formula::Implies(l, r) => {
                Formula::implies(l.substitute(var, term), r.substitute(var, term))
            }
            Formula::Iff(l, r) => Formula::iff(l.substitute(var, term), r.substitute(var, term)),
            Formula::Forall(b, body) | Formula::Exists(b, body) => {
                let q = self.as_quantified().unwrap().0;
                if b == term.name() {
                    let mut avoid = body.variables();
                    avoid.extend(body.constants());
                    avoid.insert(var.to_owned());
                    avoid.insert(term.name().to_owned());
                    let fresh = indexed_fresh(b, &avoid);
                    let renamed = body.substitute(b, &Term::Var(fresh.clone()));
                    Formula::quantified(q, fresh, renamed.substitute(var, term))
                } else {
                    Formula::quantified(q, b.clone(), body.substitute(var, term))
                }
            }
        }
    }
}

/// First name in `base0, base1, ...` that is not in `avoid`.
pub(crate) fn indexed_fresh(base: &str, avoid: &BTreeSet<String>) -> String {
    (0..)
        .map(|i| format!("{base}{i}"))
        .find(|n| !avoid.contains(n))
        .expect("unbounded name supply")
}

impl Formula {
    fn fmt_wrapped(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_binary() {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.as_quantified().is_some() {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }

    fn fmt_binary(
        &self,
        f: &mut fmt::Formatter<'_>,
        l: &Formula,
        op: &str,
        r: &Formula,
    ) -> fmt::Result {
        f.write_str("(")?;
        l.fmt_operand(f)?;
        write!(f, " {op} ")?;
        r.fmt_operand(f)?;
        f.write_str(")")
    }
}

/// Canonical text form. Binary connectives are always parenthesized,
/// quantifier and negation bodies are wrapped in parentheses, and
/// quantified operands of a connective are parenthesized. The output
/// parses back to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Member(a, b) => write!(f, "{a} in {b}"),
            Formula::Equal(a, b) => write!(f, "{a} = {b}"),
            Formula::Not(g) => {
                f.write_str("~")?;
                g.fmt_wrapped(f)
            }
            Formula::And(l, r) => self.fmt_binary(f, l, "&", r),
            Formula::Or(l, r) => self.fmt_binary(f, l, "|", r),
            Formula::Implies(l, r) => self.fmt_binary(f, l, "->", r),
            Formula::Iff(l, r) => self.fmt_binary(f, l, "<->", r),
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                let q = self.as_quantified().unwrap().0;
                write!(f, "{q} {v} ")?;
                b.fmt_wrapped(f)
            }
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
