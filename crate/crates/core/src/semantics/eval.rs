//! Tarskian evaluation by exhaustive quantifier iteration.
//!
//! A formula is first compiled against the structure: every term becomes a
//! slot in a flat assignment vector (quantified variables get their own
//! slot, free variables and constants are resolved once). Quantifiers then
//! iterate their slot over the universe in order, short-circuiting on the
//! first decisive element.

use super::Structure;
use crate::syntax::{Formula, Quantifier, Term};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Assignment of variable names to universe indices.
pub type Env = BTreeMap<String, usize>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("`{0}` is neither a bound variable, an assigned variable nor a named constant")]
    Unbound(String),
    #[error("formula uses identity but the model does not interpret it")]
    IdentityNotInterpreted,
    #[error("index {index} is outside a universe of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
}

/// Counters collected during one evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalStats {
    /// Every time a quantifier binds its variable to an element.
    pub bindings: u64,
    /// Bindings made by quantifiers whose body is quantifier-free.
    pub innermost_bindings: u64,
}

/// The leading block of same-kind quantifiers that decides a closed
/// formula's truth value: for a false `forall` block, the least falsifying
/// assignment; for a true `exists` block, the least satisfying one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub quantifier: Quantifier,
    pub bindings: Vec<(String, usize)>,
    pub labels: Vec<String>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.labels.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: bool,
    pub witness: Option<Witness>,
    pub stats: EvalStats,
}

enum Node {
    Member(usize, usize),
    Equal(usize, usize),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Quant {
        q: Quantifier,
        slot: usize,
        innermost: bool,
        body: Box<Node>,
    },
}

struct Compiler<'a, S: ?Sized> {
    model: &'a S,
    env: &'a Env,
    scope: Vec<(&'a str, usize)>,
    slots: Vec<usize>,
    slot_names: Vec<String>,
}

impl<'a, S: Structure + ?Sized> Compiler<'a, S> {
    fn term(&mut self, t: &'a Term) -> Result<usize, EvalError> {
        let value = match t {
            Term::Var(n) => {
                if let Some(&(_, slot)) = self.scope.iter().rev().find(|(v, _)| v == n) {
                    return Ok(slot);
                }
                self.env.get(n).copied().or_else(|| self.model.constant(n))
            }
            Term::Const(n) => self.model.constant(n),
        };
        let value = value.ok_or_else(|| EvalError::Unbound(t.name().to_owned()))?;
        if value >= self.model.size() {
            return Err(EvalError::IndexOutOfRange {
                index: value,
                size: self.model.size(),
            });
        }
        self.slots.push(value);
        self.slot_names.push(t.name().to_owned());
        Ok(self.slots.len() - 1)
    }

    fn compile(&mut self, f: &'a Formula) -> Result<Node, EvalError> {
        let bin = |c: &mut Self, l: &'a Formula, r: &'a Formula| -> Result<_, EvalError> {
            Ok((Box::new(c.compile(l)?), Box::new(c.compile(r)?)))
        };
        Ok(match f {
            Formula::Member(a, b) => Node::Member(self.term(a)?, self.term(b)?),
            Formula::Equal(a, b) => {
                if !self.model.has_identity() {
                    return Err(EvalError::IdentityNotInterpreted);
                }
                Node::Equal(self.term(a)?, self.term(b)?)
            }
            Formula::Not(g) => Node::Not(Box::new(self.compile(g)?)),
            Formula::And(l, r) => {
                let (l, r) = bin(self, l, r)?;
                Node::And(l, r)
            }
            Formula::Or(l, r) => {
                let (l, r) = bin(self, l, r)?;
                Node::Or(l, r)
            }
            Formula::Implies(l, r) => {
                let (l, r) = bin(self, l, r)?;
                Node::Implies(l, r)
            }
            Formula::Iff(l, r) => {
                let (l, r) = bin(self, l, r)?;
                Node::Iff(l, r)
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let q = f.as_quantified().unwrap().0;
                let slot = self.slots.len();
                self.slots.push(0);
                self.slot_names.push(v.clone());
                self.scope.push((v, slot));
                let compiled = self.compile(body)?;
                self.scope.pop();
                Node::Quant {
                    q,
                    slot,
                    innermost: body.quantifier_count() == 0,
                    body: Box::new(compiled),
                }
            }
        })
    }
}

struct Machine<'a, S: ?Sized> {
    model: &'a S,
    n: usize,
    slots: Vec<usize>,
    stats: EvalStats,
}

impl<S: Structure + ?Sized> Machine<'_, S> {
    fn eval(&mut self, node: &Node) -> bool {
        match node {
            Node::Member(a, b) => self.model.is_member(self.slots[*a], self.slots[*b]),
            Node::Equal(a, b) => self.slots[*a] == self.slots[*b],
            Node::Not(g) => !self.eval(g),
            Node::And(l, r) => self.eval(l) && self.eval(r),
            Node::Or(l, r) => self.eval(l) || self.eval(r),
            Node::Implies(l, r) => !self.eval(l) || self.eval(r),
            Node::Iff(l, r) => self.eval(l) == self.eval(r),
            Node::Quant {
                q,
                slot,
                innermost,
                body,
            } => {
                // forall stops at the first false body, exists at the first true
                let decisive = *q == Quantifier::Exists;
                for i in 0..self.n {
                    self.slots[*slot] = i;
                    self.stats.bindings += 1;
                    if *innermost {
                        self.stats.innermost_bindings += 1;
                    }
                    if self.eval(body) == decisive {
                        return decisive;
                    }
                }
                !decisive
            }
        }
    }
}

fn compile<'a, S: Structure + ?Sized>(
    model: &'a S,
    f: &'a Formula,
    env: &'a Env,
) -> Result<(Node, Vec<usize>, Vec<String>), EvalError> {
    let mut c = Compiler {
        model,
        env,
        scope: Vec::new(),
        slots: Vec::new(),
        slot_names: Vec::new(),
    };
    let root = c.compile(f)?;
    Ok((root, c.slots, c.slot_names))
}

/// Truth value of `f` in `model` under `env`. Free variables are looked up
/// in `env` first and then among the model's constants.
pub fn evaluate<S: Structure + ?Sized>(
    model: &S,
    f: &Formula,
    env: &Env,
) -> Result<bool, EvalError> {
    let (root, slots, _) = compile(model, f, env)?;
    let mut m = Machine {
        model,
        n: model.size(),
        slots,
        stats: EvalStats::default(),
    };
    Ok(m.eval(&root))
}

/// Truth value with the deciding witness (if the formula starts with a
/// quantifier block of the deciding kind) and evaluation counters.
///
/// The witness is the lexicographically least assignment under universe
/// order.
pub fn evaluate_full<S: Structure + ?Sized>(
    model: &S,
    f: &Formula,
    env: &Env,
) -> Result<Evaluation, EvalError> {
    let (root, slots, names) = compile(model, f, env)?;
    let mut m = Machine {
        model,
        n: model.size(),
        slots,
        stats: EvalStats::default(),
    };
    let value = m.eval(&root);
    let stats = m.stats;
    let kind = if value {
        Quantifier::Exists
    } else {
        Quantifier::Forall
    };
    let mut bindings = Vec::new();
    let mut node = &root;
    while let Node::Quant { q, slot, body, .. } = node {
        if *q != kind {
            break;
        }
        let chosen = (0..m.n).find(|&i| {
            m.slots[*slot] = i;
            m.eval(body) == value
        });
        let Some(i) = chosen else { break };
        m.slots[*slot] = i;
        bindings.push((names[*slot].clone(), i));
        node = body;
    }
    let witness = (!bindings.is_empty()).then(|| Witness {
        quantifier: kind,
        labels: bindings.iter().map(|(_, i)| model.label(*i)).collect(),
        bindings,
    });
    Ok(Evaluation {
        value,
        witness,
        stats,
    })
}

/// Re-checks a witness independently of the search that produced it: the
/// quantifier prefix it covers is stripped, its bindings are added to
/// `env`, and the remaining body must evaluate to `value`.
pub fn verify_witness<S: Structure + ?Sized>(
    model: &S,
    f: &Formula,
    env: &Env,
    value: bool,
    witness: &Witness,
) -> Result<bool, EvalError> {
    let mut body = f;
    let mut env = env.clone();
    for (var, index) in &witness.bindings {
        match body.as_quantified() {
            Some((q, v, b)) if q == witness.quantifier && v == var => {
                env.insert(v.to_owned(), *index);
                body = b;
            }
            _ => return Ok(false),
        }
    }
    Ok(evaluate(model, body, &env)? == value)
}
