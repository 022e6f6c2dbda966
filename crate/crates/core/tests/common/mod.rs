#![allow(dead_code)]

use proptest::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use zphi::semantics::{Descriptor, Interpretation};
use zphi::syntax::Formula;

pub const VARS: [&str; 3] = ["x", "y", "z"];

/// Formulas over the given variable names, all of which may be bound.
pub fn formula_over(vars: &'static [&'static str], depth: u32) -> impl Strategy<Value = Formula> {
    let var = proptest::sample::select(vars);
    let leaf = (var.clone(), var.clone(), any::<bool>()).prop_map(|(a, b, eq)| {
        if eq {
            Formula::equal(a, b)
        } else {
            Formula::member(a, b)
        }
    });
    leaf.prop_recursive(depth, 64, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::iff(l, r)),
            (var.clone(), inner.clone()).prop_map(|(v, b)| Formula::forall(v, b)),
            (var.clone(), inner).prop_map(|(v, b)| Formula::exists(v, b)),
        ]
    })
}

pub fn formula() -> impl Strategy<Value = Formula> {
    formula_over(&VARS, 4)
}

/// Closes a formula by existentially binding its free variables.
pub fn close(f: Formula) -> Formula {
    f.free_variables()
        .into_iter()
        .rev()
        .fold(f, |acc, v| Formula::exists(v, acc))
}

/// Models whose universe is a set of pure descriptors with small codes.
pub fn coded_model(max_code: u64, max_size: usize) -> impl Strategy<Value = Interpretation> {
    proptest::collection::btree_set(0..max_code, 0..=max_size)
        .prop_map(|codes| zphi::constructions::ackermann_model(codes, true))
}

/// Models mixing pure sets and sets with atoms `p`, `q`.
pub fn mixed_model(max_size: usize) -> impl Strategy<Value = Interpretation> {
    let atoms = [Descriptor::atom("p"), Descriptor::atom("q")];
    let element = (0u64..16, 0u8..4).prop_map(move |(code, mask)| {
        let mut members: Vec<Descriptor> = Descriptor::from_code(code).external_members().to_vec();
        for (i, a) in atoms.iter().enumerate() {
            if mask >> i & 1 == 1 {
                members.push(a.clone());
            }
        }
        Descriptor::set(members)
    });
    proptest::collection::btree_set(element, 0..=max_size).prop_map(|set| {
        Interpretation::new(
            set.into_iter()
                .enumerate()
                .map(|(i, d)| (format!("e{i}"), d)),
            true,
        )
        .unwrap()
    })
}

/// Direct recursive evaluation on descriptors: membership is looked up in
/// the member lists, identity is descriptor equality.
pub fn naive(m: &Interpretation, f: &Formula, env: &BTreeMap<String, usize>) -> bool {
    let u = m.universe();
    let look = |t: &zphi::syntax::Term| env[t.name()];
    match f {
        Formula::Member(a, b) => u[look(b)].external_members().contains(&u[look(a)]),
        Formula::Equal(a, b) => u[look(a)] == u[look(b)],
        Formula::Not(g) => !naive(m, g, env),
        Formula::And(l, r) => naive(m, l, env) && naive(m, r, env),
        Formula::Or(l, r) => naive(m, l, env) || naive(m, r, env),
        Formula::Implies(l, r) => !naive(m, l, env) || naive(m, r, env),
        Formula::Iff(l, r) => naive(m, l, env) == naive(m, r, env),
        Formula::Forall(v, b) | Formula::Exists(v, b) => {
            let mut inner = env.clone();
            let mut results = (0..u.len()).map(|i| {
                inner.insert(v.clone(), i);
                naive(m, b, &inner)
            });
            if matches!(f, Formula::Forall(..)) {
                results.all(|x| x)
            } else {
                results.any(|x| x)
            }
        }
    }
}

/// Every assignment of `vars` to elements of a universe of size `n`.
pub fn assignments(vars: &[String], n: usize) -> Vec<BTreeMap<String, usize>> {
    let mut out = vec![BTreeMap::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|env| {
                (0..n).map(move |i| {
                    let mut e = env.clone();
                    e.insert(v.clone(), i);
                    e
                })
            })
            .collect();
    }
    out
}

/// All finite transitive sets of pure sets with at most `max_size`
/// elements. A nonempty transitive set always has an element that belongs
/// to no other element, and removing it leaves a transitive set, so every
/// one is reached by adding a new subset of an existing one.
pub fn transitive_sets(max_size: usize) -> Vec<BTreeSet<Descriptor>> {
    let mut all: BTreeSet<BTreeSet<Descriptor>> = BTreeSet::new();
    let mut layer: BTreeSet<BTreeSet<Descriptor>> = [BTreeSet::new()].into();
    for _ in 0..max_size {
        all.extend(layer.iter().cloned());
        let mut next = BTreeSet::new();
        for t in &layer {
            let elems: Vec<&Descriptor> = t.iter().collect();
            for mask in 0u32..1 << elems.len() {
                let x = Descriptor::set(
                    elems
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, d)| (*d).clone()),
                );
                if !t.contains(&x) {
                    let mut bigger = t.clone();
                    bigger.insert(x);
                    next.insert(bigger);
                }
            }
        }
        layer = next;
    }
    all.extend(layer);
    all.into_iter().collect()
}

pub fn model_of(set: &BTreeSet<Descriptor>) -> Interpretation {
    Interpretation::new(
        set.iter()
            .enumerate()
            .map(|(i, d)| (format!("e{i}"), d.clone())),
        true,
    )
    .unwrap()
}
