//! Named models and exhaustive enumerators.

use crate::semantics::{AbstractStructure, Descriptor, Interpretation};
use crate::syntax::is_identifier;
use std::collections::BTreeSet;
use thiserror::Error;

/// Largest rank accepted by [`hf_fragment`]; rank 4 has 65536 elements.
pub const MAX_HF_RANK: usize = 3;
/// Largest node count accepted by [`enumerate_structures`].
pub const MAX_STRUCTURE_NODES: usize = 4;
/// Largest node count accepted by [`enumerate_irreflexive`].
pub const MAX_IRREFLEXIVE_NODES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{what} {value} exceeds the limit {limit}")]
    SizeGuard {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("pure fragment is not transitive: {0} has a member outside it")]
    FragmentNotTransitive(Descriptor),
    #[error("pure fragment contains the non-pure descriptor {0}")]
    FragmentNotPure(Descriptor),
    #[error("pure fragment lists {0} twice")]
    FragmentDuplicate(Descriptor),
    #[error("atom label `{0}` is invalid or repeated")]
    BadAtom(String),
}

fn guard(what: &'static str, value: usize, limit: usize) -> Result<(), ConstructionError> {
    if value > limit {
        return Err(ConstructionError::SizeGuard { what, value, limit });
    }
    Ok(())
}

/// The pure descriptors with the given Ackermann codes, in increasing code
/// order, each named `c<code>`.
pub fn ackermann_model(codes: impl IntoIterator<Item = u64>, has_identity: bool) -> Interpretation {
    let codes: BTreeSet<u64> = codes.into_iter().collect();
    Interpretation::new(
        codes
            .into_iter()
            .map(|c| (format!("c{c}"), Descriptor::from_code(c))),
        has_identity,
    )
    .expect("distinct codes give distinct descriptors")
}

/// Number of pure descriptors of rank at most `rank`.
fn hf_size(rank: usize) -> u64 {
    (0..rank).fold(1, |n, _| 1u64 << n)
}

/// All pure descriptors of rank at most `rank`, in code order. Sizes are
/// 1, 2, 4, 16 for ranks 0 to 3.
pub fn hf_fragment(rank: usize) -> Result<Vec<Descriptor>, ConstructionError> {
    guard("rank", rank, MAX_HF_RANK)?;
    Ok((0..hf_size(rank)).map(Descriptor::from_code).collect())
}

/// Transitive subsets of the rank-`rank` fragment, as sorted code lists.
///
/// Subsets are visited as bitmasks over the fragment's codes in increasing
/// mask order, stopping after `cap` masks; those closed under membership
/// are kept. With `cap = None` every subset is visited.
pub fn transitive_subuniverses(
    rank: usize,
    cap: Option<u64>,
) -> Result<Vec<Vec<u64>>, ConstructionError> {
    guard("rank", rank, MAX_HF_RANK)?;
    let size = hf_size(rank);
    let total = 1u64 << size;
    let limit = cap.map_or(total, |c| c.min(total));
    let mut out = Vec::new();
    for mask in 0..limit {
        let closed = (0..size).filter(|c| mask >> c & 1 == 1).all(|c| {
            (0..size)
                .filter(|m| c >> m & 1 == 1)
                .all(|m| mask >> m & 1 == 1)
        });
        if closed {
            out.push((0..size).filter(|c| mask >> c & 1 == 1).collect());
        }
    }
    Ok(out)
}

/// Input to [`recipe_model`]: a finite transitive set of pure descriptors
/// standing in for the pure sets, and the atom alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecipeSpec {
    pure_fragment: Vec<Descriptor>,
    atom_labels: Vec<String>,
}

impl RecipeSpec {
    pub fn new(
        pure_fragment: Vec<Descriptor>,
        atom_labels: Vec<String>,
    ) -> Result<Self, ConstructionError> {
        let mut seen = BTreeSet::new();
        for d in &pure_fragment {
            if !d.is_pure() {
                return Err(ConstructionError::FragmentNotPure(d.clone()));
            }
            if !seen.insert(d) {
                return Err(ConstructionError::FragmentDuplicate(d.clone()));
            }
        }
        for d in &pure_fragment {
            if d.external_members().iter().any(|m| !seen.contains(m)) {
                return Err(ConstructionError::FragmentNotTransitive(d.clone()));
            }
        }
        let mut labels = BTreeSet::new();
        for a in &atom_labels {
            if !is_identifier(a) || !labels.insert(a) {
                return Err(ConstructionError::BadAtom(a.clone()));
            }
        }
        Ok(RecipeSpec {
            pure_fragment,
            atom_labels,
        })
    }

    /// The rank-`rank` pure fragment with atoms `a1..a{atoms}`.
    pub fn standard(rank: usize, atoms: usize) -> Result<Self, ConstructionError> {
        RecipeSpec::new(
            hf_fragment(rank)?,
            (1..=atoms).map(|i| format!("a{i}")).collect(),
        )
    }

    pub fn pure_fragment(&self) -> &[Descriptor] {
        &self.pure_fragment
    }

    pub fn atom_labels(&self) -> &[String] {
        &self.atom_labels
    }
}

/// The identity-free model whose universe is the pure fragment followed by
/// the sets of atoms. The empty set of atoms is the pure empty set, so
/// `k` atoms contribute `2^k - 1` new elements, ordered by the bitmask of
/// their atoms (first atom = lowest bit).
///
/// Atoms themselves are not universe elements, so every set of atoms is
/// internally empty.
pub fn recipe_model(spec: &RecipeSpec) -> Interpretation {
    let mut elements: Vec<(String, Descriptor)> = spec
        .pure_fragment
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let name = d
                .code()
                .map_or_else(|| format!("p{i}"), |c| format!("c{c}"));
            (name, d.clone())
        })
        .collect();
    let k = spec.atom_labels.len();
    for mask in 1u64..(1 << k) {
        let chosen: Vec<&String> = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &spec.atom_labels[i])
            .collect();
        let name = std::iter::once("s")
            .chain(chosen.iter().map(|s| s.as_str()))
            .collect::<Vec<_>>()
            .join("_");
        let d = Descriptor::set(chosen.into_iter().map(|a| Descriptor::atom(a.clone())));
        elements.push((name, d));
    }
    Interpretation::new(elements, false).expect("recipe elements are distinct")
}

/// The largest sub-universe closed under external membership, with names
/// restricted to it.
pub fn transitive_submodel(m: &Interpretation) -> Interpretation {
    let mut keep: Vec<bool> = vec![true; m.len()];
    loop {
        let mut changed = false;
        for (i, d) in m.universe().iter().enumerate() {
            if keep[i]
                && d.external_members()
                    .iter()
                    .any(|x| m.index_of(x).is_none_or(|j| !keep[j]))
            {
                keep[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let indices: Vec<usize> = (0..m.len()).filter(|&i| keep[i]).collect();
    m.restrict(&indices)
}

/// Every membership relation on node sets of size `0..=max_nodes`.
///
/// Order: by node count, then by relation bitmask where bit `i * n + j`
/// is the edge `n{i} in n{j}`. Size `n` contributes `2^(n*n)` structures.
pub fn enumerate_structures(max_nodes: usize) -> Result<Structures, ConstructionError> {
    guard("node count", max_nodes, MAX_STRUCTURE_NODES)?;
    Ok(Structures {
        max_nodes,
        size: 0,
        next: 0,
        irreflexive: false,
    })
}

/// Like [`enumerate_structures`] but without self-membership edges, which
/// makes five nodes affordable (`2^(n*(n-1))` per size). Every
/// well-founded structure is irreflexive, so this covers all of them.
pub fn enumerate_irreflexive(max_nodes: usize) -> Result<Structures, ConstructionError> {
    guard("node count", max_nodes, MAX_IRREFLEXIVE_NODES)?;
    Ok(Structures {
        max_nodes,
        size: 0,
        next: 0,
        irreflexive: true,
    })
}

/// Restartable stream of structures; clone it to iterate again.
#[derive(Clone, Debug)]
pub struct Structures {
    max_nodes: usize,
    size: usize,
    next: u64,
    irreflexive: bool,
}

impl Structures {
    fn bits(&self) -> usize {
        if self.irreflexive {
            self.size * self.size.saturating_sub(1)
        } else {
            self.size * self.size
        }
    }

    /// Spreads off-diagonal bits into a full relation mask.
    fn spread(&self, packed: u64) -> u64 {
        let n = self.size;
        let mut out = 0;
        let mut k = 0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out |= (packed >> k & 1) << (i * n + j);
                    k += 1;
                }
            }
        }
        out
    }
}

impl Iterator for Structures {
    type Item = AbstractStructure;

    fn next(&mut self) -> Option<AbstractStructure> {
        while self.size <= self.max_nodes {
            if self.next < 1u64 << self.bits() {
                let relation = if self.irreflexive {
                    self.spread(self.next)
                } else {
                    self.next
                };
                self.next += 1;
                return Some(AbstractStructure::from_relation(self.size, relation));
            }
            self.size += 1;
            self.next = 0;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{similarity_classes, Structure};

    #[test]
    fn ackermann_models() {
        let m = ackermann_model([2, 0], true);
        assert_eq!(m.labels(), ["c0", "c2"]);
        assert!(!m.is_transitive());
        assert!(ackermann_model([0, 1, 3], true).is_transitive());
    }

    #[test]
    fn hf_sizes() {
        let sizes: Vec<usize> = (0..=3).map(|r| hf_fragment(r).unwrap().len()).collect();
        assert_eq!(sizes, [1, 2, 4, 16]);
        assert_eq!(hf_fragment(0).unwrap(), [Descriptor::empty()]);
        assert!(matches!(
            hf_fragment(4),
            Err(ConstructionError::SizeGuard { .. })
        ));
    }

    #[test]
    fn hf_rank_two_is_power_set_of_rank_one() {
        // oracle: every subset of the rank-1 fragment, built directly
        let r1 = hf_fragment(1).unwrap();
        let mut subsets: Vec<Descriptor> = (0..1u32 << r1.len())
            .map(|mask| {
                Descriptor::set(
                    r1.iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, d)| d.clone()),
                )
            })
            .collect();
        subsets.sort_by_key(|d| d.code());
        assert_eq!(hf_fragment(2).unwrap(), subsets);
    }

    #[test]
    fn hf_fragments_are_transitive() {
        for r in 0..=3 {
            let codes = (0..hf_fragment(r).unwrap().len() as u64).collect::<Vec<_>>();
            assert!(ackermann_model(codes, true).is_transitive());
        }
    }

    #[test]
    fn transitive_subuniverses_of_rank_two() {
        let all = transitive_subuniverses(2, None).unwrap();
        assert_eq!(
            all,
            vec![
                vec![],
                vec![0],
                vec![0, 1],
                vec![0, 1, 2],
                vec![0, 1, 3],
                vec![0, 1, 2, 3]
            ]
        );
        let capped = transitive_subuniverses(3, Some(4096)).unwrap();
        assert_eq!(capped.len(), 291);
    }

    #[test]
    fn recipe_with_two_atoms() {
        let spec = RecipeSpec::standard(1, 2).unwrap();
        let m = recipe_model(&spec);
        assert_eq!(m.len(), 5);
        assert_eq!(m.labels(), ["c0", "c1", "s_a1", "s_a2", "s_a1_a2"]);
        assert!(!m.has_identity());
        // {a1, a2} has no internal members
        assert!((0..m.len()).all(|t| !m.is_member(t, 4)));
        let ce = m.transitivity_counterexample().unwrap();
        assert_eq!(ce.container, 2);
        assert_eq!(ce.missing, Descriptor::atom("a1"));
        assert_eq!(similarity_classes(&m), vec![vec![0, 2, 3, 4], vec![1]]);
    }

    #[test]
    fn recipe_without_atoms_is_pure() {
        let spec = RecipeSpec::standard(2, 0).unwrap();
        let m = recipe_model(&spec);
        assert_eq!(m.len(), 4);
        assert!(m.is_transitive());
    }

    #[test]
    fn recipe_spec_validation() {
        assert!(matches!(
            RecipeSpec::new(vec![Descriptor::from_code(2)], vec![]),
            Err(ConstructionError::FragmentNotTransitive(_))
        ));
        assert!(matches!(
            RecipeSpec::new(vec![Descriptor::atom("a")], vec![]),
            Err(ConstructionError::FragmentNotPure(_))
        ));
        assert!(matches!(
            RecipeSpec::new(vec![Descriptor::empty(), Descriptor::empty()], vec![]),
            Err(ConstructionError::FragmentDuplicate(_))
        ));
        assert!(matches!(
            RecipeSpec::new(vec![], vec!["a".into(), "a".into()]),
            Err(ConstructionError::BadAtom(_))
        ));
    }

    #[test]
    fn transitive_submodel_examples() {
        let recipe = recipe_model(&RecipeSpec::standard(1, 2).unwrap());
        let sub = transitive_submodel(&recipe);
        assert_eq!(sub.universe(), hf_fragment(1).unwrap().as_slice());
        let t = ackermann_model([0, 1, 3], true);
        assert_eq!(transitive_submodel(&t), t);
        assert!(transitive_submodel(&ackermann_model([2], true)).is_empty());
        // 5 = {0, 2}; removing 2 (missing 1) also removes 5
        let chain = transitive_submodel(&ackermann_model([0, 2, 5], true));
        assert_eq!(chain.labels(), ["c0"]);
    }

    #[test]
    fn structure_counts() {
        assert_eq!(enumerate_structures(0).unwrap().count(), 1);
        assert_eq!(enumerate_structures(1).unwrap().count(), 1 + 2);
        assert_eq!(enumerate_structures(2).unwrap().count(), 1 + 2 + 16);
        assert!(enumerate_structures(5).is_err());
        assert_eq!(enumerate_irreflexive(2).unwrap().count(), 1 + 1 + 4);
        assert!(enumerate_irreflexive(6).is_err());
    }

    #[test]
    fn irreflexive_stream_has_no_self_loops() {
        let all: Vec<_> = enumerate_irreflexive(3).unwrap().collect();
        assert_eq!(all.len(), 1 + 1 + 4 + 64);
        assert!(all.iter().all(|g| g.edges().iter().all(|(a, b)| a != b)));
        let distinct: BTreeSet<Vec<(usize, usize)>> = all
            .iter()
            .filter(|g| g.nodes().len() == 3)
            .map(|g| g.edges().iter().copied().collect())
            .collect();
        assert_eq!(distinct.len(), 64);
    }

    #[test]
    fn structures_restart() {
        let s = enumerate_structures(2).unwrap();
        let a: Vec<_> = s.clone().collect();
        let b: Vec<_> = s.collect();
        assert_eq!(a, b);
    }
}
