mod common;

use common::mixed_model;
use proptest::prelude::*;
use zphi::constructions::{
    ackermann_model, enumerate_structures, hf_fragment, recipe_model, transitive_submodel,
    transitive_subuniverses, RecipeSpec,
};
use zphi::semantics::{
    mostowski_collapse, similarity, similarity_classes, AbstractStructure, CollapseError,
    Descriptor, Interpretation, Structure,
};

#[test]
fn recipe_models_up_to_rank_two_and_three_atoms() {
    for rank in 0..=2 {
        for k in 0..=3 {
            let spec = RecipeSpec::standard(rank, k).unwrap();
            let m = recipe_model(&spec);
            let pure = spec.pure_fragment().len();
            assert_eq!(m.len(), pure + (1 << k) - 1);
            assert!(!m.has_identity());
            match m.transitivity_counterexample() {
                Some(ce) => {
                    assert!(k >= 1);
                    assert!(ce.missing.is_atom());
                }
                None => assert_eq!(k, 0),
            }
            let sub = transitive_submodel(&m);
            assert!(sub.is_transitive());
            assert_eq!(sub.universe(), spec.pure_fragment());
            assert_eq!(transitive_submodel(&sub), sub);

            // the empty set and every set of atoms share one class; the
            // other pure elements are alone in theirs
            let classes = similarity_classes(&m);
            let empty_class: Vec<usize> = std::iter::once(0).chain(pure..m.len()).collect();
            assert_eq!(classes[0], empty_class);
            assert!(classes[1..].iter().all(|c| c.len() == 1 && c[0] < pure));
            assert_eq!(classes.len(), pure);

            // singleton atom sets are similar yet distinct
            let singletons: Vec<usize> = (0..m.len())
                .filter(|&i| {
                    let ms = m.universe()[i].external_members();
                    ms.len() == 1 && ms[0].is_atom()
                })
                .collect();
            assert_eq!(singletons.len(), k);
            for &a in &singletons {
                for &b in &singletons {
                    assert!(similarity(&m, a, b).unwrap());
                    assert_eq!(a == b, m.universe()[a] == m.universe()[b]);
                }
            }
        }
    }
}

#[test]
fn hf_fragments_are_closed() {
    for r in 0..=3 {
        let v = hf_fragment(r).unwrap();
        for d in &v {
            assert!(d.rank() <= r);
            assert!(d.external_members().iter().all(|m| v.contains(m)));
        }
    }
}

#[test]
fn enumeration_order_and_counts() {
    let all: Vec<AbstractStructure> = enumerate_structures(3).unwrap().collect();
    assert_eq!(all.len(), 1 + 2 + 16 + 512);
    let sizes: Vec<usize> = all.iter().map(|g| g.nodes().len()).collect();
    assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    let distinct: std::collections::BTreeSet<_> = all
        .iter()
        .map(|g| (g.nodes().len(), g.edges().clone()))
        .collect();
    assert_eq!(distinct.len(), all.len());
}

#[test]
fn collapse_rejects_bad_structures() {
    let pair = AbstractStructure::new(["a", "b", "c"], [("a", "c"), ("b", "c")]).unwrap();
    assert_eq!(
        mostowski_collapse(&pair),
        Err(CollapseError::NotExtensional("a".into(), "b".into()))
    );
    let loop2 = AbstractStructure::new(["a", "b"], [("a", "b"), ("b", "a")]).unwrap();
    assert_eq!(
        mostowski_collapse(&loop2),
        Err(CollapseError::Cycle {
            cycle: vec!["a".into(), "b".into()]
        })
    );
}

proptest! {
    #[test]
    fn transitive_submodel_is_greatest(m in mixed_model(6)) {
        let sub = transitive_submodel(&m);
        prop_assert!(sub.is_transitive());
        prop_assert_eq!(transitive_submodel(&sub), sub.clone());
        // any transitive subset is contained in it
        let n = m.len();
        for mask in 0u32..1 << n {
            let keep: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let r = m.restrict(&keep);
            if r.is_transitive() {
                prop_assert!(r.universe().iter().all(|d| sub.universe().contains(d)));
            }
        }
    }

    #[test]
    fn collapse_preserves_membership(pick in any::<prop::sample::Index>(), shift in 0usize..16) {
        // a transitive coded model read as a bare structure collapses back
        let universes = transitive_subuniverses(3, Some(4096)).unwrap();
        let base = ackermann_model(pick.get(&universes).iter().copied(), true);
        let n = base.len();
        let m = Interpretation::new(
            (0..n).map(|i| (i + shift) % n).map(|i| (base.labels()[i].clone(), base.universe()[i].clone())),
            true,
        )
        .unwrap();
        let names: Vec<&str> = m.labels().iter().map(String::as_str).collect();
        let mut edges = Vec::new();
        for (i, d) in m.universe().iter().enumerate() {
            for (j, e) in m.universe().iter().enumerate() {
                if e.external_members().contains(d) {
                    edges.push((names[i], names[j]));
                }
            }
        }
        let g = AbstractStructure::new(names.iter().copied(), edges).unwrap();
        let c = mostowski_collapse(&g).unwrap();
        let images: Vec<&Descriptor> = c.mapping.iter().map(|(_, d)| d).collect();
        prop_assert_eq!(images, m.universe().iter().collect::<Vec<_>>());
    }
}
