//! Randomized invariants of collapses, contiguity, homology and unfolding.

mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use scat_core::contiguity::{are_contiguous, same_contiguity_class, ClassSearch, SimplicialMap};
use scat_core::homology::h1_rank_mod2;
use scat_core::reconstruct::unfold_pinch;
use scat_core::strong::{core, core_by_priority, find_collapse_to, is_strongly_collapsible};
use scat_core::{fixtures, SimplicialComplex, Vertex};

const LABELS: [&str; 8] = ["0", "1", "2", "3", "4", "5", "6", "7"];
const CAP: usize = 200_000;

fn complex(max_vertices: usize, max_facets: usize, max_size: usize) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0..max_vertices, 1..=max_size), 1..=max_facets).prop_map(
        |facets| {
            SimplicialComplex::from_facets(facets.into_iter().map(|f| f.into_iter().map(|i| LABELS[i]).collect::<Vec<_>>()))
                .unwrap()
        },
    )
}

fn same(f: &SimplicialMap, g: &SimplicialMap) -> Option<bool> {
    match same_contiguity_class(f, g, CAP).unwrap() {
        ClassSearch::Same(chain) => {
            assert!(chain.verify(f.source(), f.target()));
            Some(true)
        }
        ClassSearch::Different { .. } => Some(false),
        ClassSearch::Unknown { .. } => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn core_is_idempotent(k in complex(8, 8, 4)) {
        let first = core(&k);
        prop_assert!(first.is_valid());
        let second = core(&first.end);
        prop_assert!(second.steps.is_empty());
        prop_assert_eq!(&second.end, &first.end);
    }

    #[test]
    fn core_does_not_depend_on_collapse_order(k in complex(8, 8, 4), seed: u64) {
        use rand::seq::SliceRandom;
        let mut order: Vec<Vertex> = k.vertices().to_vec();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let a = core(&k).end;
        let b = core_by_priority(&k, &order);
        prop_assert!(b.is_valid());
        prop_assert!(a.is_isomorphic_to(&b.end));
    }

    #[test]
    fn collapses_preserve_h1_and_euler_characteristic(k in complex(8, 8, 3)) {
        let c = core(&k).end;
        prop_assert_eq!(h1_rank_mod2(&k), h1_rank_mod2(&c));
        prop_assert_eq!(k.f_vector().euler_characteristic(), c.f_vector().euler_characteristic());
        prop_assert_eq!(is_strongly_collapsible(&k), c.vertex_count() == 1);
    }

    #[test]
    fn complex_collapses_onto_its_core(k in complex(8, 8, 4)) {
        let c = core(&k).end;
        let seq = find_collapse_to(&k, &c);
        prop_assert!(seq.is_some_and(|s| s.is_valid() && s.end == c));
    }

    #[test]
    fn contiguity_class_is_reflexive_and_symmetric(k in complex(5, 5, 3), l in complex(5, 5, 3), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::random_map(&mut rng, &k, &l);
        let g = common::random_map(&mut rng, &k, &l);
        prop_assert!(are_contiguous(&f, &f).unwrap());
        prop_assert_eq!(same(&f, &f), Some(true));
        prop_assert_eq!(are_contiguous(&f, &g).unwrap(), are_contiguous(&g, &f).unwrap());
        if let (Some(a), Some(b)) = (same(&f, &g), same(&g, &f)) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn contiguity_class_is_stable_under_composition(
        j in complex(4, 4, 3),
        k in complex(5, 5, 3),
        l in complex(5, 5, 3),
        n in complex(5, 5, 3),
        seed: u64,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::random_map(&mut rng, &k, &l);
        let g = common::random_map(&mut rng, &k, &l);
        let after = common::random_map(&mut rng, &l, &n);
        let before = common::random_map(&mut rng, &j, &k);
        if are_contiguous(&f, &g).unwrap() {
            prop_assert!(are_contiguous(&f.then(&after).unwrap(), &g.then(&after).unwrap()).unwrap());
            prop_assert!(are_contiguous(&before.then(&f).unwrap(), &before.then(&g).unwrap()).unwrap());
        }
        if same(&f, &g) == Some(true) {
            prop_assert_ne!(same(&f.then(&after).unwrap(), &g.then(&after).unwrap()), Some(false));
            prop_assert_ne!(same(&before.then(&f).unwrap(), &before.then(&g).unwrap()), Some(false));
        }
    }
}

/// A wedge of small spheres at `p`, with the other vertices relabelled.
fn wedge(kinds: &[bool], seed: u64) -> SimplicialComplex {
    use rand::seq::SliceRandom;
    let mut names: Vec<String> = (0..6 * kinds.len()).map(|i| format!("v{i}")).collect();
    names.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut fresh = names.into_iter();
    let mut facets: Vec<Vec<String>> = Vec::new();
    for &octahedron in kinds {
        let sphere = if octahedron { fixtures::octahedron() } else { fixtures::boundary_of_simplex(&["a", "b", "c", "d"]) };
        let apex = sphere.vertices()[0].clone();
        let rename: BTreeMap<Vertex, String> = sphere
            .vertices()
            .iter()
            .map(|v| (v.clone(), if *v == apex { "p".to_string() } else { fresh.next().unwrap() }))
            .collect();
        facets.extend(sphere.facets().iter().map(|f| f.vertices().iter().map(|v| rename[v].clone()).collect()));
    }
    SimplicialComplex::from_facets(facets).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unfolding_a_wedge_reidentifies_to_the_original(kinds in prop::collection::vec(any::<bool>(), 2..=4), seed: u64) {
        let k = wedge(&kinds, seed);
        let p = Vertex::new("p").unwrap();
        let unfolded = unfold_pinch(&k, &p).unwrap();
        prop_assert_eq!(unfolded.vertex_count(), k.vertex_count() + kinds.len() - 1);
        prop_assert_eq!(unfolded.f_vector().euler_characteristic(), 2 * kinds.len() as i64);
        prop_assert!(!unfolded.contains_vertex(&p));
        let back: BTreeMap<Vertex, Vertex> = unfolded
            .vertices()
            .iter()
            .map(|v| {
                let w = if v.as_str().starts_with("p#") { p.clone() } else { v.clone() };
                (v.clone(), w)
            })
            .collect();
        prop_assert_eq!(unfolded.relabel(&back).unwrap(), k);
    }
}
