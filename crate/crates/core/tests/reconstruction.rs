use modrecon::canon::{automorphism_orbits, is_isomorphic};
use modrecon::deck::make_deck;
use modrecon::modular::{critically_indecomposable, decompose, inflate, is_indecomposable};
use modrecon::oracle::{enumerate_graphs, oracle_preimages, reconstruct_with_oracle};
use modrecon::reconstruct::{
    interval_single_large, reconstruct, singleton_count, skeleton_from_deck, Outcome, Provenance,
    UnsupportedReason,
};
use modrecon::Graph;

fn bull() -> Graph {
    Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 4)]).unwrap()
}

fn one_interval(k: &Graph, at: usize, interval: &Graph) -> Graph {
    let mut parts = vec![Graph::empty(1); k.order()];
    parts[at] = interval.clone();
    inflate(k, &parts).unwrap()
}

fn outcome(g: &Graph) -> Outcome {
    reconstruct(&make_deck(g).unwrap()).unwrap().outcome
}

/// Reconstructed graphs must be right; the only refusals allowed are the
/// two open cases.
fn assert_sound(g: &Graph) -> Option<Provenance> {
    match outcome(g) {
        Outcome::Reconstructed { graph, provenance } => {
            assert!(
                is_isomorphic(&graph, g),
                "{g} rebuilt as {graph} via {provenance}"
            );
            Some(provenance)
        }
        Outcome::Unsupported(
            UnsupportedReason::HereditaryIntervals | UnsupportedReason::UnidentifiedPairPosition,
        ) => None,
        other => panic!("{g}: {other:?}"),
    }
}

fn orbit_representatives(k: &Graph) -> Vec<usize> {
    automorphism_orbits(k)
        .unwrap()
        .classes()
        .iter()
        .map(|c| c.first().unwrap())
        .collect()
}

#[test]
fn examples_from_the_interface() {
    let c5_pair = one_interval(&Graph::cycle(5), 0, &Graph::complete(2));
    assert_eq!(
        assert_sound(&c5_pair),
        Some(Provenance::VertexTransitiveSkeleton)
    );

    let p4 = inflate(
        &Graph::path(4),
        &[
            Graph::complete(3),
            Graph::complete(2),
            Graph::empty(1),
            Graph::empty(1),
        ],
    )
    .unwrap();
    assert!(matches!(
        assert_sound(&p4),
        Some(Provenance::IntervalSplice | Provenance::TrivialAutomorphismSkeleton)
    ));

    // whether this one is refused is up to the hereditary test
    let all_pairs = inflate(&Graph::path(4), &vec![Graph::complete(2); 4]).unwrap();
    assert_sound(&all_pairs);

    for g in [
        Graph::complete(3)
            .disjoint_union(&Graph::complete(2))
            .unwrap(),
        Graph::complete(2)
            .disjoint_union(&Graph::complete(2))
            .unwrap(),
        Graph::complete(4),
    ] {
        assert_eq!(assert_sound(&g), Some(Provenance::Degenerate));
    }
}

#[test]
fn skeleton_and_singletons_from_deck() {
    let g = one_interval(&Graph::cycle(5), 0, &Graph::complete(2));
    let d = make_deck(&g).unwrap();
    let k = skeleton_from_deck(&d).unwrap();
    assert!(is_isomorphic(&k, &Graph::cycle(5)));
    assert_eq!(singleton_count(&d, &k).0, 4);

    let h = one_interval(&bull(), 2, &Graph::path(4));
    let d = make_deck(&h).unwrap();
    let k = skeleton_from_deck(&d).unwrap();
    assert!(is_isomorphic(&k, &bull()));
    assert_eq!(singleton_count(&d, &k).0, 4);
    assert!(is_isomorphic(
        &interval_single_large(&d, &k).unwrap(),
        &Graph::path(4)
    ));
}

#[test]
fn indecomposable_decks_are_refused() {
    for g in [
        Graph::path(4),
        Graph::cycle(6),
        Graph::path(7),
        bull(),
        critically_indecomposable(8, true).unwrap(),
    ] {
        assert!(is_indecomposable(&g).unwrap());
        assert!(
            matches!(
                outcome(&g),
                Outcome::Unsupported(UnsupportedReason::NotDecomposable { .. })
            ),
            "{g}"
        );
    }
}

#[test]
fn oracle_fallback_answers_small_indecomposable_decks() {
    let d = make_deck(&Graph::cycle(5)).unwrap();
    let r = reconstruct_with_oracle(&d).unwrap();
    assert_eq!(r.provenance(), Some(Provenance::Oracle));
    assert!(is_isomorphic(r.graph().unwrap(), &Graph::cycle(5)));
    let two = reconstruct_with_oracle(&make_deck(&Graph::complete(2)).unwrap()).unwrap();
    assert!(!two.is_reconstructed());
}

#[test]
fn reconstructed_graphs_match_the_oracle() {
    for n in 4..=7 {
        for g in enumerate_graphs(n).unwrap().graphs() {
            let d = make_deck(&g).unwrap();
            if let Some(h) = reconstruct(&d).unwrap().graph() {
                let found = oracle_preimages(&d).unwrap();
                assert_eq!(found.len(), 1);
                assert!(is_isomorphic(h, &found[0]), "{g}");
            }
        }
    }
}

#[test]
fn large_interval_on_six_vertex_skeletons() {
    // P4 is neither disconnected nor co-disconnected, so the interval has to
    // be found on a card rather than rebuilt from its own deck
    let interval = Graph::path(4);
    let mut seen = 0;
    for k in enumerate_graphs(6).unwrap().graphs() {
        if !is_indecomposable(&k).unwrap() {
            continue;
        }
        for at in orbit_representatives(&k) {
            let g = one_interval(&k, at, &interval);
            assert_eq!(
                assert_sound(&g),
                Some(Provenance::SingleLargeInterval),
                "{k} at {at}"
            );
            seen += 1;
        }
    }
    assert!(seen > 26);
}

#[test]
fn decomposable_large_interval_on_six_vertex_skeletons() {
    let interval = one_interval(&Graph::path(4), 1, &Graph::empty(2));
    assert!(matches!(
        decompose(&interval).unwrap(),
        modrecon::Decomposition::Prime { .. }
    ));
    for (i, k) in enumerate_graphs(6).unwrap().graphs().enumerate() {
        if i % 3 != 0 || !is_indecomposable(&k).unwrap() {
            continue;
        }
        for at in orbit_representatives(&k) {
            let g = one_interval(&k, at, &interval);
            assert_eq!(
                assert_sound(&g),
                Some(Provenance::SingleLargeInterval),
                "{k} at {at}"
            );
        }
    }
}

#[test]
fn large_interval_on_seven_vertex_skeletons() {
    for (i, k) in enumerate_graphs(7).unwrap().graphs().enumerate() {
        if i % 11 != 0 || !is_indecomposable(&k).unwrap() {
            continue;
        }
        for at in orbit_representatives(&k) {
            let g = one_interval(&k, at, &bull());
            assert_eq!(
                assert_sound(&g),
                Some(Provenance::SingleLargeInterval),
                "{k} at {at}"
            );
        }
    }
}

#[test]
fn pair_intervals_on_eight_vertex_skeletons() {
    let mut reconstructed = 0;
    for (i, k) in enumerate_graphs(8).unwrap().graphs().enumerate() {
        if i % 97 != 0 || !is_indecomposable(&k).unwrap() {
            continue;
        }
        for at in orbit_representatives(&k) {
            for pair in [Graph::complete(2), Graph::empty(2)] {
                reconstructed += usize::from(assert_sound(&one_interval(&k, at, &pair)).is_some());
            }
        }
    }
    assert!(reconstructed > 0);
}

#[test]
fn critical_skeleton_of_order_eight() {
    for complemented in [false, true] {
        let k = critically_indecomposable(8, complemented).unwrap();
        for at in orbit_representatives(&k) {
            for pair in [Graph::complete(2), Graph::empty(2)] {
                let g = one_interval(&k, at, &pair);
                assert_eq!(
                    assert_sound(&g),
                    Some(Provenance::CriticalSkeleton),
                    "{k} at {at}"
                );
            }
        }
    }
}

#[test]
fn several_intervals_on_larger_skeletons() {
    let parts_for = |k: &Graph| {
        let mut parts = vec![Graph::empty(1); k.order()];
        parts[0] = Graph::complete(3);
        parts[2] = Graph::path(3);
        parts[k.order() - 1] = Graph::empty(2);
        parts
    };
    for (i, k) in enumerate_graphs(7).unwrap().graphs().enumerate() {
        if i % 13 != 0 || !is_indecomposable(&k).unwrap() {
            continue;
        }
        let g = inflate(&k, &parts_for(&k)).unwrap();
        assert!(assert_sound(&g).is_some(), "{k}");
    }
}

#[test]
fn hereditary_intervals_on_a_vertex_transitive_skeleton() {
    let c6 = Graph::cycle(6);
    assert!(is_indecomposable(&c6).unwrap());
    let mut parts = vec![Graph::empty(1); 6];
    parts[0] = Graph::complete(2);
    parts[3] = Graph::complete(2);
    let g = inflate(&c6, &parts).unwrap();
    assert_eq!(assert_sound(&g), Some(Provenance::VertexTransitiveSkeleton));
}
