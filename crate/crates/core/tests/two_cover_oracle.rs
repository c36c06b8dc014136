mod common;

use scat_core::category::{brute_force_two_cover, two_cover_prover, BruteForceResult, ProverOptions, TwoCoverDecision};

#[test]
fn prover_matches_brute_force_on_small_pure_complexes() {
    let corpus = common::pure_two_complexes(6);
    let mut impossible = 0;
    for k in &corpus {
        let prover = two_cover_prover(k, &ProverOptions::default()).unwrap();
        let brute = brute_force_two_cover(k).unwrap();
        match (&prover, &brute) {
            (TwoCoverDecision::Cover(c), BruteForceResult::Cover(_)) => assert!(c.verify()),
            (TwoCoverDecision::Impossible(c), BruteForceResult::Impossible) => {
                assert!(c.digest_matches());
                impossible += 1;
            }
            _ => panic!("disagreement on {k:?}"),
        }
    }
    eprintln!("{} complexes, {impossible} without a two-cover", corpus.len());
}

#[test]
fn prover_matches_brute_force_on_random_graphs_and_surfaces() {
    let mut corpus = common::random_corpus(7, 300, 7, 7, 1);
    corpus.extend(common::random_corpus(8, 300, 7, 7, 2));
    let mut checked = 0;
    for k in corpus.iter().filter(|k| k.is_pure() && k.dimension() >= 1) {
        let prover = two_cover_prover(k, &ProverOptions { split_depth: 2, ..Default::default() }).unwrap();
        let brute = brute_force_two_cover(k).unwrap();
        assert_eq!(
            matches!(prover, TwoCoverDecision::Cover(_)),
            matches!(brute, BruteForceResult::Cover(_)),
            "disagreement on {k:?}"
        );
        checked += 1;
    }
    assert!(checked > 300);
}
