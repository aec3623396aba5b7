mod common;

use latcon_core::catalog::{corpus, enumerate_lattices, n5};
use latcon_core::congruence::principal_congruence_at;
use latcon_core::{all_congruences, FiniteLattice};

fn library_partitions(l: &FiniteLattice) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> =
        all_congruences(l).congruences().iter().map(|c| c.partition().labels().to_vec()).collect();
    out.sort();
    out
}

fn oracle_partitions(l: &FiniteLattice) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = common::brute_force_congruences(l).iter().map(|p| p.labels().to_vec()).collect();
    out.sort();
    out
}

#[test]
fn set_partition_counts_are_bell_numbers() {
    let bell: Vec<usize> = (0..=6).map(|n| common::set_partitions(n).len()).collect();
    assert_eq!(bell, [1, 1, 2, 5, 15, 52, 203]);
}

#[test]
fn pentagon_congruences_match_brute_force() {
    let l = n5();
    assert_eq!(common::set_partitions(5).len(), 52);
    let oracle = oracle_partitions(&l);
    assert_eq!(oracle.len(), 5);
    assert_eq!(library_partitions(&l), oracle);
}

#[test]
fn congruences_match_brute_force_on_corpus() {
    for l in corpus(6).unwrap() {
        assert_eq!(library_partitions(&l), oracle_partitions(&l), "{}", l.name());
    }
}

#[test]
fn principal_congruences_match_brute_force() {
    for l in corpus(6).unwrap() {
        for x in 0..l.len() {
            for y in x + 1..l.len() {
                let lib = principal_congruence_at(&l, x, y);
                let oracle = common::brute_force_principal(&l, x, y);
                assert_eq!(lib.partition(), &oracle, "{} ({x},{y})", l.name());
            }
        }
    }
}

#[test]
fn enumeration_matches_labeled_oracle() {
    for n in 1..=7 {
        assert_eq!(enumerate_lattices(n).unwrap().len(), common::naive_lattice_count(n), "n = {n}");
    }
}

#[test]
fn four_chain_glued_with_diamond_has_eight_congruences() {
    use latcon_core::catalog::{chain, m3};
    use latcon_core::glue::isolated_interval;
    let l = chain(4).unwrap();
    let ctx = latcon_core::glue(&l, &isolated_interval(&l, "a", "b").unwrap(), &m3()).unwrap();
    assert_eq!(ctx.k.len(), 7);
    assert_eq!(oracle_partitions(&ctx.k).len(), 8);
    assert_eq!(library_partitions(&ctx.k), oracle_partitions(&ctx.k));
}
