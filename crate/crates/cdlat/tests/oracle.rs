//! Brute-force oracles for the enumeration core, kept independent of the
//! library's closure and scan implementations.
//!
//! Subgroup oracle: close every element subset of size at most
//! floor(log2(n)) under pairwise products. Any subgroup chain gains at
//! least a factor of two per extra generator, so rank is bounded by
//! log2(order) and the sweep is complete for the orders tested here.

use std::collections::BTreeSet;

use cdlat::catalog::survey_corpus;
use cdlat::group::GroupTable;
use cdlat::lattice::enumerate_subgroups;
use cdlat::set::ElementSet;

/// Fixed-point closure by repeated pairwise multiplication; deliberately
/// not the library's worklist BFS.
fn slow_closure(group: &GroupTable, seed: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = seed.iter().copied().collect();
    set.insert(0);
    loop {
        let mut next = set.clone();
        for &a in &set {
            for &b in &set {
                next.insert(group.mul(a, b));
            }
        }
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for subset in &layer {
            let start = subset.last().map_or(0, |&x| x + 1);
            for x in start..n {
                let mut bigger = subset.clone();
                bigger.push(x);
                next.push(bigger);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn subgroups_by_subset_closure(group: &GroupTable) -> BTreeSet<Vec<usize>> {
    let n = group.order();
    let max_rank = n.ilog2() as usize;
    let mut out = BTreeSet::new();
    for seed in subsets_up_to(n, max_rank) {
        out.insert(slow_closure(group, &seed).into_iter().collect());
    }
    out
}

#[test]
fn enumeration_matches_subset_closure_oracle_up_to_order_24() {
    let mut checked = 0;
    for spec in survey_corpus(24) {
        let group = spec.build().unwrap();
        let lattice = enumerate_subgroups(&group).unwrap();
        let enumerated: BTreeSet<Vec<usize>> = lattice
            .sets()
            .iter()
            .map(|s| s.iter().collect())
            .collect();
        let oracle = subgroups_by_subset_closure(&group);
        assert_eq!(enumerated, oracle, "subgroup sets differ for {spec}");
        assert_eq!(enumerated.len(), lattice.len(), "{spec} has duplicate subgroups");
        checked += 1;
    }
    assert!(checked > 30, "expected a substantive corpus, got {checked} groups");
}

/// Known subgroup counts, frozen from the oracle.
#[test]
fn frozen_subgroup_counts() {
    let cases = [
        ("C(7)", 2),
        ("C(6)", 4),
        ("S(3)", 6),
        ("D(8)", 10),
        ("Q(8)", 6),
        ("A(4)", 10),
        ("S(4)", 30),
        ("Abelian(2,2,2)", 16),
    ];
    for (text, expected) in cases {
        let group: GroupTable = cdlat::parse_spec(text).unwrap().build().unwrap();
        assert_eq!(
            enumerate_subgroups(&group).unwrap().len(),
            expected,
            "{text}"
        );
    }
}

#[test]
fn centralizers_match_exhaustive_commuting_scan_up_to_order_24() {
    for spec in survey_corpus(24) {
        let group = spec.build().unwrap();
        let lattice = enumerate_subgroups(&group).unwrap();
        for set in lattice.sets() {
            let expected: BTreeSet<usize> = (0..group.order())
                .filter(|&x| set.iter().all(|s| group.commutator(x, s) == 0))
                .collect();
            let computed: BTreeSet<usize> = group.centralizer(set).iter().collect();
            assert_eq!(computed, expected, "centralizer differs for {spec}");
        }
        // Singleton sets exercise the non-subgroup path.
        for x in 0..group.order() {
            let singleton = ElementSet::singleton(group.order(), x);
            let expected: BTreeSet<usize> = (0..group.order())
                .filter(|&y| group.mul(x, y) == group.mul(y, x))
                .collect();
            let computed: BTreeSet<usize> = group.centralizer(&singleton).iter().collect();
            assert_eq!(computed, expected, "element centralizer differs for {spec}");
        }
    }
}

/// Absorption and idempotence on every subgroup pair of every corpus
/// group up to order 24.
#[test]
fn meet_join_laws_hold_on_all_pairs_up_to_order_24() {
    for spec in survey_corpus(24) {
        let group = spec.build().unwrap();
        let lattice = enumerate_subgroups(&group).unwrap();
        for h in 0..lattice.len() {
            assert_eq!(lattice.meet(h, h), h);
            assert_eq!(lattice.join(&group, h, h), h);
            for k in 0..lattice.len() {
                let meet = lattice.meet(h, k);
                let join = lattice.join(&group, h, k);
                assert_eq!(lattice.meet(k, h), meet, "{spec}: meet commutes");
                assert_eq!(lattice.join(&group, k, h), join, "{spec}: join commutes");
                assert_eq!(lattice.meet(h, join), h, "{spec}: absorption");
                assert_eq!(lattice.join(&group, h, meet), h, "{spec}: absorption");
            }
        }
    }
}

/// The interval machinery agrees with direct recomputation on a sample.
#[test]
fn open_intervals_match_definition_on_s4() {
    let group: GroupTable = cdlat::parse_spec("S(4)").unwrap().build().unwrap();
    let lattice = enumerate_subgroups(&group).unwrap();
    for h in 0..lattice.len() {
        for k in 0..lattice.len() {
            if !lattice.get(h).is_proper_subset_of(lattice.get(k)) {
                continue;
            }
            let interval = lattice.open_interval(h, k).unwrap();
            let expected: Vec<usize> = (0..lattice.len())
                .filter(|&x| {
                    lattice.get(h).is_proper_subset_of(lattice.get(x))
                        && lattice.get(x).is_proper_subset_of(lattice.get(k))
                })
                .collect();
            assert_eq!(interval, expected);
            assert_eq!(
                lattice.is_maximal_in(h, k).unwrap(),
                interval.is_empty()
            );
        }
    }
    // |open_interval(1, G)| = |L| - 2.
    assert_eq!(
        lattice
            .open_interval(lattice.bottom(), lattice.top())
            .unwrap()
            .len(),
        lattice.len() - 2
    );
}
