//! Property tests over a pool of small catalog groups: the algebraic laws
//! the pipeline relies on, checked on randomly chosen subgroups, subsets
//! and elements.

use proptest::prelude::*;

use cdlat::catalog::parse_spec;
use cdlat::group::GroupTable;
use cdlat::lattice::{enumerate_subgroups, Lattice};
use cdlat::measure::cd_measure;
use cdlat::perm::Permutation;
use cdlat::set::ElementSet;

const POOL: &[&str] = &[
    "C(2)",
    "C(3)",
    "C(4)",
    "C(6)",
    "C(8)",
    "C(12)",
    "Abelian(2,2)",
    "Abelian(2,4)",
    "Abelian(2,2,2)",
    "Abelian(3,3)",
    "D(6)",
    "D(8)",
    "D(10)",
    "D(12)",
    "Q(8)",
    "Q(16)",
    "Dic(3)",
    "S(3)",
    "S(4)",
    "A(4)",
    "ES(2,'+')",
    "ES(2,'-')",
    "ES(3,'+')",
    "ES(3,'-')",
    "PQ(2,3)",
    "PQ(3,7)",
    "ZM(7,3,2)",
    "ZM(5,4,2)",
];

fn arb_group() -> impl Strategy<Value = GroupTable> {
    prop::sample::select(POOL).prop_map(|text| parse_spec(text).unwrap().build().unwrap())
}

fn arb_group_and_lattice() -> impl Strategy<Value = (GroupTable, Lattice)> {
    arb_group().prop_map(|group| {
        let lattice = enumerate_subgroups(&group).unwrap();
        (group, lattice)
    })
}

fn subset_of(group: &GroupTable, picks: &[prop::sample::Index]) -> ElementSet {
    ElementSet::from_indices(
        group.order(),
        picks.iter().map(|i| i.index(group.order())),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn centralizer_is_monotone_and_contains_the_center(
        group in arb_group(),
        small in prop::collection::vec(any::<prop::sample::Index>(), 1..4),
        extra in prop::collection::vec(any::<prop::sample::Index>(), 0..4),
    ) {
        let small_set = subset_of(&group, &small);
        let big_set = {
            let mut all = small.clone();
            all.extend(extra);
            subset_of(&group, &all)
        };
        let c_small = group.centralizer(&small_set);
        let c_big = group.centralizer(&big_set);
        prop_assert!(c_big.is_subset_of(&c_small));
        prop_assert!(group.center().is_subset_of(&c_small));
        prop_assert!(group.is_subgroup(&c_small));
        // C_G(S) = C_G(<S>).
        prop_assert_eq!(
            group.centralizer(&group.generated_subgroup(&small_set)),
            c_small
        );
    }

    #[test]
    fn generated_subgroup_is_idempotent_and_contains_the_seed(
        group in arb_group(),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..5),
    ) {
        let seed = subset_of(&group, &picks);
        let closure = group.generated_subgroup(&seed);
        prop_assert!(seed.is_subset_of(&closure));
        prop_assert!(group.is_subgroup(&closure));
        prop_assert_eq!(group.generated_subgroup(&closure.clone()), closure.clone());
        // Lagrange.
        prop_assert_eq!(group.order() % closure.len(), 0);
    }

    #[test]
    fn quotients_split_the_order(
        (group, lattice) in arb_group_and_lattice(),
        pick in any::<prop::sample::Index>(),
    ) {
        let normal = lattice.normal_subgroups(&group);
        let chosen = normal[pick.index(normal.len())];
        let quotient = group.quotient(lattice.get(chosen)).unwrap();
        prop_assert_eq!(quotient.order() * lattice.order_of(chosen), group.order());
    }

    #[test]
    fn meet_and_join_satisfy_lattice_laws(
        (group, lattice) in arb_group_and_lattice(),
        a in any::<prop::sample::Index>(),
        b in any::<prop::sample::Index>(),
    ) {
        let h = a.index(lattice.len());
        let k = b.index(lattice.len());
        let meet = lattice.meet(h, k);
        let join = lattice.join(&group, h, k);
        prop_assert_eq!(lattice.meet(k, h), meet);
        prop_assert_eq!(lattice.join(&group, k, h), join);
        prop_assert_eq!(lattice.meet(h, h), h);
        prop_assert_eq!(lattice.join(&group, h, h), h);
        // Absorption.
        prop_assert_eq!(lattice.meet(h, join), h);
        prop_assert_eq!(lattice.join(&group, h, meet), h);
        // Compatibility with containment.
        prop_assert!(lattice.get(meet).is_subset_of(lattice.get(h)));
        prop_assert!(lattice.get(h).is_subset_of(lattice.get(join)));
    }

    #[test]
    fn conjugation_preserves_order_and_measure(
        (group, lattice) in arb_group_and_lattice(),
        pick in any::<prop::sample::Index>(),
        g in any::<prop::sample::Index>(),
    ) {
        let h = pick.index(lattice.len());
        let g = g.index(group.order());
        let conjugate = group.conjugate_subgroup(lattice.get(h), g);
        prop_assert_eq!(conjugate.len(), lattice.order_of(h));
        prop_assert!(group.is_subgroup(&conjugate));
        prop_assert_eq!(cd_measure(&group, &conjugate), cd_measure(&group, lattice.get(h)));
    }

    #[test]
    fn builds_are_reproducible(text in prop::sample::select(POOL)) {
        let spec = parse_spec(text).unwrap();
        prop_assert_eq!(spec.build().unwrap(), spec.build().unwrap());
    }

    #[test]
    fn permutation_closure_is_deterministic(
        images in prop::collection::vec(any::<prop::sample::Index>(), 0..3),
    ) {
        // Random generators over 4 points, drawn from all of S4.
        let all: Vec<Vec<usize>> = permutations_of(4);
        let gens: Vec<Permutation> = images
            .iter()
            .map(|i| Permutation::from_images(&all[i.index(all.len())]).unwrap())
            .collect();
        let first = GroupTable::from_generators(4, &gens).unwrap();
        let second = GroupTable::from_generators(4, &gens).unwrap();
        prop_assert_eq!(first.clone(), second);
        prop_assert_eq!(24 % first.order(), 0, "Lagrange inside S4");
    }
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permute(&mut items, n, &mut out);
    out.sort();
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}
