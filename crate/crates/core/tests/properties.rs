mod common;

use proptest::prelude::*;

use mulambda::cache::{read_lattice, write_lattice};
use mulambda::moebius::{moebius_table_with, Restriction};
use mulambda::property::class_invariance_violations;
use mulambda::{
    check_property, moebius_integer, moebius_table, parse_spec, Group, GroupSpec, Permutation,
    SubgroupLattice,
};

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

/// One to three random generators on five points; every such group lies in S5.
fn small_group() -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(perm(5), 1..=3)
}

fn leaf_spec() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (1u64..20).prop_map(GroupSpec::Cyclic),
        (1u64..12).prop_map(|n| GroupSpec::Dihedral(2 * n)),
        (1u64..6).prop_map(GroupSpec::Sym),
        (1u64..6).prop_map(GroupSpec::Alt),
        (prop::sample::select(vec![2u64, 3, 5, 7]), 1u64..4)
            .prop_map(|(p, k)| GroupSpec::Elem(p, k)),
        prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11]).prop_map(GroupSpec::Psl2),
        prop::sample::select(vec![2u64, 3, 4, 5, 7]).prop_map(GroupSpec::Pgl2),
        Just(GroupSpec::Sz(8)),
        Just(GroupSpec::U3(3)),
        prop::collection::vec(
            prop::collection::vec(prop::collection::vec(0u32..9, 0..4), 0..3),
            1..3
        )
        .prop_map(|gens| GroupSpec::Perm(gens.into_iter().map(disjointify).collect())),
    ]
}

/// Drops repeated points so the cycles are disjoint.
fn disjointify(cycles: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut seen = std::collections::HashSet::new();
    cycles
        .into_iter()
        .map(|c| {
            c.into_iter()
                .filter(|x| seen.insert(*x))
                .collect::<Vec<_>>()
        })
        .filter(|c| c.len() > 1)
        .collect()
}

fn spec() -> impl Strategy<Value = GroupSpec> {
    leaf_spec().prop_recursive(2, 8, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| GroupSpec::Product(Box::new(a), Box::new(b)))
    })
}

fn enumerate(gens: &[Permutation]) -> SubgroupLattice {
    SubgroupLattice::enumerate(Group::close(gens, 1000).unwrap(), 10_000).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spec_display_round_trips(s in spec()) {
        let text = s.to_string();
        prop_assert_eq!(parse_spec(&text).unwrap(), s);
    }

    #[test]
    fn divisor_sum_of_moebius(n in 1u64..5000) {
        let s: i64 = (1..=n).filter(|d| n % d == 0).map(moebius_integer).sum();
        prop_assert_eq!(s, i64::from(n == 1));
    }

    #[test]
    fn closure_ignores_generator_order(mut gens in small_group(), extra in 0usize..3) {
        let g = Group::close(&gens, 1000).unwrap();
        gens.reverse();
        for i in 0..extra.min(gens.len()) {
            let dup = gens[i].clone();
            gens.push(dup);
        }
        let h = Group::close(&gens, 1000).unwrap();
        prop_assert_eq!(g.table(), h.table());
        prop_assert_eq!(g.order() % gens[0].order() as usize, 0);
    }

    #[test]
    fn subgroups_of_s5_have_the_property(gens in small_group()) {
        // S5 and A5 satisfy it; every other subgroup of S5 is solvable.
        let l = enumerate(&gens);
        let t = moebius_table(&l).unwrap();
        let report = check_property(&l, &t, false).unwrap();
        prop_assert!(report.verdict, "failing {:?}", report.failing);
        prop_assert!(class_invariance_violations(&l, &t).unwrap().is_empty());
    }

    #[test]
    fn restricted_recursion_matches_full(gens in small_group()) {
        let l = enumerate(&gens);
        prop_assert!(moebius_table_with(&l, Restriction::Both).is_ok());
        let t = moebius_table(&l).unwrap();
        for i in 0..l.len() {
            if !l.is_maxint(i) {
                prop_assert_eq!(t.mu(i), 0);
            }
        }
    }

    #[test]
    fn lattice_invariants(gens in small_group()) {
        let l = enumerate(&gens);
        let n = l.group().order();
        prop_assert_eq!(l.order_of(l.trivial()), 1);
        prop_assert_eq!(l.order_of(l.top()), n);
        for i in 0..l.len() {
            prop_assert_eq!(n % l.order_of(i), 0);
        }
        for c in 0..l.class_count() {
            prop_assert_eq!(l.class_size(c) * l.rep_normalizer(c).len(), n);
        }
        let phi = l.subgroup(l.frattini());
        for m in l.maximal_subgroups() {
            prop_assert!(phi.iter().all(|x| l.subgroup(m).binary_search(x).is_ok()));
        }
    }

    #[test]
    fn cache_format_round_trips(gens in small_group()) {
        let l = enumerate(&gens);
        let cycles: Vec<Vec<Vec<u32>>> = gens.iter().map(|p| p.cycles()).collect();
        let spec = GroupSpec::Perm(cycles);
        let mut bytes = Vec::new();
        write_lattice(&mut bytes, &spec, &l).unwrap();
        let back = read_lattice(&bytes[..], &spec).unwrap().unwrap();
        let mut again = Vec::new();
        write_lattice(&mut again, &spec, &back).unwrap();
        prop_assert_eq!(bytes, again);
    }
}
