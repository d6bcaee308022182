mod common;

use std::collections::BTreeSet;

use common::analyzed;
use mulambda::families::{
    self, admissible_q, cross_check_family, table_self_check, ClassKey, FamilyKind,
};

#[test]
fn self_check_every_admissible_q() {
    for kind in [FamilyKind::L2, FamilyKind::Sz, FamilyKind::Ree] {
        for q in admissible_q(kind, 1 << 15) {
            let rows = families::rows(kind, q).unwrap();
            assert!(
                table_self_check(&rows),
                "{kind:?} q = {q}: {:?}",
                families::first_inconsistent_row(&rows)
            );
        }
    }
}

/// `p^e` with `e >= 2`, found by trial division.
fn proper_prime_power(q: u64) -> bool {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut r = q;
    let mut e = 0;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    r == 1 && e >= 2
}

#[test]
fn admissible_sets() {
    let l2: Vec<u64> = (2..=1 << 15)
        .filter(|&q| proper_prime_power(q) && q != 9 && q != 25)
        .collect();
    assert_eq!(admissible_q(FamilyKind::L2, 1 << 15), l2);
    assert_eq!(
        admissible_q(FamilyKind::Sz, 1 << 15),
        [8, 32, 128, 512, 2048, 8192, 32768]
    );
    assert_eq!(
        admissible_q(FamilyKind::Ree, 1 << 15),
        [27, 243, 2187, 19683]
    );
}

#[test]
fn l2_trivial_class_is_minus_order_for_q_4_and_8() {
    for q in [4u64, 8] {
        let rows = families::rows(FamilyKind::L2, q).unwrap();
        let order = families::group_order(FamilyKind::L2, q).unwrap();
        let trivial = rows.iter().find(|r| r.order == 1).unwrap();
        assert_eq!(trivial.mu, -order);
    }
}

#[test]
fn brute_force_matches_rows() {
    for q in [4u64, 8, 16, 27, 32] {
        let rows = families::rows(FamilyKind::L2, q).unwrap();
        let (l, t) = analyzed(&format!("psl2:{q}"));
        let c = cross_check_family(&l, &t, &rows);
        assert!(c.matched, "q = {q}: {c:?}");
    }
}

fn distinct(keys: impl IntoIterator<Item = ClassKey>) -> BTreeSet<ClassKey> {
    keys.into_iter().filter(|k| k.0 > 1).collect()
}

/// Odd-square regime at q = 49. The brute force finds two conjugacy classes
/// of several non-maximal subgroup types where the table prints one row, and
/// nonzero values at the trivial class. Every other (|H|, μ, λ, |N|) key
/// agrees.
#[test]
fn l2_49_rows_agree_on_distinct_keys() {
    let rows = families::rows(FamilyKind::L2, 49).unwrap();
    let (l, t) = analyzed("psl2:49");
    let c = cross_check_family(&l, &t, &rows);
    let group: BTreeSet<ClassKey> = distinct(c.only_in_group.iter().copied());
    let table: BTreeSet<ClassKey> = distinct(c.only_in_rows.iter().copied());
    assert!(table.is_empty(), "rows absent from the lattice: {table:?}");
    for key in &group {
        let listed = rows
            .iter()
            .any(|r| (r.order, r.mu, r.lambda, r.normalizer_order) == *key);
        assert!(listed, "unlisted class {key:?}");
    }
    let order = families::group_order(FamilyKind::L2, 49).unwrap();
    let trivial = l.trivial();
    assert_eq!(t.mu(trivial) as i128, 2 * order);
    assert_eq!(t.lambda(l.class_of(trivial)), 2);
}
