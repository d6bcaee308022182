#![allow(dead_code)]

use std::collections::HashSet;

use mulambda::{
    moebius_table, parse_spec, MoebiusTable, SubgroupLattice, DEFAULT_ELEMENT_CAP,
    DEFAULT_SUBGROUP_CAP,
};

pub const Q8: &str = "perm:[(0 1 4 5)(2 3 6 7);(0 2 4 6)(1 7 5 3)]";
pub const C3_C4: &str = "perm:[(0 1 2);(1 2)(3 4 5 6)]";
pub const SL2_5: &str = "perm:[(0 5 10 15 20)(1 11 21 6 16)(2 17 7 22 12)(3 23 18 13 8);\
                         (0 19 3 4)(1 14 2 9)(5 20 23 8)(6 15 22 13)(7 10 21 18)(11 16 17 12)]";

pub fn lattice(spec: &str) -> SubgroupLattice {
    let spec = parse_spec(spec).unwrap();
    mulambda::cache::load_or_enumerate(&spec, DEFAULT_ELEMENT_CAP, DEFAULT_SUBGROUP_CAP, None)
        .unwrap()
}

pub fn analyzed(spec: &str) -> (SubgroupLattice, MoebiusTable) {
    let l = lattice(spec);
    let t = moebius_table(&l).unwrap();
    (l, t)
}

/// At least 40 solvable groups of small order.
pub fn solvable_corpus() -> Vec<String> {
    let mut v: Vec<String> = Vec::new();
    for n in [
        1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 18, 24, 30, 32, 36, 48, 60, 64,
    ] {
        v.push(format!("cyclic:{n}"));
    }
    for n in [4, 6, 8, 10, 12, 16, 18, 20, 24, 30, 32, 36, 40, 48, 60, 64] {
        v.push(format!("dihedral:{n}"));
    }
    for (p, k) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        v.push(format!("elem:{p},{k}"));
    }
    v.extend(["sym:3", "sym:4", "alt:4", Q8, C3_C4].map(String::from));
    for (a, b) in [
        ("sym:3", "cyclic:2"),
        ("sym:3", "sym:3"),
        ("alt:4", "cyclic:2"),
        ("alt:4", "cyclic:3"),
        ("dihedral:8", "cyclic:3"),
        (Q8, "cyclic:3"),
        (C3_C4, "cyclic:2"),
        ("sym:4", "cyclic:2"),
        ("dihedral:10", "elem:2,2"),
    ] {
        v.push(format!("product({a},{b})"));
    }
    v
}

/// Raw permutation helpers independent of the library.
pub type Raw = Vec<usize>;

pub fn raw_mul(p: &Raw, q: &Raw) -> Raw {
    q.iter().map(|&x| p[x]).collect()
}

/// All elements generated by `gens`, by breadth-first multiplication.
pub fn raw_closure(gens: &[Raw], degree: usize) -> HashSet<Raw> {
    let id: Raw = (0..degree).collect();
    let mut seen: HashSet<Raw> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = raw_mul(g, &x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// Number of ordered pairs `(a, b)` of elements generating the whole group.
pub fn generating_pairs(l: &SubgroupLattice) -> u64 {
    let g = l.group();
    let elems: Vec<Raw> = g
        .elements()
        .map(|p| p.images().iter().map(|&x| x as usize).collect())
        .collect();
    let n = elems.len();
    let mut count = 0;
    for a in &elems {
        for b in &elems {
            if raw_closure(&[a.clone(), b.clone()], g.degree()).len() == n {
                count += 1;
            }
        }
    }
    count
}
