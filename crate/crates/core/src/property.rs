//! The (μ, λ)-property `μ(H) = [N_{G′}(H) : G′ ∩ H] · λ(H)` and the
//! reductions around it: direct products, Frattini quotients and the
//! comparison of overgroup posets.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{intersect_sorted, Group, Rank};
use crate::lattice::SubgroupLattice;
use crate::moebius::{moebius_table, mu_lattice_full, MoebiusTable};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub class: usize,
    pub rep_order: usize,
    pub class_size: usize,
    pub normalizer_order: usize,
    pub mu: i64,
    pub lambda: i64,
    /// `|N_{G′}(H)|`
    pub derived_normalizer_order: usize,
    /// `|G′ ∩ H|`
    pub derived_meet_order: usize,
    pub t: u64,
    pub predicted: i64,
    pub pass: bool,
    pub maxint: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub order: usize,
    pub solvable: bool,
    pub derived_order: usize,
    pub frattini_order: usize,
    pub subgroup_count: usize,
    pub classes: Vec<ClassReport>,
    pub verdict: bool,
    pub failing: Vec<usize>,
}

impl PropertyReport {
    pub fn class(&self, c: usize) -> Option<&ClassReport> {
        self.classes.iter().find(|r| r.class == c)
    }
}

/// Evaluates the property at the representative of every class, or only at
/// MaxInt classes when `maxint_only` is set.
pub fn check_property(
    l: &SubgroupLattice,
    table: &MoebiusTable,
    maxint_only: bool,
) -> Result<PropertyReport> {
    let g = l.group();
    let derived = g.derived_ranks(&g.generator_ranks());
    let mut classes = Vec::with_capacity(l.class_count());
    for c in 0..l.class_count() {
        if maxint_only && !l.is_maxint_class(c) {
            continue;
        }
        let rep = l.subgroup(l.class_rep(c));
        let norm = l.rep_normalizer(c);
        let nd = intersect_sorted(norm, &derived).len();
        let hd = intersect_sorted(rep, &derived).len();
        if !nd.is_multiple_of(hd) {
            return Err(Error::Inconsistent(format!(
                "class {c}: |G′∩H| does not divide |N_G′(H)|"
            )));
        }
        let t = (nd / hd) as u64;
        let (mu, lambda) = (table.mu_class(c), table.lambda(c));
        let predicted = lambda.checked_mul(t as i64).ok_or(Error::Overflow("t·λ"))?;
        classes.push(ClassReport {
            class: c,
            rep_order: rep.len(),
            class_size: l.class_size(c),
            normalizer_order: norm.len(),
            mu,
            lambda,
            derived_normalizer_order: nd,
            derived_meet_order: hd,
            t,
            predicted,
            pass: mu == predicted,
            maxint: l.is_maxint_class(c),
        });
    }
    let failing: Vec<usize> = classes
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.class)
        .collect();
    Ok(PropertyReport {
        order: g.order(),
        solvable: g.is_solvable(),
        derived_order: derived.len(),
        frattini_order: l.order_of(l.frattini()),
        subgroup_count: l.len(),
        verdict: failing.is_empty(),
        failing,
        classes,
    })
}

/// Enumerates the lattice and checks every class.
pub fn analyze(
    g: Group,
    subgroup_cap: usize,
) -> Result<(SubgroupLattice, MoebiusTable, PropertyReport)> {
    let l = SubgroupLattice::enumerate(g, subgroup_cap)?;
    let table = moebius_table(&l)?;
    let report = check_property(&l, &table, false)?;
    Ok((l, table, report))
}

/// Recomputes `μ`, the set of classes above, and `t` at every subgroup (not
/// just representatives) and returns the subgroups where they differ from
/// their class representative. Quadratic in the lattice size.
pub fn class_invariance_violations(
    l: &SubgroupLattice,
    table: &MoebiusTable,
) -> Result<Vec<usize>> {
    let g = l.group();
    let derived = g.derived_ranks(&g.generator_ranks());
    let full_mu = mu_lattice_full(l)?;
    let inc = l.inclusion();
    let up_classes =
        |i: usize| -> BTreeSet<usize> { inc[i].iter().map(|j| l.class_of(j)).collect() };
    let t_of = |i: usize| -> (usize, usize) {
        let h = l.subgroup(i);
        let norm = g.normalizer_ranks(h, &g.generating_set(h));
        (
            intersect_sorted(&norm, &derived).len(),
            intersect_sorted(h, &derived).len(),
        )
    };
    let mut bad = Vec::new();
    for c in 0..l.class_count() {
        let rep = l.class_rep(c);
        let (rep_up, rep_t) = (up_classes(rep), t_of(rep));
        for &i in l.class_members(c) {
            if full_mu[i] != table.mu_class(c) || up_classes(i) != rep_up || t_of(i) != rep_t {
                bad.push(i);
            }
        }
    }
    Ok(bad)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductReport {
    pub verdict: Verdict,
    pub maximal_classes: usize,
    pub non_split_maximal: Vec<usize>,
    pub split_classes: usize,
    /// Classes of the product where `μ` or `λ` fails to factor.
    pub factor_mismatches: Vec<usize>,
    pub factors_pass: (bool, bool),
    pub product_pass: bool,
}

/// The direct product of two groups acting on disjoint point sets.
pub fn direct_product(g1: &Group, g2: &Group, element_cap: usize) -> Result<Group> {
    let (n1, n2) = (g1.degree(), g2.degree());
    let n = n1 + n2;
    let mut gens: Vec<Permutation> = g1.generators().iter().map(|p| p.embed(0, n)).collect();
    gens.extend(g2.generators().iter().map(|p| p.embed(n1, n)));
    Group::close_with_degree(n, &gens, element_cap)
}

pub fn product_split_check(
    g1: Group,
    g2: Group,
    element_cap: usize,
    subgroup_cap: usize,
) -> Result<ProductReport> {
    let n1 = g1.degree();
    let g = direct_product(&g1, &g2, element_cap)?;
    let (l1, t1, r1) = analyze(g1, subgroup_cap)?;
    let (l2, t2, r2) = analyze(g2, subgroup_cap)?;
    let (l, t, r) = analyze(g, subgroup_cap)?;
    let (g, g1, g2) = (l.group(), l1.group(), l2.group());

    let proj: Vec<(Rank, Rank)> = (0..g.order() as Rank)
        .map(|x| {
            let row = g.row(x);
            let second: Vec<u32> = row[n1..].iter().map(|&y| y - n1 as u32).collect();
            (
                g1.rank_of_images(&row[..n1]).expect("first factor"),
                g2.rank_of_images(&second).expect("second factor"),
            )
        })
        .collect();
    // (H ∩ G1, H ∩ G2) projected into the factors.
    let split = |h: &[Rank]| -> (Vec<Rank>, Vec<Rank>) {
        let mut a: Vec<Rank> = h
            .iter()
            .filter(|&&x| proj[x as usize].1 == 0)
            .map(|&x| proj[x as usize].0)
            .collect();
        let mut b: Vec<Rank> = h
            .iter()
            .filter(|&&x| proj[x as usize].0 == 0)
            .map(|&x| proj[x as usize].1)
            .collect();
        a.sort_unstable();
        b.sort_unstable();
        (a, b)
    };

    let maximal: Vec<usize> = (0..l.class_count())
        .filter(|&c| l.is_maximal_class(c))
        .collect();
    let non_split_maximal: Vec<usize> = maximal
        .iter()
        .copied()
        .filter(|&c| {
            let h = l.subgroup(l.class_rep(c));
            let (a, b) = split(h);
            a.len() * b.len() != h.len()
        })
        .collect();

    let mut split_classes = 0;
    let mut factor_mismatches = Vec::new();
    for c in 0..l.class_count() {
        let h = l.subgroup(l.class_rep(c));
        let (a, b) = split(h);
        if a.len() * b.len() != h.len() {
            continue;
        }
        split_classes += 1;
        let i1 = l1
            .index_of(&a)
            .ok_or(Error::Inconsistent("factor subgroup missing".into()))?;
        let i2 = l2
            .index_of(&b)
            .ok_or(Error::Inconsistent("factor subgroup missing".into()))?;
        let (c1, c2) = (l1.class_of(i1), l2.class_of(i2));
        let mu = t1
            .mu_class(c1)
            .checked_mul(t2.mu_class(c2))
            .ok_or(Error::Overflow("μ product"))?;
        let lambda = t1
            .lambda(c1)
            .checked_mul(t2.lambda(c2))
            .ok_or(Error::Overflow("λ product"))?;
        if t.mu_class(c) != mu || t.lambda(c) != lambda {
            factor_mismatches.push(c);
        }
    }

    let factors_pass = (r1.verdict, r2.verdict);
    let verdict = if !non_split_maximal.is_empty() {
        Verdict::NotApplicable
    } else if factor_mismatches.is_empty() && (!(factors_pass.0 && factors_pass.1) || r.verdict) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(ProductReport {
        verdict,
        maximal_classes: maximal.len(),
        non_split_maximal,
        split_classes,
        factor_mismatches,
        factors_pass,
        product_pass: r.verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientRow {
    pub class: usize,
    pub quotient_class: usize,
    pub rep_order: usize,
    pub mu: (i64, i64),
    pub lambda: (i64, i64),
    pub t: (u64, u64),
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub frattini_order: usize,
    pub quotient_order: usize,
    pub rows: Vec<QuotientRow>,
    pub pass: bool,
    pub group_property: bool,
    pub quotient_property: bool,
}

/// Compares `μ`, `λ` and `t` on every class containing `Φ(G)` with the
/// corresponding class of `G/Φ(G)`.
pub fn frattini_quotient_check(
    l: &SubgroupLattice,
    element_cap: usize,
    subgroup_cap: usize,
) -> Result<QuotientReport> {
    let g = l.group();
    let table = moebius_table(l)?;
    let report = check_property(l, &table, false)?;
    let phi = l.subgroup(l.frattini()).to_vec();

    let quotient;
    let (lq, tq, rq, bar): (&SubgroupLattice, MoebiusTable, PropertyReport, Vec<Rank>) =
        if phi.len() == 1 {
            (
                l,
                table.clone(),
                report.clone(),
                (0..g.order() as Rank).collect(),
            )
        } else {
            let (q, bar) = g.quotient(&phi, element_cap)?;
            quotient = SubgroupLattice::enumerate(q, subgroup_cap)?;
            let tq = moebius_table(&quotient)?;
            let rq = check_property(&quotient, &tq, false)?;
            (&quotient, tq, rq, bar)
        };

    let mut rows = Vec::new();
    for c in 0..l.class_count() {
        let h = l.subgroup(l.class_rep(c));
        if intersect_sorted(h, &phi).len() != phi.len() {
            continue;
        }
        let mut image: Vec<Rank> = h.iter().map(|&x| bar[x as usize]).collect();
        image.sort_unstable();
        image.dedup();
        let i = lq.index_of(&image).ok_or(Error::Inconsistent(
            "image subgroup missing from quotient lattice".into(),
        ))?;
        let cq = lq.class_of(i);
        let t = report.class(c).map(|r| r.t).unwrap_or(0);
        let t_bar = rq.class(cq).map(|r| r.t).unwrap_or(0);
        let mu = (table.mu_class(c), tq.mu_class(cq));
        let lambda = (table.lambda(c), tq.lambda(cq));
        rows.push(QuotientRow {
            class: c,
            quotient_class: cq,
            rep_order: h.len(),
            mu,
            lambda,
            t: (t, t_bar),
            ok: mu.0 == mu.1 && lambda.0 == lambda.1 && t == t_bar,
        });
    }
    Ok(QuotientReport {
        frattini_order: phi.len(),
        quotient_order: lq.group().order(),
        pass: rows.iter().all(|r| r.ok),
        rows,
        group_property: report.verdict,
        quotient_property: rq.verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OvergroupDiagnostic {
    /// Subgroups `K ≥ H`.
    pub subgroups: Vec<usize>,
    /// Classes `[K] ≥ [H]`.
    pub classes: Vec<usize>,
    pub isomorphic: bool,
}

pub fn overgroup_poset_diagnostic(l: &SubgroupLattice, h: usize) -> OvergroupDiagnostic {
    let subgroups = l.overgroups(h);
    let hc = l.class_of(h);
    let classes: Vec<usize> = (0..l.class_count())
        .filter(|&c| l.poset().leq(hc, c))
        .collect();
    let s: Vec<Vec<bool>> = subgroups
        .iter()
        .map(|&a| subgroups.iter().map(|&b| l.leq(a, b)).collect())
        .collect();
    let sbar: Vec<Vec<bool>> = classes
        .iter()
        .map(|&a| classes.iter().map(|&b| l.poset().leq(a, b)).collect())
        .collect();
    OvergroupDiagnostic {
        isomorphic: posets_isomorphic(&s, &sbar),
        subgroups,
        classes,
    }
}

/// Exhaustive isomorphism test for finite posets given as `≤` matrices.
pub fn posets_isomorphic(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let signature = |m: &[Vec<bool>], i: usize| {
        let up = (0..n).filter(|&j| m[i][j]).count();
        let down = (0..n).filter(|&j| m[j][i]).count();
        (up, down)
    };
    let sa: Vec<_> = (0..n).map(|i| signature(a, i)).collect();
    let sb: Vec<_> = (0..n).map(|i| signature(b, i)).collect();
    let (mut x, mut y) = (sa.clone(), sb.clone());
    x.sort_unstable();
    y.sort_unstable();
    if x != y {
        return false;
    }

    fn extend(
        i: usize,
        a: &[Vec<bool>],
        b: &[Vec<bool>],
        sa: &[(usize, usize)],
        sb: &[(usize, usize)],
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if i == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if used[j] || sa[i] != sb[j] {
                continue;
            }
            let consistent = (0..i).all(|k| a[i][k] == b[j][map[k]] && a[k][i] == b[map[k]][j]);
            if !consistent || a[i][i] != b[j][j] {
                continue;
            }
            used[j] = true;
            map.push(j);
            if extend(i + 1, a, b, sa, sb, map, used) {
                return true;
            }
            map.pop();
            used[j] = false;
        }
        false
    }
    extend(
        0,
        a,
        b,
        &sa,
        &sb,
        &mut Vec::with_capacity(n),
        &mut vec![false; n],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DEFAULT_SUBGROUP_CAP;
    use crate::zoo::build;

    fn run(spec: &str) -> (SubgroupLattice, MoebiusTable, PropertyReport) {
        analyze(build(spec, 100_000).unwrap(), DEFAULT_SUBGROUP_CAP).unwrap()
    }

    #[test]
    fn s3_trivial_class() {
        let (_, _, r) = run("sym:3");
        let c = &r.classes[0];
        assert_eq!((c.mu, c.lambda, c.t, c.pass), (3, 1, 3, true));
        assert!(r.verdict);
    }

    #[test]
    fn a5_trivial_class() {
        let (_, _, r) = run("psl2:4");
        let c = &r.classes[0];
        assert_eq!((c.mu, c.lambda, c.t), (-60, -1, 60));
        assert!(r.verdict);
        // G′ = G, so t = [N_G(H) : H]
        for c in &r.classes {
            assert_eq!(c.t as usize, c.normalizer_order / c.rep_order);
        }
    }

    #[test]
    fn maxint_only_skips_classes() {
        let (l, t, full) = run("sym:4");
        let restricted = check_property(&l, &t, true).unwrap();
        assert!(restricted.classes.len() < full.classes.len());
        assert!(restricted.classes.iter().all(|c| c.maxint));
    }

    #[test]
    fn class_invariance_small_groups() {
        for spec in ["sym:4", "alt:5", "dihedral:8"] {
            let (l, t, _) = run(spec);
            assert!(
                class_invariance_violations(&l, &t).unwrap().is_empty(),
                "{spec}"
            );
        }
    }

    #[test]
    fn klein_square_is_not_applicable() {
        let c2 = build("cyclic:2", 10).unwrap();
        let r = product_split_check(c2.clone(), c2, 1000, 1000).unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn s3_times_c5_splits() {
        let r = product_split_check(
            build("sym:3", 10).unwrap(),
            build("cyclic:5", 10).unwrap(),
            1000,
            1000,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.product_pass);
    }

    #[test]
    fn cyclic_four_quotient() {
        let (l, _, _) = run("cyclic:4");
        let r = frattini_quotient_check(&l, 1000, 1000).unwrap();
        assert_eq!((r.frattini_order, r.quotient_order), (2, 2));
        assert!(r.pass);
        let c2 = r.rows.iter().find(|row| row.rep_order == 2).unwrap();
        assert_eq!(c2.mu, (-1, -1));
    }

    #[test]
    fn trivial_frattini_quotient_is_identity() {
        let (l, _, _) = run("sym:3");
        let r = frattini_quotient_check(&l, 1000, 1000).unwrap();
        assert_eq!(r.frattini_order, 1);
        assert_eq!(r.rows.len(), l.class_count());
        assert!(r.pass);
    }

    #[test]
    fn overgroup_posets() {
        let (l, _, _) = run("sym:3");
        let top = overgroup_poset_diagnostic(&l, l.top());
        assert_eq!(
            (top.subgroups.len(), top.classes.len(), top.isomorphic),
            (1, 1, true)
        );
        let c2 = overgroup_poset_diagnostic(&l, 1);
        assert_eq!(
            (c2.subgroups.len(), c2.classes.len(), c2.isomorphic),
            (2, 2, true)
        );
    }

    #[test]
    fn poset_isomorphism() {
        let chain = |n: usize| -> Vec<Vec<bool>> {
            (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect()
        };
        let antichain = |n: usize| -> Vec<Vec<bool>> {
            (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect()
        };
        assert!(posets_isomorphic(&chain(4), &chain(4)));
        assert!(!posets_isomorphic(&chain(3), &antichain(3)));
        // diamond vs. its relabelling
        let d1 = vec![
            vec![true, true, true, true],
            vec![false, true, false, true],
            vec![false, false, true, true],
            vec![false, false, false, true],
        ];
        let d2 = vec![
            vec![true, false, false, false],
            vec![true, true, true, true],
            vec![true, false, true, false],
            vec![true, false, false, true],
        ];
        assert!(posets_isomorphic(&d1, &d2));
    }
}
