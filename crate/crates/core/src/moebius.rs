//! Möbius functions: number-theoretic `μ(n)`, the subgroup-lattice value
//! `μ(H) = μ_L(H, G)` and the class-poset value `λ(H) = μ_C([H], [G])`.
//!
//! Both lattice functions are class functions, so they are computed once per
//! conjugacy class from the containment counts stored in the class poset:
//! `μ(H) = −Σ_k n(H, k)·μ_k` where `n(H, k)` is the number of members of
//! class `k` strictly containing `H`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::smallest_prime_factor;
use crate::lattice::{ClassPoset, SubgroupLattice};

pub fn moebius_integer(n: u64) -> i64 {
    assert!(n >= 1, "moebius_integer is defined for n >= 1");
    let mut n = n;
    let mut sign = 1;
    while n > 1 {
        let p = smallest_prime_factor(n);
        n /= p;
        if n.is_multiple_of(p) {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// How the lattice recursion treats subgroups outside MaxInt(G).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Restriction {
    /// Sum over MaxInt members only and set the rest to zero.
    #[default]
    MaxInt,
    /// Sum over every overgroup.
    None,
    /// Compute both and fail unless they agree.
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoebiusTable {
    class_of: Vec<usize>,
    mu: Vec<i64>,
    lambda: Vec<i64>,
    maxint: Vec<bool>,
}

impl MoebiusTable {
    pub fn mu(&self, subgroup: usize) -> i64 {
        self.mu[self.class_of[subgroup]]
    }

    pub fn mu_class(&self, c: usize) -> i64 {
        self.mu[c]
    }

    pub fn lambda(&self, c: usize) -> i64 {
        self.lambda[c]
    }

    pub fn is_maxint_class(&self, c: usize) -> bool {
        self.maxint[c]
    }

    pub fn class_count(&self) -> usize {
        self.mu.len()
    }
}

pub fn moebius_table(l: &SubgroupLattice) -> Result<MoebiusTable> {
    moebius_table_with(l, Restriction::default())
}

pub fn moebius_table_with(l: &SubgroupLattice, restriction: Restriction) -> Result<MoebiusTable> {
    let maxint: Vec<bool> = (0..l.class_count()).map(|c| l.is_maxint_class(c)).collect();
    let (mu, lambda) = match restriction {
        Restriction::MaxInt => (
            mu_lattice(l.poset(), Some(&maxint))?,
            lambda_poset(l.poset(), Some(&maxint))?,
        ),
        Restriction::None => (mu_lattice(l.poset(), None)?, lambda_poset(l.poset(), None)?),
        Restriction::Both => {
            let pairs = [
                (
                    mu_lattice(l.poset(), Some(&maxint))?,
                    mu_lattice(l.poset(), None)?,
                    "μ",
                ),
                (
                    lambda_poset(l.poset(), Some(&maxint))?,
                    lambda_poset(l.poset(), None)?,
                    "λ",
                ),
            ];
            for (restricted, full, name) in &pairs {
                if let Some(c) = (0..full.len()).find(|&c| restricted[c] != full[c]) {
                    return Err(Error::Inconsistent(format!(
                        "{name} at class {c}: {} with MaxInt restriction, {} without",
                        restricted[c], full[c]
                    )));
                }
            }
            let [(mu, _, _), (lambda, _, _)] = pairs;
            (mu, lambda)
        }
    };
    Ok(MoebiusTable {
        class_of: l.class_map().to_vec(),
        mu,
        lambda,
        maxint,
    })
}

/// `μ` per class. With `maxint`, classes outside it are zero and only MaxInt
/// overgroups are summed.
pub fn mu_lattice(poset: &ClassPoset, maxint: Option<&[bool]>) -> Result<Vec<i64>> {
    recurse(poset, maxint, true)
}

/// `λ` per class, with the same optional MaxInt restriction.
pub fn lambda_poset(poset: &ClassPoset, maxint: Option<&[bool]>) -> Result<Vec<i64>> {
    recurse(poset, maxint, false)
}

fn recurse(poset: &ClassPoset, maxint: Option<&[bool]>, weighted: bool) -> Result<Vec<i64>> {
    let n = poset.len();
    let mut values = vec![0i64; n];
    let keep = |c: usize| maxint.is_none_or(|m| m[c]);
    for h in (0..n).rev() {
        if h == poset.top() {
            values[h] = 1;
            continue;
        }
        if !keep(h) {
            continue;
        }
        let mut sum: i64 = 0;
        for &(k, count) in poset.up(h) {
            if !keep(k) {
                continue;
            }
            let weight = if weighted {
                i64::try_from(count).map_err(|_| Error::Overflow("μ"))?
            } else {
                1
            };
            let term = values[k].checked_mul(weight).ok_or(Error::Overflow("μ"))?;
            sum = sum.checked_add(term).ok_or(Error::Overflow("μ"))?;
        }
        values[h] = sum.checked_neg().ok_or(Error::Overflow("μ"))?;
    }
    Ok(values)
}

/// `μ(H)` for every subgroup straight from the inclusion relation, without
/// using conjugacy. Quadratic in the lattice size.
pub fn mu_lattice_full(l: &SubgroupLattice) -> Result<Vec<i64>> {
    let inc = l.inclusion();
    let n = l.len();
    let mut mu = vec![0i64; n];
    for i in (0..n).rev() {
        if i == n - 1 {
            mu[i] = 1;
            continue;
        }
        let mut sum: i64 = 0;
        for j in inc[i].iter().filter(|&j| j != i) {
            sum = sum.checked_add(mu[j]).ok_or(Error::Overflow("μ"))?;
        }
        mu[i] = -sum;
    }
    Ok(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DEFAULT_SUBGROUP_CAP;
    use crate::zoo::build;

    fn lattice(spec: &str) -> SubgroupLattice {
        SubgroupLattice::enumerate(build(spec, 100_000).unwrap(), DEFAULT_SUBGROUP_CAP).unwrap()
    }

    #[test]
    fn integer_moebius() {
        assert_eq!(moebius_integer(1), 1);
        assert_eq!(moebius_integer(30), -1);
        assert_eq!(moebius_integer(12), 0);
        assert_eq!(moebius_integer(7), -1);
        assert_eq!(moebius_integer(6), 1);
    }

    #[test]
    fn divisor_sums_vanish() {
        for n in 1..=10_000u64 {
            let s: i64 = (1..=n).filter(|d| n % d == 0).map(moebius_integer).sum();
            assert_eq!(s, i64::from(n == 1), "n={n}");
        }
    }

    #[test]
    fn prime_square_chain() {
        let l = lattice("cyclic:9");
        let t = moebius_table(&l).unwrap();
        assert_eq!((t.mu(0), t.mu(1), t.mu(2)), (0, -1, 1));
    }

    #[test]
    fn s3_values() {
        let l = lattice("sym:3");
        let t = moebius_table_with(&l, Restriction::Both).unwrap();
        assert_eq!(t.mu(0), 3);
        assert_eq!(t.lambda(0), 1);
        assert_eq!(t.mu_class(1), -1);
        assert_eq!(t.lambda(1), -1);
    }

    #[test]
    fn a5_trivial_subgroup() {
        let l = lattice("psl2:4");
        let t = moebius_table(&l).unwrap();
        assert_eq!(t.mu(0), -60);
        assert_eq!(t.lambda(0), -1);
        let c2 = (0..l.class_count())
            .find(|&c| l.order_of(l.class_rep(c)) == 2)
            .unwrap();
        assert_eq!(t.lambda(c2), 2);
        assert_eq!(t.mu_class(c2), 4);
    }

    #[test]
    fn full_route_agrees_with_class_route() {
        for spec in ["sym:4", "alt:5", "dihedral:12", "elem:2,3"] {
            let l = lattice(spec);
            let t = moebius_table_with(&l, Restriction::Both).unwrap();
            let full = mu_lattice_full(&l).unwrap();
            for (i, &m) in full.iter().enumerate() {
                assert_eq!(m, t.mu(i), "{spec} subgroup {i}");
            }
        }
    }

    #[test]
    fn restriction_changes_nothing_on_larger_groups() {
        for spec in ["psl2:8", "pgl2:5", "psl2:9"] {
            moebius_table_with(&lattice(spec), Restriction::Both).unwrap();
        }
    }
}
