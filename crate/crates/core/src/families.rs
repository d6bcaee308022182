//! Closed-form subgroup data for `L₂(q)`, `Sz(q)` and `R(q)`: every class
//! with `μ ≠ 0` or `λ ≠ 0`, with exact orders, normalizer orders, `μ` and `λ`.
//!
//! For `L₂(q)`, `r(h) = (p^h−1)/2`, `s(h) = (p^h+1)/2`, `𝒢_h = PGL₂(p^h)`,
//! `𝒮_h = PSL₂(p^h)` and `M_{h,d} = E_{p^h}:C_d`. Group names carry their
//! order as subscript (`D_n` has order `n`).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::prime_power;
use crate::lattice::SubgroupLattice;
use crate::moebius::{moebius_integer, MoebiusTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    L2Even,
    L2Odd,
    L2OddSquare,
    Sz,
    Ree,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::L2Even => "L2even",
            Family::L2Odd => "L2odd",
            Family::L2OddSquare => "L2oddSquare",
            Family::Sz => "Sz",
            Family::Ree => "Ree",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub family: Family,
    pub label: String,
    pub h: Option<u32>,
    pub order: i128,
    pub mu: i128,
    pub normalizer_order: i128,
    pub lambda: i128,
    pub condition: String,
}

/// Which closed-form family a command refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    L2,
    Sz,
    Ree,
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l2" => Ok(FamilyKind::L2),
            "sz" => Ok(FamilyKind::Sz),
            "ree" => Ok(FamilyKind::Ree),
            _ => Err(Error::UnknownConstructor(s.to_string())),
        }
    }
}

pub fn rows(kind: FamilyKind, q: u64) -> Result<Vec<FamilyRow>> {
    match kind {
        FamilyKind::L2 => l2_rows(q),
        FamilyKind::Sz => sz_rows(q),
        FamilyKind::Ree => ree_rows(q),
    }
}

/// Group spec of a member of the family that the zoo can build, if any.
pub fn buildable_spec(kind: FamilyKind, q: u64) -> Option<String> {
    match (kind, q) {
        (FamilyKind::L2, _) => Some(format!("psl2:{q}")),
        (FamilyKind::Sz, 8) => Some("sz:8".into()),
        _ => None,
    }
}

/// `|L₂(q)|`, `|Sz(q)|` or `|R(q)|`.
pub fn group_order(kind: FamilyKind, q: u64) -> Result<i128> {
    let q = q as i128;
    match kind {
        FamilyKind::L2 => {
            let d = if q % 2 == 1 { 2 } else { 1 };
            Ok(mul(&[q, q * q - 1])? / d)
        }
        FamilyKind::Sz => mul(&[q, q, q * q + 1, q - 1]),
        FamilyKind::Ree => mul(&[q, q, q, mul(&[q, q, q])? + 1, q - 1]),
    }
}

fn mul(xs: &[i128]) -> Result<i128> {
    xs.iter()
        .try_fold(1i128, |acc, &x| acc.checked_mul(x))
        .ok_or(Error::Overflow("family row"))
}

fn pow(b: u64, e: u32) -> Result<i128> {
    (b as i128)
        .checked_pow(e)
        .ok_or(Error::Overflow("family row"))
}

fn mu_int(n: u32) -> i128 {
    moebius_integer(n as u64) as i128
}

fn divisors(e: u32) -> Vec<u32> {
    (1..=e).filter(|h| e.is_multiple_of(*h)).collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

struct RowSink {
    family: Family,
    rows: Vec<FamilyRow>,
}

impl RowSink {
    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        label: &str,
        h: Option<u32>,
        order: i128,
        mu: i128,
        normalizer_order: i128,
        lambda: i128,
        condition: &str,
    ) {
        self.rows.push(FamilyRow {
            family: self.family,
            label: label.to_string(),
            h,
            order,
            mu,
            normalizer_order,
            lambda,
            condition: condition.to_string(),
        });
    }
}

pub fn l2_rows(q: u64) -> Result<Vec<FamilyRow>> {
    let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let outside = |reason: &str| {
        Err(Error::OutsideRegime {
            q,
            reason: reason.into(),
        })
    };
    if p == 2 {
        if e < 2 {
            return outside("q = 2^e needs e >= 2");
        }
        return l2_even(q, e);
    }
    if e == 1 {
        return outside("prime q");
    }
    if e == 2 {
        match p % 5 {
            1 | 4 => l2_odd(q, p, e),
            _ if p >= 7 => l2_odd_square(q, p),
            _ => outside("q = 9 and q = 25 are not tabulated"),
        }
    } else {
        l2_odd(q, p, e)
    }
}

fn l2_even(q: u64, e: u32) -> Result<Vec<FamilyRow>> {
    let mut out = RowSink {
        family: Family::L2Even,
        rows: Vec::new(),
    };
    let qi = q as i128;
    let g = group_order(FamilyKind::L2, q)?;
    for h in divisors(e).into_iter().filter(|&h| h > 1) {
        let m = mu_int(e / h);
        let ph = pow(2, h)?;
        let hs = Some(h);
        let cond = "h | e, h > 1";
        out.push(
            "S_h",
            hs,
            mul(&[ph, ph * ph - 1])?,
            m,
            mul(&[ph, ph * ph - 1])?,
            m,
            cond,
        );
        out.push(
            "M_{h,2r(h)}",
            hs,
            ph * (ph - 1),
            -m,
            ph * (ph - 1),
            -m,
            cond,
        );
        out.push("D_{4r(h)}", hs, 2 * (ph - 1), -m, 2 * (ph - 1), -m, cond);
        out.push("D_{4s(h)}", hs, 2 * (ph + 1), -m, 2 * (ph + 1), -m, cond);
        out.push(
            "C_{2r(h)}",
            hs,
            ph - 1,
            2 * (qi - 1) / (ph - 1) * m,
            2 * (qi - 1),
            m,
            cond,
        );
    }
    let me = mu_int(e);
    out.push("C_2", None, 2, -qi * me, qi, -2 * me, "always");
    out.push("{1}", None, 1, g * me, g, me, "always");
    Ok(out.rows)
}

/// Tables for odd `q = p^e` with `e > 2`, or `e = 2` and `p ≡ ±1 (mod 5)`.
fn l2_odd(q: u64, p: u64, e: u32) -> Result<Vec<FamilyRow>> {
    let mut out = RowSink {
        family: Family::L2Odd,
        rows: Vec::new(),
    };
    let qi = q as i128;
    let g = group_order(FamilyKind::L2, q)?;
    for h in divisors(e) {
        let m = mu_int(e / h);
        let ph = pow(p, h)?;
        let (r, s) = ((ph - 1) / 2, (ph + 1) / 2);
        let hs = Some(h);
        let even = (e / h).is_multiple_of(2);
        let pgl = mul(&[ph, ph * ph - 1])?;
        if even {
            out.push("G_h", hs, pgl, m, pgl, m, "e/h even");
            out.push(
                "M_{h,2r(h)}",
                hs,
                ph * 2 * r,
                -m,
                ph * 2 * r,
                -m,
                "e/h even",
            );
            if ph != 3 {
                let n = gcd(8 * r, qi - 1);
                let lambda = -2 * m / gcd(2, (qi - 1) / (4 * r));
                out.push(
                    "D_{4r(h)}",
                    hs,
                    4 * r,
                    -2 * m,
                    n,
                    lambda,
                    "e/h even, p^h != 3",
                );
            }
            let n = gcd(8 * s, qi - 1);
            let lambda = -2 * m / gcd(2, (qi - 1) / (4 * s));
            out.push("D_{4s(h)}", hs, 4 * s, -2 * m, n, lambda, "e/h even");
            if ph != 3 {
                out.push(
                    "C_{2r(h)}",
                    hs,
                    2 * r,
                    2 * (qi - 1) / (ph - 1) * m,
                    qi - 1,
                    2 * m,
                    "e/h even, p^h != 3",
                );
            }
        } else {
            out.push("S_h", hs, pgl / 2, m, pgl / 2, m, "e/h odd");
            // M_{h,1} = E_3 is the C_3 of the exceptional rows.
            if r > 1 {
                out.push("M_{h,r(h)}", hs, ph * r, -m, ph * r, -m, "e/h odd");
            }
            if ph != 3 && ph != 5 {
                out.push(
                    "D_{2r(h)}",
                    hs,
                    2 * r,
                    -m,
                    2 * r,
                    -m,
                    "e/h odd, p^h not in {3,5}",
                );
            }
            if ph != 3 {
                out.push("D_{2s(h)}", hs, 2 * s, -m, 2 * s, -m, "e/h odd, p^h != 3");
            }
            // C_{r(h)} = C_3 at p^h = 7 is the C_3 of the exceptional rows.
            if ph != 3 && ph != 5 && r != 3 {
                out.push(
                    "C_{r(h)}",
                    hs,
                    r,
                    2 * (qi - 1) / (ph - 1) * m,
                    qi - 1,
                    m,
                    "e/h odd, p^h not in {3,5}",
                );
            }
        }
    }

    let me = mu_int(e);
    let e_odd = e % 2 == 1;
    let e_power_of_two = e.is_power_of_two();

    let alpha = if e_power_of_two { -6 } else { 0 };
    let beta = match (p, e_odd) {
        (3, false) => 6 * me,
        (3, true) | (5, true) => 3 * me,
        _ => 0,
    };
    let mu_d4 = alpha - beta;
    let (n_d4, div) = if qi % 8 == 1 || qi % 8 == 7 {
        (24, 6)
    } else {
        (12, 3)
    };
    if mu_d4 % div != 0 {
        return Err(Error::Inconsistent(format!(
            "μ(D_4) = {mu_d4} not divisible by {div}"
        )));
    }
    out.push("D_4", None, 4, mu_d4, n_d4, mu_d4 / div, "alpha - beta");

    let (mu_c3, lambda_c3, cond) = match (p, e_odd) {
        (7, true) => ((qi - 1) / 3 * me, me, "p = 7, e odd"),
        (3, _) => (qi / 3, 1, "p = 3"),
        _ => (0, 0, "otherwise"),
    };
    let n_c3 = match qi % 3 {
        0 => qi,
        1 => qi - 1,
        _ => qi + 1,
    };
    out.push("C_3", None, 3, mu_c3, n_c3, lambda_c3, cond);

    let gamma = if e_power_of_two { (qi - 1) / 2 } else { 0 };
    let delta = match (p, e_odd) {
        (3, false) => -(qi - 1) * me,
        (3, true) => (qi + 1) / 2 * me,
        (5, true) => -(qi - 1) / 2 * me,
        _ => 0,
    };
    let mu_c2 = gamma - delta;
    let n_c2 = if qi % 4 == 1 { qi - 1 } else { qi + 1 };
    if (2 * mu_c2) % n_c2 != 0 {
        return Err(Error::Inconsistent(format!(
            "2μ(C_2) = {} not divisible by {n_c2}",
            2 * mu_c2
        )));
    }
    out.push(
        "C_2",
        None,
        2,
        mu_c2,
        n_c2,
        2 * mu_c2 / n_c2,
        "gamma - delta",
    );

    let (mu_1, lambda_1) = if p == 3 && e_odd {
        (g * me, me)
    } else {
        (0, 0)
    };
    out.push(
        "{1}",
        None,
        1,
        mu_1,
        g,
        lambda_1,
        if p == 3 && e_odd {
            "p = 3, e odd"
        } else {
            "otherwise"
        },
    );
    Ok(out.rows)
}

/// Non-maximal classes of `L₂(p²)` with `p ≥ 7`, `p ≡ ±2 (mod 5)`.
fn l2_odd_square(q: u64, p: u64) -> Result<Vec<FamilyRow>> {
    let mut out = RowSink {
        family: Family::L2OddSquare,
        rows: Vec::new(),
    };
    let pi = p as i128;
    let g = group_order(FamilyKind::L2, q)?;
    let sq = pi * pi - 1;
    let c = "non-maximal";
    out.push("C_p:C_{p-1}", None, pi * (pi - 1), 1, pi * (pi - 1), 1, c);
    out.push("C_{(p^2-1)/2}", None, sq / 2, 2, sq, 1, c);
    out.push(
        "D_{2(p+1)}",
        None,
        2 * (pi + 1),
        2,
        (pi + 1) * gcd(4, pi - 1),
        2 / gcd(2, (pi - 1) / 2),
        c,
    );
    out.push(
        "D_{2(p-1)}",
        None,
        2 * (pi - 1),
        2,
        (pi - 1) * gcd(4, pi + 1),
        2 / gcd(2, (pi + 1) / 2),
        c,
    );
    out.push("C_{p-1}", None, pi - 1, -2 * (pi + 1), sq, -2, c);
    out.push("A_4", None, 12, 2, 24, 1, c);
    out.push("D_10", None, 10, 2, 10, 2, c);
    out.push("D_6", None, 6, 2, 12, 1, c);
    out.push("D_4", None, 4, -6, 24, -1, c);
    out.push("C_3", None, 3, -2 * sq / 3, sq, -2, c);
    out.push("C_2", None, 2, -3 * sq / 2, sq, -3, c);
    out.push("{1}", None, 1, 0, g, 0, c);
    Ok(out.rows)
}

pub fn sz_rows(q: u64) -> Result<Vec<FamilyRow>> {
    let e = match prime_power(q) {
        Some((2, e)) if e >= 3 && e % 2 == 1 => e,
        _ => {
            return Err(Error::OutsideRegime {
                q,
                reason: "Sz(q) needs q = 2^e with e odd, e >= 3".into(),
            });
        }
    };
    let mut out = RowSink {
        family: Family::Sz,
        rows: Vec::new(),
    };
    let qi = q as i128;
    let g = group_order(FamilyKind::Sz, q)?;
    for h in divisors(e).into_iter().filter(|&h| h > 1) {
        let m = mu_int(e / h);
        let ph = pow(2, h)?;
        let root = pow(2, h.div_ceil(2))?;
        let (a, b) = (ph + root + 1, ph - root + 1);
        let (a1, a2) = if a % 5 == 0 { (a, b) } else { (b, a) };
        let hs = Some(h);
        let c = "h | e, h > 1";
        let gh = mul(&[ph, ph, ph * ph + 1, ph - 1])?;
        out.push("G(h)", hs, gh, m, gh, m, c);
        out.push(
            "F(h)",
            hs,
            ph * ph * (ph - 1),
            -m,
            ph * ph * (ph - 1),
            -m,
            c,
        );
        out.push("B_0(h)", hs, 2 * (ph - 1), -m, 2 * (ph - 1), -m, c);
        out.push(
            "A_0(h)",
            hs,
            ph - 1,
            2 * (qi - 1) / (ph - 1) * m,
            2 * (qi - 1),
            m,
            c,
        );
        out.push("B_1(h)", hs, 4 * a1, -m, 4 * a1, -m, c);
        out.push("B_2(h)", hs, 4 * a2, -m, 4 * a2, -m, c);
    }
    let me = mu_int(e);
    out.push("C_4", None, 4, -qi * me, 2 * qi, -2 * me, "always");
    out.push("C_2", None, 2, -qi * qi / 2 * me, qi * qi, -me, "always");
    out.push("{1}", None, 1, g * me, g, me, "always");
    Ok(out.rows)
}

pub fn ree_rows(q: u64) -> Result<Vec<FamilyRow>> {
    let e = match prime_power(q) {
        Some((3, e)) if e >= 3 && e % 2 == 1 => e,
        _ => {
            return Err(Error::OutsideRegime {
                q,
                reason: "R(q) needs q = 3^e with e odd, e >= 3".into(),
            });
        }
    };
    let mut out = RowSink {
        family: Family::Ree,
        rows: Vec::new(),
    };
    for h in divisors(e) {
        let m = mu_int(e / h);
        let ph = pow(3, h)?;
        let root = pow(3, h.div_ceil(2))?;
        let hs = Some(h);
        let rh = mul(&[ph, ph, ph, mul(&[ph, ph, ph])? + 1, ph - 1])?;
        out.push("R(3^h)", hs, rh, m, rh, m, "h | e");
        let plus = 6 * (ph + root + 1);
        out.push("(3^h+3^((h+1)/2)+1):6", hs, plus, -m, plus, -m, "h | e");
        let parabolic = mul(&[ph, ph, ph, ph - 1])?;
        out.push(
            "(3^h)^(1+1+1):(3^h-1)",
            hs,
            parabolic,
            -m,
            parabolic,
            -m,
            "h | e",
        );
        if h > 1 {
            let c = "h | e, h > 1";
            let minus = 6 * (ph - root + 1);
            out.push("(3^h-3^((h+1)/2)+1):6", hs, minus, -m, minus, -m, c);
            let l2 = mul(&[ph, ph * ph - 1])?;
            out.push("2xL2(3^h)", hs, l2, -m, l2, -m, c);
            out.push(
                "2x(3^h:(3^h-1)/2)",
                hs,
                ph * (ph - 1),
                m,
                ph * (ph - 1),
                m,
                c,
            );
            out.push(
                "(2^2xD_((3^h+1)/2)):3",
                hs,
                6 * (ph + 1),
                -m,
                6 * (ph + 1),
                -m,
                c,
            );
            out.push(
                "2^2xD_((3^h+1)/2)",
                hs,
                2 * (ph + 1),
                3 * m,
                2 * (ph + 1),
                3 * m,
                c,
            );
        }
    }
    let me = mu_int(e);
    out.push("2xL2(3)", None, 24, -2 * me, 24, -2 * me, "always");
    out.push("2^3", None, 8, 21 * me, 168, me, "always");
    Ok(out.rows)
}

/// The first row violating `μ = [N:H]·λ`, or with `|H|` not dividing `|N|`.
pub fn first_inconsistent_row(rows: &[FamilyRow]) -> Option<&FamilyRow> {
    rows.iter().find(|r| {
        r.order <= 0
            || r.normalizer_order % r.order != 0
            || (r.normalizer_order / r.order).checked_mul(r.lambda) != Some(r.mu)
    })
}

pub fn table_self_check(rows: &[FamilyRow]) -> bool {
    first_inconsistent_row(rows).is_none()
}

/// `(|H|, μ, λ, |N_G(H)|)`
pub type ClassKey = (i128, i128, i128, i128);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub matched: bool,
    /// Present in the brute-force data but not in the rows.
    pub only_in_group: Vec<ClassKey>,
    /// Present in the rows but not in the brute-force data.
    pub only_in_rows: Vec<ClassKey>,
}

/// Compares the nonzero classes of the lattice with the nonzero rows as
/// multisets. Rows of the `L2OddSquare` family only cover non-maximal
/// classes, so maximal classes and `G` are left out of the comparison there.
pub fn cross_check_family(
    l: &SubgroupLattice,
    table: &MoebiusTable,
    rows: &[FamilyRow],
) -> CrossCheck {
    let non_maximal_only = rows.iter().any(|r| r.family == Family::L2OddSquare);
    let mut counts: BTreeMap<ClassKey, i64> = BTreeMap::new();
    for c in 0..l.class_count() {
        if non_maximal_only && (l.is_maximal_class(c) || c == l.class_count() - 1) {
            continue;
        }
        let (mu, lambda) = (table.mu_class(c) as i128, table.lambda(c) as i128);
        if mu == 0 && lambda == 0 {
            continue;
        }
        let key = (
            l.order_of(l.class_rep(c)) as i128,
            mu,
            lambda,
            l.rep_normalizer(c).len() as i128,
        );
        *counts.entry(key).or_default() += 1;
    }
    for r in rows.iter().filter(|r| r.mu != 0 || r.lambda != 0) {
        *counts
            .entry((r.order, r.mu, r.lambda, r.normalizer_order))
            .or_default() -= 1;
    }
    let expand = |sign: i64| -> Vec<ClassKey> {
        counts
            .iter()
            .filter(|(_, &n)| n * sign > 0)
            .flat_map(|(k, &n)| std::iter::repeat_n(*k, (n * sign) as usize))
            .collect()
    };
    let (only_in_group, only_in_rows) = (expand(1), expand(-1));
    CrossCheck {
        matched: only_in_group.is_empty() && only_in_rows.is_empty(),
        only_in_group,
        only_in_rows,
    }
}

pub fn rows_to_csv(rows: &[FamilyRow]) -> String {
    let mut s = String::from("family,label,h,order,mu,normalizer_order,lambda,condition\n");
    for r in rows {
        let h = r.h.map(|h| h.to_string()).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},\"{}\"",
            r.family.name(),
            r.label,
            h,
            r.order,
            r.mu,
            r.normalizer_order,
            r.lambda,
            r.condition
        );
    }
    s
}

/// Every `q ≤ bound` for which the family has closed-form rows.
pub fn admissible_q(kind: FamilyKind, bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&q| rows(kind, q).is_ok()).collect()
}
