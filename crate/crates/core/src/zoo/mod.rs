//! Named group constructors and the group-spec mini-language.
//!
//! ```text
//! spec := name ":" int | name ":" int "," int
//!       | "product(" spec "," spec ")"
//!       | "perm:[" cycles (";" cycles)* "]"
//! ```
//!
//! Whitespace between tokens is ignored. Cycles use 0-based points, e.g.
//! `perm:[(0 1 2)(3 4);(0 1)]`.

mod data;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{is_prime, prime_power, FiniteField};
use crate::group::{BitSet, Group, Rank};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u64),
    /// Parameter is the group order `2n`.
    Dihedral(u64),
    Sym(u64),
    Alt(u64),
    /// Elementary abelian group `p^k`.
    Elem(u64, u64),
    Psl2(u64),
    Pgl2(u64),
    Sz(u64),
    U3(u64),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// Raw generators, each a list of cycles.
    Perm(Vec<Vec<Vec<u32>>>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Sym(n) => write!(f, "sym:{n}"),
            GroupSpec::Alt(n) => write!(f, "alt:{n}"),
            GroupSpec::Elem(p, k) => write!(f, "elem:{p},{k}"),
            GroupSpec::Psl2(q) => write!(f, "psl2:{q}"),
            GroupSpec::Pgl2(q) => write!(f, "pgl2:{q}"),
            GroupSpec::Sz(q) => write!(f, "sz:{q}"),
            GroupSpec::U3(q) => write!(f, "u3:{q}"),
            GroupSpec::Product(a, b) => write!(f, "product({a},{b})"),
            GroupSpec::Perm(gens) => {
                write!(f, "perm:[")?;
                for (i, cycles) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    if cycles.is_empty() {
                        write!(f, "()")?;
                    }
                    for c in cycles {
                        let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                        write!(f, "({})", body.join(" "))?;
                    }
                }
                write!(f, "]")
            }
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(spec)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn name(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected constructor name"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: "integer too large".into(),
        })
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let start = self.pos;
        let name = self.name()?;
        match name.as_str() {
            "product" => {
                self.expect('(')?;
                let a = self.spec()?;
                self.expect(',')?;
                let b = self.spec()?;
                self.expect(')')?;
                Ok(GroupSpec::Product(Box::new(a), Box::new(b)))
            }
            "perm" => {
                self.expect(':')?;
                self.expect('[')?;
                let mut gens = vec![self.cycles()?];
                while self.peek() == Some(';') {
                    self.pos += 1;
                    gens.push(self.cycles()?);
                }
                self.expect(']')?;
                Ok(GroupSpec::Perm(gens))
            }
            "cyclic" | "dihedral" | "sym" | "alt" | "psl2" | "pgl2" | "sz" | "u3" => {
                self.expect(':')?;
                let n = self.int()?;
                let out_of_range =
                    |what: &str| Err(Error::ParameterOutOfRange(format!("{name}:{n} ({what})")));
                match name.as_str() {
                    "cyclic" if n == 0 => out_of_range("n >= 1"),
                    "sym" | "alt" if n == 0 => out_of_range("n >= 1"),
                    "dihedral" if n < 2 || n % 2 == 1 => out_of_range("even order >= 2"),
                    "psl2" | "pgl2" if n < 2 => out_of_range("q >= 2"),
                    "cyclic" => Ok(GroupSpec::Cyclic(n)),
                    "dihedral" => Ok(GroupSpec::Dihedral(n)),
                    "sym" => Ok(GroupSpec::Sym(n)),
                    "alt" => Ok(GroupSpec::Alt(n)),
                    "psl2" => Ok(GroupSpec::Psl2(n)),
                    "pgl2" => Ok(GroupSpec::Pgl2(n)),
                    "sz" => Ok(GroupSpec::Sz(n)),
                    _ => Ok(GroupSpec::U3(n)),
                }
            }
            "elem" => {
                self.expect(':')?;
                let p = self.int()?;
                self.expect(',')?;
                let k = self.int()?;
                if !is_prime(p) || k == 0 {
                    return Err(Error::ParameterOutOfRange(format!("elem:{p},{k}")));
                }
                Ok(GroupSpec::Elem(p, k))
            }
            _ => Err(Error::UnknownConstructor(
                self.chars[start..self.pos]
                    .iter()
                    .collect::<String>()
                    .trim()
                    .to_string(),
            )),
        }
    }

    /// One generator: `()` or a run of cycles.
    fn cycles(&mut self) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        if self.peek() != Some('(') {
            return Err(self.error("expected `(`"));
        }
        while self.peek() == Some('(') {
            self.pos += 1;
            let mut cycle = Vec::new();
            loop {
                match self.peek() {
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(',') if !cycle.is_empty() => self.pos += 1,
                    Some(c) if c.is_ascii_digit() => {
                        let start = self.pos;
                        let x = self.int()?;
                        let x = u32::try_from(x).map_err(|_| Error::Syntax {
                            pos: start,
                            msg: "point too large".into(),
                        })?;
                        if cycle.contains(&x) {
                            return Err(Error::Syntax {
                                pos: start,
                                msg: "repeated point in cycle".into(),
                            });
                        }
                        cycle.push(x);
                    }
                    _ => return Err(self.error("expected point or `)`")),
                }
            }
            if !cycle.is_empty() {
                out.push(cycle);
            }
        }
        Ok(out)
    }
}

/// Closed-form order of the group a spec describes, where one exists.
pub fn expected_order(spec: &GroupSpec) -> Option<u128> {
    let fact = |n: u64| (1..=n as u128).product::<u128>();
    Some(match spec {
        GroupSpec::Cyclic(n) => *n as u128,
        GroupSpec::Dihedral(n) => *n as u128,
        GroupSpec::Sym(n) => fact(*n),
        GroupSpec::Alt(n) => (fact(*n) / 2).max(1),
        GroupSpec::Elem(p, k) => (*p as u128).checked_pow(*k as u32)?,
        GroupSpec::Psl2(q) => {
            let q = *q as u128;
            q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 }
        }
        GroupSpec::Pgl2(q) => {
            let q = *q as u128;
            q * (q * q - 1)
        }
        GroupSpec::Sz(8) => data::SZ8_ORDER as u128,
        GroupSpec::U3(3) => data::U33_ORDER as u128,
        GroupSpec::Product(a, b) => expected_order(a)? * expected_order(b)?,
        _ => return None,
    })
}

fn cycle_perm(degree: usize, cycles: &[Vec<u32>]) -> Permutation {
    Permutation::from_cycles(degree, cycles).expect("constructor cycles are valid")
}

/// Degree and generators for a spec.
pub fn generators(spec: &GroupSpec) -> Result<(usize, Vec<Permutation>)> {
    Ok(match spec {
        GroupSpec::Cyclic(n) => {
            let n = *n as usize;
            (n, vec![cycle_perm(n, &[(0..n as u32).collect()])])
        }
        GroupSpec::Dihedral(order) => match order / 2 {
            1 => (2, vec![cycle_perm(2, &[vec![0, 1]])]),
            2 => (
                4,
                vec![cycle_perm(4, &[vec![0, 1]]), cycle_perm(4, &[vec![2, 3]])],
            ),
            n => {
                let n = n as usize;
                let rotation = cycle_perm(n, &[(0..n as u32).collect()]);
                let pairs: Vec<Vec<u32>> = (1..n.div_ceil(2))
                    .map(|i| vec![i as u32, (n - i) as u32])
                    .collect();
                (n, vec![rotation, cycle_perm(n, &pairs)])
            }
        },
        GroupSpec::Sym(n) => {
            let n = *n as usize;
            if n < 2 {
                (n.max(1), vec![])
            } else {
                (
                    n,
                    vec![
                        cycle_perm(n, &[vec![0, 1]]),
                        cycle_perm(n, &[(0..n as u32).collect()]),
                    ],
                )
            }
        }
        GroupSpec::Alt(n) => {
            let n = *n as usize;
            let gens = (2..n)
                .map(|k| cycle_perm(n, &[vec![0, 1, k as u32]]))
                .collect();
            (n.max(1), gens)
        }
        GroupSpec::Elem(p, k) => {
            let (p, k) = (*p as usize, *k as usize);
            let n = p * k;
            let gens = (0..k)
                .map(|i| cycle_perm(n, &[((i * p) as u32..((i + 1) * p) as u32).collect()]))
                .collect();
            (n, gens)
        }
        GroupSpec::Psl2(q) => projective_line(*q, true)?,
        GroupSpec::Pgl2(q) => projective_line(*q, false)?,
        GroupSpec::Sz(8) => (
            data::SZ8_DEGREE,
            vec![
                Permutation::from_images(data::SZ8_A.to_vec())?,
                Permutation::from_images(data::SZ8_B.to_vec())?,
            ],
        ),
        GroupSpec::U3(3) => (
            data::U33_DEGREE,
            vec![
                Permutation::from_images(data::U33_A.to_vec())?,
                Permutation::from_images(data::U33_B.to_vec())?,
            ],
        ),
        GroupSpec::Sz(q) => {
            return Err(Error::ParameterOutOfRange(format!(
                "sz:{q} (only sz:8 is available)"
            )))
        }
        GroupSpec::U3(q) => {
            return Err(Error::ParameterOutOfRange(format!(
                "u3:{q} (only u3:3 is available)"
            )))
        }
        GroupSpec::Product(a, b) => {
            let (na, ga) = generators(a)?;
            let (nb, gb) = generators(b)?;
            let n = na + nb;
            let mut gens: Vec<Permutation> = ga.iter().map(|g| g.embed(0, n)).collect();
            gens.extend(gb.iter().map(|g| g.embed(na, n)));
            (n, gens)
        }
        GroupSpec::Perm(gens) => {
            let degree = gens
                .iter()
                .flatten()
                .flatten()
                .map(|&x| x as usize + 1)
                .max()
                .unwrap_or(1);
            let perms = gens
                .iter()
                .map(|cycles| Permutation::from_cycles(degree, cycles))
                .collect::<Result<Vec<_>>>()?;
            (degree, perms)
        }
    })
}

/// PSL₂(q) or PGL₂(q) on the `q+1` points of the projective line; point `q` is ∞.
fn projective_line(q: u64, special: bool) -> Result<(usize, Vec<Permutation>)> {
    let field = FiniteField::new(q)?;
    let inf = q;
    let n = (q + 1) as usize;
    // x ↦ (a x + b) / (c x + d)
    let mobius = |a: u64, b: u64, c: u64, d: u64| -> Result<Permutation> {
        let mut images = Vec::with_capacity(n);
        for x in 0..=q {
            let (num, den) = if x == inf {
                (a, c)
            } else {
                (field.add(field.mul(a, x), b), field.add(field.mul(c, x), d))
            };
            images.push(if den == 0 {
                inf
            } else {
                field.mul(num, field.inv(den)?)
            } as u32);
        }
        Permutation::from_images(images)
    };
    let omega = field.primitive_element();
    let odd = q % 2 == 1;
    let scale = if special && odd {
        field.mul(omega, omega)
    } else {
        omega
    };
    let minus_one = field.neg(1);
    let flip = if special && odd { minus_one } else { 1 };
    Ok((
        n,
        vec![
            mobius(1, 1, 0, 1)?,
            mobius(scale, 0, 0, 1)?,
            mobius(0, flip, 1, 0)?,
        ],
    ))
}

/// Builds the group described by `spec`, checking its order against the
/// closed form where one is known.
pub fn build_group(spec: &GroupSpec, element_cap: usize) -> Result<Group> {
    if let GroupSpec::Psl2(q) | GroupSpec::Pgl2(q) = spec {
        if prime_power(*q).is_none() {
            return Err(Error::NotPrimePower(*q));
        }
    }
    let expected = expected_order(spec);
    if let Some(e) = expected {
        if e > element_cap as u128 {
            return Err(Error::ElementCapExceeded { cap: element_cap });
        }
    }
    let (degree, gens) = generators(spec)?;
    let group = Group::close_with_degree(degree, &gens, element_cap)?;
    if let Some(e) = expected {
        if group.order() as u128 != e {
            return Err(Error::OrderMismatch {
                got: group.order() as u128,
                expected: e,
            });
        }
    }
    if matches!(spec, GroupSpec::Sz(_) | GroupSpec::U3(_)) && !is_simple(&group) {
        return Err(Error::BadData(format!("{spec} is not simple")));
    }
    Ok(group)
}

pub fn build(text: &str, element_cap: usize) -> Result<Group> {
    build_group(&parse_spec(text)?, element_cap)
}

/// Representatives of the conjugacy classes of elements.
pub fn element_class_reps(g: &Group) -> Vec<Rank> {
    let gens = g.generator_ranks();
    let mut seen = BitSet::new(g.order());
    let mut reps = Vec::new();
    for x in 0..g.order() as Rank {
        if !seen.insert(x as usize) {
            continue;
        }
        reps.push(x);
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for &s in &gens {
                let z = g.conj(y, s);
                if seen.insert(z as usize) {
                    stack.push(z);
                }
            }
        }
    }
    reps
}

/// Simple iff the normal closure of every nontrivial element is the whole group.
pub fn is_simple(g: &Group) -> bool {
    if g.order() == 1 {
        return false;
    }
    let gens = g.generator_ranks();
    element_class_reps(g).into_iter().skip(1).all(|x| {
        let mut mark = BitSet::new(g.order());
        mark.insert(0);
        let mut elems = vec![0];
        let mut ngens = Vec::new();
        g.extend_closure(&mut mark, &mut elems, &mut ngens, x);
        let mut i = 0;
        while i < ngens.len() && elems.len() < g.order() {
            let y = ngens[i];
            for &s in &gens {
                g.extend_closure(&mut mark, &mut elems, &mut ngens, g.conj(y, s));
            }
            i += 1;
        }
        elems.len() == g.order()
    })
}
