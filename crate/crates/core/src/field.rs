//! Arithmetic in GF(p^e).
//!
//! Elements are integers `0..q` read as base-`p` digit vectors, i.e. the
//! coefficients of a polynomial of degree `< e` reduced modulo a fixed monic
//! irreducible polynomial.

use crate::error::{Error, Result};

/// Moduli as coefficient lists (constant term first, leading 1 last).
const MODULI: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    e: u32,
    modulus: Vec<u64>,
    /// `exp[i] = ω^i` for a primitive element `ω` (the class of `x`, or `p`'s
    /// smallest primitive root when `e = 1`); `log` is its inverse.
    exp: Vec<u64>,
    log: Vec<u64>,
}

/// Returns `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let mut n = q;
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    (n == 1).then_some((p, e))
}

pub fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

impl FiniteField {
    pub fn new(q: u64) -> Result<FiniteField> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if let Some(&(_, _, m)) = MODULI.iter().find(|(mp, me, _)| *mp == p && *me == e) {
            if let Some(f) = FiniteField::with_modulus(p, e, m.to_vec()) {
                return Ok(f);
            }
            return Err(Error::BadData(format!("modulus table entry for GF({q})")));
        }
        if e == 1 {
            return FiniteField::with_modulus(p, 1, vec![0, 1])
                .ok_or_else(|| Error::BadData(format!("prime field GF({p})")));
        }
        // lexicographically first primitive monic polynomial
        let count = p.pow(e);
        for tail in 0..count {
            let mut m = Vec::with_capacity(e as usize + 1);
            let mut t = tail;
            for _ in 0..e {
                m.push(t % p);
                t /= p;
            }
            m.push(1);
            if let Some(f) = FiniteField::with_modulus(p, e, m) {
                return Ok(f);
            }
        }
        Err(Error::BadData(format!(
            "no primitive polynomial for GF({q})"
        )))
    }

    /// Builds the field if `modulus` yields a cyclic multiplicative group
    /// generated by the residue of `x` (for `e = 1`, by the least primitive root).
    fn with_modulus(p: u64, e: u32, modulus: Vec<u64>) -> Option<FiniteField> {
        let q = p.pow(e);
        let mut f = FiniteField {
            p,
            e,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let gens: Vec<u64> = if e == 1 {
            (2..p.max(3)).collect()
        } else {
            vec![p]
        };
        let gens = if q == 2 { vec![1] } else { gens };
        for omega in gens {
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut log = vec![u64::MAX; q as usize];
            let mut x = 1;
            let mut ok = true;
            for i in 0..q - 1 {
                if log[x as usize] != u64::MAX {
                    ok = false;
                    break;
                }
                log[x as usize] = i;
                exp.push(x);
                x = f.mul_slow(x, omega);
            }
            if ok && x == 1 {
                f.exp = exp;
                f.log = log;
                return Some(f);
            }
        }
        None
    }

    fn digits(&self, mut a: u64) -> Vec<u64> {
        let mut d = vec![0; self.e as usize];
        for slot in d.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn pack(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let (p, e) = (self.p, self.e as usize);
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * e];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for k in (e..2 * e).rev() {
            let c = prod[k];
            if c != 0 {
                for (i, &m) in self.modulus.iter().enumerate().take(e) {
                    prod[k - e + i] = (prod[k - e + i] + (p - m) * c) % p;
                }
                prod[k] = 0;
            }
        }
        self.pack(&prod[..e])
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.e)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.order()
    }

    pub fn primitive_element(&self) -> u64 {
        if self.order() == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&s)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let d: Vec<u64> = self
            .digits(a)
            .iter()
            .map(|x| (self.p - x) % self.p)
            .collect();
        self.pack(&d)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.order() - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let n = self.order() - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u64, k: u64) -> u64 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let n = self.order() - 1;
        self.exp[((self.log[a as usize] as u128 * k as u128) % n as u128) as usize]
    }

    pub fn multiplicative_order(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let n = self.order() - 1;
        Ok(n / crate::perm::gcd(n, self.log[a as usize]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn gf4_inverses() {
        let f = FiniteField::new(4).unwrap();
        for x in 1..4 {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
        }
        assert!(matches!(f.inv(0), Err(Error::ZeroInverse)));
    }

    #[test]
    fn gf9_generator_has_order_eight() {
        let f = FiniteField::new(9).unwrap();
        assert_eq!(f.multiplicative_order(f.primitive_element()).unwrap(), 8);
    }

    #[test]
    fn gf8_has_characteristic_two() {
        let f = FiniteField::new(8).unwrap();
        assert!(f.elements().all(|x| f.add(x, x) == 0));
    }

    #[test]
    fn shipped_moduli_are_primitive() {
        for &(p, e, _) in MODULI {
            let f = FiniteField::new(p.pow(e)).unwrap();
            assert_eq!(
                f.multiplicative_order(f.primitive_element()).unwrap(),
                p.pow(e) - 1
            );
        }
    }

    #[test]
    fn field_axioms_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49] {
            let f = FiniteField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b), "q={q} a={a} b={b}");
                    for c in (0..q).step_by(3) {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn searched_modulus_for_uncatalogued_field() {
        let f = FiniteField::new(17 * 17).unwrap();
        assert_eq!(f.multiplicative_order(f.primitive_element()).unwrap(), 288);
    }
}
