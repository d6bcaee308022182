//! Finite permutation groups with a fully enumerated element table.
//!
//! Elements are addressed by their rank in the lexicographically sorted list
//! of image vectors, so the identity always has rank 0. Subgroups inside an
//! ambient group are sorted rank lists.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub type Rank = u32;

pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

/// Fixed-size bitset over ranks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    /// Returns true if the bit was newly set.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let w = &mut self.words[i >> 6];
        let mask = 1u64 << (i & 63);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Maps the images of the base points to a rank.
#[derive(Clone, Debug)]
enum BaseIndex {
    Dense(Vec<Rank>),
    Sparse(HashMap<u128, Rank>),
}

const DENSE_LIMIT: u128 = 1 << 24;

/// A finite permutation group together with its sorted element table.
#[derive(Clone, Debug)]
pub struct Group {
    degree: usize,
    generators: Vec<Permutation>,
    table: Vec<u32>,
    order: usize,
    base: Vec<usize>,
    index: BaseIndex,
    inverse: Vec<Rank>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.table == other.table
    }
}

impl Eq for Group {}

impl Group {
    /// Enumerates the group generated by `generators` by product closure.
    pub fn close(generators: &[Permutation], element_cap: usize) -> Result<Group> {
        let degree = match generators.first() {
            Some(g) => g.degree(),
            None => 1,
        };
        Group::close_with_degree(degree, generators, element_cap)
    }

    /// Like [`Group::close`], with an explicit degree for the trivial case.
    pub fn close_with_degree(
        degree: usize,
        generators: &[Permutation],
        element_cap: usize,
    ) -> Result<Group> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        seen.insert(id.images().to_vec());
        let mut queue = VecDeque::from([id.images().to_vec()]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y: Vec<u32> = g.images().iter().map(|&i| x[i as usize]).collect();
                if !seen.contains(&y) {
                    if seen.len() >= element_cap {
                        return Err(Error::ElementCapExceeded { cap: element_cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut rows: Vec<Vec<u32>> = seen.into_iter().collect();
        rows.sort_unstable();
        let table = rows.concat();
        Group::from_table(degree, generators.to_vec(), table)
    }

    /// Builds a group from a flat, lexicographically sorted, duplicate-free
    /// table of image rows. The rows must form a group.
    pub fn from_table(
        degree: usize,
        generators: Vec<Permutation>,
        table: Vec<u32>,
    ) -> Result<Group> {
        let degree_nz = degree.max(1);
        if !table.len().is_multiple_of(degree_nz) || (degree == 0 && !table.is_empty()) {
            return Err(Error::BadData("element table length".into()));
        }
        let order = table.len().checked_div(degree).unwrap_or(1);
        let row = |r: usize| &table[r * degree..(r + 1) * degree];
        for r in 1..order {
            if row(r - 1) >= row(r) {
                return Err(Error::BadData("element table not strictly sorted".into()));
            }
        }

        // A base: points whose images separate all elements.
        let mut base = Vec::new();
        let mut live: Vec<usize> = (0..order).collect();
        while live.len() > 1 {
            let g = live[1];
            let point = (0..degree)
                .find(|&i| row(g)[i] as usize != i)
                .ok_or_else(|| Error::BadData("duplicate identity".into()))?;
            base.push(point);
            live.retain(|&x| row(x)[point] as usize == point);
        }

        let radix = degree.max(1) as u128;
        let span = base
            .iter()
            .try_fold(1u128, |acc, _| acc.checked_mul(radix))
            .ok_or(Error::Overflow("base key"))?;
        let key_of = |r: usize| -> u128 {
            base.iter()
                .rev()
                .fold(0u128, |acc, &b| acc * radix + row(r)[b] as u128)
        };
        let index = if span <= DENSE_LIMIT {
            let mut slots = vec![Rank::MAX; span as usize];
            for r in 0..order {
                slots[key_of(r) as usize] = r as Rank;
            }
            BaseIndex::Dense(slots)
        } else {
            BaseIndex::Sparse((0..order).map(|r| (key_of(r), r as Rank)).collect())
        };

        let mut group = Group {
            degree,
            generators,
            table,
            order,
            base,
            index,
            inverse: Vec::new(),
        };
        let mut inverse = Vec::with_capacity(order);
        for r in 0..order {
            let inv = Permutation::from_images(group.row(r as Rank).to_vec())?.inverse();
            inverse.push(
                group
                    .rank_of_images(inv.images())
                    .ok_or_else(|| Error::BadData("table not closed under inverses".into()))?,
            );
        }
        group.inverse = inverse;
        for g in &group.generators {
            if group.rank_of(g).is_none() {
                return Err(Error::BadData(
                    "generator missing from element table".into(),
                ));
            }
        }
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn identity(&self) -> Rank {
        0
    }

    #[inline]
    pub fn row(&self, r: Rank) -> &[u32] {
        let d = self.degree;
        &self.table[r as usize * d..(r as usize + 1) * d]
    }

    pub fn element(&self, r: Rank) -> Permutation {
        Permutation::from_images(self.row(r).to_vec()).expect("table rows are permutations")
    }

    pub fn elements(&self) -> impl Iterator<Item = Permutation> + '_ {
        (0..self.order as Rank).map(|r| self.element(r))
    }

    #[inline]
    fn lookup(&self, key: u128) -> Option<Rank> {
        match &self.index {
            BaseIndex::Dense(slots) => match slots.get(key as usize) {
                Some(&r) if r != Rank::MAX => Some(r),
                _ => None,
            },
            BaseIndex::Sparse(map) => map.get(&key).copied(),
        }
    }

    pub fn rank_of_images(&self, images: &[u32]) -> Option<Rank> {
        if images.len() != self.degree {
            return None;
        }
        let radix = self.degree.max(1) as u128;
        let key = self
            .base
            .iter()
            .rev()
            .fold(0u128, |acc, &b| acc * radix + images[b] as u128);
        let r = self.lookup(key)?;
        (self.row(r) == images).then_some(r)
    }

    pub fn rank_of(&self, p: &Permutation) -> Option<Rank> {
        self.rank_of_images(p.images())
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.rank_of(p).is_some()
    }

    pub fn generator_ranks(&self) -> Vec<Rank> {
        self.generators
            .iter()
            .map(|g| self.rank_of(g).expect("generators are elements"))
            .collect()
    }

    /// Rank of `a ∘ b`.
    #[inline]
    pub fn mul(&self, a: Rank, b: Rank) -> Rank {
        let (ra, rb) = (self.row(a), self.row(b));
        let radix = self.degree.max(1) as u128;
        let key = self
            .base
            .iter()
            .rev()
            .fold(0u128, |acc, &p| acc * radix + ra[rb[p] as usize] as u128);
        self.lookup(key).expect("group closed under products")
    }

    #[inline]
    pub fn inv(&self, a: Rank) -> Rank {
        self.inverse[a as usize]
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: Rank, g: Rank) -> Rank {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn element_order(&self, a: Rank) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Extends the closed subgroup `elems` (generated by `gens`, every element
    /// marked in `mark`) by `g`, using coset enumeration. Elements are
    /// appended to `elems` in discovery order.
    pub fn extend_closure(
        &self,
        mark: &mut BitSet,
        elems: &mut Vec<Rank>,
        gens: &mut Vec<Rank>,
        g: Rank,
    ) {
        if mark.contains(g as usize) {
            return;
        }
        gens.push(g);
        let base_len = elems.len();
        let mut reps = vec![g];
        for i in 0..base_len {
            let y = self.mul(elems[i], g);
            mark.insert(y as usize);
            elems.push(y);
        }
        let mut pos = 0;
        while pos < reps.len() {
            let r = reps[pos];
            pos += 1;
            for &s in gens.iter() {
                let x = self.mul(r, s);
                if !mark.contains(x as usize) {
                    reps.push(x);
                    for i in 0..base_len {
                        let y = self.mul(elems[i], x);
                        mark.insert(y as usize);
                        elems.push(y);
                    }
                }
            }
        }
    }

    /// Sorted ranks of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Rank]) -> Vec<Rank> {
        let mut mark = BitSet::new(self.order);
        mark.insert(0);
        let mut elems = vec![0];
        let mut used = Vec::new();
        for &g in gens {
            self.extend_closure(&mut mark, &mut elems, &mut used, g);
        }
        elems.sort_unstable();
        elems
    }

    /// Sorted ranks of `⟨H, g⟩` where `h` is a sorted subgroup with generators `h_gens`.
    pub fn join_element(&self, h: &[Rank], h_gens: &[Rank], g: Rank) -> Vec<Rank> {
        let mut mark = BitSet::new(self.order);
        for &x in h {
            mark.insert(x as usize);
        }
        let mut elems = h.to_vec();
        let mut gens = h_gens.to_vec();
        self.extend_closure(&mut mark, &mut elems, &mut gens, g);
        elems.sort_unstable();
        elems
    }

    /// A small generating set of the sorted subgroup `elems`, chosen greedily
    /// from large element orders down.
    pub fn generating_set(&self, elems: &[Rank]) -> Vec<Rank> {
        let mut by_order: Vec<(usize, Rank)> =
            elems.iter().map(|&x| (self.element_order(x), x)).collect();
        by_order.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut mark = BitSet::new(self.order);
        mark.insert(0);
        let mut cur = vec![0];
        let mut gens = Vec::new();
        for (_, x) in by_order {
            if cur.len() == elems.len() {
                break;
            }
            self.extend_closure(&mut mark, &mut cur, &mut gens, x);
        }
        gens
    }

    /// Ranks of `N_G(H)` by testing every element against the generators of `H`.
    pub fn normalizer_ranks(&self, h: &[Rank], h_gens: &[Rank]) -> Vec<Rank> {
        let mut member = BitSet::new(self.order);
        for &x in h {
            member.insert(x as usize);
        }
        (0..self.order as Rank)
            .filter(|&g| {
                h_gens
                    .iter()
                    .all(|&s| member.contains(self.conj(s, g) as usize))
            })
            .collect()
    }

    /// Ranks of the derived subgroup of the subgroup generated by `gens`.
    pub fn derived_ranks(&self, gens: &[Rank]) -> Vec<Rank> {
        let mut mark = BitSet::new(self.order);
        mark.insert(0);
        let mut elems = vec![0];
        let mut dgens = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                let comm = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                self.extend_closure(&mut mark, &mut elems, &mut dgens, comm);
            }
        }
        // normal closure under conjugation by the outer generators
        let mut i = 0;
        while i < dgens.len() {
            let x = dgens[i];
            for &s in gens {
                let y = self.conj(x, s);
                self.extend_closure(&mut mark, &mut elems, &mut dgens, y);
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    /// Standalone group on the given sorted ranks of this group.
    pub fn subgroup(&self, ranks: &[Rank]) -> Group {
        let gens: Vec<Permutation> = self
            .generating_set(ranks)
            .into_iter()
            .map(|r| self.element(r))
            .collect();
        let mut table = Vec::with_capacity(ranks.len() * self.degree);
        for &r in ranks {
            table.extend_from_slice(self.row(r));
        }
        Group::from_table(self.degree, gens, table).expect("sorted subset of a group table")
    }

    /// Ranks (sorted) of the elements of `h` inside `self`.
    pub fn ranks_of(&self, h: &Group) -> Result<Vec<Rank>> {
        if h.degree != self.degree {
            return Err(Error::DegreeMismatch(self.degree, h.degree));
        }
        let mut ranks = Vec::with_capacity(h.order);
        for r in 0..h.order as Rank {
            ranks.push(self.rank_of_images(h.row(r)).ok_or(Error::NotContained)?);
        }
        // rows of h are sorted, hence so are their ranks in self
        Ok(ranks)
    }

    pub fn is_subgroup_of(&self, g: &Group) -> bool {
        g.ranks_of(self).is_ok()
    }

    pub fn derived_subgroup(&self) -> Group {
        self.subgroup(&self.derived_ranks(&self.generator_ranks()))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_ranks();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Orders of the terms of the derived series, ending at the first repeat.
    pub fn derived_series_orders(&self) -> Vec<usize> {
        let mut orders = vec![self.order];
        let mut cur = (0..self.order as Rank).collect::<Vec<_>>();
        let mut gens = self.generator_ranks();
        loop {
            let next = self.derived_ranks(&gens);
            if next.len() == cur.len() {
                return orders;
            }
            orders.push(next.len());
            if next.len() == 1 {
                return orders;
            }
            gens = self.generating_set(&next);
            cur = next;
        }
    }

    pub fn is_solvable(&self) -> bool {
        *self.derived_series_orders().last().unwrap() == 1
    }

    /// `N_G(H)` for a subgroup `H` of `self`.
    pub fn normalizer(&self, h: &Group) -> Result<Group> {
        let ranks = self.ranks_of(h)?;
        let gens: Vec<Rank> = h.generator_ranks_in(self)?;
        Ok(self.subgroup(&self.normalizer_ranks(&ranks, &gens)))
    }

    fn generator_ranks_in(&self, ambient: &Group) -> Result<Vec<Rank>> {
        self.generators
            .iter()
            .map(|g| ambient.rank_of(g).ok_or(Error::NotContained))
            .collect()
    }

    /// `G/N` acting on the left cosets of the normal subgroup `normal`
    /// (sorted ranks), together with the image rank of every element.
    pub fn quotient(&self, normal: &[Rank], element_cap: usize) -> Result<(Group, Vec<Rank>)> {
        let n_gens = self.generating_set(normal);
        for &s in &self.generator_ranks() {
            if n_gens
                .iter()
                .any(|&x| !contains_sorted(normal, self.conj(x, s)))
            {
                return Err(Error::Inconsistent(
                    "quotient by a non-normal subgroup".into(),
                ));
            }
        }
        let mut coset_of = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order as Rank {
            if coset_of[x as usize] == u32::MAX {
                for &y in normal {
                    coset_of[self.mul(x, y) as usize] = reps.len() as u32;
                }
                reps.push(x);
            }
        }
        let m = reps.len();
        let action = |x: Rank| -> Permutation {
            let images = reps
                .iter()
                .map(|&r| coset_of[self.mul(x, r) as usize])
                .collect();
            Permutation::from_images(images).expect("left multiplication permutes cosets")
        };
        let gens: Vec<Permutation> = self.generator_ranks().into_iter().map(action).collect();
        let q = Group::close_with_degree(m, &gens, element_cap)?;
        if q.order() != m {
            return Err(Error::Inconsistent(format!(
                "coset action has order {}, expected {m}",
                q.order()
            )));
        }
        let bar = (0..self.order as Rank)
            .map(|x| q.rank_of(&action(x)).expect("image lies in the quotient"))
            .collect();
        Ok((q, bar))
    }

    /// `[self : H]` for a subgroup `H`.
    pub fn index(&self, h: &Group) -> Result<usize> {
        self.ranks_of(h)?;
        Ok(self.order / h.order)
    }
}

/// `g⁻¹ H g`, elementwise.
pub fn conjugate(h: &Group, g: &Permutation) -> Result<Group> {
    if g.degree() != h.degree() {
        return Err(Error::DegreeMismatch(h.degree(), g.degree()));
    }
    let gi = g.inverse();
    let conj = |p: &Permutation| gi.compose(p).and_then(|x| x.compose(g));
    let mut rows: Vec<Vec<u32>> = h
        .elements()
        .map(|p| conj(&p).map(|x| x.images().to_vec()))
        .collect::<Result<_>>()?;
    rows.sort_unstable();
    let gens = h
        .generators()
        .iter()
        .map(conj)
        .collect::<Result<Vec<_>>>()?;
    Group::from_table(h.degree(), gens, rows.concat())
}

/// Element-set intersection of two groups of the same degree.
pub fn intersect(h: &Group, k: &Group) -> Result<Group> {
    if h.degree() != k.degree() {
        return Err(Error::DegreeMismatch(h.degree(), k.degree()));
    }
    let ranks: Vec<Rank> = (0..h.order() as Rank)
        .filter(|&r| k.rank_of_images(h.row(r)).is_some())
        .collect();
    Ok(h.subgroup(&ranks))
}

/// Sorted-list membership.
#[inline]
pub fn contains_sorted(set: &[Rank], x: Rank) -> bool {
    set.binary_search(&x).is_ok()
}

/// Sorted-list intersection.
pub fn intersect_sorted(a: &[Rank], b: &[Rank]) -> Vec<Rank> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
