//! The subgroup lattice of a group, its conjugacy classes, maximal
//! subgroups, MaxInt(G) and the Frattini subgroup.
//!
//! Subgroups are sorted rank lists, indexed in increasing `(order, ranks)`
//! order, so index 0 is the trivial subgroup and the last index is `G`.
//! Classes are numbered by their representative, which is always the first
//! (lexicographically smallest) member.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::prime_power;
use crate::group::{contains_sorted, intersect_sorted, BitSet, Group, Rank};

pub const DEFAULT_SUBGROUP_CAP: usize = 200_000;

fn fingerprint(ranks: &[Rank]) -> u64 {
    let mut h = DefaultHasher::new();
    ranks.hash(&mut h);
    h.finish()
}

/// Set of sorted rank lists with stable indices.
#[derive(Clone, Debug, Default)]
struct SubgroupStore {
    lists: Vec<Vec<Rank>>,
    by_hash: HashMap<u64, Vec<u32>>,
}

impl SubgroupStore {
    fn find(&self, ranks: &[Rank]) -> Option<usize> {
        self.by_hash
            .get(&fingerprint(ranks))?
            .iter()
            .map(|&i| i as usize)
            .find(|&i| self.lists[i] == ranks)
    }

    fn push(&mut self, ranks: Vec<Rank>) -> usize {
        let i = self.lists.len();
        self.by_hash
            .entry(fingerprint(&ranks))
            .or_default()
            .push(i as u32);
        self.lists.push(ranks);
        i
    }
}

/// Conjugacy classes of subgroups ordered by `[H] ≤ [K]` iff `H ≤ K^g` for some `g`.
#[derive(Clone, Debug)]
pub struct ClassPoset {
    reps: Vec<usize>,
    sizes: Vec<usize>,
    /// For each class `h`, the classes `k` strictly above it together with
    /// the number of members of `k` containing the representative of `h`.
    up: Vec<Vec<(usize, u64)>>,
}

impl ClassPoset {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, c: usize) -> usize {
        self.reps[c]
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    pub fn up(&self, c: usize) -> &[(usize, u64)] {
        &self.up[c]
    }

    pub fn leq(&self, h: usize, k: usize) -> bool {
        h == k || self.up[h].binary_search_by_key(&k, |&(c, _)| c).is_ok()
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }
}

#[derive(Debug)]
pub struct SubgroupLattice {
    group: Group,
    store: SubgroupStore,
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    rep_gens: Vec<Vec<Rank>>,
    rep_normalizers: Vec<Vec<Rank>>,
    poset: ClassPoset,
    maximal: Vec<bool>,
    maxint: Vec<bool>,
    frattini: usize,
    inclusion: OnceLock<Vec<BitSet>>,
}

impl SubgroupLattice {
    /// Enumerates every subgroup of `group`.
    ///
    /// Starting from the trivial subgroup, each class representative `H` is
    /// extended by one cyclic subgroup of prime-power order not contained in
    /// `H`, one per `N_G(H)`-orbit. Every `K > 1` arises this way from a
    /// maximal subgroup of `K`, since `K` minus a maximal subgroup always
    /// contains an element of prime-power order.
    pub fn enumerate(group: Group, subgroup_cap: usize) -> Result<SubgroupLattice> {
        let g = &group;
        let n = g.order();
        let cyclic = CyclicIndex::new(g);

        let mut store = SubgroupStore::default();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let gens = g.generator_ranks();

        let reg = |store: &mut SubgroupStore, classes: &mut Vec<Vec<usize>>, k: Vec<Rank>| {
            register(g, &gens, store, classes, k, subgroup_cap)
        };
        reg(&mut store, &mut classes, (0..n as Rank).collect())?;
        // For the trivial group the identity subgroup is G itself and nothing is pending.
        let mut pending: Vec<usize> = reg(&mut store, &mut classes, vec![0])?
            .into_iter()
            .collect();

        while !pending.is_empty() {
            let reps: Vec<usize> = pending.iter().map(|&c| classes[c][0]).collect();
            let store_ref = &store;
            let found: Vec<Vec<Vec<Rank>>> = reps
                .par_iter()
                .map(|&r| {
                    let h = &store_ref.lists[r];
                    let h_gens = g.generating_set(h);
                    let norm = g.normalizer_ranks(h, &h_gens);
                    let mut joins: Vec<Vec<Rank>> = Vec::new();
                    for c in cyclic.orbit_reps(g, &g.generating_set(&norm)) {
                        let x = cyclic.generator(c);
                        if contains_sorted(h, x) {
                            continue;
                        }
                        let k = join_unsorted(g, h, &h_gens, x);
                        if k.len() == n {
                            continue;
                        }
                        let mut k = k;
                        k.sort_unstable();
                        if store_ref.find(&k).is_none() && !joins.contains(&k) {
                            joins.push(k);
                        }
                    }
                    joins
                })
                .collect();
            pending.clear();
            for joins in found {
                for k in joins {
                    if let Some(c) = reg(&mut store, &mut classes, k)? {
                        pending.push(c);
                    }
                }
            }
        }

        // Reindex by (order, ranks).
        let mut order: Vec<usize> = (0..store.lists.len()).collect();
        order.sort_by(|&a, &b| {
            let (x, y) = (&store.lists[a], &store.lists[b]);
            x.len().cmp(&y.len()).then_with(|| x.cmp(y))
        });
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let mut class_of = vec![0; order.len()];
        let mut class_order: Vec<usize> = (0..classes.len()).collect();
        class_order.sort_by_key(|&c| new_index[classes[c][0]]);
        for (new_c, &old_c) in class_order.iter().enumerate() {
            for &m in &classes[old_c] {
                class_of[new_index[m]] = new_c;
            }
        }
        let mut lists = std::mem::take(&mut store.lists);
        let subgroups: Vec<Vec<Rank>> = order
            .iter()
            .map(|&i| std::mem::take(&mut lists[i]))
            .collect();
        SubgroupLattice::from_parts(group, subgroups, class_of)
    }

    /// Builds the lattice from a complete, `(order, ranks)`-sorted subgroup
    /// list and its class partition, recomputing everything else.
    pub fn from_parts(
        group: Group,
        subgroups: Vec<Vec<Rank>>,
        class_of: Vec<usize>,
    ) -> Result<SubgroupLattice> {
        let g = &group;
        if subgroups.len() != class_of.len() || subgroups.is_empty() {
            return Err(Error::BadData(
                "subgroup list and class map differ in length".into(),
            ));
        }
        for w in subgroups.windows(2) {
            if (w[0].len(), &w[0]) >= (w[1].len(), &w[1]) {
                return Err(Error::BadData(
                    "subgroups not sorted by (order, ranks)".into(),
                ));
            }
        }
        if subgroups[0] != [0] || subgroups.last().map(Vec::len) != Some(g.order()) {
            return Err(Error::BadData(
                "lattice must start at 1 and end at G".into(),
            ));
        }
        let class_count = class_of.iter().max().map_or(0, |&c| c + 1);
        let mut members = vec![Vec::new(); class_count];
        for (i, &c) in class_of.iter().enumerate() {
            members[c].push(i);
        }
        for w in members.windows(2) {
            if w[0].is_empty() || w[1].is_empty() || w[0][0] > w[1][0] {
                return Err(Error::BadData(
                    "classes not numbered by representative".into(),
                ));
            }
        }

        let mut store = SubgroupStore::default();
        for s in subgroups {
            store.push(s);
        }
        let reps: Vec<usize> = members.iter().map(|m| m[0]).collect();
        let rep_gens: Vec<Vec<Rank>> = reps
            .par_iter()
            .map(|&r| g.generating_set(&store.lists[r]))
            .collect();
        let rep_normalizers: Vec<Vec<Rank>> = reps
            .par_iter()
            .zip(&rep_gens)
            .map(|(&r, gens)| g.normalizer_ranks(&store.lists[r], gens))
            .collect();
        for (c, norm) in rep_normalizers.iter().enumerate() {
            if norm.len() * members[c].len() != g.order() {
                return Err(Error::Inconsistent(format!(
                    "class {c}: size {} times normalizer order {} is not |G|",
                    members[c].len(),
                    norm.len()
                )));
            }
        }

        let lists = &store.lists;
        let up: Vec<Vec<(usize, u64)>> = reps
            .par_iter()
            .zip(&rep_gens)
            .map(|(&r, gens)| {
                let size = lists[r].len();
                let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
                let start = lists.partition_point(|s| s.len() <= size);
                for (j, s) in lists.iter().enumerate().skip(start) {
                    if s.len() % size == 0 && gens.iter().all(|&x| contains_sorted(s, x)) {
                        *counts.entry(class_of[j]).or_default() += 1;
                    }
                }
                counts.into_iter().collect()
            })
            .collect();
        let poset = ClassPoset {
            reps: reps.clone(),
            sizes: members.iter().map(Vec::len).collect(),
            up,
        };

        let top = class_count - 1;
        let maximal: Vec<bool> = (0..class_count)
            .map(|c| c != top && poset.up[c].len() == 1)
            .collect();
        let maximal_members: Vec<usize> = (0..class_count)
            .filter(|&c| maximal[c])
            .flat_map(|c| members[c].iter().copied())
            .collect();

        let mut maxint = maximal.clone();
        maxint[top] = true;
        let mut work: Vec<usize> = (0..class_count).filter(|&c| maximal[c]).collect();
        while let Some(a) = work.pop() {
            let rep = &lists[reps[a]];
            let hits: Vec<usize> = maximal_members
                .par_iter()
                .map(|&m| {
                    let meet = intersect_sorted(rep, &lists[m]);
                    store
                        .find(&meet)
                        .map(|i| class_of[i])
                        .ok_or(Error::Inconsistent(
                            "intersection of subgroups missing from lattice".into(),
                        ))
                })
                .collect::<Result<_>>()?;
            for c in hits {
                if !maxint[c] {
                    maxint[c] = true;
                    work.push(c);
                }
            }
        }

        let frattini = match maximal_members.split_first() {
            None => lists.len() - 1,
            Some((&first, rest)) => {
                let phi = rest.iter().fold(lists[first].clone(), |acc, &m| {
                    intersect_sorted(&acc, &lists[m])
                });
                store.find(&phi).ok_or(Error::Inconsistent(
                    "Frattini subgroup missing from lattice".into(),
                ))?
            }
        };

        Ok(SubgroupLattice {
            group,
            store,
            class_of,
            members,
            rep_gens,
            rep_normalizers,
            poset,
            maximal,
            maxint,
            frattini,
            inclusion: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.store.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.store.lists.is_empty()
    }

    pub fn subgroup(&self, i: usize) -> &[Rank] {
        &self.store.lists[i]
    }

    pub fn subgroups(&self) -> &[Vec<Rank>] {
        &self.store.lists
    }

    pub fn order_of(&self, i: usize) -> usize {
        self.store.lists[i].len()
    }

    pub fn index_of(&self, ranks: &[Rank]) -> Option<usize> {
        self.store.find(ranks)
    }

    pub fn trivial(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    pub fn class_count(&self) -> usize {
        self.members.len()
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.members[c][0]
    }

    pub fn class_members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.members[c].len()
    }

    pub fn rep_generators(&self, c: usize) -> &[Rank] {
        &self.rep_gens[c]
    }

    /// Sorted ranks of `N_G(H)` for the representative `H` of class `c`.
    pub fn rep_normalizer(&self, c: usize) -> &[Rank] {
        &self.rep_normalizers[c]
    }

    pub fn poset(&self) -> &ClassPoset {
        &self.poset
    }

    pub fn is_maximal_class(&self, c: usize) -> bool {
        self.maximal[c]
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        self.maximal[self.class_of[i]]
    }

    pub fn is_maxint_class(&self, c: usize) -> bool {
        self.maxint[c]
    }

    pub fn is_maxint(&self, i: usize) -> bool {
        self.maxint[self.class_of[i]]
    }

    pub fn maximal_subgroups(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_maximal(i)).collect()
    }

    pub fn maxint_subgroups(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_maxint(i)).collect()
    }

    pub fn frattini(&self) -> usize {
        self.frattini
    }

    /// `subgroup(i) ≤ subgroup(j)`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.subgroup(i), self.subgroup(j));
        b.len() % a.len() == 0 && a.iter().all(|&x| contains_sorted(b, x))
    }

    /// Row `i` holds the indices of all subgroups containing subgroup `i`.
    /// Quadratic in the number of subgroups; built on first use.
    pub fn inclusion(&self) -> &[BitSet] {
        self.inclusion.get_or_init(|| {
            let n = self.len();
            (0..n)
                .into_par_iter()
                .map(|i| {
                    let gens = self.group.generating_set(self.subgroup(i));
                    let mut row = BitSet::new(n);
                    row.insert(i);
                    for j in i + 1..n {
                        let s = self.subgroup(j);
                        if s.len().is_multiple_of(self.order_of(i))
                            && gens.iter().all(|&x| contains_sorted(s, x))
                        {
                            row.insert(j);
                        }
                    }
                    row
                })
                .collect()
        })
    }

    /// Indices of the subgroups containing subgroup `i`, in index order.
    pub fn overgroups(&self, i: usize) -> Vec<usize> {
        let gens = self.group.generating_set(self.subgroup(i));
        let size = self.order_of(i);
        (i..self.len())
            .filter(|&j| {
                let s = self.subgroup(j);
                s.len().is_multiple_of(size) && gens.iter().all(|&x| contains_sorted(s, x))
            })
            .collect()
    }
}

/// Adds `k` and all its conjugates as a new class, unless already present.
/// Members are sorted so the representative comes first.
fn register(
    g: &Group,
    gens: &[Rank],
    store: &mut SubgroupStore,
    classes: &mut Vec<Vec<usize>>,
    k: Vec<Rank>,
    cap: usize,
) -> Result<Option<usize>> {
    if store.find(&k).is_some() {
        return Ok(None);
    }
    let first = store.push(k);
    let mut members = vec![first];
    let mut i = 0;
    while i < members.len() {
        for &s in gens {
            let mut c: Vec<Rank> = store.lists[members[i]]
                .iter()
                .map(|&x| g.conj(x, s))
                .collect();
            c.sort_unstable();
            if store.find(&c).is_none() {
                members.push(store.push(c));
            }
        }
        i += 1;
    }
    if store.lists.len() > cap {
        return Err(Error::SubgroupCapExceeded { cap });
    }
    members.sort_by(|&a, &b| store.lists[a].cmp(&store.lists[b]));
    classes.push(members);
    Ok(Some(classes.len() - 1))
}

/// Cyclic subgroups of prime-power order, each named by a generator.
struct CyclicIndex {
    gens: Vec<Rank>,
    /// Cyclic subgroup generated by each element of prime-power order.
    of: Vec<u32>,
}

impl CyclicIndex {
    fn new(g: &Group) -> CyclicIndex {
        let n = g.order();
        let mut of = vec![u32::MAX; n];
        let mut gens = Vec::new();
        for x in 1..n as Rank {
            if of[x as usize] != u32::MAX {
                continue;
            }
            let k = g.element_order(x);
            if prime_power(k as u64).is_none() {
                continue;
            }
            let id = gens.len() as u32;
            gens.push(x);
            let (p, _) = prime_power(k as u64).expect("checked above");
            let mut y = x;
            for i in 1..k {
                if !(i as u64).is_multiple_of(p) {
                    of[y as usize] = id;
                }
                y = g.mul(y, x);
            }
        }
        CyclicIndex { gens, of }
    }

    fn generator(&self, c: usize) -> Rank {
        self.gens[c]
    }

    /// One cyclic subgroup from each orbit of the group generated by `by`
    /// acting by conjugation.
    fn orbit_reps(&self, g: &Group, by: &[Rank]) -> Vec<usize> {
        let m = self.gens.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn root(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for c in 0..m {
            for &s in by {
                let d = self.of[g.conj(self.gens[c], s) as usize] as usize;
                let (ra, rb) = (root(&mut parent, c), root(&mut parent, d));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        (0..m).filter(|&c| root(&mut parent, c) == c).collect()
    }
}

/// `⟨H, x⟩` as an unsorted rank list.
fn join_unsorted(g: &Group, h: &[Rank], h_gens: &[Rank], x: Rank) -> Vec<Rank> {
    let mut mark = BitSet::new(g.order());
    for &y in h {
        mark.insert(y as usize);
    }
    let mut elems = h.to_vec();
    let mut gens = h_gens.to_vec();
    g.extend_closure(&mut mark, &mut elems, &mut gens, x);
    elems
}
