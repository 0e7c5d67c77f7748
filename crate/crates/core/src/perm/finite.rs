//! Materialized groups: every element listed, sorted, and indexed.
//!
//! All desk-scale algorithms (classes, centralizers, automorphisms, covers,
//! tuple enumeration) work on element ids into a [`FiniteGroup`]. Elements are
//! sorted lexicographically by image array, so id order is permutation order
//! and id 0 is the identity.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::ToPrimitive;

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

pub type ElemId = u32;

pub const IDENTITY: ElemId = 0;

/// Default cap on materialized group order.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// Multiplication tables are built up to this order.
const TABLE_LIMIT: usize = 3000;

/// Bitset over the elements of one group.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            words: vec![0; universe.div_ceil(64)],
        }
    }

    #[inline]
    pub fn contains(&self, x: ElemId) -> bool {
        self.words[(x / 64) as usize] >> (x % 64) & 1 == 1
    }

    /// Returns true when `x` was not already present.
    #[inline]
    pub fn insert(&mut self, x: ElemId) -> bool {
        let w = &mut self.words[(x / 64) as usize];
        let bit = 1u64 << (x % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros();
                w &= w - 1;
                Some(i as u32 * 64 + bit)
            })
        })
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    /// Least element of the class.
    pub representative: ElemId,
    /// Sorted element ids.
    pub elements: Vec<ElemId>,
    /// Order of each element of the class.
    pub element_order: u64,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: ElemId) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// `G / G′` with an explicit labeling `G → G^ab`.
#[derive(Debug, Clone)]
pub struct Abelianization {
    /// Coset label of every element; label 0 is `G′` itself.
    pub label: Vec<u32>,
    pub order: usize,
    /// Multiplication table on labels, row-major.
    pub table: Vec<u32>,
    /// Invariant factors `d₁ | d₂ | …` of the abelian group.
    pub invariants: Vec<u64>,
}

impl Abelianization {
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariants.len() <= 1
    }
}

pub struct FiniteGroup {
    perm: PermGroup,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, ElemId>,
    inverse: Vec<ElemId>,
    table: Option<Vec<ElemId>>,
    generator_ids: Vec<ElemId>,
    orders: Vec<u64>,
    classes: OnceLock<(Vec<ConjugacyClass>, Vec<u32>)>,
    derived: OnceLock<ElementSet>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("generators", &self.perm.generators())
            .finish()
    }
}

impl FiniteGroup {
    pub fn new(perm: PermGroup) -> Result<Self> {
        Self::with_cap(perm, DEFAULT_ELEMENT_CAP)
    }

    /// Materializes every element; fails when the order exceeds `cap`.
    pub fn with_cap(perm: PermGroup, cap: usize) -> Result<Self> {
        let order = perm.order();
        let n = match order.to_usize() {
            Some(n) if n <= cap => n,
            _ => {
                return Err(Error::Budget {
                    what: "group order for element materialization",
                    limit: cap as u64,
                    consumed: order.to_u64().unwrap_or(u64::MAX),
                })
            }
        };
        let degree = perm.degree();
        let mut elements = vec![Permutation::identity(degree)];
        let mut seen: HashMap<Permutation, ()> = HashMap::with_capacity(n);
        seen.insert(elements[0].clone(), ());
        let mut k = 0;
        while k < elements.len() {
            for g in perm.generators() {
                let y = elements[k].compose(g);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), ());
                    elements.push(y);
                }
            }
            k += 1;
        }
        if elements.len() != n {
            return Err(Error::Internal(format!(
                "closure found {} elements, chain order {n}",
                elements.len()
            )));
        }
        drop(seen);
        elements.sort_unstable();
        let index: HashMap<Permutation, ElemId> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as ElemId))
            .collect();
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        let orders = elements.iter().map(Permutation::order).collect();
        let generator_ids = perm.generators().iter().map(|g| index[g]).collect();
        let mut group = FiniteGroup {
            perm,
            elements,
            index,
            inverse,
            table: None,
            generator_ids,
            orders,
            classes: OnceLock::new(),
            derived: OnceLock::new(),
        };
        if n <= TABLE_LIMIT {
            let mut table = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    table[a * n + b] = group.index[&group.elements[a].compose(&group.elements[b])];
                }
            }
            group.table = Some(table);
        }
        Ok(group)
    }

    pub fn from_generators(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::new(PermGroup::new(degree, generators)?)
    }

    pub fn perm_group(&self) -> &PermGroup {
        &self.perm
    }

    pub fn degree(&self) -> usize {
        self.perm.degree()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, id: ElemId) -> &Permutation {
        &self.elements[id as usize]
    }

    pub fn id_of(&self, p: &Permutation) -> Option<ElemId> {
        self.index.get(p).copied()
    }

    pub fn generator_ids(&self) -> &[ElemId] {
        &self.generator_ids
    }

    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.index[&self.elements[a as usize].compose(&self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inverse[a as usize]
    }

    /// `h⁻¹ g h`.
    #[inline]
    pub fn conj(&self, g: ElemId, h: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(h), g), h)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: ElemId, b: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: ElemId, k: u64) -> ElemId {
        let mut acc = IDENTITY;
        let mut sq = a;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: ElemId) -> u64 {
        self.orders[a as usize]
    }

    pub fn product<I: IntoIterator<Item = ElemId>>(&self, items: I) -> ElemId {
        items.into_iter().fold(IDENTITY, |acc, x| self.mul(acc, x))
    }

    pub fn commutes(&self, a: ElemId, b: ElemId) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn full_set(&self) -> ElementSet {
        let mut s = ElementSet::empty(self.order());
        for i in 0..self.order() as ElemId {
            s.insert(i);
        }
        s
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[ElemId]) -> ElementSet {
        let mut set = ElementSet::empty(self.order());
        set.insert(IDENTITY);
        self.extend_closure(&mut set, gens);
        set
    }

    /// Closes `set` (a subgroup) under right multiplication by `gens`, which
    /// must include generators of the subgroup already in `set`.
    pub fn extend_closure(&self, set: &mut ElementSet, gens: &[ElemId]) {
        let mut frontier: Vec<ElemId> = set.iter().collect();
        let mut k = 0;
        while k < frontier.len() {
            let x = frontier[k];
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
            k += 1;
        }
    }

    /// Small generating set of a subgroup given as a set.
    pub fn subgroup_generators(&self, subgroup: &ElementSet) -> Vec<ElemId> {
        let mut gens = Vec::new();
        let mut span = ElementSet::empty(self.order());
        span.insert(IDENTITY);
        let target = subgroup.len();
        // prefer high-order elements so fewer generators are needed
        let mut candidates: Vec<ElemId> = subgroup.iter().collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        for x in candidates {
            if span.len() == target {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                span = self.generate(&gens);
            }
        }
        gens
    }

    /// Subgroup as a [`PermGroup`] on the same points.
    pub fn to_perm_group(&self, subgroup: &ElementSet) -> PermGroup {
        let gens = self
            .subgroup_generators(subgroup)
            .into_iter()
            .map(|x| self.element(x).clone())
            .collect();
        PermGroup::new(self.degree(), gens).expect("same degree")
    }

    /// Normal closure of a set of elements.
    pub fn normal_closure(&self, seeds: &[ElemId]) -> ElementSet {
        self.closure_under_conjugation(seeds, &self.generator_ids)
    }

    /// Smallest subgroup containing `seeds` and stable under conjugation by
    /// `conj_gens`.
    pub fn closure_under_conjugation(&self, seeds: &[ElemId], conj_gens: &[ElemId]) -> ElementSet {
        let mut set = self.generate(seeds);
        let mut gens: Vec<ElemId> = seeds.to_vec();
        let mut k = 0;
        while k < gens.len() {
            let x = gens[k];
            for &g in conj_gens {
                let c = self.conj(x, g);
                if !set.contains(c) {
                    gens.push(c);
                    self.extend_closure(&mut set, &gens);
                }
            }
            k += 1;
        }
        set
    }

    pub fn is_normal(&self, subgroup: &ElementSet) -> bool {
        subgroup
            .iter()
            .all(|x| self.generator_ids.iter().all(|&g| subgroup.contains(self.conj(x, g))))
    }

    /// Derived subgroup `G′` as an element set.
    pub fn derived_set(&self) -> &ElementSet {
        self.derived.get_or_init(|| {
            let gens = &self.generator_ids;
            let mut seeds = Vec::new();
            for (i, &a) in gens.iter().enumerate() {
                for &b in &gens[i + 1..] {
                    seeds.push(self.commutator(a, b));
                }
            }
            self.normal_closure(&seeds)
        })
    }

    pub fn derived_subgroup_of(&self, subgroup: &ElementSet) -> ElementSet {
        let gens = self.subgroup_generators(subgroup);
        let mut seeds = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                seeds.push(self.commutator(a, b));
            }
        }
        self.closure_under_conjugation(&seeds, &gens)
    }

    /// Conjugacy classes sorted by (element order, size, representative).
    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        &self.class_data().0
    }

    /// Index into [`Self::conjugacy_classes`] of the class containing `x`.
    pub fn class_of(&self, x: ElemId) -> usize {
        self.class_data().1[x as usize] as usize
    }

    fn class_data(&self) -> &(Vec<ConjugacyClass>, Vec<u32>) {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut assigned = vec![false; n];
            let mut classes = Vec::new();
            for start in 0..n as ElemId {
                if assigned[start as usize] {
                    continue;
                }
                let elements = self.conjugation_orbit(start, &self.generator_ids);
                for &x in &elements {
                    assigned[x as usize] = true;
                }
                classes.push(ConjugacyClass {
                    representative: elements[0],
                    element_order: self.element_order(start),
                    elements,
                });
            }
            classes.sort_by_key(|c| (c.element_order, c.size(), c.representative));
            let mut class_of = vec![0u32; n];
            for (i, c) in classes.iter().enumerate() {
                for &x in &c.elements {
                    class_of[x as usize] = i as u32;
                }
            }
            (classes, class_of)
        })
    }

    /// Sorted orbit of `x` under conjugation by `gens`.
    pub fn conjugation_orbit(&self, x: ElemId, gens: &[ElemId]) -> Vec<ElemId> {
        let mut seen = ElementSet::empty(self.order());
        seen.insert(x);
        let mut orbit = vec![x];
        let mut k = 0;
        while k < orbit.len() {
            let y = orbit[k];
            for &g in gens {
                let z = self.conj(y, g);
                if seen.insert(z) {
                    orbit.push(z);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        orbit
    }

    /// Number of orbits of the subgroup generated by `gens` acting by
    /// conjugation on `elements`.
    pub fn conjugation_orbit_count(&self, elements: &[ElemId], gens: &[ElemId]) -> usize {
        let mut seen = ElementSet::empty(self.order());
        let mut count = 0;
        for &x in elements {
            if seen.contains(x) {
                continue;
            }
            count += 1;
            for y in self.conjugation_orbit(x, gens) {
                seen.insert(y);
            }
        }
        count
    }

    pub fn centralizer_set(&self, g: ElemId) -> ElementSet {
        let mut set = ElementSet::empty(self.order());
        for z in 0..self.order() as ElemId {
            if self.commutes(g, z) {
                set.insert(z);
            }
        }
        set
    }

    pub fn center_set(&self) -> ElementSet {
        let mut set = ElementSet::empty(self.order());
        for z in 0..self.order() as ElemId {
            if self.generator_ids.iter().all(|&g| self.commutes(g, z)) {
                set.insert(z);
            }
        }
        set
    }

    /// `Z(g)` as a permutation group; `g` must lie in the group.
    pub fn centralizer(&self, g: &Permutation) -> Result<PermGroup> {
        let id = self
            .id_of(g)
            .ok_or_else(|| Error::Input(format!("{g} is not an element of the group")))?;
        Ok(self.to_perm_group(&self.centralizer_set(id)))
    }

    pub fn abelianization(&self) -> Abelianization {
        let derived = self.derived_set();
        let derived_elems: Vec<ElemId> = derived.iter().collect();
        let n = self.order();
        let mut label = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n as ElemId {
            if label[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &d in &derived_elems {
                label[self.mul(x, d) as usize] = c;
            }
        }
        let order = reps.len();
        let mut table = vec![0u32; order * order];
        for (a, &ra) in reps.iter().enumerate() {
            for (b, &rb) in reps.iter().enumerate() {
                table[a * order + b] = label[self.mul(ra, rb) as usize];
            }
        }
        let invariants = abelian_invariants(order, &table);
        Abelianization {
            label,
            order,
            table,
            invariants,
        }
    }
}

/// Invariant factors of a finite abelian group given by its table.
fn abelian_invariants(order: usize, table: &[u32]) -> Vec<u64> {
    if order == 1 {
        return Vec::new();
    }
    let mul = |a: u32, b: u32| table[a as usize * order + b as usize];
    let pow = |a: u32, k: u64| (0..k).fold(0u32, |acc, _| mul(acc, a));
    let mut n = order as u64;
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    // per prime, exponents of the cyclic factors, largest first
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for &p in &primes {
        // r_k = log_p #{x : x^(p^k) = 1}
        let mut r = vec![0u32];
        let mut pk = 1u64;
        loop {
            pk *= p;
            let count = (0..order as u32).filter(|&x| pow(x, pk) == 0).count() as u64;
            let mut log = 0;
            let mut c = count;
            while c > 1 {
                c /= p;
                log += 1;
            }
            if log == *r.last().unwrap() {
                break;
            }
            r.push(log);
        }
        // number of cyclic factors of exponent >= k is r_k - r_{k-1}
        let levels: Vec<u32> = r.windows(2).map(|w| w[1] - w[0]).collect();
        let mut exps = Vec::new();
        for k in 0..levels.len() {
            let at_least_k = levels[k];
            let at_least_next = levels.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(at_least_k - at_least_next) {
                exps.push(k as u32 + 1);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push((p, exps));
    }
    let count = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut invariants: Vec<u64> = (0..count)
        .map(|i| {
            per_prime
                .iter()
                .map(|(p, e)| e.get(i).map_or(1, |&k| p.pow(k)))
                .product()
        })
        .collect();
    invariants.reverse();
    invariants
}
