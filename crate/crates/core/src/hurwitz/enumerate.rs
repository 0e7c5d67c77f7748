//! Depth-first enumeration of `𝒢_h`.
//!
//! One position is forced: by cyclic rotation of `g₁⋯gₙ = 1`, the entry at
//! position `k` equals the inverse of the product of the entries after it
//! followed by those before it. We force a position in the block of the
//! largest class, which minimizes the number of visited prefixes.

use std::collections::HashMap;

use rayon::prelude::*;

use super::HurwitzParameter;
use crate::error::{Error, Result};
use crate::perm::{ElemId, ElementSet, FiniteGroup, IDENTITY};

/// Default cap on prefix visits.
pub const DEFAULT_TUPLE_BUDGET: u64 = 100_000_000;

/// Sorted, deduplicated set of tuples of element ids, stored flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleSet {
    n: usize,
    data: Vec<ElemId>,
}

impl TupleSet {
    pub fn new(n: usize, mut tuples: Vec<Vec<ElemId>>) -> Self {
        tuples.par_sort_unstable();
        tuples.dedup();
        let data = tuples.into_iter().flatten().collect();
        TupleSet { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        if self.n == 0 {
            0
        } else {
            self.data.len() / self.n
        }
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[ElemId] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[ElemId]> + '_ {
        self.data.chunks_exact(self.n.max(1))
    }

    pub fn par_iter(&self) -> impl IndexedParallelIterator<Item = &[ElemId]> + '_ {
        self.data.par_chunks_exact(self.n.max(1))
    }

    pub fn position(&self, t: &[ElemId]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(t) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// Search order and exact cost of an enumeration.
#[derive(Debug, Clone)]
pub struct SearchPlan {
    /// The position whose entry is determined by the others.
    pub forced: usize,
    /// Remaining positions in the order they are chosen.
    pub order: Vec<usize>,
    /// Exact number of prefixes the search visits.
    pub prefix_visits: u128,
}

pub fn search_plan(h: &HurwitzParameter) -> SearchPlan {
    let g = h.group();
    let classes = h.class_at_positions();
    let n = classes.len();
    let size = |pos: usize| g.conjugacy_classes()[classes[pos]].size() as u128;
    let forced = (0..n)
        .max_by(|&a, &b| size(a).cmp(&size(b)).then(b.cmp(&a)))
        .unwrap_or(0);
    let order: Vec<usize> = (forced + 1..n).chain(0..forced).collect();
    let mut visits = 0u128;
    let mut width = 1u128;
    for &p in &order {
        width = width.saturating_mul(size(p));
        visits = visits.saturating_add(width);
    }
    SearchPlan {
        forced,
        order,
        prefix_visits: visits,
    }
}

/// All of `𝒢_h`: tuples in the prescribed classes with product one that
/// generate `G`.
pub fn enumerate_tuples(h: &HurwitzParameter, budget: u64) -> Result<TupleSet> {
    let plan = search_plan(h);
    if plan.prefix_visits > budget as u128 {
        return Err(Error::Budget {
            what: "tuple enumeration prefix visits",
            limit: budget,
            consumed: plan.prefix_visits.min(u64::MAX as u128) as u64,
        });
    }
    let g = h.group();
    let n = h.n();
    let classes = h.class_at_positions();
    let choices: Vec<&[ElemId]> = plan
        .order
        .iter()
        .map(|&p| g.conjugacy_classes()[classes[p]].elements.as_slice())
        .collect();
    let forced_class = classes[plan.forced];
    let search = Search {
        g,
        n,
        plan: &plan,
        choices: &choices,
        forced_class,
    };
    let tuples: Vec<Vec<ElemId>> = if choices.is_empty() {
        let mut out = Vec::new();
        let mut cache = SubgroupCache::new(g);
        search.dfs(&mut cache, &mut Vec::new(), IDENTITY, 0, &mut out);
        out
    } else {
        choices[0]
            .par_iter()
            .map_init(
                || SubgroupCache::new(g),
                |cache, &x| {
                    let mut out = Vec::new();
                    let sub = cache.join(0, x);
                    search.dfs(cache, &mut vec![x], x, sub, &mut out);
                    out
                },
            )
            .flatten_iter()
            .collect()
    };
    Ok(TupleSet::new(n, tuples))
}

struct Search<'a> {
    g: &'a FiniteGroup,
    n: usize,
    plan: &'a SearchPlan,
    choices: &'a [&'a [ElemId]],
    forced_class: usize,
}

impl Search<'_> {
    fn dfs(
        &self,
        cache: &mut SubgroupCache,
        prefix: &mut Vec<ElemId>,
        product: ElemId,
        subgroup: u32,
        out: &mut Vec<Vec<ElemId>>,
    ) {
        let depth = prefix.len();
        if depth == self.choices.len() {
            let last = self.g.inv(product);
            if self.g.class_of(last) != self.forced_class || !cache.is_full(subgroup) {
                return;
            }
            let mut t = vec![IDENTITY; self.n];
            t[self.plan.forced] = last;
            for (&p, &x) in self.plan.order.iter().zip(prefix.iter()) {
                t[p] = x;
            }
            out.push(t);
            return;
        }
        for &x in self.choices[depth] {
            let sub = cache.join(subgroup, x);
            prefix.push(x);
            self.dfs(cache, prefix, self.g.mul(product, x), sub, out);
            prefix.pop();
        }
    }
}

/// Interned subgroups with memoized joins `⟨H, x⟩`.
pub(crate) struct SubgroupCache<'a> {
    g: &'a FiniteGroup,
    sets: Vec<ElementSet>,
    gens: Vec<Vec<ElemId>>,
    ids: HashMap<ElementSet, u32>,
    joins: HashMap<(u32, ElemId), u32>,
}

impl<'a> SubgroupCache<'a> {
    pub(crate) fn new(g: &'a FiniteGroup) -> Self {
        let trivial = g.generate(&[]);
        let mut ids = HashMap::new();
        ids.insert(trivial.clone(), 0);
        SubgroupCache {
            g,
            sets: vec![trivial],
            gens: vec![Vec::new()],
            ids,
            joins: HashMap::new(),
        }
    }

    pub(crate) fn is_full(&self, id: u32) -> bool {
        self.sets[id as usize].len() == self.g.order()
    }

    pub(crate) fn join(&mut self, id: u32, x: ElemId) -> u32 {
        if self.sets[id as usize].contains(x) {
            return id;
        }
        if let Some(&j) = self.joins.get(&(id, x)) {
            return j;
        }
        let mut gens = self.gens[id as usize].clone();
        gens.push(x);
        let mut set = self.sets[id as usize].clone();
        self.g.extend_closure(&mut set, &gens);
        let j = match self.ids.get(&set) {
            Some(&j) => j,
            None => {
                let j = self.sets.len() as u32;
                self.ids.insert(set.clone(), j);
                self.sets.push(set);
                self.gens.push(gens);
                j
            }
        };
        self.joins.insert((id, x), j);
        j
    }
}
