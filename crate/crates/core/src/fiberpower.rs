//! Fiber powers `G^[k] = G ×_{G^ab} ⋯ ×_{G^ab} G` and the row-span test.

use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis;
use crate::error::{Error, Result};
use crate::hurwitz::{Fiber, HurwitzParameter};
use crate::perm::{ElemId, FiniteGroup, PermGroup, Permutation};

pub const DEFAULT_MAX_POWER: usize = 3;

/// `G^[k]` realized on `k` disjoint copies of the domain of `G`.
#[derive(Debug, Clone)]
pub struct FiberPowerGroup {
    base: Arc<FiniteGroup>,
    k: usize,
    realized: PermGroup,
}

/// `|G| · |G′|^{k−1}`.
pub fn fiber_power_order(g: &FiniteGroup, k: usize) -> BigUint {
    BigUint::from(g.order()) * BigUint::from(g.derived_set().len()).pow(k.saturating_sub(1) as u32)
}

/// The permutation acting as `xs[i]` on the `i`-th copy.
pub fn embed(g: &FiniteGroup, xs: &[ElemId]) -> Permutation {
    let d = g.degree();
    let mut images = Vec::with_capacity(d * xs.len());
    for (i, &x) in xs.iter().enumerate() {
        images.extend(g.element(x).images().iter().map(|&y| y + (i * d) as u32));
    }
    Permutation::from_images(images).expect("block permutation")
}

pub fn fiber_power_group(g: Arc<FiniteGroup>, k: usize) -> Result<FiberPowerGroup> {
    fiber_power_group_capped(g, k, DEFAULT_MAX_POWER)
}

pub fn fiber_power_group_capped(g: Arc<FiniteGroup>, k: usize, max_k: usize) -> Result<FiberPowerGroup> {
    if k == 0 {
        return Err(Error::Input("fiber power needs k ≥ 1".into()));
    }
    if k > max_k {
        return Err(Error::Unsupported(format!("k = {k} exceeds the cap {max_k}")));
    }
    if g.center_set().len() != 1 {
        return Err(Error::Unsupported("G has nontrivial center".into()));
    }
    let mut gens: Vec<Permutation> = g
        .generator_ids()
        .iter()
        .map(|&s| embed(&g, &vec![s; k]))
        .collect();
    let identity = crate::perm::IDENTITY;
    for s in g.subgroup_generators(g.derived_set()) {
        for i in 0..k {
            let mut xs = vec![identity; k];
            xs[i] = s;
            gens.push(embed(&g, &xs));
        }
    }
    let realized = PermGroup::new(g.degree() * k, gens)?;
    let expected = fiber_power_order(&g, k);
    if realized.order() != expected {
        return Err(Error::Internal(format!(
            "fiber power has order {}, expected {expected}",
            realized.order()
        )));
    }
    Ok(FiberPowerGroup { base: g, k, realized })
}

impl FiberPowerGroup {
    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn realized(&self) -> &PermGroup {
        &self.realized
    }

    pub fn order(&self) -> BigUint {
        self.realized.order()
    }

    /// The `i`-th coordinate of an element, as an element of `G`.
    pub fn coordinate(&self, x: &Permutation, i: usize) -> Option<ElemId> {
        let d = self.base.degree();
        let images: Vec<u32> = x.images()[i * d..(i + 1) * d]
            .iter()
            .map(|&y| y.checked_sub((i * d) as u32))
            .collect::<Option<_>>()?;
        self.base.id_of(&Permutation::from_images(images).ok()?)
    }
}

/// Does the subgroup generated by the rows `(t₁[j], …, t_k[j])` equal
/// `G^[k]`?
pub fn row_span_check(h: &HurwitzParameter, tuples: &[&[ElemId]]) -> Result<bool> {
    let g = h.group();
    if tuples.is_empty() {
        return Err(Error::Input("row span needs at least one tuple".into()));
    }
    if !analysis::is_pseudosimple(g).pseudosimple {
        return Err(Error::Unsupported("G is not pseudosimple".into()));
    }
    if let Some(t) = tuples.iter().find(|t| !h.contains(t)) {
        return Err(Error::Input(format!("{:?} is not a Nielsen tuple of h", h.to_permutations(t))));
    }
    Ok(row_span_order(g, tuples) == fiber_power_order(g, tuples.len()))
}

fn row_span_order(g: &FiniteGroup, tuples: &[&[ElemId]]) -> BigUint {
    let k = tuples.len();
    let rows: Vec<Permutation> = (0..tuples[0].len())
        .map(|j| embed(g, &tuples.iter().map(|t| t[j]).collect::<Vec<_>>()))
        .collect();
    PermGroup::new(g.degree() * k, rows).expect("same degree").order()
}

/// Row-span verdicts over all ordered pairs of fiber points, compared with
/// distinctness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoursatReport {
    pub points: usize,
    pub distinct_pairs: usize,
    pub distinct_true: usize,
    pub diagonal_pairs: usize,
    pub diagonal_true: usize,
    /// True iff the check holds exactly on distinct pairs.
    pub matches_distinctness: bool,
}

pub fn goursat_sweep(f: &Fiber) -> Result<GoursatReport> {
    let h = f.param();
    let g = h.group();
    if !analysis::is_pseudosimple(g).pseudosimple {
        return Err(Error::Unsupported("G is not pseudosimple".into()));
    }
    let target = fiber_power_order(g, 2);
    let n = f.len();
    let verdicts: Vec<(bool, bool)> = (0..n * n)
        .into_par_iter()
        .map(|ij| {
            let (i, j) = (ij / n, ij % n);
            (i != j, row_span_order(g, &[f.point(i), f.point(j)]) == target)
        })
        .collect();
    let distinct_true = verdicts.iter().filter(|&&(d, v)| d && v).count();
    let diagonal_true = verdicts.iter().filter(|&&(d, v)| !d && v).count();
    Ok(GoursatReport {
        points: n,
        distinct_pairs: n * n.saturating_sub(1),
        distinct_true,
        diagonal_pairs: n,
        diagonal_true,
        matches_distinctness: distinct_true == n * n.saturating_sub(1) && diagonal_true == 0,
    })
}
