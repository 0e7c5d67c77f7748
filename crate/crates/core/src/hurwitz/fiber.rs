//! Fibers `ℱ_h = 𝒢_h / Inn(G)` and `ℱ*_h = 𝒢_h / Aut(G,C)`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{apply_sigma_ids, apply_word_ids, BraidWord, HurwitzParameter, TupleSet};
use crate::analysis::{aut_fixing_classes, automorphism_group};
use crate::error::{Error, Result};
use crate::perm::{ElemId, FiniteGroup, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberMode {
    Inn,
    AutGC,
}

/// A group of automorphisms acting entrywise on tuples, prepared for
/// canonicalization.
#[derive(Debug, Clone)]
pub struct ActingGroup {
    maps: Vec<Vec<ElemId>>,
    /// Least image of each element under the group.
    least: Vec<ElemId>,
    /// Maps sending each element to its least image.
    achievers: Vec<Vec<u32>>,
}

impl ActingGroup {
    /// Distinct element maps; duplicates are dropped.
    pub fn from_maps(order: usize, maps: Vec<Vec<ElemId>>) -> Self {
        let mut seen = HashSet::new();
        let maps: Vec<Vec<ElemId>> = maps.into_iter().filter(|m| seen.insert(m.clone())).collect();
        let mut least = vec![ElemId::MAX; order];
        let mut achievers = vec![Vec::new(); order];
        for x in 0..order {
            for (a, m) in maps.iter().enumerate() {
                let y = m[x];
                if y < least[x] {
                    least[x] = y;
                    achievers[x].clear();
                }
                if y == least[x] {
                    achievers[x].push(a as u32);
                }
            }
        }
        ActingGroup {
            maps,
            least,
            achievers,
        }
    }

    pub fn inner(g: &FiniteGroup) -> Self {
        let maps = (0..g.order() as ElemId)
            .map(|h| (0..g.order() as ElemId).map(|x| g.conj(x, h)).collect())
            .collect();
        Self::from_maps(g.order(), maps)
    }

    /// `Inn(G)` or `Aut(G, C)` for the parameter's classes.
    pub fn for_mode(h: &HurwitzParameter, mode: FiberMode) -> Self {
        let g = h.group();
        match mode {
            FiberMode::Inn => Self::inner(g),
            FiberMode::AutGC => {
                let fixing = aut_fixing_classes(&automorphism_group(g), h.classes());
                Self::from_maps(g.order(), fixing.element_maps)
            }
        }
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[Vec<ElemId>] {
        &self.maps
    }

    /// Lexicographically least image of `t` under the group.
    pub fn canonical(&self, t: &[ElemId]) -> Vec<ElemId> {
        let mut out = t.to_vec();
        self.canonicalize(&mut out);
        out
    }

    pub fn canonicalize(&self, t: &mut [ElemId]) {
        if t.is_empty() {
            return;
        }
        let candidates = &self.achievers[t[0] as usize];
        let mut best = &self.maps[candidates[0] as usize];
        for &a in &candidates[1..] {
            let m = &self.maps[a as usize];
            for &x in &t[1..] {
                let (p, q) = (m[x as usize], best[x as usize]);
                if p != q {
                    if p < q {
                        best = m;
                    }
                    break;
                }
            }
        }
        for x in t.iter_mut() {
            *x = best[*x as usize];
        }
    }

    pub fn is_canonical(&self, t: &[ElemId]) -> bool {
        self.canonical(t) == t
    }

    pub fn least_image(&self, x: ElemId) -> ElemId {
        self.least[x as usize]
    }
}

/// Canonical representatives of the acting group's orbits on `𝒢_h`.
#[derive(Debug, Clone)]
pub struct Fiber {
    param: HurwitzParameter,
    mode: FiberMode,
    acting: ActingGroup,
    points: TupleSet,
    index: HashMap<Vec<ElemId>, u32>,
    /// Number of tuples of `𝒢_h` above each point.
    multiplicity: Vec<u32>,
}

pub fn build_fiber(h: &HurwitzParameter, tuples: &TupleSet, acting: ActingGroup, mode: FiberMode) -> Fiber {
    let mut canon: Vec<Vec<ElemId>> = tuples.par_iter().map(|t| acting.canonical(t)).collect();
    canon.par_sort_unstable();
    let mut reps: Vec<Vec<ElemId>> = Vec::new();
    let mut multiplicity = Vec::new();
    for t in canon {
        if reps.last() == Some(&t) {
            *multiplicity.last_mut().unwrap() += 1;
        } else {
            reps.push(t);
            multiplicity.push(1);
        }
    }
    let index = reps
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i as u32))
        .collect();
    Fiber {
        param: h.clone(),
        mode,
        acting,
        points: TupleSet::new(h.n(), reps),
        index,
        multiplicity,
    }
}

impl Fiber {
    pub fn param(&self) -> &HurwitzParameter {
        &self.param
    }

    pub fn mode(&self) -> FiberMode {
        self.mode
    }

    pub fn acting(&self) -> &ActingGroup {
        &self.acting
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[ElemId] {
        self.points.get(i)
    }

    pub fn points(&self) -> &TupleSet {
        &self.points
    }

    pub fn multiplicity(&self) -> &[u32] {
        &self.multiplicity
    }

    /// `|𝒢_h|`.
    pub fn tuple_count(&self) -> usize {
        self.multiplicity.iter().map(|&m| m as usize).sum()
    }

    /// Point id of an arbitrary tuple of `𝒢_h`.
    pub fn locate(&self, t: &[ElemId]) -> Option<u32> {
        self.index.get(&self.acting.canonical(t)).copied()
    }

    /// The permutation of point ids induced by a braid word.
    pub fn induced_permutation(&self, w: &BraidWord) -> Result<Permutation> {
        if w.strands() > self.param.n() {
            return Err(Error::Input(format!(
                "braid word {w} needs {} strands, fiber has {}",
                w.strands(),
                self.param.n()
            )));
        }
        let g = self.param.group();
        let images: Vec<Option<u32>> = self
            .points
            .par_iter()
            .map(|p| {
                let mut t = p.to_vec();
                apply_word_ids(g, &mut t, w);
                self.locate(&t)
            })
            .collect();
        let images: Vec<u32> = images
            .into_iter()
            .enumerate()
            .map(|(i, y)| {
                y.ok_or_else(|| {
                    Error::Internal(format!("image of fiber point {i} under {w} is not in the fiber"))
                })
            })
            .collect::<Result<_>>()?;
        Permutation::from_images(images)
            .map_err(|e| Error::Internal(format!("induced map is not a bijection: {e}")))
    }
}

/// Orbit ids of fiber points under the full braid group `Br_n`, computed on
/// the superset of tuples with the same class multiset and restricted back
/// to the fiber; ids are numbered by least fiber point.
pub fn full_braid_partition(f: &Fiber, state_cap: usize) -> Result<Vec<u32>> {
    let g = f.param.group();
    let n = f.param.n();
    let mut state_id: HashMap<Vec<ElemId>, u32> = HashMap::new();
    let mut component: Vec<u32> = Vec::new();
    let mut fiber_component = vec![u32::MAX; f.len()];
    let mut count = 0u32;
    for start in 0..f.len() {
        if fiber_component[start] != u32::MAX {
            continue;
        }
        let root = f.point(start).to_vec();
        if state_id.contains_key(&root) {
            continue;
        }
        let comp = count;
        count += 1;
        state_id.insert(root.clone(), component.len() as u32);
        component.push(comp);
        let mut queue = vec![root];
        while let Some(t) = queue.pop() {
            if let Some(&i) = f.index.get(&t) {
                fiber_component[i as usize] = comp;
            }
            for i in 0..n.saturating_sub(1) {
                for inverse in [false, true] {
                    let mut u = t.clone();
                    apply_sigma_ids(g, &mut u, i, inverse);
                    f.acting.canonicalize(&mut u);
                    if !state_id.contains_key(&u) {
                        if state_id.len() >= state_cap {
                            return Err(Error::Budget {
                                what: "full braid orbit states",
                                limit: state_cap as u64,
                                consumed: state_id.len() as u64 + 1,
                            });
                        }
                        state_id.insert(u.clone(), component.len() as u32);
                        component.push(comp);
                        queue.push(u);
                    }
                }
            }
        }
    }
    Ok(fiber_component)
}
