//! Structural predicates on a group and its classes: ambiguity, rationality,
//! pseudosimplicity, split abelianization, and automorphism groups.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::perm::{ElemId, ElementSet, FiniteGroup, IDENTITY};

/// Does `G′` act on the class with more than one orbit?
pub fn is_ambiguous(g: &FiniteGroup, class: usize) -> bool {
    let derived_gens = g.subgroup_generators(g.derived_set());
    let elements = &g.conjugacy_classes()[class].elements;
    g.conjugation_orbit_count(elements, &derived_gens) > 1
}

/// Same predicate through the centralizer: a class is unambiguous exactly
/// when `Z(x)` surjects onto `G^ab` for `x` in the class.
pub fn is_ambiguous_by_centralizer(g: &FiniteGroup, class: usize) -> bool {
    let ab = g.abelianization();
    let x = g.conjugacy_classes()[class].representative;
    let mut hit = vec![false; ab.order];
    for z in g.centralizer_set(x).iter() {
        hit[ab.label[z as usize] as usize] = true;
    }
    !hit.iter().all(|&b| b)
}

/// Is `x^k` in the class of `x` for every `k` prime to the order of `x`?
pub fn is_rational_class(g: &FiniteGroup, class: usize) -> bool {
    let c = &g.conjugacy_classes()[class];
    let m = c.element_order;
    (1..m)
        .filter(|&k| gcd(k, m) == 1)
        .all(|k| g.class_of(g.pow(c.representative, k)) == class)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Short names for the classes of `g`: the cycle type written as a digit
/// string (`2111`, `42`), with a letter suffix when several classes share
/// a cycle type.
pub fn class_names(g: &FiniteGroup) -> Vec<String> {
    let types: Vec<String> = g
        .conjugacy_classes()
        .iter()
        .map(|c| {
            let parts = g.element(c.representative).cycle_type();
            if parts.iter().all(|&p| p < 10) {
                parts.iter().map(|p| p.to_string()).collect()
            } else {
                parts
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(".")
            }
        })
        .collect();
    let mut count: HashMap<&str, usize> = HashMap::new();
    for t in &types {
        *count.entry(t).or_default() += 1;
    }
    let mut seen: HashMap<&str, u8> = HashMap::new();
    types
        .iter()
        .map(|t| {
            if count[t.as_str()] == 1 {
                t.clone()
            } else {
                let k = seen.entry(t).or_default();
                let name = format!("{t}{}", (b'a' + *k) as char);
                *k += 1;
                name
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PseudosimpleFailure {
    CenterNontrivial,
    DerivedAbelian,
    NonabelianProperQuotient,
    DerivedNotPowerOfSimple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureVerdict {
    pub pseudosimple: bool,
    pub reason: Option<PseudosimpleFailure>,
    /// Number `w` of simple factors of `G′`.
    pub simple_factor_count: Option<usize>,
    pub simple_factor_order: Option<usize>,
}

impl StructureVerdict {
    fn fail(reason: PseudosimpleFailure) -> Self {
        StructureVerdict {
            pseudosimple: false,
            reason: Some(reason),
            simple_factor_count: None,
            simple_factor_order: None,
        }
    }
}

pub fn is_pseudosimple(g: &FiniteGroup) -> StructureVerdict {
    use PseudosimpleFailure::*;
    if g.center_set().len() > 1 {
        return StructureVerdict::fail(CenterNontrivial);
    }
    let derived = g.derived_set();
    let derived_gens = g.subgroup_generators(derived);
    let derived_abelian = derived_gens
        .iter()
        .all(|&a| derived_gens.iter().all(|&b| g.commutes(a, b)));
    if derived_abelian {
        return StructureVerdict::fail(DerivedAbelian);
    }
    for c in g.conjugacy_classes().iter().skip(1) {
        let closure = g.normal_closure(&[c.representative]);
        if !derived.is_subset(&closure) {
            return StructureVerdict::fail(NonabelianProperQuotient);
        }
    }
    if g.derived_subgroup_of(derived) != *derived {
        return StructureVerdict::fail(DerivedNotPowerOfSimple);
    }
    let factors = minimal_normal_subgroups(g, derived, &derived_gens);
    let factor_order = factors[0].len();
    let total: usize = factors.iter().map(|f| f.len()).product();
    let all_simple = factors.iter().all(|f| f.len() == factor_order && is_simple_nonabelian(g, f));
    if !all_simple || total != derived.len() || !transitive_on(g, &factors) {
        return StructureVerdict::fail(DerivedNotPowerOfSimple);
    }
    StructureVerdict {
        pseudosimple: true,
        reason: None,
        simple_factor_count: Some(factors.len()),
        simple_factor_order: Some(factor_order),
    }
}

/// Minimal normal subgroups of the subgroup `h` (generated by `h_gens`).
fn minimal_normal_subgroups(g: &FiniteGroup, h: &ElementSet, h_gens: &[ElemId]) -> Vec<ElementSet> {
    let mut seen = ElementSet::empty(g.order());
    seen.insert(IDENTITY);
    let mut closures: Vec<ElementSet> = Vec::new();
    for x in h.iter() {
        if seen.contains(x) {
            continue;
        }
        for y in g.conjugation_orbit(x, h_gens) {
            seen.insert(y);
        }
        let n = g.closure_under_conjugation(&[x], h_gens);
        if !closures.contains(&n) {
            closures.push(n);
        }
    }
    let minimal: Vec<ElementSet> = closures
        .iter()
        .filter(|n| {
            !closures
                .iter()
                .any(|m| m.len() < n.len() && m.is_subset(n))
        })
        .cloned()
        .collect();
    minimal
}

fn is_simple_nonabelian(g: &FiniteGroup, n: &ElementSet) -> bool {
    let gens = g.subgroup_generators(n);
    if gens.iter().all(|&a| gens.iter().all(|&b| g.commutes(a, b))) {
        return false;
    }
    let mut seen = ElementSet::empty(g.order());
    seen.insert(IDENTITY);
    for x in n.iter() {
        if seen.contains(x) {
            continue;
        }
        for y in g.conjugation_orbit(x, &gens) {
            seen.insert(y);
        }
        if g.closure_under_conjugation(&[x], &gens).len() != n.len() {
            return false;
        }
    }
    true
}

fn transitive_on(g: &FiniteGroup, factors: &[ElementSet]) -> bool {
    let reps: Vec<Vec<ElemId>> = factors.iter().map(|f| g.subgroup_generators(f)).collect();
    let mut reached = vec![false; factors.len()];
    reached[0] = true;
    let mut queue = vec![0];
    while let Some(i) = queue.pop() {
        for &s in g.generator_ids() {
            let image: Vec<ElemId> = reps[i].iter().map(|&x| g.conj(x, s)).collect();
            if let Some(j) = factors
                .iter()
                .position(|f| image.iter().all(|&y| f.contains(y)))
            {
                if !reached[j] {
                    reached[j] = true;
                    queue.push(j);
                }
            }
        }
    }
    reached.iter().all(|&r| r)
}

/// Generators of an abelian complement to `G′` (a section of `G → G^ab`),
/// if one exists.
pub fn abelianization_section(g: &FiniteGroup) -> Option<Vec<ElemId>> {
    let ab = g.abelianization();
    if ab.order == 1 {
        return Some(Vec::new());
    }
    let exponent = *ab.invariants.last().unwrap();
    let candidates: Vec<ElemId> = (0..g.order() as ElemId)
        .filter(|&x| exponent % g.element_order(x) == 0 && ab.label[x as usize] != 0)
        .collect();
    let mut chosen = Vec::new();
    let mut span = g.generate(&[]);
    if section_search(g, &ab.label, ab.order, &candidates, &mut chosen, &mut span) {
        Some(chosen)
    } else {
        None
    }
}

fn section_search(
    g: &FiniteGroup,
    label: &[u32],
    target: usize,
    candidates: &[ElemId],
    chosen: &mut Vec<ElemId>,
    span: &mut ElementSet,
) -> bool {
    if span.len() == target {
        return true;
    }
    let covered: HashSet<u32> = span.iter().map(|x| label[x as usize]).collect();
    for &x in candidates {
        if covered.contains(&label[x as usize]) || !chosen.iter().all(|&c| g.commutes(c, x)) {
            continue;
        }
        chosen.push(x);
        let next = g.generate(chosen);
        // injective on labels means the span meets G′ trivially
        let labels: HashSet<u32> = next.iter().map(|y| label[y as usize]).collect();
        if labels.len() == next.len() {
            let mut next = next;
            if section_search(g, label, target, candidates, chosen, &mut next) {
                *span = next;
                return true;
            }
        }
        chosen.pop();
    }
    false
}

#[derive(Debug, Clone, Serialize)]
pub struct TypeReport {
    pub pseudosimple: bool,
    pub abelianization_order: usize,
    pub abelianization_cyclic: bool,
    pub split: bool,
}

impl TypeReport {
    pub fn split_cyclic(&self) -> bool {
        self.pseudosimple && self.split && self.abelianization_cyclic
    }
}

pub fn type_report(g: &FiniteGroup) -> TypeReport {
    let ab = g.abelianization();
    TypeReport {
        pseudosimple: is_pseudosimple(g).pseudosimple,
        abelianization_order: ab.order,
        abelianization_cyclic: ab.is_cyclic(),
        split: abelianization_section(g).is_some(),
    }
}

/// Automorphisms of a materialized group.
#[derive(Debug, Clone)]
pub struct AutGroup {
    /// Generating set of `G` whose images define each map.
    pub generators: Vec<ElemId>,
    /// Image tuple of [`Self::generators`] under each automorphism.
    pub maps: Vec<Vec<ElemId>>,
    /// Full element map of each automorphism.
    pub element_maps: Vec<Vec<ElemId>>,
    pub inner: Vec<bool>,
    /// `|Inn(G)| = |G / Z(G)|`.
    pub inner_count: usize,
    /// Image of each class index under each automorphism.
    pub class_action: Vec<Vec<usize>>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.maps.len()
    }

    pub fn out_order(&self) -> usize {
        self.order() / self.inner_count
    }

    pub fn apply(&self, a: usize, x: ElemId) -> ElemId {
        self.element_maps[a][x as usize]
    }

    fn select(&self, keep: &[usize]) -> AutGroup {
        AutGroup {
            generators: self.generators.clone(),
            maps: keep.iter().map(|&i| self.maps[i].clone()).collect(),
            element_maps: keep.iter().map(|&i| self.element_maps[i].clone()).collect(),
            inner: keep.iter().map(|&i| self.inner[i]).collect(),
            inner_count: self.inner_count,
            class_action: keep.iter().map(|&i| self.class_action[i].clone()).collect(),
        }
    }
}

/// The inner automorphisms as a sub-collection.
pub fn inner_automorphisms(a: &AutGroup) -> AutGroup {
    let keep: Vec<usize> = (0..a.order()).filter(|&i| a.inner[i]).collect();
    a.select(&keep)
}

pub fn automorphism_group(g: &FiniteGroup) -> AutGroup {
    let generators = g.subgroup_generators(&g.full_set());
    let element_maps = homomorphism_search(g, g, &generators, true, false);
    let center = g.center_set().len();
    let inner_keys: HashSet<Vec<ElemId>> = (0..g.order() as ElemId)
        .map(|h| generators.iter().map(|&x| g.conj(x, h)).collect())
        .collect();
    let maps: Vec<Vec<ElemId>> = element_maps
        .iter()
        .map(|m| generators.iter().map(|&x| m[x as usize]).collect())
        .collect();
    let inner = maps.iter().map(|m| inner_keys.contains(m)).collect();
    let class_action = element_maps
        .iter()
        .map(|m| {
            g.conjugacy_classes()
                .iter()
                .map(|c| g.class_of(m[c.representative as usize]))
                .collect()
        })
        .collect();
    AutGroup {
        generators,
        maps,
        element_maps,
        inner,
        inner_count: g.order() / center,
        class_action,
    }
}

/// Automorphisms fixing each listed class (by index) setwise.
pub fn aut_fixing_classes(a: &AutGroup, classes: &[usize]) -> AutGroup {
    let keep: Vec<usize> = (0..a.order())
        .filter(|&i| classes.iter().all(|&c| a.class_action[i][c] == c))
        .collect();
    a.select(&keep)
}

/// An isomorphism `src → dst` as an element map, if one exists.
pub fn find_isomorphism(src: &FiniteGroup, dst: &FiniteGroup) -> Option<Vec<ElemId>> {
    if src.order() != dst.order() {
        return None;
    }
    let generators = src.subgroup_generators(&src.full_set());
    homomorphism_search(src, dst, &generators, true, true)
        .into_iter()
        .next()
}

/// Backtracking over images of `gens`, constrained by element order and
/// class size; every surviving map is checked on all edges of the Cayley
/// graph. Results are sorted by generator images.
fn homomorphism_search(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    gens: &[ElemId],
    bijective: bool,
    first_only: bool,
) -> Vec<Vec<ElemId>> {
    if gens.is_empty() {
        return vec![vec![IDENTITY; src.order()]];
    }
    let class_size = |h: &FiniteGroup, x: ElemId| h.conjugacy_classes()[h.class_of(x)].size();
    let candidates: Vec<Vec<ElemId>> = gens
        .iter()
        .map(|&x| {
            (0..dst.order() as ElemId)
                .filter(|&y| {
                    dst.element_order(y) == src.element_order(x)
                        && (!bijective || class_size(dst, y) == class_size(src, x))
                })
                .collect()
        })
        .collect();
    let tree = spanning_tree(src, gens);
    let search = |first: ElemId| -> Vec<Vec<ElemId>> {
        let mut out = Vec::new();
        let mut images = vec![first];
        extend_images(src, dst, gens, &candidates, &tree, bijective, first_only, &mut images, &mut out);
        out
    };
    let mut found: Vec<Vec<ElemId>> = if first_only {
        candidates[0]
            .par_iter()
            .map(|&y| search(y))
            .find_map_first(|v| v.into_iter().next())
            .into_iter()
            .collect()
    } else {
        candidates[0].par_iter().flat_map_iter(|&y| search(y)).collect()
    };
    found.sort_by_cached_key(|m| gens.iter().map(|&x| m[x as usize]).collect::<Vec<_>>());
    found
}

/// BFS tree of the Cayley graph: `(element, parent, generator index)`.
pub(crate) fn spanning_tree(g: &FiniteGroup, gens: &[ElemId]) -> Vec<(ElemId, ElemId, usize)> {
    let mut seen = ElementSet::empty(g.order());
    seen.insert(IDENTITY);
    let mut order = vec![(IDENTITY, IDENTITY, usize::MAX)];
    let mut k = 0;
    while k < order.len() {
        let x = order[k].0;
        for (j, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if seen.insert(y) {
                order.push((y, x, j));
            }
        }
        k += 1;
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend_images(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    gens: &[ElemId],
    candidates: &[Vec<ElemId>],
    tree: &[(ElemId, ElemId, usize)],
    bijective: bool,
    first_only: bool,
    images: &mut Vec<ElemId>,
    out: &mut Vec<Vec<ElemId>>,
) {
    let d = images.len();
    if d == gens.len() {
        if let Some(m) = complete_map(src, dst, gens, tree, images, bijective) {
            out.push(m);
        }
        return;
    }
    for &y in &candidates[d] {
        if !words_consistent(src, dst, gens, images, d, y) {
            continue;
        }
        images.push(y);
        extend_images(src, dst, gens, candidates, tree, bijective, first_only, images, out);
        images.pop();
        if first_only && !out.is_empty() {
            return;
        }
    }
}

/// Orders of short words in generator `d` and each earlier generator.
fn words_consistent(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    gens: &[ElemId],
    images: &[ElemId],
    d: usize,
    y: ElemId,
) -> bool {
    let x = gens[d];
    (0..d).all(|i| {
        let (a, b) = (gens[i], images[i]);
        src.element_order(src.mul(a, x)) == dst.element_order(dst.mul(b, y))
            && src.element_order(src.mul(a, src.inv(x))) == dst.element_order(dst.mul(b, dst.inv(y)))
            && src.element_order(src.commutator(a, x)) == dst.element_order(dst.commutator(b, y))
            && src.element_order(src.mul(src.mul(a, x), x))
                == dst.element_order(dst.mul(dst.mul(b, y), y))
    })
}

fn complete_map(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    gens: &[ElemId],
    tree: &[(ElemId, ElemId, usize)],
    images: &[ElemId],
    bijective: bool,
) -> Option<Vec<ElemId>> {
    if tree.len() != src.order() {
        return None;
    }
    let mut map = vec![IDENTITY; src.order()];
    for &(x, parent, j) in &tree[1..] {
        map[x as usize] = dst.mul(map[parent as usize], images[j]);
    }
    for x in 0..src.order() as ElemId {
        for (j, &s) in gens.iter().enumerate() {
            if map[src.mul(x, s) as usize] != dst.mul(map[x as usize], images[j]) {
                return None;
            }
        }
    }
    if bijective {
        let mut hit = ElementSet::empty(dst.order());
        if !map.iter().all(|&y| hit.insert(y)) {
            return None;
        }
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::perm::Permutation;

    fn class_by_type(g: &FiniteGroup, cycle_type: &[u32]) -> usize {
        let hits: Vec<usize> = (0..g.conjugacy_classes().len())
            .filter(|&i| g.element(g.conjugacy_classes()[i].representative).cycle_type() == cycle_type)
            .collect();
        assert_eq!(hits.len(), 1);
        hits[0]
    }

    #[test]
    fn ambiguity_in_s5() {
        let g = catalog::symmetric(5);
        assert!(is_ambiguous(&g, class_by_type(&g, &[5])));
        assert!(!is_ambiguous(&g, class_by_type(&g, &[2, 1, 1, 1])));
    }

    #[test]
    fn ambiguity_in_pgl27() {
        let g = catalog::pgl2(7);
        for (i, c) in g.conjugacy_classes().iter().enumerate() {
            assert_eq!(is_ambiguous(&g, i), c.element_order == 7, "class {i}");
        }
    }

    #[test]
    fn both_ambiguity_formulations_agree() {
        for g in [catalog::symmetric(5), catalog::symmetric(6), catalog::pgl2(7)] {
            for i in 0..g.conjugacy_classes().len() {
                assert_eq!(is_ambiguous(&g, i), is_ambiguous_by_centralizer(&g, i));
            }
        }
    }

    #[test]
    fn pseudosimplicity() {
        let v = is_pseudosimple(&catalog::symmetric(5));
        assert!(v.pseudosimple);
        assert_eq!(v.simple_factor_count, Some(1));
        assert!(is_pseudosimple(&catalog::alternating(5)).pseudosimple);
        assert!(is_pseudosimple(&catalog::pgl2(7)).pseudosimple);
        let s4 = is_pseudosimple(&catalog::symmetric(4));
        assert_eq!(s4.reason, Some(PseudosimpleFailure::NonabelianProperQuotient));
        let s3 = is_pseudosimple(&catalog::symmetric(3));
        assert_eq!(s3.reason, Some(PseudosimpleFailure::DerivedAbelian));
        let z3 = FiniteGroup::from_generators(3, vec!["(1 2 3)".parse().unwrap()]).unwrap();
        assert_eq!(
            is_pseudosimple(&z3).reason,
            Some(PseudosimpleFailure::CenterNontrivial)
        );
    }

    #[test]
    fn wreath_product_of_a5_is_pseudosimple_with_two_factors() {
        // A5 wr C2 on 10 points: derived group A5 x A5, swapped by the top
        let a: Permutation = "(1 2 3)".parse::<Permutation>().unwrap();
        let gens = vec![
            a.shifted(0, 10),
            "(3 4 5)".parse::<Permutation>().unwrap().shifted(0, 10),
            Permutation::parse_cycles("(1 6)(2 7)(3 8)(4 9)(5 10)", 10).unwrap(),
        ];
        let g = FiniteGroup::from_generators(10, gens).unwrap();
        assert_eq!(g.order(), 7200);
        let v = is_pseudosimple(&g);
        assert!(v.pseudosimple, "{v:?}");
        assert_eq!(v.simple_factor_count, Some(2));
        assert_eq!(v.simple_factor_order, Some(60));
    }

    #[test]
    fn rationality() {
        let s5 = catalog::symmetric(5);
        assert!((0..7).all(|i| is_rational_class(&s5, i)));
        let a5 = catalog::alternating(5);
        let fives: Vec<usize> = (0..5)
            .filter(|&i| a5.conjugacy_classes()[i].element_order == 5)
            .collect();
        assert_eq!(fives.len(), 2);
        assert!(fives.iter().all(|&i| !is_rational_class(&a5, i)));
        assert!(is_rational_class(&a5, 0));
    }

    #[test]
    fn sections() {
        assert!(abelianization_section(&catalog::symmetric(5)).is_some());
        assert!(abelianization_section(&catalog::pgl2(7)).is_some());
        assert_eq!(abelianization_section(&catalog::alternating(5)), Some(vec![]));
        let z4 = FiniteGroup::from_generators(4, vec!["(1 2 3 4)".parse().unwrap()]).unwrap();
        assert!(abelianization_section(&z4).is_some());
        let r = type_report(&catalog::symmetric(6));
        assert!(r.split_cyclic());
    }

    #[test]
    fn nonsplit_abelianization() {
        // Q8: G^ab = C2 x C2 has no complement, since every element outside
        // the center has order 4
        let q8 = FiniteGroup::from_generators(
            8,
            vec![
                Permutation::parse_cycles("(1 2 3 4)(5 6 7 8)", 8).unwrap(),
                Permutation::parse_cycles("(1 5 3 7)(2 8 4 6)", 8).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.abelianization().invariants, vec![2, 2]);
        assert!(abelianization_section(&q8).is_none());
    }

    #[test]
    fn automorphism_groups() {
        let s5 = automorphism_group(&catalog::symmetric(5));
        assert_eq!(s5.order(), 120);
        assert_eq!(s5.inner_count, 120);
        assert!(s5.inner.iter().all(|&b| b));
        let a5 = automorphism_group(&catalog::alternating(5));
        assert_eq!(a5.order(), 120);
        assert_eq!(a5.inner_count, 60);
        let s6 = automorphism_group(&catalog::symmetric(6));
        assert_eq!(s6.order(), 1440);
        assert_eq!(s6.inner_count, 720);
    }

    #[test]
    fn automorphisms_compose() {
        let g = catalog::alternating(5);
        let a = automorphism_group(&g);
        let keys: HashSet<&Vec<ElemId>> = a.element_maps.iter().collect();
        for m in &a.element_maps[..10] {
            for n in &a.element_maps {
                let composed: Vec<ElemId> = (0..g.order()).map(|x| n[m[x] as usize]).collect();
                assert!(keys.contains(&composed));
            }
            let mut inverse = vec![0; g.order()];
            for (x, &y) in m.iter().enumerate() {
                inverse[y as usize] = x as ElemId;
            }
            assert!(keys.contains(&inverse));
        }
        // inner maps form a normal subgroup
        let inner: Vec<&Vec<ElemId>> = (0..a.order()).filter(|&i| a.inner[i]).map(|i| &a.element_maps[i]).collect();
        let inner_keys: HashSet<&Vec<ElemId>> = inner.iter().copied().collect();
        for n in &a.element_maps {
            let mut n_inv = vec![0; g.order()];
            for (x, &y) in n.iter().enumerate() {
                n_inv[y as usize] = x as ElemId;
            }
            for m in inner.iter().take(5) {
                let conj: Vec<ElemId> = (0..g.order()).map(|x| n[m[n_inv[x] as usize] as usize]).collect();
                assert!(inner_keys.contains(&conj));
            }
        }
    }

    #[test]
    fn class_fixing_automorphisms() {
        let g = catalog::symmetric(6);
        let a = automorphism_group(&g);
        let t = class_by_type(&g, &[2, 1, 1, 1, 1]);
        let six = class_by_type(&g, &[6]);
        let fixed = aut_fixing_classes(&a, &[t, six]);
        assert_eq!(fixed.order(), 720);
        assert_eq!(fixed.out_order(), 1);
        assert_eq!(aut_fixing_classes(&a, &[]).order(), 1440);
        let s5 = catalog::symmetric(5);
        let a5 = automorphism_group(&s5);
        assert_eq!(aut_fixing_classes(&a5, &[1, 3]).order(), 120);
    }

    #[test]
    fn isomorphisms() {
        let iso = find_isomorphism(&catalog::pgl2(5), &catalog::symmetric(5)).unwrap();
        let (p, s) = (catalog::pgl2(5), catalog::symmetric(5));
        for x in 0..120u32 {
            for y in 0..120u32 {
                assert_eq!(iso[p.mul(x, y) as usize], s.mul(iso[x as usize], iso[y as usize]));
            }
        }
        assert!(find_isomorphism(&catalog::alternating(5), &catalog::symmetric(5)).is_none());
        assert!(find_isomorphism(&catalog::symmetric(5), &catalog::pgl2(7)).is_none());
    }

    #[test]
    fn names() {
        let names = class_names(&catalog::symmetric(5));
        assert_eq!(names, vec!["11111", "2111", "221", "311", "41", "5", "32"]);
        let a5 = class_names(&catalog::alternating(5));
        assert!(a5.contains(&"5a".to_string()) && a5.contains(&"5b".to_string()));
    }
}
