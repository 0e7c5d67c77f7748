#![allow(dead_code)]

use std::sync::Arc;

use hurwitz_core::covers::{CentralExtension, LiftingMap};
use hurwitz_core::fixtures;
use hurwitz_core::hurwitz::{
    build_fiber, enumerate_tuples, validate_parameter, ActingGroup, Fiber, FiberMode, HurwitzParameter, TupleSet,
    DEFAULT_TUPLE_BUDGET,
};
use hurwitz_core::monodromy::braid_generator_permutations;
use hurwitz_core::{catalog, FiniteGroup, Permutation};

pub fn class_by_type(g: &FiniteGroup, cycle_type: &[u32]) -> usize {
    let hits: Vec<usize> = (0..g.conjugacy_classes().len())
        .filter(|&i| g.element(g.conjugacy_classes()[i].representative).cycle_type() == cycle_type)
        .collect();
    assert_eq!(hits.len(), 1, "{cycle_type:?}");
    hits[0]
}

pub fn cycle_type(g: &FiniteGroup, class: usize) -> Vec<u32> {
    g.element(g.conjugacy_classes()[class].representative).cycle_type()
}

/// `(S₅, (C₂₁₁₁, [C₃₁₁,] C₅), ν)`.
pub fn s5_param(nu: &[usize]) -> HurwitzParameter {
    let s5 = Arc::new(catalog::symmetric(5));
    let t = class_by_type(&s5, &[2, 1, 1, 1]);
    let c3 = class_by_type(&s5, &[3, 1, 1]);
    let c5 = class_by_type(&s5, &[5]);
    let classes = if nu.len() == 2 { vec![t, c5] } else { vec![t, c3, c5] };
    validate_parameter(s5, classes, nu.to_vec()).unwrap()
}

pub fn a5_param(n: usize) -> HurwitzParameter {
    let a5 = sl25().base_arc().clone();
    let c3 = class_by_type(&a5, &[3, 1, 1]);
    validate_parameter(a5, vec![c3], vec![n]).unwrap()
}

pub fn tuples(h: &HurwitzParameter) -> TupleSet {
    enumerate_tuples(h, DEFAULT_TUPLE_BUDGET).unwrap()
}

pub fn fiber(h: &HurwitzParameter, tuples: &TupleSet, mode: FiberMode) -> Fiber {
    build_fiber(h, tuples, ActingGroup::for_mode(h, mode), mode)
}

pub fn generators(f: &Fiber) -> Vec<Permutation> {
    braid_generator_permutations(f).unwrap().into_iter().map(|x| x.1).collect()
}

pub fn two_s5() -> CentralExtension {
    fixtures::double_s5().unwrap().load().unwrap()
}

pub fn two_s6() -> CentralExtension {
    fixtures::double_s6().unwrap().load().unwrap()
}

pub fn sl25() -> CentralExtension {
    fixtures::sl2_5().unwrap().load().unwrap()
}

pub fn two_pgl27() -> CentralExtension {
    fixtures::double_pgl2_7().unwrap().load().unwrap()
}

pub fn a5_lifting(h: &HurwitzParameter) -> LiftingMap {
    let reduced = sl25().reduce(h.classes()).unwrap();
    LiftingMap::new(&reduced, h).unwrap()
}

pub fn bundled_groups() -> Vec<(&'static str, FiniteGroup)> {
    ["S5", "S6", "A5", "PGL2(7)"]
        .into_iter()
        .map(|n| (n, catalog::by_name(n).unwrap()))
        .collect()
}
