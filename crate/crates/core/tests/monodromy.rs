mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;

use hurwitz_core::analysis::{aut_fixing_classes, automorphism_group};
use hurwitz_core::catalog;
use hurwitz_core::covers::LiftingMap;
use hurwitz_core::hurwitz::{full_braid_partition, validate_parameter, BraidWord, FiberMode};
use hurwitz_core::monodromy::{
    braid_orbits, conway_parker_report, jordan_witness, mass_report, monodromy_report, orbit_verdict,
    MonodromyOptions,
};
use hurwitz_core::Permutation;

use common::*;

#[test]
fn degree_25_generators_are_transitive() {
    let h = s5_param(&[4, 1]);
    let f = fiber(&h, &tuples(&h), FiberMode::AutGC);
    assert_eq!(braid_orbits(f.len(), &generators(&f)).count(), 1);
    assert!(f.induced_permutation(&BraidWord::identity()).unwrap().is_identity());
    let w = BraidWord { letters: vec![1, 2, -3, 1, 2] };
    let p = f.induced_permutation(&w).unwrap();
    let q = f.induced_permutation(&w.inverse()).unwrap();
    assert!(p.compose(&q).is_identity());
}

#[test]
fn degree_25_action_is_free() {
    // |F_h| * |Aut(G,C)| = |G_h| for centerless G acting freely
    let h = s5_param(&[4, 1]);
    let ts = tuples(&h);
    let f = fiber(&h, &ts, FiberMode::AutGC);
    assert_eq!(ts.len(), 3000);
    assert_eq!(f.len() * f.acting().order(), ts.len());
}

#[test]
fn imprimitive_170() {
    let h = s5_param(&[2, 1, 2]);
    let f = fiber(&h, &tuples(&h), FiberMode::AutGC);
    let r = monodromy_report(&f, generators(&f), &MonodromyOptions::default());
    assert_eq!(r.fiber_size, 170);
    assert_eq!(r.orbits.count(), 1);
    assert_eq!(r.per_orbit[0].full, Some(false));
    assert_eq!(r.quasi_full, Some(false));
    let b = r.per_orbit[0].blocks.as_ref().unwrap();
    assert_eq!((b.block_count, b.block_size), (2, 85));
}

#[test]
fn rigid_triple_has_one_point() {
    let a5 = Arc::new(catalog::alternating(5));
    let c2 = class_by_type(&a5, &[2, 2, 1]);
    let c3 = class_by_type(&a5, &[3, 1, 1]);
    let c5 = (0..a5.conjugacy_classes().len())
        .find(|&c| cycle_type(&a5, c) == [5])
        .unwrap();
    let h = validate_parameter(a5, vec![c2, c3, c5], vec![1, 1, 1]).unwrap();
    let f = fiber(&h, &tuples(&h), FiberMode::Inn);
    assert_eq!(f.len(), 1);
    let r = monodromy_report(&f, generators(&f), &MonodromyOptions::default());
    assert_eq!(r.orbits.count(), 1);
    assert_eq!(r.group_order, Some(BigUint::from(1u32)));
    assert_eq!(r.quasi_full, Some(true));
}

#[test]
fn full_braid_group_cross_check() {
    for h in [s5_param(&[4, 1]), s5_param(&[2, 1, 2]), a5_param(4), a5_param(5)] {
        for mode in [FiberMode::Inn, FiberMode::AutGC] {
            let f = fiber(&h, &tuples(&h), mode);
            let orbits = braid_orbits(f.len(), &generators(&f));
            assert_eq!(full_braid_partition(&f, 1 << 22).unwrap(), orbits.orbit_of, "{:?} {mode:?}", h.nu());
        }
    }
}

#[test]
fn fullness_agrees_with_jordan_witness() {
    let opts = MonodromyOptions::default();
    let mut checked = 0;
    for h in [s5_param(&[4, 1]), a5_param(4), a5_param(5), s5_param(&[2, 2])] {
        for mode in [FiberMode::Inn, FiberMode::AutGC] {
            let f = fiber(&h, &tuples(&h), mode);
            let gens = generators(&f);
            for o in braid_orbits(f.len(), &gens).orbits {
                if !(8..=40).contains(&o.len()) {
                    continue;
                }
                let v = orbit_verdict(&o, &gens, &opts).unwrap();
                let w = jordan_witness(&o, &gens, 2000, 7);
                assert_eq!(v.full, Some(w.is_some()), "orbit of size {}", o.len());
                checked += 1;
            }
        }
    }
    assert!(checked >= 2);
}

#[test]
fn order_is_stable_under_generator_order() {
    let h = a5_param(5);
    let f = fiber(&h, &tuples(&h), FiberMode::AutGC);
    let mut gens = generators(&f);
    let a = monodromy_report(&f, gens.clone(), &MonodromyOptions::default());
    gens.reverse();
    let b = monodromy_report(&f, gens, &MonodromyOptions { seed: 99, ..MonodromyOptions::default() });
    assert_eq!(a.group_order, b.group_order);
    let order = a.group_order.unwrap();
    for s in a.orbits.sizes() {
        assert_eq!(&order % BigUint::from(s), BigUint::from(0u32));
    }
}

#[test]
fn inner_fiber_of_a5_is_a_double_of_the_outer_one() {
    let h = a5_param(5);
    let inn = fiber(&h, &tuples(&h), FiberMode::Inn);
    let aut = fiber(&h, &tuples(&h), FiberMode::AutGC);
    assert_eq!(inn.len(), 2 * aut.len());
    let r = monodromy_report(&inn, generators(&inn), &MonodromyOptions::default());
    assert!(!r.truncated);
    assert_eq!(r.orbits.sizes(), vec![252, 432]);
    for v in &r.per_orbit {
        let b = v.blocks.as_ref().unwrap();
        assert_eq!(b.block_size, 2);
        assert_eq!(v.full, Some(false));
    }
}

#[test]
fn conway_parker_examples() {
    // trivial reduced cover over S5 for the degree-25 parameter
    let h = s5_param(&[4, 1]);
    let ts = tuples(&h);
    let f = fiber(&h, &ts, FiberMode::Inn);
    let reduced = two_s5().reduce(h.classes()).unwrap();
    assert_eq!(reduced.kernel_order(), 1);
    let labels = LiftingMap::new(&reduced, &h).unwrap().labels(f.points()).unwrap();
    let orbits = braid_orbits(f.len(), &generators(&f)).with_point_labels(&labels).unwrap();
    let r = conway_parker_report(&orbits).unwrap();
    assert_eq!((r.orbit_count, r.label_count, r.bijective), (1, 1, true));

    // small n: whatever holds is recorded
    let h = a5_param(3);
    let f = fiber(&h, &tuples(&h), FiberMode::Inn);
    let labels = a5_lifting(&h).labels(f.points()).unwrap();
    let orbits = braid_orbits(f.len(), &generators(&f)).with_point_labels(&labels).unwrap();
    let r = conway_parker_report(&orbits).unwrap();
    assert!(r.orbit_count >= r.label_count);
}

#[test]
fn mass_examples() {
    let h = s5_param(&[4, 1]);
    let f = fiber(&h, &tuples(&h), FiberMode::AutGC);
    let aut = aut_fixing_classes(&automorphism_group(h.group()), h.classes()).order();
    let r = mass_report(&h, aut, Some(f.len()), Some(f.len()), None);
    assert!((r.predicted_aut - 1e4 * 24.0 / (60.0 * 120.0)).abs() < 1e-9);
    assert!((r.ratio_aut.unwrap() - 4.0 / 3.0).abs() < 1e-9);

    let h = a5_param(3);
    let f = fiber(&h, &tuples(&h), FiberMode::Inn);
    assert_eq!(f.len(), 0);
    let r = mass_report(&h, 120, Some(0), Some(0), None);
    assert!(r.ratio_inn.is_none() && r.ratio_aut.is_none());
    assert!(r.note.is_some());
}

#[test]
fn label_shares_follow_the_refined_mass() {
    let h = a5_param(6);
    let f = fiber(&h, &tuples(&h), FiberMode::Inn);
    let labels = a5_lifting(&h).labels(f.points()).unwrap();
    let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
    for l in labels {
        *sizes.entry(l).or_default() += 1;
    }
    let sizes: Vec<(u32, usize)> = sizes.into_iter().collect();
    let r = mass_report(&h, 120, Some(f.len()), None, Some((&sizes, 2)));
    let per = r.per_label.unwrap();
    assert_eq!(per.len(), 2);
    for l in per {
        let share = (l.actual as f64 - l.predicted).abs() / l.predicted;
        assert!(share <= 0.15, "label {}: {} vs {}", l.label, l.actual, l.predicted);
    }
}

#[test]
fn permutation_conjugation_example() {
    let g = Permutation::parse_cycles("(1 2 3 4 5)", 5).unwrap();
    let h = Permutation::parse_cycles("(1 2)", 5).unwrap();
    assert_eq!(g.conjugate_by(&h), Permutation::parse_cycles("(1 3 4 5 2)", 5).unwrap());
}
