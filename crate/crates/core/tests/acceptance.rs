//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hurwitz_core::analysis;
use hurwitz_core::covers::{symmetric_class_kind, Kind};
use hurwitz_core::fiberpower::goursat_sweep;
use hurwitz_core::hurwitz::{apply_word_ids, full_braid_partition, BraidWord, FiberMode};
use hurwitz_core::monodromy::{
    braid_orbits, conway_parker_report, factorial, mass_report, monodromy_report, MonodromyOptions,
};
use hurwitz_core::ElemId;

use common::*;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn degree_25() -> Outcome {
    let h = s5_param(&[4, 1]);
    let f = fiber(&h, &tuples(&h), FiberMode::AutGC);
    let r = monodromy_report(&f, generators(&f), &MonodromyOptions::default());
    let order = r.group_order.clone().ok_or("no group order")?;
    ensure(r.fiber_size == 25, format!("fiber size {}", r.fiber_size))?;
    ensure(r.orbits.count() == 1, format!("{} orbits", r.orbits.count()))?;
    let full = factorial(25);
    ensure(order == full || order.clone() * 2u32 == full, format!("order {order}"))?;
    Ok(format!("|F*| = 25, transitive, order {}", if order == full { "25!" } else { "25!/2" }))
}

fn contrasting_pair() -> Outcome {
    let h = s5_param(&[2, 2, 1]);
    let f = fiber(&h, &tuples(&h), FiberMode::AutGC);
    let r = monodromy_report(&f, generators(&f), &MonodromyOptions::default());
    ensure(r.fiber_size == 125, format!("fiber size {}", r.fiber_size))?;
    ensure(r.group_order == Some(factorial(125)), "order is not 125!")?;

    let h = s5_param(&[2, 1, 2]);
    let f = fiber(&h, &tuples(&h), FiberMode::AutGC);
    let r = monodromy_report(&f, generators(&f), &MonodromyOptions::default());
    ensure(r.fiber_size == 170, format!("fiber size {}", r.fiber_size))?;
    ensure(r.orbits.count() == 1, format!("{} orbits", r.orbits.count()))?;
    let blocks = r.per_orbit[0].blocks.as_ref().ok_or("no block system")?;
    ensure(
        blocks.block_count == 2 && blocks.block_size == 85,
        format!("blocks {}x{}", blocks.block_count, blocks.block_size),
    )?;
    let f85 = factorial(85);
    ensure(r.group_order == Some(f85.clone() * f85 * 2u32), "order is not 2*(85!)^2")?;
    Ok("125 -> 125!, 170 -> 2 blocks of 85, 2*(85!)^2".into())
}

fn classification() -> Outcome {
    for e in [two_s5(), two_s6()] {
        let g = e.base();
        let kinds = e.classify_all().map_err(|x| x.to_string())?;
        for (c, k) in kinds.iter().enumerate().skip(1) {
            let ct = cycle_type(g, c);
            ensure(k.kind == symmetric_class_kind(&ct), format!("S{} class {ct:?}: {:?}", g.degree(), k.kind))?;
        }
    }
    let e = two_s6();
    let kinds = e.classify_all().map_err(|x| x.to_string())?;
    let mixed: Vec<Vec<u32>> = (1..kinds.len())
        .filter(|&c| kinds[c].kind == Kind::Mixed)
        .map(|c| cycle_type(e.base(), c))
        .collect();
    ensure(mixed == vec![vec![4, 2]], format!("mixed classes {mixed:?}"))?;

    let e = two_pgl27();
    let g = e.base();
    let kinds = e.classify_all().map_err(|x| x.to_string())?;
    for (c, k) in kinds.iter().enumerate().skip(1) {
        let order = g.element_order(g.conjugacy_classes()[c].representative);
        let want = match order {
            7 => Kind::Ambiguous,
            2 => Kind::Inert,
            _ => Kind::Split,
        };
        ensure(k.kind == want, format!("PGL2(7) order-{order} class: {:?}", k.kind))?;
    }
    Ok("S5, S6 partition table; S6 mixed = {C42}; PGL2(7) rule".into())
}

fn condition_e() -> Outcome {
    let e = two_pgl27();
    let g = e.base();
    let classes: Vec<usize> = (1..g.conjugacy_classes().len())
        .filter(|&c| !analysis::is_ambiguous(g, c))
        .collect();
    let mut lists = 0;
    for mask in 1u32..(1 << classes.len()) {
        let list: Vec<usize> = (0..classes.len()).filter(|&i| mask >> i & 1 == 1).map(|i| classes[i]).collect();
        let by_pairing = e.condition_e(&list).map_err(|x| x.to_string())?.holds;
        let by_rule = e.condition_e_by_classification(&list).map_err(|x| x.to_string())?;
        ensure(by_pairing && by_rule, format!("PGL2(7) {list:?}: pairing {by_pairing}, rule {by_rule}"))?;
        lists += 1;
    }
    let e = two_s6();
    let g = e.base();
    let c42 = class_by_type(g, &[4, 2]);
    let c33 = class_by_type(g, &[3, 3]);
    let c2 = class_by_type(g, &[2, 1, 1, 1, 1]);
    for (list, want) in [(vec![c42, c33], false), (vec![c42, c2], true)] {
        let by_pairing = e.condition_e(&list).map_err(|x| x.to_string())?.holds;
        let by_rule = e.condition_e_by_classification(&list).map_err(|x| x.to_string())?;
        ensure(
            by_pairing == want && by_rule == want,
            format!("S6 {list:?}: pairing {by_pairing}, rule {by_rule}"),
        )?;
    }
    Ok(format!("PGL2(7) {lists} lists hold; S6 (42,33) fails, (42,2111) holds; routes agree"))
}

fn conway_parker() -> Outcome {
    let mut out = Vec::new();
    for n in [5, 6] {
        let h = a5_param(n);
        let ts = tuples(&h);
        let f = fiber(&h, &ts, FiberMode::Inn);
        let lm = a5_lifting(&h);
        let labels = lm.labels(f.points()).map_err(|x| x.to_string())?;
        let orbits = braid_orbits(f.len(), &generators(&f));
        let cross = full_braid_partition(&f, 10_000_000).map_err(|x| x.to_string())?;
        ensure(cross == orbits.orbit_of, format!("n={n}: Br_n cross-check differs"))?;
        let orbits = orbits
            .with_point_labels(&labels)
            .map_err(|i| format!("n={n}: labels not constant on orbit {i}"))?;
        let r = conway_parker_report(&orbits).ok_or("no labels")?;
        ensure(
            r.orbit_count == 2 && r.label_count == 2 && r.bijective,
            format!("n={n}: {} orbits, {} labels, bijective {}", r.orbit_count, r.label_count, r.bijective),
        )?;
        out.push(format!("n={n} {:?}", orbits.sizes()));
    }
    Ok(format!("2 orbits <-> 2 labels: {}", out.join(", ")))
}

fn mass() -> Outcome {
    let h = a5_param(6);
    let f = fiber(&h, &tuples(&h), FiberMode::Inn);
    let aut = analysis::aut_fixing_classes(&analysis::automorphism_group(h.group()), h.classes()).order();
    let r = mass_report(&h, aut, Some(f.len()), None, None);
    let predicted = 20f64.powi(6) / 3600.0;
    ensure((r.predicted_inn - predicted).abs() < 1e-6, format!("predicted {}", r.predicted_inn))?;
    let dev = (f.len() as f64 - predicted).abs() / predicted;
    ensure(dev <= 0.10, format!("|F_h| = {} vs {predicted:.1}: {:.2}%", f.len(), dev * 100.0))?;

    let h25 = s5_param(&[4, 1]);
    let f25 = fiber(&h25, &tuples(&h25), FiberMode::AutGC);
    let aut25 = analysis::aut_fixing_classes(&analysis::automorphism_group(h25.group()), h25.classes()).order();
    let r25 = mass_report(&h25, aut25, None, Some(f25.len()), None);
    Ok(format!(
        "|F_h| = {} vs {predicted:.1} ({:.2}%); degree 25: {:.2}/{} = {:.4}",
        f.len(),
        dev * 100.0,
        r25.predicted_aut,
        f25.len(),
        r25.ratio_aut.unwrap_or(f64::NAN)
    ))
}

fn goursat() -> Outcome {
    let h = s5_param(&[4, 1]);
    let f = fiber(&h, &tuples(&h), FiberMode::AutGC);
    let r = goursat_sweep(&f).map_err(|x| x.to_string())?;
    ensure(
        r.points == 25 && r.matches_distinctness,
        format!(
            "distinct {}/{}, diagonal {}/{}",
            r.distinct_true, r.distinct_pairs, r.diagonal_true, r.diagonal_pairs
        ),
    )?;
    Ok(format!("{}/{} distinct true, {}/{} diagonal true", r.distinct_true, r.distinct_pairs, r.diagonal_true, r.diagonal_pairs))
}

const SAMPLES: usize = 1000;

fn random_word(rng: &mut ChaCha8Rng, strands: usize, len: usize) -> BraidWord {
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord { letters }
}

fn braid_relations(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for (name, g) in bundled_groups() {
        let n = 6;
        for _ in 0..SAMPLES {
            let t: Vec<ElemId> = (0..n).map(|_| rng.gen_range(0..g.order() as u32)).collect();
            let run = |letters: &[i32]| {
                let mut u = t.clone();
                apply_word_ids(&g, &mut u, &BraidWord { letters: letters.to_vec() });
                u
            };
            let i = rng.gen_range(1..n as i32 - 1);
            ensure(run(&[i, i + 1, i]) == run(&[i + 1, i, i + 1]), format!("{name}: braid relation at {i}"))?;
            let j = rng.gen_range(1..n as i32);
            if (i - j).abs() >= 2 {
                ensure(run(&[i, j]) == run(&[j, i]), format!("{name}: far commutation {i},{j}"))?;
            }
            ensure(run(&[i, -i]) == t && run(&[-i, i]) == t, format!("{name}: inverse at {i}"))?;
            let w = random_word(rng, n, 20);
            let u = run(&w.letters);
            ensure(g.product(u.iter().copied()) == g.product(t.iter().copied()), format!("{name}: product changed"))?;
            let classes = |v: &[ElemId]| {
                let mut c: Vec<usize> = v.iter().map(|&x| g.class_of(x)).collect();
                c.sort_unstable();
                c
            };
            ensure(classes(&u) == classes(&t), format!("{name}: class multiset changed"))?;
            let mut back = u.clone();
            apply_word_ids(&g, &mut back, &w.inverse());
            ensure(back == t, format!("{name}: word inverse"))?;
        }
    }
    Ok(())
}

fn label_constancy(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let h = a5_param(6);
    let ts = tuples(&h);
    let lm = a5_lifting(&h);
    let g = h.group();
    for _ in 0..SAMPLES {
        let t = ts.get(rng.gen_range(0..ts.len()));
        let l = lm.label(t).map_err(|x| x.to_string())?;
        let mut u = t.to_vec();
        apply_word_ids(g, &mut u, &random_word(rng, h.n(), 50));
        ensure(lm.label(&u).map_err(|x| x.to_string())? == l, "label changed under a braid word")?;
        let c = rng.gen_range(0..g.order() as u32);
        let v: Vec<ElemId> = t.iter().map(|&x| g.conj(x, c)).collect();
        ensure(lm.label(&v).map_err(|x| x.to_string())? == l, "label changed under conjugation")?;
    }
    Ok(())
}

fn canonicalization(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for (h, mode) in [
        (s5_param(&[4, 1]), FiberMode::AutGC),
        (a5_param(5), FiberMode::Inn),
        (a5_param(5), FiberMode::AutGC),
    ] {
        let ts = tuples(&h);
        let f = fiber(&h, &ts, mode);
        let acting = f.acting();
        for _ in 0..SAMPLES {
            let t = ts.get(rng.gen_range(0..ts.len()));
            let c = acting.canonical(t);
            ensure(acting.canonical(&c) == c && acting.is_canonical(&c), "canonical form not idempotent")?;
            let map = &acting.maps()[rng.gen_range(0..acting.order())];
            let moved: Vec<ElemId> = t.iter().map(|&x| map[x as usize]).collect();
            ensure(acting.canonical(&moved) == c, "canonical form not invariant")?;
            ensure(f.locate(&c).is_some(), "canonical form outside the fiber")?;
        }
    }
    Ok(())
}

fn orbit_divisibility(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for h in [s5_param(&[4, 1]), a5_param(5)] {
        let f = fiber(&h, &tuples(&h), FiberMode::Inn);
        let mut gens = generators(&f);
        let r = monodromy_report(&f, gens.clone(), &MonodromyOptions::default());
        let order = r.group_order.clone().ok_or("no group order")?;
        for size in r.orbits.sizes() {
            ensure(&order % BigUint::from(size) == BigUint::from(0u32), format!("orbit {size} does not divide {order}"))?;
        }
        for v in &r.per_orbit {
            let o = v.order.clone().ok_or("no orbit order")?;
            ensure(&o % BigUint::from(v.size) == BigUint::from(0u32), "orbit does not divide its group")?;
            ensure(&order % &o == BigUint::from(0u32), "orbit group order does not divide total")?;
        }
        for k in (1..gens.len()).rev() {
            gens.swap(k, rng.gen_range(0..=k));
        }
        let opts = MonodromyOptions {
            seed: rng.gen(),
            ..MonodromyOptions::default()
        };
        let again = monodromy_report(&f, gens, &opts);
        ensure(again.group_order == r.group_order, "order depends on generator order")?;
    }
    Ok(())
}

fn run_pipeline() -> (Vec<Vec<ElemId>>, Vec<u32>, Vec<u32>, Option<BigUint>, Vec<usize>) {
    let h = a5_param(5);
    let ts = tuples(&h);
    let f = fiber(&h, &ts, FiberMode::Inn);
    let labels = a5_lifting(&h).labels(f.points()).unwrap();
    let r = monodromy_report(&f, generators(&f), &MonodromyOptions::default());
    let h25 = s5_param(&[4, 1]);
    let f25 = fiber(&h25, &tuples(&h25), FiberMode::AutGC);
    let g = goursat_sweep(&f25).unwrap();
    (
        f.points().iter().map(<[ElemId]>::to_vec).collect(),
        labels,
        r.orbits.orbit_of,
        r.group_order,
        vec![g.distinct_true, g.diagonal_true],
    )
}

fn determinism() -> Result<(), String> {
    let runs: Vec<_> = [1, 4]
        .into_iter()
        .map(|threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(run_pipeline)
        })
        .collect();
    ensure(runs[0] == runs[1], "results differ between 1 and 4 threads")
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6875_7277);
    let mut failures = BTreeMap::new();
    let suites: [(&str, &dyn Fn(&mut ChaCha8Rng) -> Result<(), String>); 5] = [
        ("braid relations", &braid_relations),
        ("label constancy", &label_constancy),
        ("canonicalization", &canonicalization),
        ("orbit divisibility", &orbit_divisibility),
        ("determinism", &|_| determinism()),
    ];
    for (name, suite) in suites {
        let start = Instant::now();
        let result = suite(&mut rng);
        eprintln!("  {name}: {:.1}s", start.elapsed().as_secs_f64());
        if let Err(e) = result {
            failures.insert(name, e);
        }
    }
    if failures.is_empty() {
        let names: BTreeSet<&str> = suites.iter().map(|s| s.0).collect();
        Ok(format!("{} suites, 0 failures", names.len()))
    } else {
        Err(format!("{failures:?}"))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("degree-25 cover", degree_25),
        ("fibers 125 and 170", contrasting_pair),
        ("class classification", classification),
        ("condition E", condition_e),
        ("Conway-Parker", conway_parker),
        ("mass formula", mass),
        ("Goursat criterion", goursat),
        ("property suites", properties),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
