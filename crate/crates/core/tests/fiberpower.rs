mod common;

use std::sync::Arc;

use num_bigint::BigUint;

use hurwitz_core::catalog;
use hurwitz_core::fiberpower::{fiber_power_group, fiber_power_order, row_span_check};
use hurwitz_core::hurwitz::FiberMode;

use common::*;

#[test]
fn order_formula() {
    for name in ["S5", "S6", "PGL2(7)"] {
        let g = Arc::new(catalog::by_name(name).unwrap());
        let derived = g.derived_set().len();
        for k in 1..=3 {
            let p = fiber_power_group(g.clone(), k).unwrap();
            let want = BigUint::from(g.order()) * BigUint::from(derived).pow(k as u32 - 1);
            assert_eq!(p.order(), want, "{name} k={k}");
            assert_eq!(p.realized().order(), want);
            assert_eq!(fiber_power_order(&g, k), want);
        }
    }
}

#[test]
fn row_span_examples() {
    let h = s5_param(&[4, 1]);
    let f = fiber(&h, &tuples(&h), FiberMode::AutGC);
    let (a, b) = (f.point(0), f.point(7));
    assert!(row_span_check(&h, &[a, b]).unwrap());
    assert!(!row_span_check(&h, &[a, a]).unwrap());
    for i in 0..f.len() {
        assert!(row_span_check(&h, &[f.point(i)]).unwrap());
    }
    assert!(row_span_check(&h, &[a, b, f.point(11)]).unwrap());
}

#[test]
fn row_span_rejects_foreign_tuples() {
    let h = s5_param(&[4, 1]);
    let f = fiber(&h, &tuples(&h), FiberMode::AutGC);
    let mut t = f.point(0).to_vec();
    t.swap(0, 4);
    assert!(row_span_check(&h, &[&t]).unwrap_err().is_input_error());
    assert!(row_span_check(&h, &[]).unwrap_err().is_input_error());
}
