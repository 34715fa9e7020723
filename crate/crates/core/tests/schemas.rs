use std::sync::Arc;

use deloop_core::algebra::json::{from_json, to_json};
use deloop_core::algebra::{dual_numbers, group_algebra_cyclic, matrix_algebra, truncated_poly};
use deloop_core::harness::suites::{cocycle_suite, ideal_suite, lattice_suite, product_suite, rng, suite_rings};
use deloop_core::jacobi::random::{operator, OperatorParams};
use deloop_core::jacobi::{operator_from_json, operator_to_json, OperatorJson};
use deloop_core::report::HomologyReport;
use proptest::prelude::*;

#[test]
fn algebra_json_round_trips() {
    let algebras = [
        dual_numbers(),
        truncated_poly(3).unwrap(),
        group_algebra_cyclic(3).unwrap(),
        matrix_algebra(&dual_numbers(), 2).unwrap(),
    ];
    for a in algebras {
        let s = to_json(&a);
        let back = from_json(&s).unwrap();
        assert_eq!(back, a);
        assert_eq!(to_json(&back), s);
    }
}

#[test]
fn homology_report_round_trips() {
    let r = HomologyReport {
        label: "H(gl_2(k))".into(),
        dims: [(0, 1), (1, 1)].into_iter().collect(),
        prim_dims: Some([(1, 1)].into_iter().collect()),
        ..Default::default()
    };
    let back: HomologyReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.to_json(), r.to_json());
}

#[test]
fn inline_ring_is_kept_when_label_is_unknown() {
    let mut raw: serde_json::Value = serde_json::from_str(&to_json(&dual_numbers())).unwrap();
    raw["label"] = "my ring".into();
    let ring = Arc::new(from_json(&raw.to_string()).unwrap());
    let a = operator(&mut rng(1, 0), &ring, &OperatorParams::default());
    let s = operator_to_json(&a);
    let parsed: OperatorJson = serde_json::from_str(&s).unwrap();
    assert!(matches!(parsed.ring, deloop_core::jacobi::RingSpec::Inline(_)));
    assert_eq!(operator_from_json(&s).unwrap(), a);
}

#[test]
fn verdicts_do_not_depend_on_seed() {
    for seed in [0, 1, 7, 1729, u64::MAX] {
        assert!(cocycle_suite(seed, 30).unwrap().passed(), "seed {seed}");
        assert!(ideal_suite(seed, 30, 15).unwrap().passed(), "seed {seed}");
        assert!(product_suite(seed, 30, 30).unwrap().passed(), "seed {seed}");
        assert!(lattice_suite(seed, 30).passed(), "seed {seed}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn operator_json_round_trips(seed in any::<u64>(), ring in 0usize..3) {
        let rings = suite_rings();
        let a = operator(&mut rng(seed, 1), &rings[ring], &OperatorParams::default());
        let s = operator_to_json(&a);
        let back = operator_from_json(&s).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(operator_to_json(&back), s);
    }
}
