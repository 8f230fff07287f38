use std::sync::Arc;

use tccc::cellular::GradedDims;
use tccc::divisors::{probe_divisor, DivisorData, PicardGroup};
use tccc::harness::{hom_table_check, run_suite, toric_cohomology, SuiteConfig};
use tccc::lattice_fan::{Fan, RationalVector};
use tccc::linalg::rat;
use tccc::twisted_sheaf::{build_p, stalk_p, torus_hom};

fn fan(name: &str) -> Arc<Fan> {
    Arc::new(Fan::builtin(name).unwrap())
}

fn x(v: &[(i64, i64)]) -> RationalVector {
    RationalVector(v.iter().map(|&(p, q)| rat(p, q)).collect())
}

#[test]
fn p1_interval_shapes() {
    let p1 = fan("P1");
    let closed = DivisorData::from_ints(&p1, &[-1, -1]).unwrap();
    let open = DivisorData::from_ints(&p1, &[1, 1]).unwrap();
    let point = DivisorData::zero(&p1);
    for t in [(-1, 1), (0, 1), (1, 1), (2, 3)] {
        assert_eq!(stalk_p(&closed, &x(&[t])), GradedDims::single(0, 1));
    }
    assert!(stalk_p(&closed, &x(&[(3, 2)])).is_zero());
    for t in [(-1, 1), (1, 1), (7, 4)] {
        assert!(stalk_p(&open, &x(&[t])).is_zero());
    }
    assert_eq!(stalk_p(&open, &x(&[(-1, 3)])), GradedDims::single(-1, 1));
    assert_eq!(stalk_p(&point, &x(&[(0, 1)])), GradedDims::single(0, 1));
    assert!(stalk_p(&point, &x(&[(1, 5)])).is_zero());
}

#[test]
fn p2_anticanonical_triangle() {
    let p2 = fan("P2");
    let d = DivisorData::from_ints(&p2, &[1, 1, 1]).unwrap();
    assert_eq!(build_p(&d).unwrap().counts(), vec![1, 3, 3]);
    assert_eq!(stalk_p(&d, &x(&[(0, 1), (0, 1)])), GradedDims::single(-2, 1));
    assert!(stalk_p(&d, &x(&[(1, 1), (1, 1)])).is_zero());
    assert!(stalk_p(&d, &x(&[(-1, 1), (-1, 1)])).is_zero());
}

#[test]
fn hom_table_small_arrangement() {
    let lines: [(&[i64], i64); 4] = [(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 1), (&[1, -1], 0)];
    let (cells, bad) = hom_table_check(&lines, 2).unwrap();
    assert!(cells >= 20);
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn line_bundles_on_p2() {
    let p2 = fan("P2");
    // O(k) for k = a0 + a1 + a2.
    let h = |a: [i64; 3]| toric_cohomology(&DivisorData::from_ints(&p2, &a).unwrap()).unwrap().total;
    assert_eq!(h([1, 0, 0]), GradedDims::single(0, 3));
    assert_eq!(h([1, 1, 0]), GradedDims::single(0, 6));
    assert!(h([-1, 0, 0]).is_zero());
    assert!(h([-1, -1, 0]).is_zero());
    assert_eq!(h([-2, -1, -1]), GradedDims::single(2, 3));
}

#[test]
fn hom_on_hirzebruch() {
    let f2 = fan("F2");
    let z = DivisorData::zero(&f2);
    for a in [[0, 0, 0, 1], [1, 0, 0, 0], [0, 0, -1, 0], [-1, -1, -1, -1]] {
        let d = DivisorData::from_ints(&f2, &a).unwrap();
        assert_eq!(torus_hom(&z, &d).unwrap(), toric_cohomology(&d).unwrap().total, "{a:?}");
    }
}

#[test]
fn probe_divisor_classes_on_p2() {
    let p2 = fan("P2");
    let pic = PicardGroup::new(&p2);
    let origin = probe_divisor(&p2, &x(&[(0, 1), (0, 1)]));
    assert_eq!(origin.coeff_strings(), vec!["1", "1", "1"]);
    let c = pic.class_of_divisor(&probe_divisor(&p2, &x(&[(-1, 2), (-1, 3)]))).unwrap();
    let o1 = pic.class_of_divisor(&DivisorData::from_ints(&p2, &[1, 0, 0]).unwrap()).unwrap();
    assert_eq!(c, o1);
}

#[test]
fn f3_shards_close_up() {
    let f3 = fan("F3");
    assert!(f3.is_smooth() && f3.is_complete());
    let d = DivisorData::from_ints(&f3, &[1, 2, -1, 0]).unwrap();
    assert_eq!(build_p(&d).unwrap().counts(), vec![1, 4, 4]);
}

#[test]
fn suites_reject_unknown_fan() {
    let cfg = SuiteConfig { fan: Some("nowhere.json".into()), ..Default::default() };
    assert!(run_suite("degree-bounds", &cfg).is_err());
}

#[test]
fn single_fan_suite_runs() {
    let cfg = SuiteConfig { fan: Some("P1xP1".into()), range: Some(1), ..Default::default() };
    let r = run_suite("ccc-hom", &SuiteConfig { samples: Some(10), ..cfg.clone() }).unwrap();
    assert!(r.ok() && r.instances == 10);
    let r = run_suite("corepresentability", &SuiteConfig { denom: Some(2), ..cfg }).unwrap();
    assert!(r.ok(), "{:?}", r.failures);
    assert_eq!(r.instances, 81 * 4);
}
