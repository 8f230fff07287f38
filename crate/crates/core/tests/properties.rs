use std::sync::Arc;

use proptest::prelude::*;

use tccc::cellular::GradedDims;
use tccc::divisors::DivisorData;
use tccc::harness::{toric_cohomology, verify_ccc_hom};
use tccc::lattice_fan::{Fan, LatticeVector, RationalVector};
use tccc::linalg::rat;
use tccc::microlocal::disjoint_at_infinity;
use tccc::twisted_sheaf::{in_vertex_hull, stalk_p, torus_hom};

fn fan(name: &str) -> Arc<Fan> {
    Arc::new(Fan::builtin(name).unwrap())
}

fn surface() -> impl Strategy<Value = Arc<Fan>> {
    prop::sample::select(vec!["P2", "P1xP1", "F2", "F3"]).prop_map(fan)
}

fn coeffs(r: usize, k: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-k..=k, r)
}

fn point(n: usize) -> impl Strategy<Value = RationalVector> {
    prop::collection::vec((-30i64..=30, 1i64..=6), n)
        .prop_map(|v| RationalVector(v.into_iter().map(|(p, q)| rat(p, q)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stalks_live_in_range_and_hull(
        (f, a, x) in surface().prop_flat_map(|f| {
            let r = f.num_rays();
            (Just(f), coeffs(r, 3), point(2))
        })
    ) {
        let d = DivisorData::from_ints(&f, &a).unwrap();
        let g = stalk_p(&d, &x);
        if !g.is_zero() {
            prop_assert!(g.min_degree().unwrap() >= -2 && g.max_degree().unwrap() <= 0);
            prop_assert!(in_vertex_hull(&d, &x));
        }
    }

    #[test]
    fn stalks_move_with_translation(a in coeffs(3, 3), m in prop::collection::vec(-3i64..=3, 2), x in point(2)) {
        let p2 = fan("P2");
        let d = DivisorData::from_ints(&p2, &a).unwrap();
        let m = LatticeVector::from_i64(&m);
        let shifted = d.translate(&m);
        prop_assert_eq!(stalk_p(&shifted, &x.add(&m.to_rational())), stalk_p(&d, &x));
    }

    #[test]
    fn riemann_roch_on_p2(a in coeffs(3, 3)) {
        let d = DivisorData::from_ints(&fan("P2"), &a).unwrap();
        let k: i64 = a.iter().sum();
        let h = toric_cohomology(&d).unwrap();
        prop_assert!(h.box_sound);
        prop_assert_eq!(h.total.euler(), (k + 1) * (k + 2) / 2);
    }

    #[test]
    fn riemann_roch_on_p1xp1(a in coeffs(4, 3)) {
        let f = fan("P1xP1");
        let d = DivisorData::from_ints(&f, &a).unwrap();
        // Classes (a, b) read off rays x and y; opposite rays add.
        let (u, v) = {
            let (mut u, mut v) = (0, 0);
            for (i, r) in f.rays().iter().enumerate() {
                if r.0[0] != 0.into() { u += a[i]; } else { v += a[i]; }
            }
            (u, v)
        };
        prop_assert_eq!(toric_cohomology(&d).unwrap().total.euler(), (u + 1) * (v + 1));
    }

    #[test]
    fn hom_matches_cohomology_on_p1(a in coeffs(2, 3), b in coeffs(2, 3)) {
        let p1 = fan("P1");
        let inst = verify_ccc_hom(&DivisorData::from_ints(&p1, &a).unwrap(), &DivisorData::from_ints(&p1, &b).unwrap()).unwrap();
        prop_assert!(inst.pass, "{}", inst.detail);
    }

    #[test]
    fn hom_euler_matches_on_surfaces(
        (f, a, b) in surface().prop_flat_map(|f| { let r = f.num_rays(); (Just(f), coeffs(r, 1), coeffs(r, 1)) })
    ) {
        let d1 = DivisorData::from_ints(&f, &a).unwrap();
        let d2 = DivisorData::from_ints(&f, &b).unwrap();
        let h = torus_hom(&d1, &d2).unwrap();
        prop_assert_eq!(h.euler(), toric_cohomology(&d2.sub(&d1)).unwrap().total.euler());
    }

    #[test]
    fn fractional_divisors_clear_lambda(a in prop::collection::vec((-9i64..=9, prop::sample::select(vec![2i64, 3, 5, 7])), 3)) {
        let p2 = fan("P2");
        let coeffs = a.iter().map(|&(p, q)| if p % q == 0 { rat(p * q + 1, q) } else { rat(p, q) }).collect();
        let d = DivisorData::from_coeffs(&p2, coeffs).unwrap();
        prop_assert!(disjoint_at_infinity(&d).is_disjoint());
    }
}

#[test]
fn zero_hom_outside_support() {
    let p1 = fan("P1");
    // Disjoint supports: [-1, 1] against the point 5.
    let a = DivisorData::from_ints(&p1, &[-1, -1]).unwrap();
    let b = DivisorData::from_ints(&p1, &[5, -5]).unwrap();
    let t = tccc::twisted_sheaf::translate_hom(&a, &b).unwrap();
    assert!(t.is_none() || t == Some(GradedDims::new()));
}
