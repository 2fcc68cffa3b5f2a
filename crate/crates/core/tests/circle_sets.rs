mod common;

use num_rational::Rational64;
use proptest::prelude::*;
use rectspec_core::circle_sets::{kemperman_check, triple_product_contains_identity, Arc, ArcSet};
use rectspec_core::{FloatArcSet, RationalArcSet};

use common::{raster_agrees, Raster};

const DEN: i64 = 360;

fn q(n: i64) -> Rational64 {
    Rational64::new(n, DEN)
}

fn flagged() -> impl Strategy<Value = (i64, i64, bool, bool)> {
    (0..DEN, 0..DEN / 2, any::<bool>(), any::<bool>())
}

fn rational_set() -> impl Strategy<Value = RationalArcSet> {
    prop::collection::vec(flagged(), 0..5).prop_map(|v| {
        ArcSet::new(v.into_iter().map(|(s, l, a, b)| Arc {
            start: q(s),
            len: q(l),
            start_closed: a,
            end_closed: b,
        }))
    })
}

fn half_open_rational() -> impl Strategy<Value = RationalArcSet> {
    prop::collection::vec((0..DEN, 1..DEN / 2), 1..5)
        .prop_map(|v| ArcSet::new(v.into_iter().map(|(s, l)| Arc::half_open(q(s), q(s + l)))))
}

fn float_set() -> impl Strategy<Value = FloatArcSet> {
    prop::collection::vec((0.0f64..1.0, 0.0f64..0.3), 0..6)
        .prop_map(|v| ArcSet::new(v.into_iter().map(|(s, l)| Arc::half_open(s, s + l))))
}

fn approx_eq(a: &FloatArcSet, b: &FloatArcSet) -> bool {
    a.symmetric_difference(b).measure() < 1e-9
}

proptest! {
    #[test]
    fn inverse_preserves_measure(a in rational_set()) {
        prop_assert_eq!(a.inverse().measure(), a.measure());
        prop_assert_eq!(a.inverse().inverse(), a);
    }

    #[test]
    fn complement_partitions(a in rational_set(), p in 0..DEN) {
        let c = a.complement();
        prop_assert_eq!(a.measure() + c.measure(), Rational64::from_integer(1));
        prop_assert!(a.union(&c).is_full());
        prop_assert!(a.intersection(&c).is_empty());
        prop_assert_ne!(a.contains(&q(p)), c.contains(&q(p)));
    }

    #[test]
    fn membership_follows_set_operations(a in rational_set(), b in rational_set(), p in 0..DEN) {
        let x = q(p);
        prop_assert_eq!(a.union(&b).contains(&x), a.contains(&x) || b.contains(&x));
        prop_assert_eq!(a.intersection(&b).contains(&x), a.contains(&x) && b.contains(&x));
        prop_assert_eq!(a.difference(&b).contains(&x), a.contains(&x) && !b.contains(&x));
    }

    #[test]
    fn product_is_commutative_and_associative(a in rational_set(), b in rational_set(), c in rational_set()) {
        prop_assert_eq!(a.product(&b), b.product(&a));
        prop_assert_eq!(a.product(&b).product(&c), a.product(&b.product(&c)));
    }

    #[test]
    fn float_product_is_commutative_and_associative(a in float_set(), b in float_set(), c in float_set()) {
        prop_assert!(approx_eq(&a.product(&b), &b.product(&a)));
        prop_assert!(approx_eq(&a.product(&b).product(&c), &a.product(&b.product(&c))));
    }

    #[test]
    fn kemperman_holds(a in rational_set(), b in rational_set()) {
        prop_assert!(a.is_empty() || b.is_empty() || kemperman_check(&a, &b).holds);
    }

    #[test]
    fn complementary_measures_fill_the_circle(a in half_open_rational(), b in half_open_rational()) {
        if a.measure() + b.measure() >= Rational64::from_integer(1) {
            prop_assert!(a.product(&b).is_full());
        }
    }

    #[test]
    fn large_sets_have_identity_triples(a in rational_set()) {
        if a.measure() > Rational64::new(1, 3) {
            let (x, y, z) = triple_product_contains_identity(&a).expect("triple exists");
            prop_assert!([x, y, z].iter().all(|p| a.contains(p)));
            prop_assert!((x + y + z).is_integer());
        }
    }

    #[test]
    fn float_and_rational_agree(a in rational_set(), b in rational_set()) {
        let exact = a.product(&b).to_f64();
        let float = a.to_f64().product(&b.to_f64());
        prop_assert!(approx_eq(&exact, &float));
    }

    #[test]
    fn json_round_trips(a in rational_set()) {
        // endpoints are stored, so lengths come back to within an ulp
        let f = a.to_f64();
        let back = FloatArcSet::from_json(&f.to_json()).unwrap();
        prop_assert_eq!(back.arcs().len(), f.arcs().len());
        for (x, y) in back.arcs().iter().zip(f.arcs()) {
            prop_assert_eq!((x.start, x.start_closed, x.end_closed), (y.start, y.start_closed, y.end_closed));
            prop_assert!((x.len - y.len).abs() < 1e-15);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_matches_grid_oracle(a in float_set(), b in float_set()) {
        let oracle = Raster::of(&a, 14).sumset(&Raster::of(&b, 14));
        prop_assert_eq!(raster_agrees(&a.product(&b), &oracle, 2.0), Ok(()));
    }
}

#[test]
fn single_arcs_attain_equality() {
    let a = ArcSet::from_intervals(&[(q(10), q(50))]);
    let b = ArcSet::from_intervals(&[(q(100), q(130))]);
    let v = kemperman_check(&a, &b);
    assert_eq!(v.product_measure, v.lower_bound);
}

#[test]
fn single_precision_sets() {
    let a: ArcSet<f32> = ArcSet::from_intervals(&[(0.1, 0.3), (0.25, 0.5)]);
    assert!((a.measure() - 0.4).abs() < 1e-6);
    assert!((a.product(&a).measure() - 0.8).abs() < 1e-5);
}
