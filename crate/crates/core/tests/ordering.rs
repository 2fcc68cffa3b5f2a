use std::f64::consts::TAU;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rectspec_core::ordering::{cone_parity, precedes, section_at, OrderConfig, OrderError};
use rectspec_core::suites::{dome_mesh, dome_pair, random_dome_triple};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn parity_ignores_the_apex(phi in 0.0f64..TAU, seed in any::<u64>()) {
        let (a, b) = dome_pair();
        let (sa, sb) = (section_at(&a, phi).unwrap(), section_at(&b, phi).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen = Vec::new();
        while seen.len() < 10 {
            let apex = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(2.5..6.0)];
            match cone_parity(&sa.points, &sb.points, &apex) {
                Ok(p) => seen.push(p),
                Err(OrderError::DegeneratePosition) => continue,
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
        prop_assert!(seen.iter().all(|&p| p == seen[0]));
    }

    #[test]
    fn exactly_one_direction_precedes(seed in any::<u64>(), phi in 0.0f64..TAU) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_dome_triple(&mut rng);
        let (a, b) = (dome_mesh(t[0].0, t[0].1).unwrap(), dome_mesh(t[1].0, t[1].1).unwrap());
        let cfg = OrderConfig { seed, ..OrderConfig::default() };
        let ab = precedes(&a, &b, phi, &cfg).unwrap();
        let ba = precedes(&b, &a, phi, &cfg).unwrap();
        prop_assert!(ab.precedes != ba.precedes);
        // the lower dome comes first
        prop_assert_eq!(ab.precedes, t[0].0 < t[1].0);
    }

    #[test]
    fn relation_is_fiber_independent(phi1 in 0.0f64..TAU, phi2 in 0.0f64..TAU) {
        let (a, b) = dome_pair();
        let cfg = OrderConfig::default();
        prop_assert_eq!(precedes(&a, &b, phi1, &cfg).unwrap().precedes, precedes(&a, &b, phi2, &cfg).unwrap().precedes);
    }
}

#[test]
fn replay_is_deterministic() {
    let (a, b) = dome_pair();
    let cfg = OrderConfig {
        seed: 7,
        ..OrderConfig::default()
    };
    assert_eq!(
        precedes(&a, &b, 1.1, &cfg).unwrap(),
        precedes(&a, &b, 1.1, &cfg).unwrap()
    );
}
