use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use scrollar_core::arith::Field;
use scrollar_core::arith::Scalar;
use scrollar_core::bundle::random::random_presentation;
use scrollar_core::bundle::{
    inflate, predicted_inflation, sections_by_linear_algebra, splitting_type_from_profile,
    InflationDatum, SplittingType,
};

fn parts() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Riemann–Roch and the count of sections, by reduction and by linear algebra.
    #[test]
    fn riemann_roch(p in parts(), seed in any::<u64>(), n in -2i64..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_presentation(&mut rng, &p, Field::Rational);
        let t = b.splitting_type();
        prop_assert_eq!(t.clone(), SplittingType::new(p.clone()));
        prop_assert_eq!(b.degree(), t.degree());
        let (h0, h1) = t.cohomology();
        prop_assert_eq!(h0 - h1, t.degree() + t.rank() as i64);
        let tn = t.twist(n);
        prop_assert_eq!(b.global_sections(n).len() as i64, tn.h0());
        prop_assert_eq!(sections_by_linear_algebra(&b, n).len() as i64, tn.h0());
        prop_assert!(b.global_sections(n).iter().all(|s| b.is_section(s, n)));
    }

    #[test]
    fn dual_and_twist(p in parts(), seed in any::<u64>(), n in -3i64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_presentation(&mut rng, &p, Field::Prime(10007));
        let t = b.splitting_type();
        prop_assert_eq!(b.dual().splitting_type(), t.dual());
        prop_assert_eq!(b.twist(n).splitting_type(), t.twist(n));
        // Serre duality
        prop_assert_eq!(t.h1(), t.dual().twist(-2).h0());
        prop_assert_eq!(splitting_type_from_profile(&b), t);
    }

    #[test]
    fn inflation_matches_prediction(p in parts(), seed in any::<u64>(), point in -3i64..=3, v in prop::collection::vec(-1i64..=1, 3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_presentation(&mut rng, &p, Field::Rational);
        let s: Vec<Scalar> = v[..p.len()].iter().map(|&c| Scalar::from(c)).collect();
        prop_assume!(s.iter().any(|c| !c.is_zero()));
        let d = InflationDatum::new(Scalar::from(point), vec![s]);
        let pred = predicted_inflation(&b, &d).unwrap();
        let e = inflate(&b, &d).unwrap();
        prop_assert_eq!(e.splitting_type().cohomology(), (pred.h0, pred.h1));
        prop_assert!(e.splitting_type().h1() <= b.splitting_type().h1());
    }
}
