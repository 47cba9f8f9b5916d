use proptest::prelude::*;
use scrollar_core::arith::{
    parse_poly, parse_rational_function, BiPoly, Field, Poly, RationalFunction, Scalar,
};

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-20i64..=20, 0..max_len).prop_map(|c| Poly::from_ints(&c))
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn division_with_remainder(a in poly(8), b in nonzero_poly(5)) {
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.deg() < b.deg());
    }

    #[test]
    fn products_divide_exactly(a in poly(6), b in nonzero_poly(6)) {
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn gcd_divides_and_is_bezout(a in nonzero_poly(6), b in nonzero_poly(6), c in nonzero_poly(3)) {
        let (a, b) = (&a * &c, &b * &c);
        let g = a.gcd(&b);
        prop_assert!(g.divides(&a) && g.divides(&b) && c.divides(&g));
        let (g2, s, t) = a.xgcd(&b);
        prop_assert_eq!(&(&s * &a) + &(&t * &b), g2.clone());
        prop_assert_eq!(g2.monic(), g.monic());
    }

    #[test]
    fn rational_functions_are_exact(a in nonzero_poly(5), b in nonzero_poly(5), c in nonzero_poly(4)) {
        let f = RationalFunction::new(a.clone(), b.clone());
        let g = RationalFunction::new(b.clone(), a.clone());
        prop_assert!((&f * &g).is_one());
        let h = RationalFunction::new(&a * &c, &b * &c);
        prop_assert_eq!(h, f.clone());
        prop_assert_eq!(f.degree(), a.deg() - b.deg());
    }

    #[test]
    fn text_round_trips(p in poly(7)) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p.clone());
        let f = RationalFunction::new(p.clone(), Poly::from_ints(&[1, 2, 1]));
        prop_assert_eq!(parse_rational_function(&f.to_string()).unwrap(), f);
    }

    /// The discriminant of `prod (y - r_i(x))` is `prod_{i<j} (r_i - r_j)^2`.
    #[test]
    fn discriminant_of_split_polynomial(roots in prop::collection::vec(poly(3), 2..4)) {
        let f = roots.iter().fold(BiPoly::new(vec![Poly::one()]), |acc, r| {
            &acc * &BiPoly::new(vec![-r, Poly::one()])
        });
        let mut want = Poly::one();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let d = &roots[i] - &roots[j];
                want = &want * &(&d * &d);
            }
        }
        prop_assert_eq!(f.discriminant_y(), want);
    }

    #[test]
    fn prime_field_reduction_is_a_ring_map(a in poly(5), b in poly(5)) {
        let f = Field::Prime(10007);
        prop_assert_eq!((&a * &b).in_field(f), &a.in_field(f) * &b.in_field(f));
        let s = Scalar::from(10008);
        prop_assert!(f.reduce(&s).is_one());
    }
}
