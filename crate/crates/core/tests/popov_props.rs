use proptest::prelude::*;
use scrollar_core::arith::{linalg, Poly, Scalar};
use scrollar_core::polymat::{
    constrained_kernel_basis, is_unimodular, is_weak_popov, weak_popov, Constraint, PolyMatrix,
};

fn matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, 0..5), n * n).prop_map(move |es| {
        let rows = es
            .chunks(n)
            .map(|r| r.iter().map(|c| Poly::from_ints(c)).collect())
            .collect();
        PolyMatrix::from_rows(rows)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weak_popov_invariants(m in (1usize..=4).prop_flat_map(matrix)) {
        let det = m.det();
        prop_assume!(!det.is_zero());
        let r = weak_popov(&m).unwrap();
        prop_assert_eq!(&r.transform * &m, r.reduced.clone());
        prop_assert!(is_unimodular(&r.transform));
        prop_assert!(is_weak_popov(&r.reduced));
        prop_assert_eq!(r.row_degrees.iter().sum::<usize>() as i64, det.deg());
        // reducing again changes nothing
        let again = weak_popov(&r.reduced).unwrap();
        prop_assert_eq!(again.row_degrees, r.row_degrees);
    }

    #[test]
    fn kernel_colength(
        n in 1usize..=4,
        raw in prop::collection::vec((0i64..3, prop::collection::vec(-1i64..=1, 4)), 0..6),
    ) {
        let cs: Vec<Constraint> = raw
            .iter()
            .map(|(p, f)| Constraint::new(Scalar::from(*p), f[..n].iter().map(|&c| Scalar::from(c)).collect()))
            .collect();
        let kb = constrained_kernel_basis(n, &cs);
        let expected: usize = (0..3)
            .map(|p| {
                let rows: Vec<Vec<Scalar>> = cs
                    .iter()
                    .filter(|c| c.point == Scalar::from(p))
                    .map(|c| c.functional.clone())
                    .collect();
                linalg::rank(&rows, n)
            })
            .sum();
        prop_assert_eq!(kb.independent, expected);
        prop_assert_eq!(kb.basis.det().deg(), expected as i64);
    }
}
