use linefield::exact_arith::sturm::grid_sign_changes;
use linefield::exact_arith::{isolate_real_roots, rat, uni_differentiate, uni_gcd, UniPoly};
use proptest::prelude::*;

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 0..=max_deg + 1).prop_map(|cs| {
        UniPoly::from_coeffs(cs.into_iter().map(|(n, d)| rat(n, d)).collect())
    })
}

proptest! {
    #[test]
    fn addition_is_associative(a in poly_strategy(6), b in poly_strategy(6), c in poly_strategy(6)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_distributes(a in poly_strategy(5), b in poly_strategy(5), c in poly_strategy(5)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn leibniz_rule(a in poly_strategy(6), b in poly_strategy(6)) {
        let lhs = uni_differentiate(&(&a * &b));
        let rhs = &(&uni_differentiate(&a) * &b) + &(&a * &uni_differentiate(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcd_divides_both(a in poly_strategy(4), b in poly_strategy(4), c in poly_strategy(3)) {
        let f = &a * &c;
        let g = &b * &c;
        prop_assume!(!f.is_zero() || !g.is_zero());
        let d = uni_gcd(&f, &g).unwrap();
        prop_assert!(f.rem(&d).is_zero());
        prop_assert!(g.rem(&d).is_zero());
        if !c.is_zero() {
            prop_assert!(d.rem(&c.monic()).is_zero());
        }
    }

    #[test]
    fn root_count_matches_grid_scan(roots in prop::collection::btree_set(-40i64..=40, 1..=4),
                                    quad in 1i64..=5) {
        // distinct rational roots times an irreducible quadratic with no real roots
        let mut p = UniPoly::from_ints(&[quad, 0, 1]);
        for r in &roots {
            p = &p * &UniPoly::from_coeffs(vec![rat(-*r, 4), rat(1, 1)]);
        }
        let iso = isolate_real_roots(&p).unwrap();
        prop_assert_eq!(iso.len(), roots.len());
        let deg = p.degree().unwrap();
        prop_assert_eq!(iso.len(), deg - 2);
        // all roots lie in [-10, 10]; the grid points (2k+1)/8 never hit one
        prop_assert_eq!(grid_sign_changes(&p, &rat(-81, 8), &rat(81, 8), 81), roots.len());
        for (iv, r) in iso.iter().zip(roots.iter()) {
            prop_assert!(iv.contains(&rat(*r, 4)));
        }
    }
}
