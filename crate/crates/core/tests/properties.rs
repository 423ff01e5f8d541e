use proptest::prelude::*;

use lie_reduce::equivalence::projected_basis;
use lie_reduce::expr::{parse, Expr, Q};
use lie_reduce::lie::VectorField;
use lie_reduce::reduction::{integrate_numeric, ReducedODE};

fn leaf() -> impl Strategy<Value = String> {
    prop_oneof![
        (-5i64..=5).prop_map(|k| format!("({k})")),
        prop::sample::select(vec!["t", "x", "u", "u_x", "u_xx", "c1", "c2"])
            .prop_map(str::to_string),
    ]
}

fn expr_text() -> impl Strategy<Value = String> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} + {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} - {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), 1u32..=3).prop_map(|(a, n)| format!("({a})^{n}")),
            inner.clone().prop_map(|a| format!("exp({a})")),
            (inner.clone(), 1i64..=4).prop_map(|(a, k)| format!("({a})/(x + {k})")),
        ]
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    expr_text().prop_map(|s| parse(&s).expect("generated text parses"))
}

fn coords() -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(
        (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Q::new(n.into(), d.into())),
        8,
    )
}

fn element(c: &[Q]) -> VectorField {
    projected_basis().combine_q(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_form_reparses(e in expr()) {
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn sums_and_products_commute(a in expr(), b in expr()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_distributes(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn exp_turns_sums_into_products(a in expr(), b in expr()) {
        prop_assert_eq!(&a.exp() * &b.exp(), (&a + &b).exp());
    }

    #[test]
    fn derivative_is_linear(a in expr(), b in expr(), k in -4i64..=4) {
        let k = Expr::int(k);
        let lhs = (&(&k * &a) + &b).diff_sym("x");
        let rhs = &(&k * &a.diff_sym("x")) + &b.diff_sym("x");
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_rule_holds(a in expr(), b in expr()) {
        prop_assume!(!b.is_zero());
        let q = a.try_div(&b).unwrap();
        let lhs = &q.diff_sym("t") * &b;
        let rhs = &a.diff_sym("t") - &(&q * &b.diff_sym("t"));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_antisymmetric(u in coords(), v in coords()) {
        let (a, b) = (element(&u), element(&v));
        prop_assert!((&a.bracket(&b) + &b.bracket(&a)).is_zero());
    }

    #[test]
    fn bracket_stays_in_the_algebra(u in coords(), v in coords()) {
        let basis = projected_basis();
        let w = element(&u).bracket(&element(&v));
        let c = basis.coordinates_q(&w).unwrap();
        prop_assert_eq!(basis.combine_q(&c), w);
    }

    #[test]
    fn jacobi_identity(u in coords(), v in coords(), w in coords()) {
        let (a, b, c) = (element(&u), element(&v), element(&w));
        let s = &(&a.bracket(&b.bracket(&c)) + &b.bracket(&c.bracket(&a))) + &c.bracket(&a.bracket(&b));
        prop_assert!(s.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn integrator_tracks_exponential_growth(k in -2.0f64..2.0, h0 in 0.1f64..2.0) {
        let r = ReducedODE::new(parse("h' - c1*h").unwrap());
        let params = [("c1".to_string(), k)].into_iter().collect();
        let traj = integrate_numeric(&r, &params, &[h0], (0.0, 1.0), 1e-10).unwrap();
        let dev = traj.max_deviation(|z| h0 * (k * z).exp());
        prop_assert!(dev < 1e-8, "deviation {}", dev);
    }
}
