use proptest::prelude::*;
use qeis::series::{ratio, BiExpansion, QExpansion, Rational};

const ORDER: usize = 12;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}

fn series(order: usize) -> impl Strategy<Value = QExpansion> {
    prop::collection::vec(rational(), order + 1)
        .prop_map(|c| QExpansion::from_coeffs(Rational::from_integer(0.into()), c))
}

fn series_with_order() -> impl Strategy<Value = QExpansion> {
    (4usize..=ORDER).prop_flat_map(series)
}

/// Series with constant term 0, so `exp` is defined.
fn exp_admissible() -> impl Strategy<Value = QExpansion> {
    series(8).prop_map(|s| {
        let mut c = s.coeffs().to_vec();
        c[0] = Rational::from_integer(0.into());
        QExpansion::from_coeffs(s.prefactor().clone(), c)
    })
}

/// Series with non-zero constant term.
fn invertible() -> impl Strategy<Value = QExpansion> {
    (series(ORDER), (1i64..=9), prop::bool::ANY).prop_map(|(s, c0, neg)| {
        let mut c = s.coeffs().to_vec();
        c[0] = ratio(if neg { -c0 } else { c0 }, 1);
        QExpansion::from_coeffs(s.prefactor().clone(), c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_commutative(a in series(ORDER), b in series(ORDER)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn multiplication_is_associative(a in series(ORDER), b in series(ORDER), c in series(ORDER)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn addition_is_associative_and_commutative(a in series(ORDER), b in series(ORDER), c in series(ORDER)) {
        let left = a.try_add(&b).unwrap().try_add(&c).unwrap();
        let right = a.try_add(&b.try_add(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
    }

    #[test]
    fn multiplication_distributes(a in series(ORDER), b in series(ORDER), c in series(ORDER)) {
        let left = a.mul(&b.try_add(&c).unwrap());
        let right = a.mul(&b).try_add(&a.mul(&c)).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn truncation_is_the_smaller_order(a in series_with_order(), b in series_with_order()) {
        let expected = a.order().min(b.order());
        prop_assert_eq!(a.mul(&b).order(), expected);
        prop_assert_eq!(a.try_add(&b).unwrap().order(), expected);
        prop_assert!(a.mul(&b).coeffs().len() <= expected + 1);
    }

    #[test]
    fn leibniz_rule(a in series(ORDER), b in series(ORDER)) {
        let left = a.mul(&b).dq();
        let right = a.dq().mul(&b).try_add(&a.mul(&b.dq())).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn exp_of_sum_is_product(a in exp_admissible(), b in exp_admissible()) {
        let left = a.try_add(&b).unwrap().exp().unwrap();
        let right = a.exp().unwrap().mul(&b.exp().unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn log_inverts_exp(a in exp_admissible()) {
        prop_assert_eq!(a.exp().unwrap().log().unwrap(), a);
    }

    #[test]
    fn division_undoes_multiplication(a in series(ORDER), b in invertible()) {
        prop_assert_eq!(a.mul(&b).try_div(&b).unwrap(), a);
    }

    #[test]
    fn json_round_trip(a in series_with_order()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: QExpansion = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn bivariate_product_commutes(xs in prop::collection::vec(rational(), 5), a in series(6), b in series(6)) {
        let f = BiExpansion::lift_x(&xs, 6).try_mul(&BiExpansion::lift_q(&a, 4)).unwrap();
        let g = BiExpansion::lift_q(&b, 4);
        prop_assert_eq!(f.try_mul(&g).unwrap(), g.try_mul(&f).unwrap());
    }
}
