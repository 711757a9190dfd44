//! Ring axioms and exact division for sparse Laurent polynomials.

use num_bigint::BigInt;
use proptest::prelude::*;
use toda_core::gcd::gcd;
use toda_core::laurent::{LaurentPoly, Monomial, VarRegistry, VarRole};

const VARS: usize = 3;

fn term(exp_range: std::ops::RangeInclusive<i32>, vars: usize, big: bool) -> impl Strategy<Value = (Monomial, BigInt)> {
    (prop::collection::vec(exp_range, vars), -20i64..=20, any::<bool>()).prop_map(move |(e, c, scale)| {
        let mut c = BigInt::from(c);
        if big && scale {
            c *= BigInt::from(10).pow(30);
        }
        (Monomial::from_exponents(&e), c)
    })
}

fn poly_with(exp_range: std::ops::RangeInclusive<i32>, vars: usize, big: bool) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(term(exp_range, vars, big), 0..7).prop_map(LaurentPoly::from_terms)
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    poly_with(-3..=3, VARS, false)
}

/// Coefficients beyond 64 bits and exponents too spread out for packed keys.
fn wide_poly() -> impl Strategy<Value = LaurentPoly> {
    prop_oneof![poly_with(-3..=3, VARS, true), poly_with(-100_000_000..=100_000_000, 6, false)]
}

fn registry() -> VarRegistry {
    let mut r = VarRegistry::new();
    for name in ["x", "y", "z"] {
        r.declare(name, VarRole::Parameter).unwrap();
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_is_an_abelian_group(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &LaurentPoly::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), LaurentPoly::zero());
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert!((&a * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn distributivity(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn squaring_matches_product(a in poly()) {
        let copy = a.clone();
        prop_assert_eq!(a.square(), &a * &copy);
        prop_assert_eq!(a.pow(3), &a.square() * &copy);
    }

    #[test]
    fn wide_operands_take_the_general_paths(a in wide_poly(), b in wide_poly(), c in wide_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(a.square(), &a * &a.clone());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a.clone());
        }
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a.clone());
    }

    #[test]
    fn division_by_a_non_factor_is_refused(a in poly()) {
        // 1 + x + y has no monomial or constant factor and divides no polynomial of
        // the form (1 + x + y) q + 1 with q arbitrary.
        let reg = registry();
        let d = LaurentPoly::parse("1 + x + y", &reg).unwrap();
        let f = &(&a * &d) + &LaurentPoly::one();
        prop_assert!(f.exact_div(&d).is_err());
    }

    #[test]
    fn gcd_recovers_a_planted_factor(a in poly(), b in poly()) {
        let reg = registry();
        let c = LaurentPoly::parse("x^2 y - z + 3", &reg).unwrap();
        let g = gcd(&(&a * &c), &(&b * &c));
        if a.is_zero() && b.is_zero() {
            prop_assert!(g.is_zero());
        } else {
            prop_assert!(g.exact_div(&c).is_ok(), "gcd {g:?} misses the planted factor");
        }
    }

    #[test]
    fn text_round_trip(a in poly()) {
        let reg = registry();
        prop_assert_eq!(LaurentPoly::parse(&a.to_text(&reg), &reg).unwrap(), a);
    }
}
