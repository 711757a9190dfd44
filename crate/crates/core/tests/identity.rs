use num_bigint::BigInt;
use num_rational::BigRational;
use toda_core::evolve::*;
use toda_core::identity::*;
use toda_core::scalar::Scalar;

fn opts() -> VerifyOptions {
    VerifyOptions { trials: 3, seed: 7 }
}

fn verify(id: IdentityName, size: Option<usize>) -> IdentityVerdict {
    verify_identity(id, size, &opts()).unwrap()
}

#[test]
fn holding_entries_pass_at_default_size() {
    for id in CATALOG.into_iter().filter(|&id| id != IdentityName::TelescopedE) {
        let v = verify(id, None);
        assert!(v.passed, "{}: {v:?}", v.name);
        assert!(v.residuals > 0, "{}", v.name);
        assert_eq!(v.substitutions.len(), 3);
    }
}

#[test]
fn summation_at_t1_n2() {
    // With three sites the check covers tau_2^3 among others.
    let v = verify(IdentityName::Summation, Some(3));
    assert!(v.passed);
    assert!(v.residuals >= 4);
}

#[test]
fn c3a3_by_name() {
    let id = IdentityName::parse("c3a3").unwrap();
    assert_eq!(id, IdentityName::C3A3);
    let v = verify(id, None);
    assert!(v.passed && v.residuals == 3);
}

#[test]
fn e_factor_on_four_sites() {
    assert!(verify(IdentityName::EFactor, Some(4)).passed);
}

#[test]
fn molecule_entries_on_larger_chains() {
    for n in 1..=3 {
        assert!(verify(IdentityName::VExpansion, Some(n)).passed, "N={n}");
        let g = verify(IdentityName::GRecurrence, Some(n));
        assert!(g.passed, "N={n}: {g:?}");
        let d = g.degree_check.unwrap();
        assert_eq!((d.numerator, d.denominator), ((0, 0), (0, 0)));
        assert_eq!(d.var, format!("x{}", n + 1));
    }
}

#[test]
fn literal_telescoped_form_fails_and_corrected_form_holds() {
    for n in 3..=5 {
        let lit = verify(IdentityName::TelescopedE, Some(n));
        assert!(!lit.passed && !lit.symbolic_zero, "N={n}");
        assert!(lit.residual.is_some());
        assert!(lit.substitutions.iter().all(|s| s.nonzero == 1));
        let fixed = verify(IdentityName::TelescopedECorrected, Some(n));
        assert!(fixed.passed && fixed.informational, "N={n}: {fixed:?}");
    }
}

#[test]
fn tilde_weight_sign() {
    // The opposite weight 1 - lambda^2/mu leaves a nonzero residual.
    let mut s = periodic_symbolic(3).unwrap();
    s.grid.evolve(3).unwrap();
    let w = s.grid.constants().unwrap().weight().unwrap();
    assert!(s.grid.bilinear_residual(1, 2, &w).unwrap().is_zero());
    assert!(!s.grid.bilinear_residual(1, 2, &w.neg()).unwrap().is_zero());
}

#[test]
fn catalog_summary_counts_only_the_eleven_entries() {
    let report = verify_catalog(Some(3), &opts()).unwrap();
    assert_eq!(report.catalog_size, 11);
    assert_eq!(report.verdicts.len(), 12);
    assert_eq!(report.passed, 10);
    let failed: Vec<_> = report.verdicts.iter().filter(|v| !v.passed).map(|v| v.key.as_str()).collect();
    assert_eq!(failed, ["k"]);
}

#[test]
fn unknown_name_and_small_size_are_errors() {
    assert_eq!(IdentityName::parse("nope"), Err(IdentityError::Unknown("nope".into())));
    assert!(matches!(
        verify_identity(IdentityName::TelescopedE, Some(2), &opts()),
        Err(IdentityError::Size { .. })
    ));
}

#[test]
fn verdicts_are_reproducible() {
    let a = serde_json::to_string(&verify(IdentityName::RowTwo, None)).unwrap();
    let b = serde_json::to_string(&verify(IdentityName::RowTwo, None)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn f_spot_values() {
    assert_eq!(eval_f(3, 1).unwrap(), BigInt::from(20));
    assert_eq!(eval_f(6, 4).unwrap(), BigInt::from(284));
    assert!(eval_f(3, 0).is_err() && eval_f(5, 4).is_err() && eval_f(2, 1).is_err());
}

#[test]
fn f_matches_factored_forms() {
    for n in 3..=6 {
        for j in 1..=n - 2 {
            assert_eq!(Some(eval_f(n, j).unwrap()), factored_f(n, j), "N={n} j={j}");
        }
    }
}

#[test]
fn f_equals_oracle_up_to_eight() {
    for n in 3..=8 {
        for j in 1..=n - 2 {
            let want = BigRational::from_integer(eval_f(n, j).unwrap());
            assert_eq!(oracle_f(n, j).unwrap(), want, "N={n} j={j}");
        }
    }
    assert_eq!(oracle_f(3, 1).unwrap(), BigRational::from_integer(20.into()));
    assert!(oracle_f(5, 0).is_err() && oracle_f(5, 4).is_err());
}

#[test]
fn literal_prefactor_misses_a_sixth_power() {
    for (n, j) in [(3, 1), (5, 2), (7, 3)] {
        let f = BigRational::from_integer(eval_f(n, j).unwrap());
        let e = telescoped_e_at_root(n, j);
        let ratio = e / (literal_prefactor(n, j) * f);
        assert_eq!(ratio, BigRational::new(n.into(), (j + 1).into()).pow(6));
    }
}

#[test]
fn d_closed_form_matches_sum() {
    for n in 3..=8 {
        for j in 0..n {
            for k in 0..n {
                assert_eq!(special_d(n, j, k), special_d_sum(n, j, k), "N={n} j={j} k={k}");
            }
            assert!(special_c(n, j, j) == BigRational::from_integer(0.into()));
        }
        let (d0, want) = d0_at_first_root(n);
        assert_eq!(d0, want);
    }
}

#[test]
fn special_point_intermediate_terms() {
    // The two partial sums displayed alongside the derivation.
    for (n, j) in [(3i64, 1i64), (6, 2), (8, 5)] {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let c0 = special_c(n, j, 0);
        let diff = special_d(n, j, 0).pow(2) / &c0 - special_d(n, j, n - 1).pow(2) / &c0;
        let want = r(n.pow(5) * (n - 1), 36 * j * (j + 1).pow(5))
            * r(6 * j * j - n - 6 * j * n + 2 * n * n, 1)
            * r(
                2 + 14 * j + 18 * j * j + 12 * j.pow(3) - 7 * n - 24 * j * n - 18 * j * j * n + 7 * n * n
                    + 10 * j * n * n
                    - 2 * n.pow(3),
                1,
            );
        assert_eq!(diff, want);

        let xm1 = special_x(n, j) - r(1, 1);
        let mut sum = r(0, 1);
        for k in 1..n {
            sum += &xm1 * special_c(n, j, k) * (special_d(n, j, k) + special_d(n, j, k - 1));
        }
        let p = |c: i64, jp: u32, np: u32| c * j.pow(jp) * n.pow(np);
        let poly = p(10, 1, 5) + p(70, 2, 5) + p(90, 3, 5) + p(60, 4, 5) - p(6, 0, 6) - p(80, 1, 6)
            - p(225, 2, 6)
            - p(210, 3, 6)
            - p(60, 4, 6)
            + p(25, 0, 7)
            + p(155, 1, 7)
            + p(245, 2, 7)
            + p(120, 3, 7)
            - p(35, 0, 8)
            - p(115, 1, 8)
            - p(90, 2, 8)
            + p(20, 0, 9)
            + p(30, 1, 9)
            - p(4, 0, 10);
        assert_eq!(sum, r(poly, 30 * (j + 1).pow(5)));
    }
}

#[test]
fn positivity_scan() {
    let small = scan_f_positivity(6).unwrap();
    assert!(small.passed());
    assert_eq!(small.values.len(), 1 + 2 + 3 + 4);
    let full = scan_f_positivity(200).unwrap();
    assert!(full.passed());
    assert_eq!(full.values.len(), (1..=198).sum::<usize>());
    assert!(full.values.iter().all(|p| p.value >= full.min.value));
    assert!(scan_f_positivity(2).is_err());
}
