use num_bigint::BigInt;
use num_rational::BigRational;
use toda_core::evolve::*;
use toda_core::gcd::RationalFunction;
use toda_core::laurent::LaurentPoly;
use toda_core::scalar::Scalar;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ints(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| q(x, 1)).collect()
}

#[test]
fn molecule_one_from_ones_gives_odd_fibonacci() {
    let mut g = molecule_values(1, ints(&[1, 1]), ints(&[1, 1])).unwrap();
    g.evolve(6).unwrap();
    let col: Vec<_> = (2..=6).map(|t| g.value(1, t).unwrap()).collect();
    assert_eq!(col, ints(&[2, 5, 13, 34, 89]));
}

#[test]
fn molecule_two_from_ones() {
    let mut g = molecule_values(2, ints(&[1, 1, 1]), ints(&[1, 1, 1])).unwrap();
    g.evolve(6).unwrap();
    let c1: Vec<_> = (2..=6).map(|t| g.value(1, t).unwrap()).collect();
    let c2: Vec<_> = (2..=6).map(|t| g.value(2, t).unwrap()).collect();
    assert_eq!(c1, ints(&[2, 5, 14, 42, 131]));
    assert_eq!(c2, ints(&[3, 14, 70, 353, 1782]));
}

#[test]
fn first_new_value_is_laurent() {
    let mut s = semi_infinite_symbolic(4, false, Rule::Standard).unwrap();
    s.grid.evolve(3).unwrap();
    let z1 = s.grid.value(1, 2).unwrap();
    assert_eq!(z1.to_factored_text(&s.registry), "(y1^2 + x2) x1^-1");
}

#[test]
fn semi_infinite_symbolic_satisfies_recurrence() {
    let mut s = semi_infinite_symbolic(6, false, Rule::Standard).unwrap();
    s.grid.evolve(5).unwrap();
    let one = LaurentPoly::one();
    for t in 1..5 {
        for n in 1..=6 {
            if let Some(r) = s.grid.bilinear_residual(n, t, &one) {
                assert!(r.is_zero(), "residual at ({n},{t})");
            }
        }
    }
    // The computable set loses one site every two steps.
    assert!(s.grid.value(5, 3).is_some() && s.grid.value(6, 3).is_none());
    assert!(s.grid.value(4, 5).is_some() && s.grid.value(5, 5).is_none());
}

#[test]
fn cubed_rule_stays_laurent_through_t4() {
    // The cubic variant still divides exactly in this window.
    let mut s = semi_infinite_symbolic(4, false, Rule::Cubed).unwrap();
    s.grid.evolve(4).unwrap();
    assert_eq!(s.grid.value(1, 4).unwrap().len(), 20);
    assert_eq!(s.grid.value(2, 4).unwrap().len(), 189);
}

#[test]
fn special_x_family_is_linear_then_powers() {
    for n in 3..=5usize {
        let mut s = periodic_special_x(n).unwrap();
        s.grid.evolve(2).unwrap();
        let x = LaurentPoly::var(s.registry.lookup("x").unwrap());
        for k in 0..n {
            let expect = x
                .scale(&BigInt::from(k as i64 + 1))
                .add(&LaurentPoly::constant((n - k - 1) as i64));
            assert_eq!(s.grid.value(k, 2).unwrap(), expect, "N={n} site {k}");
        }
    }
}

#[test]
fn special_x_at_one_gives_powers_of_n() {
    for n in 3..=5i64 {
        let mut s = periodic_special_x(n as usize).unwrap();
        s.grid.evolve(6).unwrap();
        for (t, e) in [(2, 1u32), (3, 3), (4, 6), (5, 10), (6, 15)] {
            for k in 0..n as usize {
                let v = s.grid.value(k, t).unwrap().eval_rational(&[q(1, 1)]).unwrap();
                assert_eq!(v, q(n.pow(e), 1), "N={n} t={t} site {k}");
            }
        }
    }
}

#[test]
fn special_x_degenerates_at_one() {
    let ones = vec![q(1, 1); 3];
    let c = PeriodicConstants { k: q(1, 1), lambda: q(1, 1), mu: q(1, 1) };
    let mut g = TauGrid::periodic(3, ones.clone(), ones, c).unwrap();
    assert_eq!(g.evolve(3).unwrap_err(), EvolveError::Degenerate);
}

#[test]
fn periodic_iv_example() {
    let row = IvRow { i: vec![q(2, 1), q(3, 1)], v: vec![q(1, 1), q(5, 1)] };
    let next = step_iv_periodic(&row, 0).unwrap();
    assert_eq!(next.i, vec![q(9, 8), q(16, 3)]);
    assert_eq!(next.v, vec![q(8, 3), q(15, 8)]);
    for r in iv_residuals(BoundaryKind::Periodic(2), &row, &next) {
        assert!(r.is_zero());
    }
    let seeds = constants_from_iv(&row.i, &row.v).unwrap();
    assert_eq!(seeds.constants.k, q(2, 1));
    assert_eq!(seeds.constants.mu, q(30, 1));
    assert_eq!(seeds.constants.lambda, q(6, 1));
}

#[test]
fn periodic_iv_matches_tau_dictionary() {
    let i0 = ints(&[2, 3, 1, 4]);
    let v0 = ints(&[1, 5, 2, 1]);
    let (mut grid, seeds) = periodic_from_iv(&i0, &v0).unwrap();
    grid.evolve(5).unwrap();
    let mut state = IvState::new(BoundaryKind::Periodic(4), IvRow { i: i0, v: v0 });
    for _ in 0..3 {
        state.step().unwrap();
    }
    // Tilde scaling depends only on t and cancels in the dictionary.
    for t in 0..4 {
        let row = tau_to_iv(&grid, t, |v: &BigRational| v.clone()).unwrap();
        assert_eq!(row, state.rows[t], "row {t}");
    }
    let w = grid.constants().unwrap().weight().unwrap();
    let recs = quasi_periodicity_check(&grid, 5, &w, |n, t| seeds.seed(n, t)).unwrap();
    assert!(!recs.is_empty());
    assert!(recs.iter().all(|r| r.holds), "{recs:?}");
}

#[test]
fn degenerate_periodic_iv() {
    let row = IvRow { i: ints(&[2, 3]), v: ints(&[3, 2]) };
    assert_eq!(step_iv_periodic(&row, 0).unwrap_err(), EvolveError::Degenerate);
}

#[test]
fn semi_infinite_iv_matches_tau() {
    let mut s = semi_infinite_symbolic(6, true, Rule::Standard).unwrap();
    s.grid.evolve(4).unwrap();
    let lift = |p: &LaurentPoly| RationalFunction::from_poly(p.clone());
    let row0 = tau_to_iv(&s.grid, 0, lift).unwrap();
    let mut state = IvState::new(BoundaryKind::SemiInfinite, row0);
    state.step().unwrap();
    state.step().unwrap();
    for t in 1..3 {
        let from_tau = tau_to_iv(&s.grid, t, lift).unwrap();
        let n = state.rows[t].i.len().min(from_tau.i.len());
        assert!(n > 0);
        assert_eq!(state.rows[t].i[..n], from_tau.i[..n], "I row {t}");
        assert_eq!(state.rows[t].v[..n], from_tau.v[..n], "V row {t}");
    }
}

#[test]
fn molecule_iv_matches_tau() {
    let mut g = molecule_values(2, ints(&[1, 2, 3]), ints(&[2, 1, 5])).unwrap();
    g.evolve(5).unwrap();
    let row0 = tau_to_iv(&g, 0, |v: &BigRational| v.clone()).unwrap();
    assert!(row0.v[2].is_zero());
    let mut state = IvState::new(BoundaryKind::Molecule(2), row0);
    for t in 1..4 {
        state.step().unwrap();
        let from_tau = tau_to_iv(&g, t, |v: &BigRational| v.clone()).unwrap();
        assert_eq!(state.rows[t], from_tau, "row {t}");
    }
}
