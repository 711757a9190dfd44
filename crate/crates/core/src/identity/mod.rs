//! Catalog of identities satisfied by the tau grids, each checked as a list of
//! residuals that must vanish.
//!
//! Every entry is written once, generically over the scalar type. The symbolic
//! check evolves a [`LaurentPoly`] grid and evaluates the residual as an
//! unreduced [`Fraction`]; the numeric checks run the same code on random
//! exact rationals.

mod quartic;

pub use quartic::{
    d0_at_first_root, eval_f, factored_f, literal_prefactor, oracle_f, scan_f_positivity, special_c,
    special_d, special_d_sum, special_x, telescoped_e_at_root, FError, FPoint, FScanResult,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evolve::{
    quasi_periodicity_residuals, BoundaryKind, EvolveError, PeriodicConstants, Rule, TauGrid,
};
use crate::gcd::{reduce_fraction, RationalFunction};
use crate::laurent::{LaurentPoly, VarId, VarRegistry, VarRole};
use crate::par::par_map;
use crate::scalar::{Fraction, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityName {
    Bilinear,
    Summation,
    C3A3,
    VExpansion,
    GRecurrence,
    RowTwo,
    CommonDenominator,
    EFactor,
    QuasiPeriodicity,
    TildeEquation,
    TelescopedE,
    TelescopedECorrected,
}

/// The eleven catalog entries, in key order `a..k`.
pub const CATALOG: [IdentityName; 11] = [
    IdentityName::Bilinear,
    IdentityName::Summation,
    IdentityName::C3A3,
    IdentityName::VExpansion,
    IdentityName::GRecurrence,
    IdentityName::RowTwo,
    IdentityName::CommonDenominator,
    IdentityName::EFactor,
    IdentityName::QuasiPeriodicity,
    IdentityName::TildeEquation,
    IdentityName::TelescopedE,
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdentityError {
    #[error("unknown identity `{0}`")]
    Unknown(String),
    #[error("{name} needs size >= {min}, got {got}")]
    Size { name: &'static str, min: usize, got: usize },
}

impl IdentityName {
    pub fn all() -> impl Iterator<Item = IdentityName> {
        CATALOG.into_iter().chain([IdentityName::TelescopedECorrected])
    }

    pub fn key(self) -> &'static str {
        use IdentityName::*;
        match self {
            Bilinear => "a",
            Summation => "b",
            C3A3 => "c",
            VExpansion => "d",
            GRecurrence => "e",
            RowTwo => "f",
            CommonDenominator => "g",
            EFactor => "h",
            QuasiPeriodicity => "i",
            TildeEquation => "j",
            TelescopedE => "k",
            TelescopedECorrected => "k+",
        }
    }

    pub fn slug(self) -> &'static str {
        use IdentityName::*;
        match self {
            Bilinear => "bilinear",
            Summation => "summation",
            C3A3 => "c3a3",
            VExpansion => "v-expansion",
            GRecurrence => "g-recurrence",
            RowTwo => "row-two",
            CommonDenominator => "common-denominator",
            EFactor => "e-factor",
            QuasiPeriodicity => "quasi-periodicity",
            TildeEquation => "tilde-equation",
            TelescopedE => "telescoped-e",
            TelescopedECorrected => "telescoped-e-corrected",
        }
    }

    /// Accepts the slug or the key letter.
    pub fn parse(s: &str) -> Result<Self, IdentityError> {
        Self::all()
            .find(|id| id.slug() == s || id.key() == s)
            .ok_or_else(|| IdentityError::Unknown(s.to_string()))
    }

    pub fn description(self) -> &'static str {
        use IdentityName::*;
        match self {
            Bilinear => "tau^{t+1}_n tau^{t-1}_n = tau^{t+1}_{n-1} tau^{t-1}_{n+1} + (tau^t_n)^2 on a semi-infinite grid",
            Summation => "tau^{t+2}_n = tau^t_{n+1} sum_{k<=n} (tau^{t+1}_k)^2 / (tau^t_k tau^t_{k+1}), semi-infinite",
            C3A3 => "c3 a3 = b3^2 + a2 c4 and its expansion over c2 d3^2 e4, with d3^2 + c2 e4 = c3 e3",
            VExpansion => "v_N = G_N y_{N+1}^2 + 2 u_{N-1} z_N y_{N+1} / y_N^2 + z_N^3 / y_N^2 on the molecule",
            GRecurrence => "x_{N+1} G_N = x_2 G_1 + sum_k z_k x_{k+1}/(y_k y_{k+1}) (u_k/y_{k+1} + u_{k-1}/y_k); x_{N+1} G_N is free of x_{N+1}",
            RowTwo => "c_n = a_{n+1} [r sum_{j<=n} b_j^2/(a_j a_{j+1}) + sum_{j>n} b_j^2/(a_j a_{j+1})], periodic",
            CommonDenominator => "c_0 c_2...c_{N-1} e_0 expanded over the common denominator, periodic",
            EFactor => "b_1^2 c_{N-1} + b_N^2 c_1/(K mu) = K lambda^2 (a_0 b_1^2 + a_2 b_0^2) c_0/(mu a_1), periodic",
            QuasiPeriodicity => "tau_{n+N} = K lambda^t mu^n tau_n, with columns beyond N from the local recurrence",
            TildeEquation => "tilde recurrence with weight lambda^2/mu - 1 at every stored cell, periodic",
            TelescopedE => "e_{N-1} = c_N x/(x-1) [d_0^2/c_0 - d_{N-1}^2/c_N + sum_{k=1}^{N-1} (x-1) c_k (d_k + d_{k-1})], special init",
            TelescopedECorrected => "e_{N-1} with the k = N-1 term kept untelescoped, special init",
        }
    }

    /// Entries outside the theorem catalog; reported but not counted.
    pub fn informational(self) -> bool {
        self == IdentityName::TelescopedECorrected
    }

    /// Smallest admissible size, or `None` for entries without a size.
    pub fn min_size(self) -> Option<usize> {
        use IdentityName::*;
        match self {
            C3A3 => None,
            Bilinear | Summation => Some(2),
            VExpansion | GRecurrence => Some(1),
            RowTwo | CommonDenominator | EFactor | QuasiPeriodicity | TildeEquation => Some(2),
            TelescopedE | TelescopedECorrected => Some(3),
        }
    }

    /// Size used when none is requested.
    pub fn default_size(self) -> Option<usize> {
        use IdentityName::*;
        match self {
            Bilinear | Summation => Some(3),
            GRecurrence => Some(2),
            RowTwo | CommonDenominator | EFactor | QuasiPeriodicity | TildeEquation => Some(3),
            other => other.min_size(),
        }
    }

    pub fn grid_shape(self, size: Option<usize>) -> String {
        use IdentityName::*;
        let n = size.unwrap_or(0);
        match self {
            Bilinear | Summation => format!("semi-infinite, {n} sites, t <= {}", 2 * n - 1),
            C3A3 => "eight free symbols".into(),
            VExpansion | GRecurrence => format!("molecule N={n}, t <= 4"),
            RowTwo | EFactor => format!("periodic N={n}, t <= 2"),
            CommonDenominator | QuasiPeriodicity | TildeEquation => format!("periodic N={n}, t <= 4"),
            TelescopedE | TelescopedECorrected => format!("periodic N={n} special init, t <= 4"),
        }
    }

    /// Names of the free symbols, in input order.
    pub fn symbols(self, size: Option<usize>) -> Vec<String> {
        use IdentityName::*;
        let n = size.unwrap_or(0);
        match self {
            Bilinear | Summation => open_symbols(n),
            VExpansion | GRecurrence => open_symbols(n + 1),
            C3A3 => ["a1", "b2", "c2", "c3", "d3", "d4", "e4", "e5"].map(String::from).to_vec(),
            RowTwo | CommonDenominator | EFactor | QuasiPeriodicity | TildeEquation => {
                let mut out: Vec<String> = (2..n).map(|i| format!("a{i}")).collect();
                out.extend((1..n).map(|i| format!("b{i}")));
                out.extend(["K", "lambda", "mu"].map(String::from));
                out
            }
            TelescopedE | TelescopedECorrected => vec!["x".into()],
        }
    }

    fn resolve_size(self, size: Option<usize>) -> Result<Option<usize>, IdentityError> {
        match (self.min_size(), size) {
            (None, _) => Ok(None),
            (Some(min), Some(got)) if got < min => Err(IdentityError::Size { name: self.slug(), min, got }),
            (Some(_), Some(got)) => Ok(Some(got)),
            (Some(_), None) => Ok(self.default_size()),
        }
    }

    /// Residuals of the identity on the given inputs; all vanish when it holds.
    pub fn residuals<G: Scalar, S: Scalar>(
        self,
        size: Option<usize>,
        inputs: &[G],
        lift: &dyn Fn(&G) -> S,
    ) -> Result<Vec<S>, EvolveError> {
        use IdentityName::*;
        let n = size.unwrap_or(0);
        match self {
            Bilinear => bilinear(n, inputs, lift),
            Summation => summation(n, inputs, lift),
            C3A3 => c3a3(inputs, lift),
            VExpansion => v_expansion(n, inputs, lift),
            GRecurrence => g_recurrence(n, inputs, lift),
            RowTwo => row_two(n, inputs, lift),
            CommonDenominator => common_denominator(n, inputs, lift),
            EFactor => e_factor(n, inputs, lift),
            QuasiPeriodicity => quasi_periodicity(n, inputs, lift),
            TildeEquation => tilde_equation(n, inputs, lift),
            TelescopedE => telescoped(n, inputs, lift, false),
            TelescopedECorrected => telescoped(n, inputs, lift, true),
        }
    }
}

fn open_symbols(sites: usize) -> Vec<String> {
    let mut out: Vec<String> = (1..=sites).map(|i| format!("x{i}")).collect();
    out.extend((1..=sites).map(|i| format!("y{i}")));
    out
}

fn missing(n: usize, t: usize) -> EvolveError {
    EvolveError::Config(format!("cell ({n}, {t}) is not available"))
}

fn div<S: Scalar>(a: &S, b: &S) -> Result<S, EvolveError> {
    a.try_div(b).map_err(|_| EvolveError::Singular { n: 0, t: 0 })
}

/// Lifted grid reader.
struct Cells<'a, G, S> {
    grid: &'a TauGrid<G>,
    lift: &'a dyn Fn(&G) -> S,
}

impl<G: Scalar, S: Scalar> Cells<'_, G, S> {
    fn at(&self, n: usize, t: usize) -> Result<S, EvolveError> {
        self.grid.value(n, t).map(|v| (self.lift)(&v)).ok_or_else(|| missing(n, t))
    }
}

fn open_grid<G: Scalar>(boundary: BoundaryKind, sites: usize, inputs: &[G], t_max: usize) -> Result<TauGrid<G>, EvolveError> {
    let (row0, row1) = inputs.split_at(sites);
    let mut grid = TauGrid::open(boundary, row0.to_vec(), row1.to_vec(), Rule::Standard)?;
    grid.evolve(t_max)?;
    Ok(grid)
}

/// Inputs `a_2..a_{N-1}, b_1..b_{N-1}, K, lambda, mu`; `a_0 = a_1 = b_0 = 1`.
fn periodic_grid<G: Scalar>(n: usize, inputs: &[G], t_max: usize) -> Result<TauGrid<G>, EvolveError> {
    let mut row0 = vec![G::one(), G::one()];
    row0.extend_from_slice(&inputs[..n - 2]);
    let mut row1 = vec![G::one()];
    row1.extend_from_slice(&inputs[n - 2..2 * n - 3]);
    let rest = &inputs[2 * n - 3..];
    let constants = PeriodicConstants { k: rest[0].clone(), lambda: rest[1].clone(), mu: rest[2].clone() };
    let mut grid = TauGrid::periodic(n, row0, row1, constants)?;
    grid.evolve(t_max)?;
    Ok(grid)
}

fn weight_of<G: Scalar>(grid: &TauGrid<G>) -> Result<G, EvolveError> {
    grid.constants().expect("periodic grid").weight()
}

fn bilinear<G: Scalar, S: Scalar>(k: usize, inputs: &[G], lift: &dyn Fn(&G) -> S) -> Result<Vec<S>, EvolveError> {
    let grid = open_grid(BoundaryKind::SemiInfinite, k, inputs, 2 * k - 1)?;
    let cells: Vec<(usize, usize)> = grid.cells().map(|(n, t, _)| (n, t)).collect();
    Ok(cells
        .into_iter()
        .filter_map(|(n, t)| grid.bilinear_residual(n, t, &G::one()))
        .map(|r| lift(&r))
        .collect())
}

fn summation<G: Scalar, S: Scalar>(k: usize, inputs: &[G], lift: &dyn Fn(&G) -> S) -> Result<Vec<S>, EvolveError> {
    let grid = open_grid(BoundaryKind::SemiInfinite, k, inputs, 2 * k - 1)?;
    let c = Cells { grid: &grid, lift };
    let targets: Vec<(usize, usize)> = grid
        .cells()
        .filter(|&(n, t, _)| t >= 2 && grid.get(n + 1, t - 2).is_some())
        .map(|(n, t, _)| (n, t - 2))
        .collect();
    let mut out = Vec::new();
    for (n, t) in targets {
        let mut sum = S::zero();
        for j in 0..=n {
            let term = div(&c.at(j, t + 1)?.pow(2), &c.at(j, t)?.mul(&c.at(j + 1, t)?))?;
            sum = sum.add(&term);
        }
        out.push(c.at(n, t + 2)?.sub(&c.at(n + 1, t)?.mul(&sum)));
    }
    Ok(out)
}

fn c3a3<G: Scalar, S: Scalar>(inputs: &[G], lift: &dyn Fn(&G) -> S) -> Result<Vec<S>, EvolveError> {
    let v: Vec<S> = inputs.iter().map(lift).collect();
    let [a1, b2, c2, c3, d3, d4, e4, e5] = <[S; 8]>::try_from(v).expect("eight inputs");
    // Local relations around the cell of c3.
    let a2 = div(&b2.pow(2).add(&a1.mul(&c3)), &c2)?;
    let c4 = div(&d4.pow(2).add(&c3.mul(&e5)), &e4)?;
    let e3 = div(&d3.pow(2).add(&c2.mul(&e4)), &c3)?;
    let b3 = div(&b2.mul(&d4).add(&c3.pow(2)), &d3)?;
    let a3 = div(&b3.pow(2).add(&a2.mul(&c4)), &c3)?;

    let two = S::from_int(2);
    let bracket = a1
        .mul(&c3)
        .mul(&e5)
        .add(&a1.mul(&d4.pow(2)))
        .add(&b2.pow(2).mul(&e5))
        .mul(&d3.pow(2))
        .add(&c3.pow(3).add(&two.mul(&b2).mul(&c3).mul(&d4)).mul(&c2).mul(&e4))
        .add(&b2.pow(2).mul(&d4.pow(2)).mul(&e3));
    let expanded = div(&c3.mul(&bracket), &c2.mul(&d3.pow(2)).mul(&e4))?;

    let inner = c3
        .mul(
            &a1.mul(&d3.pow(2)).mul(&d4.pow(2))
                .add(&c2.mul(&c3.pow(3)).mul(&e4))
                .add(&two.mul(&b2).mul(&c2).mul(&c3).mul(&d4).mul(&e4))
                .add(&b2.pow(2).mul(&d3.pow(2)).mul(&e5))
                .add(&a1.mul(&c3).mul(&d3.pow(2)).mul(&e5)),
        )
        .add(&b2.pow(2).mul(&d4.pow(2)).mul(&d3.pow(2).add(&c2.mul(&e4))));
    let intermediate = div(&inner, &c2.mul(&d3.pow(2)).mul(&e4))?;

    let lhs = c3.mul(&a3);
    Ok(vec![
        lhs.sub(&expanded),
        lhs.sub(&intermediate),
        d3.pow(2).add(&c2.mul(&e4)).sub(&c3.mul(&e3)),
    ])
}

/// `G_N = (1/z_N)(v_{N-1}/x_{N+1} + u_{N-1}^2/y_N^2)` and the cell reader.
fn molecule_g<G: Scalar, S: Scalar>(c: &Cells<'_, G, S>, n: usize) -> Result<S, EvolveError> {
    let inner = div(&c.at(n - 1, 4)?, &c.at(n + 1, 0)?)?.add(&div(&c.at(n - 1, 3)?.pow(2), &c.at(n, 1)?.pow(2))?);
    div(&inner, &c.at(n, 2)?)
}

fn v_expansion<G: Scalar, S: Scalar>(n: usize, inputs: &[G], lift: &dyn Fn(&G) -> S) -> Result<Vec<S>, EvolveError> {
    let grid = open_grid(BoundaryKind::Molecule(n), n + 1, inputs, 4)?;
    let c = Cells { grid: &grid, lift };
    let g = molecule_g(&c, n)?;
    let (yn, y_next, zn, u_prev) = (c.at(n, 1)?, c.at(n + 1, 1)?, c.at(n, 2)?, c.at(n - 1, 3)?);
    let rhs = g
        .mul(&y_next.pow(2))
        .add(&div(&S::from_int(2).mul(&u_prev).mul(&zn).mul(&y_next), &yn.pow(2))?)
        .add(&div(&zn.pow(3), &yn.pow(2))?);
    Ok(vec![c.at(n, 4)?.sub(&rhs)])
}

fn g_recurrence<G: Scalar, S: Scalar>(n: usize, inputs: &[G], lift: &dyn Fn(&G) -> S) -> Result<Vec<S>, EvolveError> {
    let grid = open_grid(BoundaryKind::Molecule(n), n + 1, inputs, 4)?;
    let c = Cells { grid: &grid, lift };
    let lhs = c.at(n + 1, 0)?.mul(&molecule_g(&c, n)?);
    let (x, y, z, u) = (
        |k| c.at(k, 0),
        |k| c.at(k, 1),
        |k| c.at(k, 2),
        |k| c.at(k, 3),
    );
    let g1 = div(&x(1)?, &x(2)?.mul(&y(1)?.pow(2)))?;
    let mut rhs = x(2)?.mul(&g1);
    for k in 1..n {
        let head = div(&z(k)?.mul(&x(k + 1)?), &y(k)?.mul(&y(k + 1)?))?;
        let tail = div(&u(k)?, &y(k + 1)?)?.add(&div(&u(k - 1)?, &y(k)?)?);
        rhs = rhs.add(&head.mul(&tail));
    }
    Ok(vec![lhs.sub(&rhs)])
}

/// Degree range of `Gamma_N = x_{N+1} G_N` in `x_{N+1}`, numerator and denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub var: String,
    pub numerator: (i32, i32),
    pub denominator: (i32, i32),
    pub holds: bool,
}

/// Computes `Gamma_N` symbolically and checks that it does not involve `x_{N+1}`.
pub fn gamma_degree(n: usize) -> Result<DegreeCheck, EvolveError> {
    let syms = open_symbols(n + 1);
    let inputs: Vec<LaurentPoly> = (0..syms.len()).map(|i| LaurentPoly::var(VarId(i as u32))).collect();
    let grid = open_grid(BoundaryKind::Molecule(n), n + 1, &inputs, 4)?;
    let lift = |p: &LaurentPoly| RationalFunction::from_poly(p.clone());
    let c = Cells { grid: &grid, lift: &lift };
    let gamma = c.at(n + 1, 0)?.mul(&molecule_g(&c, n)?);
    let var = VarId(n as u32);
    let range = |p: &LaurentPoly| p.degree_range(var).unwrap_or((0, 0));
    let numerator = range(gamma.num());
    let denominator = range(gamma.den());
    Ok(DegreeCheck {
        var: syms[n].clone(),
        numerator,
        denominator,
        holds: numerator == (0, 0) && denominator == (0, 0),
    })
}

/// `r sum_{j<=n} w_j + sum_{j>n} w_j` with `w_j = top_j^2 / (bot_j bot_{j+1})`.
fn split_sum<G: Scalar, S: Scalar>(
    c: &Cells<'_, G, S>,
    period: usize,
    n: usize,
    top: usize,
    r: &S,
) -> Result<S, EvolveError> {
    let mut acc = S::zero();
    for j in 0..period {
        let w = div(&c.at(j, top)?.pow(2), &c.at(j, top - 1)?.mul(&c.at(j + 1, top - 1)?))?;
        acc = acc.add(&if j <= n { r.mul(&w) } else { w });
    }
    Ok(acc)
}

fn ratio<G: Scalar, S: Scalar>(grid: &TauGrid<G>, lift: &dyn Fn(&G) -> S) -> Result<S, EvolveError> {
    Ok(lift(&grid.constants().expect("periodic grid").ratio()?))
}

fn row_two<G: Scalar, S: Scalar>(n: usize, inputs: &[G], lift: &dyn Fn(&G) -> S) -> Result<Vec<S>, EvolveError> {
    let grid = periodic_grid(n, inputs, 2)?;
    let c = Cells { grid: &grid, lift };
    let r = ratio(&grid, lift)?;
    (0..n)
        .map(|m| {
            let rhs = c.at(m + 1, 0)?.mul(&split_sum(&c, n, m, 1, &r)?);
            Ok(c.at(m, 2)?.sub(&rhs))
        })
        .collect()
}

fn common_denominator<G: Scalar, S: Scalar>(n: usize, inputs: &[G], lift: &dyn Fn(&G) -> S) -> Result<Vec<S>, EvolveError> {
    let grid = periodic_grid(n, inputs, 4)?;
    let c = Cells { grid: &grid, lift };
    let r = ratio(&grid, lift)?;
    let cs: Vec<S> = (0..=n).map(|k| c.at(k, 2)).collect::<Result<_, _>>()?;
    let ds: Vec<S> = (0..n).map(|k| c.at(k, 3)).collect::<Result<_, _>>()?;
    let prod = |range: std::ops::Range<usize>| range.fold(S::one(), |acc, i| acc.mul(&cs[i]));

    let lhs = cs[0].mul(&prod(2..n)).mul(&c.at(0, 4)?);
    let mut rhs = r.mul(&ds[0].pow(2)).mul(&prod(2..n));
    for j in 1..n - 1 {
        rhs = rhs.add(&prod(0..j).mul(&ds[j].pow(2)).mul(&prod(j + 2..n)));
    }
    let last = div(&cs[0], &cs[n])?.mul(&prod(1..n - 1)).mul(&ds[n - 1].pow(2));
    rhs = rhs.add(&last);
    Ok(vec![lhs.sub(&rhs)])
}

fn e_factor<G: Scalar, S: Scalar>(n: usize, inputs: &[G], lift: &dyn Fn(&G) -> S) -> Result<Vec<S>, EvolveError> {
    let grid = periodic_grid(n, inputs, 2)?;
    let c = Cells { grid: &grid, lift };
    let consts = grid.constants().expect("periodic grid");
    let (k, lambda, mu) = (lift(&consts.k), lift(&consts.lambda), lift(&consts.mu));
    let (a, b) = (|m| c.at(m, 0), |m| c.at(m, 1));
    let lhs = b(1)?
        .pow(2)
        .mul(&c.at(n - 1, 2)?)
        .add(&div(&b(n)?.pow(2).mul(&c.at(1, 2)?), &k.mul(&mu))?);
    let inner = a(0)?.mul(&b(1)?.pow(2)).add(&a(2)?.mul(&b(0)?.pow(2)));
    let rhs = div(&k.mul(&lambda.pow(2)).mul(&inner), &mu.mul(&a(1)?))?.mul(&c.at(0, 2)?);
    Ok(vec![lhs.sub(&rhs)])
}

fn quasi_periodicity<G: Scalar, S: Scalar>(n: usize, inputs: &[G], lift: &dyn Fn(&G) -> S) -> Result<Vec<S>, EvolveError> {
    let grid = periodic_grid(n, inputs, 4)?;
    let s = weight_of(&grid)?;
    let seed = |m: usize, t: usize| grid.value(m, t).expect("seed rows exist");
    Ok(quasi_periodicity_residuals(&grid, 4, &s, seed)?
        .into_iter()
        .map(|(_, _, r)| lift(&r))
        .collect())
}

fn tilde_equation<G: Scalar, S: Scalar>(n: usize, inputs: &[G], lift: &dyn Fn(&G) -> S) -> Result<Vec<S>, EvolveError> {
    let grid = periodic_grid(n, inputs, 4)?;
    let s = weight_of(&grid)?;
    let mut out = Vec::new();
    for t in 1..4 {
        for m in 0..n {
            let r = grid.bilinear_residual(m, t, &s).ok_or_else(|| missing(m, t))?;
            out.push(lift(&r));
        }
    }
    Ok(out)
}

fn telescoped<G: Scalar, S: Scalar>(
    n: usize,
    inputs: &[G],
    lift: &dyn Fn(&G) -> S,
    corrected: bool,
) -> Result<Vec<S>, EvolveError> {
    let x = inputs[0].clone();
    let mu = div(&G::one(), &x)?;
    let ones = vec![G::one(); n];
    let constants = PeriodicConstants { k: G::one(), lambda: G::one(), mu };
    let mut grid = TauGrid::periodic(n, ones.clone(), ones, constants)?;
    grid.evolve(4)?;
    let c = Cells { grid: &grid, lift };
    let xs = ratio(&grid, lift)?;
    let xm1 = xs.sub(&S::one());
    let cs: Vec<S> = (0..=n).map(|k| c.at(k, 2)).collect::<Result<_, _>>()?;
    let ds: Vec<S> = (0..n).map(|k| c.at(k, 3)).collect::<Result<_, _>>()?;
    let sum_to = |end: usize| {
        (1..end).fold(S::zero(), |acc, k| acc.add(&cs[k].mul(&ds[k].add(&ds[k - 1]))))
    };
    let rhs = if corrected {
        let head = div(
            &div(&ds[0].pow(2), &cs[0])?.sub(&div(&ds[n - 2].pow(2), &cs[n - 1])?),
            &xm1,
        )?;
        let last = div(&ds[n - 1].pow(2), &cs[n - 1].mul(&cs[n]))?;
        cs[n].mul(&xs).mul(&head.add(&sum_to(n - 1)).add(&last))
    } else {
        let bracket = div(&ds[0].pow(2), &cs[0])?
            .sub(&div(&ds[n - 1].pow(2), &cs[n])?)
            .add(&xm1.mul(&sum_to(n)));
        div(&cs[n].mul(&xs), &xm1)?.mul(&bracket)
    };
    Ok(vec![c.at(n - 1, 4)?.sub(&rhs)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { trials: 3, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionRecord {
    /// Input values as `p/q`, in symbol order.
    pub values: Vec<String>,
    pub residuals: usize,
    pub nonzero: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityVerdict {
    pub name: String,
    pub key: String,
    pub description: String,
    pub size: Option<usize>,
    pub shape: String,
    pub informational: bool,
    pub symbols: Vec<String>,
    /// Number of residual expressions checked symbolically.
    pub residuals: usize,
    pub symbolic_zero: bool,
    /// First nonzero symbolic residual, reduced, when there is one.
    pub residual: Option<String>,
    pub substitutions: Vec<SubstitutionRecord>,
    pub degree_check: Option<DegreeCheck>,
    pub error: Option<String>,
    pub passed: bool,
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let mut num: i64 = rng.gen_range(1..=12);
    if rng.gen_bool(0.5) {
        num = -num;
    }
    BigRational::new(BigInt::from(num), BigInt::from(rng.gen_range(1..=7)))
}

fn symbolic_residuals(
    id: IdentityName,
    size: Option<usize>,
    symbols: &[String],
) -> Result<(Vec<Fraction>, VarRegistry), EvolveError> {
    let mut reg = VarRegistry::new();
    let inputs: Vec<LaurentPoly> = symbols
        .iter()
        .map(|s| reg.symbol(s, VarRole::Parameter).expect("distinct symbol names"))
        .collect();
    let lift = |p: &LaurentPoly| Fraction::from(p.clone());
    Ok((id.residuals(size, &inputs, &lift)?, reg))
}

fn numeric_trial(
    id: IdentityName,
    size: Option<usize>,
    arity: usize,
    seed: u64,
) -> Result<SubstitutionRecord, EvolveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lift = |v: &BigRational| v.clone();
    let mut last_err = EvolveError::Degenerate;
    // Redraw when the random point is singular for the identity.
    for _ in 0..64 {
        let values: Vec<BigRational> = (0..arity).map(|_| random_rational(&mut rng)).collect();
        match id.residuals(size, &values, &lift) {
            Ok(res) => {
                return Ok(SubstitutionRecord {
                    values: values.iter().map(|v| v.to_string()).collect(),
                    residuals: res.len(),
                    nonzero: res.iter().filter(|r| !Scalar::is_zero(*r)).count(),
                })
            }
            Err(e @ EvolveError::Config(_)) => return Err(e),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// Verifies one entry symbolically and on `options.trials` random rational points.
pub fn verify_identity(
    id: IdentityName,
    size: Option<usize>,
    options: &VerifyOptions,
) -> Result<IdentityVerdict, IdentityError> {
    let size = id.resolve_size(size)?;
    let symbols = id.symbols(size);
    let mut verdict = IdentityVerdict {
        name: id.slug().into(),
        key: id.key().into(),
        description: id.description().into(),
        size,
        shape: id.grid_shape(size),
        informational: id.informational(),
        symbols: symbols.clone(),
        residuals: 0,
        symbolic_zero: false,
        residual: None,
        substitutions: Vec::new(),
        degree_check: None,
        error: None,
        passed: false,
    };
    match symbolic_residuals(id, size, &symbols) {
        Ok((res, reg)) => {
            verdict.residuals = res.len();
            verdict.symbolic_zero = res.iter().all(|r| r.num.is_zero());
            verdict.residual = res.iter().find(|r| !r.num.is_zero()).map(|r| {
                reduce_fraction(&r.num, &r.den)
                    .map(|q| q.to_text(&reg))
                    .unwrap_or_else(|e| e.to_string())
            });
        }
        Err(e) => verdict.error = Some(e.to_string()),
    }
    let base = options.seed ^ ((CATALOG.len() as u64 + id as u64) << 40);
    for trial in 0..options.trials {
        match numeric_trial(id, size, symbols.len(), base.wrapping_add(trial as u64)) {
            Ok(rec) => verdict.substitutions.push(rec),
            Err(e) => {
                verdict.error.get_or_insert_with(|| format!("substitution {trial}: {e}"));
            }
        }
    }
    if id == IdentityName::GRecurrence {
        match gamma_degree(size.expect("sized entry")) {
            Ok(check) => verdict.degree_check = Some(check),
            Err(e) => verdict.error = Some(e.to_string()),
        }
    }
    verdict.passed = verdict.error.is_none()
        && verdict.symbolic_zero
        && verdict.substitutions.len() == options.trials
        && verdict.substitutions.iter().all(|s| s.nonzero == 0)
        && verdict.degree_check.as_ref().is_none_or(|d| d.holds);
    Ok(verdict)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub verdicts: Vec<IdentityVerdict>,
    /// Catalog entries (informational ones excluded) that passed.
    pub passed: usize,
    pub catalog_size: usize,
}

impl CatalogReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.catalog_size
    }
}

/// Runs every entry, the informational companion included. `size` overrides
/// the default size of every sized entry.
pub fn verify_catalog(size: Option<usize>, options: &VerifyOptions) -> Result<CatalogReport, IdentityError> {
    let ids: Vec<IdentityName> = IdentityName::all().collect();
    let verdicts = par_map(&ids, |&id| {
        let s = size.map(|n| n.max(id.min_size().unwrap_or(0)));
        verify_identity(id, s, options)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let passed = verdicts.iter().filter(|v| !v.informational && v.passed).count();
    Ok(CatalogReport { verdicts, passed, catalog_size: CATALOG.len() })
}
