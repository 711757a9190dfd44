//! Initial data: symbolic registries, special families and the I/V seeds.

use super::grid::{Rule, TauGrid};
use super::periodic::PeriodicConstants;
use super::{BoundaryKind, EvolveError};
use crate::laurent::{LaurentPoly, Monomial, VarRegistry, VarRole};
use crate::scalar::Scalar;

/// A symbolic grid together with the registry naming its variables.
#[derive(Clone, Debug)]
pub struct SymbolicGrid {
    pub registry: VarRegistry,
    pub grid: TauGrid<LaurentPoly>,
}

fn declare(reg: &mut VarRegistry, name: &str, role: VarRole) -> LaurentPoly {
    reg.symbol(name, role).expect("fresh registry")
}

fn open_symbolic(
    boundary: BoundaryKind,
    sites: usize,
    unit_x1: bool,
    rule: Rule,
) -> Result<SymbolicGrid, EvolveError> {
    let mut reg = VarRegistry::new();
    let mut row0 = Vec::with_capacity(sites);
    for n in 1..=sites {
        if n == 1 && unit_x1 {
            row0.push(LaurentPoly::one());
        } else {
            row0.push(declare(&mut reg, &format!("x{n}"), VarRole::InitialTau0));
        }
    }
    let row1 = (1..=sites)
        .map(|n| declare(&mut reg, &format!("y{n}"), VarRole::InitialTau1))
        .collect();
    let grid = TauGrid::open(boundary, row0, row1, rule)?;
    Ok(SymbolicGrid { registry: reg, grid })
}

/// Semi-infinite grid with `tau_n^0 = x_n`, `tau_n^1 = y_n` for `1 <= n <= sites`.
///
/// With `unit_x1` the first value is fixed to 1, the normalization under which
/// the I/V dictionary takes its simplest form.
pub fn semi_infinite_symbolic(sites: usize, unit_x1: bool, rule: Rule) -> Result<SymbolicGrid, EvolveError> {
    open_symbolic(BoundaryKind::SemiInfinite, sites, unit_x1, rule)
}

/// Molecule of size `n`: variables `x_1..x_{N+1}`, `y_1..y_{N+1}`.
pub fn molecule_symbolic(n: usize, rule: Rule) -> Result<SymbolicGrid, EvolveError> {
    open_symbolic(BoundaryKind::Molecule(n), n + 1, false, rule)
}

/// Semi-infinite grid from explicit rows (site 1 first).
pub fn semi_infinite_values<S: Scalar>(row0: Vec<S>, row1: Vec<S>) -> Result<TauGrid<S>, EvolveError> {
    TauGrid::open(BoundaryKind::SemiInfinite, row0, row1, Rule::Standard)
}

/// Molecule grid from explicit rows (sites `1..=N+1`).
pub fn molecule_values<S: Scalar>(n: usize, row0: Vec<S>, row1: Vec<S>) -> Result<TauGrid<S>, EvolveError> {
    TauGrid::open(BoundaryKind::Molecule(n), row0, row1, Rule::Standard)
}

/// Periodic tilde grid over the ring generated by `a_n` (2 <= n <= N-1),
/// `b_n` (1 <= n <= N-1), `K`, `lambda`, `mu`, with
/// `tau_0^0 = tau_1^0 = tau_0^1 = 1`.
pub fn periodic_symbolic(n: usize) -> Result<SymbolicGrid, EvolveError> {
    BoundaryKind::Periodic(n).validate()?;
    let mut reg = VarRegistry::new();
    let mut row0 = vec![LaurentPoly::one(), LaurentPoly::one()];
    for i in 2..n {
        row0.push(declare(&mut reg, &format!("a{i}"), VarRole::InitialTau0));
    }
    row0.truncate(n);
    let mut row1 = vec![LaurentPoly::one()];
    for i in 1..n {
        row1.push(declare(&mut reg, &format!("b{i}"), VarRole::InitialTau1));
    }
    let k = declare(&mut reg, "K", VarRole::BoundaryConstant);
    let lambda = declare(&mut reg, "lambda", VarRole::BoundaryConstant);
    let mu = declare(&mut reg, "mu", VarRole::BoundaryConstant);
    let grid = TauGrid::periodic(n, row0, row1, PeriodicConstants { k, lambda, mu })?;
    Ok(SymbolicGrid { registry: reg, grid })
}

/// The family `a_n = b_n = 1`, `K = lambda = 1`, `mu = 1/x` with `x` symbolic,
/// which is what the data `I_n^0 = 1`, `V_n^0 = 1` except `V_N^0 = 1/x` produce.
pub fn periodic_special_x(n: usize) -> Result<SymbolicGrid, EvolveError> {
    BoundaryKind::Periodic(n).validate()?;
    let mut reg = VarRegistry::new();
    let x = reg.declare("x", VarRole::Parameter).expect("fresh registry");
    let ones = vec![LaurentPoly::one(); n];
    let constants = PeriodicConstants {
        k: LaurentPoly::one(),
        lambda: LaurentPoly::one(),
        mu: LaurentPoly::monomial(Monomial::var(x, -1), 1),
    };
    let grid = TauGrid::periodic(n, ones.clone(), ones, constants)?;
    Ok(SymbolicGrid { registry: reg, grid })
}

/// Boundary constants and tau seeds derived from periodic I/V data.
#[derive(Clone, Debug)]
pub struct IvSeeds<S> {
    pub constants: PeriodicConstants<S>,
    /// `tau_n^0` for `0 <= n < N`.
    pub row0: Vec<S>,
    /// `tau_n^1` for `0 <= n < N`.
    pub row1: Vec<S>,
    i0: Vec<S>,
    v0: Vec<S>,
}

impl<S: Scalar> IvSeeds<S> {
    /// `tau_n^0 = prod_{i<n} (V_i I_i)^{n-i}` and `tau_n^1 = (prod_{i<=n} I_i) tau_n^0`
    /// at any site, with I/V indices taken modulo N.
    pub fn seed(&self, n: usize, t: usize) -> S {
        let period = self.i0.len();
        let at = |i: usize| (i - 1) % period;
        let mut tau0 = S::one();
        for i in 1..n {
            let vi = self.v0[at(i)].mul(&self.i0[at(i)]);
            tau0 = tau0.mul(&vi.pow((n - i) as u32));
        }
        if t == 0 {
            return tau0;
        }
        let mut prod_i = S::one();
        for i in 1..=n {
            prod_i = prod_i.mul(&self.i0[at(i)]);
        }
        prod_i.mul(&tau0)
    }
}

/// `K = prod (V_i I_i)^{N-i}`, `mu = prod V_i I_i`, `lambda = prod I_i` and the
/// tau seeds of rows 0 and 1. Inputs are `I_1..I_N`, `V_1..V_N`.
pub fn constants_from_iv<S: Scalar>(i0: &[S], v0: &[S]) -> Result<IvSeeds<S>, EvolveError> {
    let n = i0.len();
    if n != v0.len() || n < 2 {
        return Err(EvolveError::Config("need N >= 2 values of I and of V".into()));
    }
    for (idx, (a, b)) in i0.iter().zip(v0).enumerate() {
        if a.is_zero() || b.is_zero() {
            return Err(EvolveError::Singular { n: idx + 1, t: 0 });
        }
    }
    let mut k = S::one();
    let mut mu = S::one();
    let mut lambda = S::one();
    for idx in 0..n {
        let vi = v0[idx].mul(&i0[idx]);
        k = k.mul(&vi.pow((n - idx - 1) as u32));
        mu = mu.mul(&vi);
        lambda = lambda.mul(&i0[idx]);
    }
    let mut seeds = IvSeeds {
        constants: PeriodicConstants { k, lambda, mu },
        row0: Vec::new(),
        row1: Vec::new(),
        i0: i0.to_vec(),
        v0: v0.to_vec(),
    };
    seeds.row0 = (0..n).map(|m| seeds.seed(m, 0)).collect();
    seeds.row1 = (0..n).map(|m| seeds.seed(m, 1)).collect();
    Ok(seeds)
}

/// Periodic tilde grid seeded from I/V data.
pub fn periodic_from_iv<S: Scalar>(i0: &[S], v0: &[S]) -> Result<(TauGrid<S>, IvSeeds<S>), EvolveError> {
    let seeds = constants_from_iv(i0, v0)?;
    let grid = TauGrid::periodic(
        i0.len(),
        seeds.row0.clone(),
        seeds.row1.clone(),
        seeds.constants.clone(),
    )?;
    Ok((grid, seeds))
}
