//! The nonlinear I/V form and its dictionary with tau.

use super::grid::TauGrid;
use super::{BoundaryKind, EvolveError};
use crate::scalar::Scalar;

/// One time row; entry `k` belongs to site `k + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct IvRow<S> {
    pub i: Vec<S>,
    pub v: Vec<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IvState<S> {
    pub boundary: BoundaryKind,
    pub rows: Vec<IvRow<S>>,
}

impl<S: Scalar> IvState<S> {
    pub fn new(boundary: BoundaryKind, row: IvRow<S>) -> Self {
        IvState { boundary, rows: vec![row] }
    }

    pub fn latest(&self) -> &IvRow<S> {
        self.rows.last().expect("at least one row")
    }

    /// Advances by one step with the boundary's update.
    pub fn step(&mut self) -> Result<(), EvolveError> {
        let row = match self.boundary {
            BoundaryKind::Periodic(_) => step_iv_periodic(self.latest(), self.rows.len() - 1)?,
            _ => step_iv_open(self.boundary, self.latest(), self.rows.len() - 1)?,
        };
        self.rows.push(row);
        Ok(())
    }
}

/// `I_n^t = tau_{n-1}^t tau_n^{t+1} / (tau_n^t tau_{n-1}^{t+1})` and
/// `V_n^t = tau_{n+1}^t tau_{n-1}^{t+1} / (tau_n^t tau_n^{t+1})`, with every
/// tau value mapped through `lift` into a field-like scalar.
pub fn tau_to_iv<S: Scalar, T: Scalar>(
    grid: &TauGrid<S>,
    t: usize,
    lift: impl Fn(&S) -> T,
) -> Result<IvRow<T>, EvolveError> {
    let sites = match grid.boundary {
        BoundaryKind::Molecule(m) => m + 1,
        BoundaryKind::Periodic(m) => m,
        BoundaryKind::SemiInfinite => {
            let mut n = 1;
            while grid.value(n + 1, t).is_some() && grid.value(n, t + 1).is_some() {
                n += 1;
            }
            n - 1
        }
    };
    let cell = |n: usize, s: usize| -> Result<T, EvolveError> {
        if n == 0 {
            if let BoundaryKind::Periodic(_) = grid.boundary {
                // tau_0 is stored for periodic grids.
                return grid.value(0, s).map(|v| lift(&v)).ok_or(EvolveError::Config(format!(
                    "row {s} missing"
                )));
            }
        }
        grid.value(n, s)
            .map(|v| lift(&v))
            .ok_or_else(|| EvolveError::Config(format!("tau at (n={n}, t={s}) missing")))
    };
    let mut row = IvRow { i: Vec::with_capacity(sites), v: Vec::with_capacity(sites) };
    for n in 1..=sites {
        let (a, b, c, d) = (cell(n - 1, t)?, cell(n, t + 1)?, cell(n, t)?, cell(n - 1, t + 1)?);
        let i = a.mul(&b).try_div(&c.mul(&d)).map_err(|e| EvolveError::at(e, n, t))?;
        let e = cell(n + 1, t)?;
        let v = e.mul(&d).try_div(&c.mul(&b)).map_err(|err| EvolveError::at(err, n, t))?;
        row.i.push(i);
        row.v.push(v);
    }
    Ok(row)
}

/// One step of `I_n^{t+1} = I_n^t + V_n^t - V_{n-1}^{t+1}`,
/// `V_n^{t+1} = I_{n+1}^t V_n^t / I_n^{t+1}` with `V_0 = 0` (and `V_{N+1} = 0`
/// for the molecule). Semi-infinite rows lose their last site each step.
pub fn step_iv_open<S: Scalar>(boundary: BoundaryKind, row: &IvRow<S>, t: usize) -> Result<IvRow<S>, EvolveError> {
    let len = row.i.len();
    let (new_len, v_len) = match boundary {
        BoundaryKind::Molecule(m) => (m + 1, m),
        BoundaryKind::SemiInfinite => (len.saturating_sub(1), len.saturating_sub(1)),
        BoundaryKind::Periodic(_) => unreachable!("periodic rows use step_iv_periodic"),
    };
    let mut out = IvRow { i: Vec::with_capacity(new_len), v: Vec::with_capacity(new_len) };
    let mut v_left = S::zero();
    for k in 0..new_len {
        let i_new = row.i[k].add(&row.v[k]).sub(&v_left);
        if i_new.is_zero() {
            return Err(EvolveError::Singular { n: k + 1, t: t + 1 });
        }
        let v_new = if k < v_len {
            row.i[k + 1]
                .mul(&row.v[k])
                .try_div(&i_new)
                .map_err(|e| EvolveError::at(e, k + 1, t + 1))?
        } else {
            S::zero()
        };
        v_left = v_new.clone();
        out.i.push(i_new);
        out.v.push(v_new);
    }
    Ok(out)
}

/// The periodic step with `Y_n = (1 - prod V / prod I) / (1 + sum_{k=1}^{N-1} prod_{j=1}^{k} V_{n-j}/I_{n-j})`,
/// `I_n^{t+1} = V_n^t + I_n^t Y_n` and `V_n^{t+1} = I_{n+1}^t V_n^t / I_n^{t+1}`.
///
/// This is the non-trivial branch; the other solution `I^{t+1} = V^t` is never returned.
pub fn step_iv_periodic<S: Scalar>(row: &IvRow<S>, t: usize) -> Result<IvRow<S>, EvolveError> {
    let n = row.i.len();
    let prod = |xs: &[S]| xs.iter().fold(S::one(), |acc, x| acc.mul(x));
    let (pi, pv) = (prod(&row.i), prod(&row.v));
    if pi == pv {
        return Err(EvolveError::Degenerate);
    }
    let numer = S::one()
        .sub(&pv.try_div(&pi).map_err(|e| EvolveError::at(e, 0, t))?);
    let ratios: Vec<S> = (0..n)
        .map(|k| row.v[k].try_div(&row.i[k]).map_err(|e| EvolveError::at(e, k + 1, t)))
        .collect::<Result<_, _>>()?;
    let mut out = IvRow { i: Vec::with_capacity(n), v: Vec::with_capacity(n) };
    for k in 0..n {
        let mut denom = S::one();
        let mut term = S::one();
        for j in 1..n {
            term = term.mul(&ratios[(k + n - j) % n]);
            denom = denom.add(&term);
        }
        let y = numer.try_div(&denom).map_err(|e| EvolveError::at(e, k + 1, t))?;
        let i_new = row.v[k].add(&row.i[k].mul(&y));
        if i_new.is_zero() {
            return Err(EvolveError::Singular { n: k + 1, t: t + 1 });
        }
        out.i.push(i_new);
    }
    for k in 0..n {
        let v_new = row.i[(k + 1) % n]
            .mul(&row.v[k])
            .try_div(&out.i[k])
            .map_err(|e| EvolveError::at(e, k + 1, t + 1))?;
        out.v.push(v_new);
    }
    Ok(out)
}

/// Residuals of both equations between consecutive rows, site by site.
pub fn iv_residuals<S: Scalar>(boundary: BoundaryKind, cur: &IvRow<S>, next: &IvRow<S>) -> Vec<S> {
    let periodic = matches!(boundary, BoundaryKind::Periodic(_));
    let len = next.i.len().min(cur.i.len());
    let mut out = Vec::with_capacity(2 * len);
    for k in 0..len {
        let v_left = if k > 0 {
            next.v[k - 1].clone()
        } else if periodic {
            next.v[len - 1].clone()
        } else {
            S::zero()
        };
        out.push(next.i[k].sub(&cur.i[k]).sub(&cur.v[k]).add(&v_left));
        let i_right = if k + 1 < cur.i.len() {
            Some(cur.i[k + 1].clone())
        } else if periodic {
            Some(cur.i[0].clone())
        } else if let BoundaryKind::Molecule(_) = boundary {
            Some(S::zero())
        } else {
            None
        };
        if let Some(ir) = i_right {
            out.push(next.v[k].mul(&next.i[k]).sub(&ir.mul(&cur.v[k])));
        }
    }
    out
}
