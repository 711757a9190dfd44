//! Periodic boundary: tilde-coordinate stepping and quasi-periodicity.
//!
//! With `r = lambda^2 / mu` and `s = r - 1`, the rescaled values
//! `tilde_n^t = s^{t(t-1)/2} tau_n^t` satisfy
//! `tilde_n^{t+1} tilde_n^{t-1} = tilde_{n-1}^{t+1} tilde_{n+1}^{t-1} + s (tilde_n^t)^2`
//! and stay Laurent. Site 0 of each new row comes from the closed summation
//! formula, the remaining sites from the recurrence.

use std::collections::BTreeMap;

use serde::Serialize;

use super::grid::TauGrid;
use super::{BoundaryKind, EvolveError};
use crate::scalar::Scalar;

/// `K`, `lambda`, `mu` of `tau_{n+N}^t = K lambda^t mu^n tau_n^t`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicConstants<S> {
    pub k: S,
    pub lambda: S,
    pub mu: S,
}

impl<S: Scalar> PeriodicConstants<S> {
    /// `K lambda^t mu^m`, the factor with `tau_{m+N}^t = factor * tau_m^t`.
    pub fn shift_factor(&self, m: usize, t: usize) -> S {
        self.k
            .mul(&self.lambda.pow(t as u32))
            .mul(&self.mu.pow(m as u32))
    }

    /// `lambda^2 / mu`.
    pub fn ratio(&self) -> Result<S, EvolveError> {
        self.lambda
            .mul(&self.lambda)
            .try_div(&self.mu)
            .map_err(|_| EvolveError::Config("mu must be nonzero".into()))
    }

    /// `lambda^2 / mu - 1`, the weight of the tilde equation.
    pub fn weight(&self) -> Result<S, EvolveError> {
        Ok(self.ratio()?.sub(&S::one()))
    }
}

/// Exponent of `lambda^2/mu - 1` in `tau^t = (lambda^2/mu - 1)^e tilde^t`.
pub fn tilde_exponent(t: usize) -> i64 {
    let t = t as i64;
    -(t * (t - 1) / 2)
}

impl<S: Scalar> TauGrid<S> {
    /// Periodic tilde grid from rows `t = 0, 1` at sites `0..N`.
    pub fn periodic(
        n: usize,
        row0: Vec<S>,
        row1: Vec<S>,
        constants: PeriodicConstants<S>,
    ) -> Result<Self, EvolveError> {
        Self::periodic_raw(n, row0, row1, constants)
    }

    pub(crate) fn step_periodic(&mut self) -> Result<(), EvolveError> {
        let BoundaryKind::Periodic(period) = self.boundary else {
            unreachable!("periodic step on an open grid")
        };
        let t = self.top;
        let new = t + 1;
        let c = self.constants.clone().expect("periodic constants");
        let r = c.ratio()?;
        let s = c.weight()?;
        if s.is_zero() {
            return Err(EvolveError::Degenerate);
        }
        let squares: Vec<S> = (0..period)
            .map(|j| {
                let v = &self.cells[&(j, t)];
                v.mul(v)
            })
            .collect();
        let first = match self.summation_site0_folded(period, t, &r, &c, &squares) {
            Some(v) => v,
            None => self.summation_site0(period, t, &r, &c)?,
        };
        self.cells.insert((0, new), first);
        for n in 1..period {
            let left = self.cells[&(n - 1, new)].clone();
            let right = self.value(n + 1, t - 1).expect("row t-1 is complete");
            let prev = &self.cells[&(n, t - 1)];
            let numerator = left.mul(&right).add(&s.mul(&squares[n]));
            let value = numerator
                .try_div(prev)
                .map_err(|e| EvolveError::at(e, n, new))?;
            self.cells.insert((n, new), value);
        }
        self.top = new;
        Ok(())
    }

    /// The summation formula folded from the last site down: each cell of row
    /// `t-1` occurs in two neighbouring terms only, so after adding the second
    /// of them the numerator is divisible by that cell. Intermediate sizes stay
    /// near the size of the result. Returns `None` when a fold division is not
    /// exact, which can happen for special data where neighbouring cells share
    /// a factor; the caller then falls back to the plain common denominator.
    fn summation_site0_folded(
        &self,
        period: usize,
        t: usize,
        r: &S,
        c: &PeriodicConstants<S>,
        squares: &[S],
    ) -> Option<S> {
        let prev = |j: usize| &self.cells[&(j, t - 1)];
        let unit = c.shift_factor(0, t - 1);
        let sq = |j: usize| squares[j].clone();
        // acc / (unit * tilde_{j}^{t-1}) after folding sites j..N-1 into site 0's term.
        let acc = r.mul(&sq(0));
        if period == 2 {
            // r C0^2 / B0 + C1^2 / (unit B0)
            let total = unit.mul(&acc).add(&sq(1));
            return total.try_div(&unit.mul(prev(0))).ok();
        }
        let last = period - 1;
        let mut acc = unit
            .mul(prev(last))
            .mul(&acc)
            .add(&prev(1).mul(&sq(last)))
            .try_div(prev(0))
            .ok()?;
        for j in (2..last).rev() {
            acc = acc
                .mul(prev(j))
                .add(&unit.mul(prev(1)).mul(&sq(j)))
                .try_div(prev(j + 1))
                .ok()?;
        }
        acc.add(&unit.mul(&sq(1))).try_div(&unit.mul(prev(2))).ok()
    }

    /// `tilde_0^{t+1} = tilde_1^{t-1} [ r S_0 + sum_{j>=1} S_j ]` with
    /// `S_j = (tilde_j^t)^2 / (tilde_j^{t-1} tilde_{j+1}^{t-1})`, over a common
    /// denominator so that only exact divisions occur.
    fn summation_site0(
        &self,
        period: usize,
        t: usize,
        r: &S,
        c: &PeriodicConstants<S>,
    ) -> Result<S, EvolveError> {
        let prev = |j: usize| &self.cells[&(j, t - 1)];
        let cur = |j: usize| &self.cells[&(j, t)];
        // tilde_N^{t-1} = unit * tilde_0^{t-1}
        let unit = c.shift_factor(0, t - 1);
        // Denominator factors: site 0 and sites 2..N-1 of row t-1.
        let mut factors: Vec<usize> = vec![0];
        factors.extend(2..period);
        let site = |j: usize| if j == period { 0 } else { j };

        // Each term: coefficient, numerator, denominator sites, divided by the unit.
        let mut terms: Vec<(S, Vec<usize>, bool)> = Vec::with_capacity(period);
        // j = 0: tilde_1 cancels.
        terms.push((r.mul(&cur(0).mul(cur(0))), vec![0], false));
        if period >= 2 {
            // j = 1: tilde_1 cancels, denominator tilde_2 (a unit times tilde_0 when N = 2).
            terms.push((cur(1).mul(cur(1)), vec![site(2)], period == 2));
        }
        for j in 2..period {
            let num = prev(1).mul(&cur(j).mul(cur(j)));
            terms.push((num, vec![j, site(j + 1)], j + 1 == period));
        }

        let mut total = S::zero();
        for (num, den_sites, over_unit) in terms {
            let mut rest = factors.clone();
            for d in &den_sites {
                let pos = rest.iter().position(|f| f == d).expect("denominator site is a factor");
                rest.remove(pos);
            }
            let mut term = num;
            for f in rest {
                term = term.mul(prev(f));
            }
            if over_unit {
                term = term.try_div(&unit).map_err(|e| EvolveError::at(e, 0, t + 1))?;
            }
            total = total.add(&term);
        }
        for f in factors {
            total = total
                .try_div(prev(f))
                .map_err(|e| EvolveError::at(e, 0, t + 1))?;
        }
        Ok(total)
    }

    /// Right-hand side of the summation formula at any site, for cross-checks.
    pub fn summation_value(&self, n: usize, t: usize) -> Option<S> {
        let BoundaryKind::Periodic(period) = self.boundary else {
            return None;
        };
        if t < 1 || n >= period {
            return None;
        }
        let c = self.constants.as_ref()?;
        let r = c.ratio().ok()?;
        let mut bracket = S::zero();
        for j in 0..period {
            let sj = self
                .value(j, t)?
                .pow(2)
                .try_div(&self.value(j, t - 1)?.mul(&self.value(j + 1, t - 1)?))
                .ok()?;
            bracket = bracket.add(&if j <= n { r.mul(&sj) } else { sj });
        }
        Some(self.value(n + 1, t - 1)?.mul(&bracket))
    }
}

/// One comparison `tau_{n+N}^t` against `K lambda^t mu^n tau_n^t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiPeriodRecord {
    pub n: usize,
    pub t: usize,
    pub holds: bool,
}

/// Extends a periodic grid to sites `0..=2N-1` without using the period.
///
/// Site 0 keeps the engine's values; rows `t = 0, 1` at every site come from
/// `seed(n, t)`; every other cell is computed from the local recurrence with
/// `n` ascending and no wrap-around. The extended columns are then compared
/// with the quasi-periodic images `K lambda^t mu^n tau_n^t`.
pub fn quasi_periodicity_check<S: Scalar>(
    grid: &TauGrid<S>,
    t_max: usize,
    weight: &S,
    seed: impl Fn(usize, usize) -> S,
) -> Result<Vec<QuasiPeriodRecord>, EvolveError> {
    Ok(quasi_periodicity_residuals(grid, t_max, weight, seed)?
        .into_iter()
        .map(|(n, t, r)| QuasiPeriodRecord { n, t, holds: r.is_zero() })
        .collect())
}

/// Differences `tau_{n+N}^t - K lambda^t mu^n tau_n^t` behind
/// [`quasi_periodicity_check`].
pub fn quasi_periodicity_residuals<S: Scalar>(
    grid: &TauGrid<S>,
    t_max: usize,
    weight: &S,
    seed: impl Fn(usize, usize) -> S,
) -> Result<Vec<(usize, usize, S)>, EvolveError> {
    let BoundaryKind::Periodic(period) = grid.boundary else {
        return Err(EvolveError::Config("quasi-periodicity needs a periodic grid".into()));
    };
    let c = grid.constants().expect("periodic constants");
    let width = 2 * period + t_max;
    let mut ext: BTreeMap<(usize, usize), S> = BTreeMap::new();
    for n in 0..=width {
        ext.insert((n, 0), seed(n, 0));
        ext.insert((n, 1), seed(n, 1));
    }
    for t in 2..=t_max {
        ext.insert(
            (0, t),
            grid.value(0, t)
                .ok_or_else(|| EvolveError::Config(format!("row {t} not evolved")))?,
        );
    }
    for t in 1..t_max {
        for n in 1..=width {
            let (Some(left), Some(right), Some(cur), Some(prev)) = (
                ext.get(&(n - 1, t + 1)),
                ext.get(&(n + 1, t - 1)),
                ext.get(&(n, t)),
                ext.get(&(n, t - 1)),
            ) else {
                break;
            };
            let numerator = left.mul(right).add(&weight.mul(&cur.mul(cur)));
            let v = numerator
                .try_div(prev)
                .map_err(|e| EvolveError::at(e, n, t + 1))?;
            ext.insert((n, t + 1), v);
        }
    }
    let mut out = Vec::new();
    for t in 0..=t_max {
        for n in 0..period {
            if let (Some(lhs), Some(base)) = (ext.get(&(n + period, t)), ext.get(&(n, t))) {
                out.push((n, t, lhs.sub(&base.mul(&c.shift_factor(n, t)))));
            }
        }
    }
    Ok(out)
}
