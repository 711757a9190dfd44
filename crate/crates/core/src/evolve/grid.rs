use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::periodic::PeriodicConstants;
use super::{BoundaryKind, EvolveError};
use crate::scalar::Scalar;

/// Nonlinearity of the bilinear update.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `tau_n^{t+1} tau_n^{t-1} = tau_{n-1}^{t+1} tau_{n+1}^{t-1} + (tau_n^t)^2`
    #[default]
    Standard,
    /// The same with `(tau_n^t)^3`, a non-integrable control.
    Cubed,
}

/// Field of tau values indexed by site `n` and time `t`.
///
/// Open grids store sites `1..` (semi-infinite) or `1..=N+1` (molecule); the
/// boundary sites `0` and `N+2` are implied. Periodic grids store sites
/// `0..N` and reach further sites through the quasi-periodicity.
#[derive(Clone, Debug)]
pub struct TauGrid<S> {
    pub boundary: BoundaryKind,
    pub rule: Rule,
    pub(crate) cells: BTreeMap<(usize, usize), S>,
    pub(crate) constants: Option<PeriodicConstants<S>>,
    /// Highest row that has been attempted.
    pub(crate) top: usize,
    pub(crate) failure: Option<EvolveError>,
    one: S,
    zero: S,
}

impl<S: Scalar> TauGrid<S> {
    /// Open grid from rows `t = 0` and `t = 1`, listed from site 1.
    pub fn open(
        boundary: BoundaryKind,
        row0: Vec<S>,
        row1: Vec<S>,
        rule: Rule,
    ) -> Result<Self, EvolveError> {
        let boundary = boundary.validate()?;
        if row0.len() != row1.len() || row0.is_empty() {
            return Err(EvolveError::Config("initial rows must have equal, nonzero length".into()));
        }
        match boundary {
            BoundaryKind::Molecule(n) if row0.len() != n + 1 => {
                return Err(EvolveError::Config(format!(
                    "molecule N={n} needs {} initial sites",
                    n + 1
                )))
            }
            BoundaryKind::Periodic(_) => {
                return Err(EvolveError::Config("use TauGrid::periodic".into()))
            }
            _ => {}
        }
        let mut cells = BTreeMap::new();
        for (i, (a, b)) in row0.into_iter().zip(row1).enumerate() {
            cells.insert((i + 1, 0), a);
            cells.insert((i + 1, 1), b);
        }
        Ok(TauGrid {
            boundary,
            rule,
            cells,
            constants: None,
            top: 1,
            failure: None,
            one: S::one(),
            zero: S::zero(),
        })
    }

    pub(crate) fn periodic_raw(
        n: usize,
        row0: Vec<S>,
        row1: Vec<S>,
        constants: PeriodicConstants<S>,
    ) -> Result<Self, EvolveError> {
        let boundary = BoundaryKind::Periodic(n).validate()?;
        if row0.len() != n || row1.len() != n {
            return Err(EvolveError::Config(format!("periodic N={n} needs {n} initial sites")));
        }
        let mut cells = BTreeMap::new();
        for (i, (a, b)) in row0.into_iter().zip(row1).enumerate() {
            cells.insert((i, 0), a);
            cells.insert((i, 1), b);
        }
        Ok(TauGrid {
            boundary,
            rule: Rule::Standard,
            cells,
            constants: Some(constants),
            top: 1,
            failure: None,
            one: S::one(),
            zero: S::zero(),
        })
    }

    /// Stored or boundary-implied value (boundary sites exist at every time);
    /// periodic images beyond the window need [`TauGrid::value`].
    pub fn get(&self, n: usize, t: usize) -> Option<&S> {
        match self.boundary {
            BoundaryKind::SemiInfinite | BoundaryKind::Molecule(_) if n == 0 => Some(&self.one),
            BoundaryKind::Molecule(m) if n == m + 2 => Some(&self.zero),
            BoundaryKind::Molecule(m) if n > m + 2 => None,
            _ => self.cells.get(&(n, t)),
        }
    }

    /// Stored cells in `(n, t)` order, boundary sites excluded.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.cells.iter().map(|(&(n, t), v)| (n, t, v))
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Highest row that has been attempted.
    pub fn top_row(&self) -> usize {
        self.top
    }

    /// The first failed division, if evolution stopped early.
    pub fn failure(&self) -> Option<&EvolveError> {
        self.failure.as_ref()
    }

    pub fn constants(&self) -> Option<&PeriodicConstants<S>> {
        self.constants.as_ref()
    }

    /// Advances until row `t_max` exists or a division fails.
    pub fn evolve(&mut self, t_max: usize) -> Result<(), EvolveError> {
        if let Some(f) = &self.failure {
            return Err(f.clone());
        }
        while self.top < t_max {
            let res = match self.boundary {
                BoundaryKind::Periodic(_) => self.step_periodic(),
                _ => self.step_open(),
            };
            if let Err(e) = res {
                self.failure = Some(e.clone());
                return Err(e);
            }
        }
        Ok(())
    }

    /// One row of the open-boundary update, swept with `n` ascending.
    fn step_open(&mut self) -> Result<(), EvolveError> {
        let t = self.top;
        let new = t + 1;
        let last_site = match self.boundary {
            BoundaryKind::Molecule(m) => m + 1,
            _ => usize::MAX,
        };
        let mut n = 1;
        while n <= last_site {
            let (Some(prev), Some(cur), Some(right), Some(left)) = (
                self.get(n, t - 1),
                self.get(n, t),
                self.get(n + 1, t - 1),
                self.get(n - 1, new),
            ) else {
                break;
            };
            let nonlinear = match self.rule {
                Rule::Standard => cur.mul(cur),
                Rule::Cubed => cur.mul(cur).mul(cur),
            };
            let numerator = left.mul(right).add(&nonlinear);
            let value = numerator
                .try_div(prev)
                .map_err(|e| EvolveError::at(e, n, new))?;
            self.cells.insert((n, new), value);
            n += 1;
        }
        self.top = new;
        Ok(())
    }

    /// Bilinear residual `tau^{t+1} tau^{t-1} - tau_{n-1}^{t+1} tau_{n+1}^{t-1} - w (tau^t)^2`
    /// at an interior cell, with `w = 1` for raw grids.
    pub fn bilinear_residual(&self, n: usize, t: usize, weight: &S) -> Option<S> {
        if t < 1 {
            return None;
        }
        let (up, down, cur) = (self.value(n, t + 1)?, self.value(n, t - 1)?, self.value(n, t)?);
        let left = if n == 0 {
            match self.boundary {
                BoundaryKind::Periodic(_) => self.value_left(t + 1)?,
                _ => return None,
            }
        } else {
            self.value(n - 1, t + 1)?
        };
        let right = self.value(n + 1, t - 1)?;
        let nonlinear = match self.rule {
            Rule::Standard => cur.mul(&cur),
            Rule::Cubed => cur.mul(&cur).mul(&cur),
        };
        Some(up.mul(&down).sub(&left.mul(&right)).sub(&weight.mul(&nonlinear)))
    }

    /// Value at any site, including periodic images beyond the stored window.
    pub fn value(&self, n: usize, t: usize) -> Option<S> {
        match self.boundary {
            BoundaryKind::Periodic(period) if n >= period => {
                let base = self.value(n - period, t)?;
                let c = self.constants.as_ref()?;
                Some(base.mul(&c.shift_factor(n - period, t)))
            }
            _ => self.get(n, t).cloned(),
        }
    }

    /// `tau_{-1}^t` of a periodic grid, from `tau_{N-1}^t = K lambda^t mu^{-1} tau_{-1}^t`.
    fn value_left(&self, t: usize) -> Option<S> {
        let BoundaryKind::Periodic(period) = self.boundary else {
            return None;
        };
        let c = self.constants.as_ref()?;
        let v = self.value(period - 1, t)?;
        v.try_div(&c.shift_factor(0, t).try_div(&c.mu).ok()?).ok()
    }
}
