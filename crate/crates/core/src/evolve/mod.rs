//! Evolution of the discrete Toda equation in bilinear and I/V form.

mod grid;
mod init;
mod iv;
mod periodic;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::DivisionError;

pub use grid::{Rule, TauGrid};
pub use init::{
    constants_from_iv, molecule_symbolic, molecule_values, periodic_from_iv, periodic_special_x,
    periodic_symbolic, semi_infinite_symbolic, semi_infinite_values, IvSeeds, SymbolicGrid,
};
pub use iv::{iv_residuals, step_iv_open, step_iv_periodic, tau_to_iv, IvRow, IvState};
pub use periodic::{quasi_periodicity_check, quasi_periodicity_residuals, tilde_exponent, PeriodicConstants, QuasiPeriodRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "n")]
pub enum BoundaryKind {
    SemiInfinite,
    Molecule(usize),
    Periodic(usize),
}

impl BoundaryKind {
    pub fn validate(self) -> Result<Self, EvolveError> {
        match self {
            BoundaryKind::Molecule(0) => Err(EvolveError::Config("molecule needs N >= 1".into())),
            BoundaryKind::Periodic(n) if n < 2 => {
                Err(EvolveError::Config("periodic needs N >= 2".into()))
            }
            b => Ok(b),
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum EvolveError {
    #[error("division at (n={n}, t={t}) is not exact: the value leaves the Laurent ring")]
    NotLaurent { n: usize, t: usize },
    #[error("singular data: zero divisor at (n={n}, t={t})")]
    Singular { n: usize, t: usize },
    #[error("degenerate periodic data: the product of V equals the product of I")]
    Degenerate,
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl EvolveError {
    pub(crate) fn at(err: DivisionError, n: usize, t: usize) -> Self {
        match err {
            DivisionError::ByZero => EvolveError::Singular { n, t },
            DivisionError::NotDivisible => EvolveError::NotLaurent { n, t },
        }
    }
}
