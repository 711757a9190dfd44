//! Sparse Laurent polynomials over the integers.

mod division;
mod monomial;
mod pack;
mod poly;
mod registry;
mod serial;
mod subst;

pub use division::DivisionError;
pub use monomial::Monomial;
pub use poly::{LaurentPoly, UnitClass, ZeroPolynomialError};
pub use registry::{RegistryError, VarId, VarRegistry, VarRole};
pub use serial::{ParseError, TermRecord};
pub use subst::{Assignment, SubstValue, Substituted, SubstituteError};

