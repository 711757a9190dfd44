pub mod audit;
pub mod evolve;
pub mod gcd;
pub mod identity;
pub mod laurent;
pub mod par;
pub mod scalar;
