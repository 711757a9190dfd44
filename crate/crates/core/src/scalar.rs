//! The arithmetic the evolution engines need, over exact symbolic or numeric values.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::gcd::RationalFunction;
use crate::laurent::{DivisionError, LaurentPoly};

/// Exact commutative ring with a partial division.
///
/// `try_div` fails with [`DivisionError::NotDivisible`] when the quotient
/// leaves the value domain (for Laurent polynomials: leaves the Laurent ring).
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn try_div(&self, other: &Self) -> Result<Self, DivisionError>;

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Scalar for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn from_int(v: i64) -> Self {
        LaurentPoly::constant(v)
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_div(&self, other: &Self) -> Result<Self, DivisionError> {
        self.exact_div(other)
    }
    fn pow(&self, e: u32) -> Self {
        LaurentPoly::pow(self, e)
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_div(&self, other: &Self) -> Result<Self, DivisionError> {
        if Zero::is_zero(other) {
            Err(DivisionError::ByZero)
        } else {
            Ok(self / other)
        }
    }
    fn pow(&self, e: u32) -> Self {
        num_traits::pow(self.clone(), e as usize)
    }
}

impl Scalar for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn from_int(v: i64) -> Self {
        RationalFunction::from_poly(LaurentPoly::constant(v))
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RationalFunction::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RationalFunction::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RationalFunction::mul(self, other)
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
    fn try_div(&self, other: &Self) -> Result<Self, DivisionError> {
        self.div(other)
    }
    fn pow(&self, e: u32) -> Self {
        RationalFunction::pow(self, e)
    }
}

/// Unreduced quotient of Laurent polynomials.
///
/// Cheaper than [`RationalFunction`] because it never computes a gcd; used
/// where only a zero test is needed at the end.
#[derive(Clone, Debug)]
pub struct Fraction {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl Fraction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, DivisionError> {
        if den.is_zero() {
            return Err(DivisionError::ByZero);
        }
        Ok(Fraction { num, den }.simplified())
    }

    /// Cancels the denominator when it divides the numerator.
    fn simplified(self) -> Self {
        if self.den.is_one() {
            return self;
        }
        if self.den.is_unit() || self.num.is_zero() {
            let q = self.num.exact_div(&self.den).expect("unit divides");
            return Fraction { num: q, den: LaurentPoly::one() };
        }
        self
    }

    pub fn into_poly(self) -> Option<LaurentPoly> {
        if self.den.is_one() {
            Some(self.num)
        } else {
            self.num.exact_div(&self.den).ok()
        }
    }
}

impl PartialEq for Fraction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Scalar for Fraction {
    fn zero() -> Self {
        Fraction { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }
    fn one() -> Self {
        Fraction { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }
    fn from_int(v: i64) -> Self {
        Fraction { num: LaurentPoly::constant(v), den: LaurentPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Fraction { num: &self.num + &other.num, den: self.den.clone() }.simplified();
        }
        Fraction {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
        .simplified()
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        Fraction { num: &self.num * &other.num, den: &self.den * &other.den }.simplified()
    }
    fn neg(&self) -> Self {
        Fraction { num: -&self.num, den: self.den.clone() }
    }
    fn try_div(&self, other: &Self) -> Result<Self, DivisionError> {
        if other.num.is_zero() {
            return Err(DivisionError::ByZero);
        }
        Ok(Fraction { num: &self.num * &other.den, den: &self.den * &other.num }.simplified())
    }
    fn pow(&self, e: u32) -> Self {
        Fraction { num: self.num.pow(e), den: self.den.pow(e) }
    }
}

impl From<LaurentPoly> for Fraction {
    fn from(p: LaurentPoly) -> Self {
        Fraction { num: p, den: LaurentPoly::one() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::VarId;

    #[test]
    fn fraction_equality_is_cross_multiplication() {
        let x = LaurentPoly::var(VarId(0));
        let a = Fraction::new(&x * &x - LaurentPoly::one(), &x - &LaurentPoly::one()).unwrap();
        let b = Fraction::from(&x + &LaurentPoly::one());
        assert_eq!(a, b);
        assert!(a.sub(&b).is_zero());
    }

    #[test]
    fn rational_division_by_zero() {
        let one = <BigRational as Scalar>::one();
        assert_eq!(one.try_div(&<BigRational as Scalar>::zero()), Err(DivisionError::ByZero));
    }
}
