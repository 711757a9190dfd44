use std::fmt;

use crate::laurent::{DivisionError, LaurentPoly, VarRegistry};

use super::{coprime, gcd};

/// A reduced quotient of Laurent polynomials.
///
/// The denominator has no monomial content and a positive leading
/// coefficient; any unit is carried by the numerator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Reduces `num / den` to lowest terms.
pub fn reduce_fraction(num: &LaurentPoly, den: &LaurentPoly) -> Result<RationalFunction, DivisionError> {
    if den.is_zero() {
        return Err(DivisionError::ByZero);
    }
    if num.is_zero() {
        return Ok(RationalFunction::zero());
    }
    // Move the unit of the denominator into the numerator first.
    let unit = den.unit_part();
    let unit_inv = unit.unit_inverse().expect("unit part is a unit");
    let den = den.unit_normal();
    let num = num * &unit_inv;
    if den.is_one() {
        return Ok(RationalFunction { num, den });
    }
    let g = gcd(&num, &den);
    if g.is_one() {
        return Ok(RationalFunction { num, den });
    }
    let num = num.exact_div(&g).expect("gcd divides numerator");
    let den = den.exact_div(&g).expect("gcd divides denominator");
    // `den / g` can pick up a sign or monomial again.
    let unit_inv = den.unit_part().unit_inverse().expect("unit");
    Ok(RationalFunction {
        num: &num * &unit_inv,
        den: den.unit_normal(),
    })
}

/// True when all four numerator/denominator pairs of `f` and `g` are coprime.
pub fn rational_coprime(f: &RationalFunction, g: &RationalFunction) -> bool {
    coprime(&f.num, &g.num)
        && coprime(&f.num, &g.den)
        && coprime(&f.den, &g.num)
        && coprime(&f.den, &g.den)
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFunction {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the value lies in the Laurent ring.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return reduce_fraction(&(&self.num + &other.num), &self.den).expect("nonzero den");
        }
        let g = gcd(&self.den, &other.den);
        let a = self.den.exact_div(&g).expect("gcd divides");
        let b = other.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&other.num * &a);
        reduce_fraction(&num, &(&self.den * &b)).expect("nonzero den")
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Cross-cancel before multiplying to keep the operands small.
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("divides");
        let d2 = other.den.exact_div(&g1).expect("divides");
        let n2 = other.num.exact_div(&g2).expect("divides");
        let d1 = self.den.exact_div(&g2).expect("divides");
        reduce_fraction(&(&n1 * &n2), &(&d1 * &d2)).expect("nonzero den")
    }

    pub fn inv(&self) -> Result<Self, DivisionError> {
        reduce_fraction(&self.den, &self.num)
    }

    pub fn div(&self, other: &Self) -> Result<Self, DivisionError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn to_text(&self, reg: &VarRegistry) -> String {
        if self.den.is_one() {
            self.num.to_factored_text(reg)
        } else {
            format!(
                "({}) / ({})",
                self.num.to_factored_text(reg),
                self.den.to_text(reg)
            )
        }
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{Monomial, VarId};

    fn v(i: u32) -> LaurentPoly {
        LaurentPoly::var(VarId(i))
    }

    #[test]
    fn difference_of_squares_reduces() {
        let (x, y) = (v(0), v(1));
        let f = reduce_fraction(&(&x.pow(2) - &y.pow(2)), &(&x + &y)).unwrap();
        assert_eq!(f.num(), &(&x - &y));
        assert!(f.is_laurent());
    }

    #[test]
    fn monomial_denominator_is_absorbed() {
        let (x, y) = (v(0), v(1));
        let f = reduce_fraction(&x, &(-&y)).unwrap();
        assert!(f.is_laurent());
        assert_eq!(
            f.num(),
            &LaurentPoly::monomial(Monomial::from_exponents(&[1, -1]), -1)
        );
    }

    #[test]
    fn four_pair_coprimeness() {
        // x2/y1 against y2/(x2 y1), variables x2=0, y1=1, y2=2
        let f = reduce_fraction(&v(0), &v(1)).unwrap();
        let g = reduce_fraction(&v(2), &(&v(0) * &v(1))).unwrap();
        assert!(rational_coprime(&f, &g));
        let s = &v(0) + &v(1);
        let h = reduce_fraction(&LaurentPoly::one(), &s).unwrap();
        let k = RationalFunction::from_poly(&s * &v(2));
        assert!(!rational_coprime(&h, &k));
        assert!(!rational_coprime(&k, &h));
    }

    #[test]
    fn field_operations() {
        let (x, y) = (v(0), v(1));
        let a = reduce_fraction(&x, &(&x + &y)).unwrap();
        let b = reduce_fraction(&y, &(&x + &y)).unwrap();
        assert_eq!(a.add(&b), RationalFunction::one());
        let q = a.div(&b).unwrap();
        assert_eq!(q.mul(&b), a);
        assert_eq!(a.sub(&a), RationalFunction::zero());
    }
}
