use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{LaurentPoly, Monomial, VarId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubstValue {
    Rational(BigRational),
    Poly(LaurentPoly),
}

impl From<i64> for SubstValue {
    fn from(v: i64) -> Self {
        SubstValue::Rational(BigRational::from_integer(v.into()))
    }
}

impl From<BigRational> for SubstValue {
    fn from(v: BigRational) -> Self {
        SubstValue::Rational(v)
    }
}

impl From<LaurentPoly> for SubstValue {
    fn from(v: LaurentPoly) -> Self {
        SubstValue::Poly(v)
    }
}

/// Partial map from variables to values.
pub type Assignment = BTreeMap<VarId, SubstValue>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubstituteError {
    #[error("variable {0:?} is set to zero but occurs with a negative exponent")]
    ZeroSubstitution(VarId),
    #[error("variable {0:?} is set to a non-unit polynomial but occurs with a negative exponent")]
    NonLaurent(VarId),
    #[error("no value supplied for variable {0:?}")]
    Unassigned(VarId),
}

/// `num / den` with `den > 0` and no common integer factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substituted {
    pub num: LaurentPoly,
    pub den: BigInt,
}

impl Substituted {
    /// The exact value when no variable is left.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.is_constant() {
            Some(BigRational::new(self.num.constant_term(), self.den.clone()))
        } else {
            None
        }
    }

    /// The polynomial when the result has integer coefficients.
    pub fn into_poly(self) -> Option<LaurentPoly> {
        self.den.is_one().then_some(self.num)
    }
}

impl LaurentPoly {
    /// Substitutes rationals or Laurent polynomials for some of the variables.
    pub fn substitute(&self, assignment: &Assignment) -> Result<Substituted, SubstituteError> {
        let mut poly_powers: HashMap<(VarId, i32), LaurentPoly> = HashMap::new();
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in self.terms() {
            let mut scalar = BigRational::from_integer(c.clone());
            let mut kept = Monomial::one();
            let mut factor = LaurentPoly::one();
            for (v, e) in m.iter() {
                match assignment.get(&v) {
                    None => kept = kept.mul(&Monomial::var(v, e)),
                    Some(SubstValue::Rational(r)) => {
                        if r.is_zero() {
                            if e < 0 {
                                return Err(SubstituteError::ZeroSubstitution(v));
                            }
                            scalar = BigRational::zero();
                        } else {
                            scalar *= pow_rational(r, e);
                        }
                    }
                    Some(SubstValue::Poly(p)) => {
                        let pw = match poly_powers.get(&(v, e)) {
                            Some(pw) => pw.clone(),
                            None => {
                                let pw = poly_power(p, e, v)?;
                                poly_powers.insert((v, e), pw.clone());
                                pw
                            }
                        };
                        factor = &factor * &pw;
                    }
                }
            }
            if scalar.is_zero() {
                continue;
            }
            for (fm, fc) in factor.terms() {
                let key = fm.mul(&kept);
                let val = &scalar * BigRational::from_integer(fc.clone());
                *acc.entry(key).or_insert_with(BigRational::zero) += val;
            }
        }
        let den = acc
            .values()
            .fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let num = LaurentPoly::from_terms(
            acc.into_iter()
                .map(|(m, r)| (m, r.numer() * (&den / r.denom()))),
        );
        let g = num.integer_content().gcd(&den);
        if g.is_zero() || g.is_one() {
            let den = if num.is_zero() { BigInt::one() } else { den };
            return Ok(Substituted { num, den });
        }
        Ok(Substituted {
            num: num.div_integer_exact(&g),
            den: den / g,
        })
    }

    /// Exact value under a full assignment given by `value(v)`.
    pub fn eval_with(
        &self,
        value: impl Fn(VarId) -> Option<BigRational>,
    ) -> Result<BigRational, SubstituteError> {
        let mut cache: HashMap<(VarId, i32), BigRational> = HashMap::new();
        let mut total = BigRational::zero();
        for (m, c) in self.terms() {
            let mut t = BigRational::from_integer(c.clone());
            for (v, e) in m.iter() {
                if let Some(p) = cache.get(&(v, e)) {
                    t *= p;
                    continue;
                }
                let r = value(v).ok_or(SubstituteError::Unassigned(v))?;
                if r.is_zero() && e < 0 {
                    return Err(SubstituteError::ZeroSubstitution(v));
                }
                let p = pow_rational(&r, e);
                t *= &p;
                cache.insert((v, e), p);
            }
            total += t;
        }
        Ok(total)
    }

    /// Exact value with `values[v]` for every variable `v` that occurs.
    pub fn eval_rational(&self, values: &[BigRational]) -> Result<BigRational, SubstituteError> {
        self.eval_with(|v| values.get(v.index()).cloned())
    }
}

pub(crate) fn pow_rational(r: &BigRational, e: i32) -> BigRational {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

fn poly_power(p: &LaurentPoly, e: i32, v: VarId) -> Result<LaurentPoly, SubstituteError> {
    if e >= 0 {
        return Ok(p.pow(e as u32));
    }
    if p.is_zero() {
        return Err(SubstituteError::ZeroSubstitution(v));
    }
    match p.unit_inverse() {
        Some(inv) => Ok(inv.pow((-e) as u32)),
        None => Err(SubstituteError::NonLaurent(v)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> LaurentPoly {
        LaurentPoly::var(VarId(i))
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn full_assignment_gives_rational() {
        // z1 = (y1^2 + x2)/x1 with x1 = v0, x2 = v1, y1 = v2
        let z1 = (&x(2).pow(2) + &x(1)).exact_div(&x(0)).unwrap();
        let ones: Assignment = (0..3).map(|i| (VarId(i), SubstValue::from(1))).collect();
        assert_eq!(z1.substitute(&ones).unwrap().as_rational(), Some(q(2)));
        assert_eq!(z1.eval_rational(&[q(1), q(1), q(1)]), Ok(q(2)));
    }

    #[test]
    fn zero_against_negative_exponent() {
        let p = x(0).mul_monomial(&Monomial::var(VarId(1), -1));
        let mut a = Assignment::new();
        a.insert(VarId(1), SubstValue::from(0));
        assert_eq!(p.substitute(&a), Err(SubstituteError::ZeroSubstitution(VarId(1))));
    }

    #[test]
    fn partial_rational_keeps_denominator() {
        let p = &x(0) + &x(1);
        let mut a = Assignment::new();
        a.insert(VarId(1), SubstValue::Rational(BigRational::new(1.into(), 2.into())));
        let s = p.substitute(&a).unwrap();
        assert_eq!(s.den, BigInt::from(2));
        assert_eq!(s.num, &x(0).scale(&2.into()) + &LaurentPoly::one());
    }

    #[test]
    fn polynomial_values_and_units() {
        // x0^-1 * x1 with x0 -> -x2 (a unit), x1 -> x2 + 1
        let p = x(1).mul_monomial(&Monomial::var(VarId(0), -1));
        let mut a = Assignment::new();
        a.insert(VarId(0), SubstValue::Poly(-x(2)));
        a.insert(VarId(1), SubstValue::Poly(&x(2) + &LaurentPoly::one()));
        let s = p.substitute(&a).unwrap().into_poly().unwrap();
        let expected = -(&LaurentPoly::one() + &LaurentPoly::monomial(Monomial::var(VarId(2), -1), 1));
        assert_eq!(s, expected);
        let mut bad = Assignment::new();
        bad.insert(VarId(0), SubstValue::Poly(&x(2) + &LaurentPoly::one()));
        assert_eq!(p.substitute(&bad), Err(SubstituteError::NonLaurent(VarId(0))));
    }
}
