use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::pack::Packing;
use super::{LaurentPoly, Monomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivisionError {
    #[error("division by zero")]
    ByZero,
    #[error("divisor does not divide the dividend in the Laurent ring")]
    NotDivisible,
}

impl LaurentPoly {
    /// Exact quotient in `Z[x^±]`.
    ///
    /// Both operands are shifted by their monomial content into ordinary
    /// polynomials without monomial factors; there divisibility in the Laurent
    /// ring coincides with ordinary divisibility, which is decided by
    /// leading-term elimination in graded-lex order.
    pub fn exact_div(&self, q: &LaurentPoly) -> Result<LaurentPoly, DivisionError> {
        if q.is_zero() {
            return Err(DivisionError::ByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if q.len() == 1 {
            let (m, c) = &q.terms()[0];
            return divide_by_term(self, m, c);
        }
        let shift_p = self.monomial_content();
        let shift_q = q.monomial_content();
        let p0 = self.mul_monomial(&shift_p.inverse());
        let q0 = q.mul_monomial(&shift_q.inverse());

        // Cheap rejection on per-variable degrees.
        for v in q0.vars() {
            let (_, dq) = q0.degree_range(v).unwrap();
            let (_, dp) = p0.degree_range(v).unwrap();
            if dq > dp {
                return Err(DivisionError::NotDivisible);
            }
        }

        let quotient = divide_polynomial(&p0, &q0)?;
        Ok(quotient.mul_monomial(&shift_p.div(&shift_q)))
    }

    /// True when `q` divides `self` in the Laurent ring.
    pub fn divides_into(&self, q: &LaurentPoly) -> bool {
        q.exact_div(self).is_ok()
    }
}

fn divide_by_term(p: &LaurentPoly, m: &Monomial, c: &BigInt) -> Result<LaurentPoly, DivisionError> {
    let inv = m.inverse();
    let mut terms = Vec::with_capacity(p.len());
    for (t, d) in p.terms() {
        let (q, r) = d.div_rem(c);
        if !r.is_zero() {
            return Err(DivisionError::NotDivisible);
        }
        terms.push((t.mul(&inv), q));
    }
    // Multiplication by a monomial preserves the order; a negative `c` keeps it too.
    Ok(LaurentPoly::from_sorted_unchecked(terms))
}

/// Coefficient arithmetic used by the division kernel.
///
/// The `i128` instance reports overflow so that the caller can rerun the
/// division on big integers.
trait Coef: Clone + Sized {
    fn nil() -> Self;
    fn vanishes(&self) -> bool;
    fn add_to(acc: &mut Self, a: &Self) -> bool;
    fn sub_mul(acc: &mut Self, a: &Self, b: &Self) -> bool;
    /// Exact quotient, `None` when `d` does not divide `self`.
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

impl Coef for i128 {
    fn nil() -> Self {
        0
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn add_to(acc: &mut Self, a: &Self) -> bool {
        match acc.checked_add(*a) {
            Some(v) => {
                *acc = v;
                true
            }
            None => false,
        }
    }
    fn sub_mul(acc: &mut Self, a: &Self, b: &Self) -> bool {
        match a.checked_mul(*b).and_then(|p| acc.checked_sub(p)) {
            Some(v) => {
                *acc = v;
                true
            }
            None => false,
        }
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        (self % d == 0).then(|| self / d)
    }
}

impl Coef for BigInt {
    fn nil() -> Self {
        BigInt::zero()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_to(acc: &mut Self, a: &Self) -> bool {
        *acc += a;
        true
    }
    fn sub_mul(acc: &mut Self, a: &Self, b: &Self) -> bool {
        *acc -= a * b;
        true
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        Zero::is_zero(&r).then_some(q)
    }
}

/// Monomial keys used by the division kernel.
trait Keys {
    type K: Ord + Clone;
    fn mul(&self, a: &Self::K, b: &Self::K) -> Self::K;
    /// `m / d`, or `None` when `d` does not divide `m`.
    fn quotient(&self, m: &Self::K, d: &Self::K) -> Option<Self::K>;
}

struct Plain;

impl Keys for Plain {
    type K = Monomial;
    fn mul(&self, a: &Monomial, b: &Monomial) -> Monomial {
        a.mul(b)
    }
    fn quotient(&self, m: &Monomial, d: &Monomial) -> Option<Monomial> {
        m.is_multiple_of(d).then(|| m.div(d))
    }
}

impl Keys for Packing {
    type K = u128;
    fn mul(&self, a: &u128, b: &u128) -> u128 {
        a + b
    }
    fn quotient(&self, m: &u128, d: &u128) -> Option<u128> {
        Packing::quotient(self, *m, *d)
    }
}

/// Pending product `q_i * g_j`; at most one per divisor term sits in the heap.
struct Pending<K> {
    m: K,
    j: usize,
}

impl<K: Ord> PartialEq for Pending<K> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<K: Ord> Eq for Pending<K> {}
impl<K: Ord> PartialOrd for Pending<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<K: Ord> Ord for Pending<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m.cmp(&other.m).then(other.j.cmp(&self.j))
    }
}

/// Terms sorted descending by key.
type Terms<K, C> = Vec<(K, C)>;

/// Sparse division with a heap over the divisor terms.
///
/// Terms of `f` and `g` are sorted descending. Quotient terms are produced in
/// descending order, and for every divisor term `g_j` the products
/// `q_i g_j` are merged lazily, so the working set stays at `len(g)` entries.
/// `Ok(None)` signals coefficient overflow.
fn divide_heap<P: Keys, C: Coef>(
    keys: &P,
    f: &[(P::K, C)],
    g: &[(P::K, C)],
) -> Result<Option<Terms<P::K, C>>, DivisionError> {
    let (lm, lc) = &g[0];
    let mut quotient: Vec<(P::K, C)> = Vec::new();
    let mut heap: BinaryHeap<Pending<P::K>> = BinaryHeap::with_capacity(g.len());
    // next[j]: index of the quotient term to pair with g_j next.
    let mut next = vec![0usize; g.len()];
    let mut waiting: Vec<usize> = (1..g.len()).collect();
    let mut k = 0;
    loop {
        let from_f = f.get(k).map(|t| &t.0);
        let m = match (from_f, heap.peek()) {
            (None, None) => break,
            (Some(a), None) => a.clone(),
            (None, Some(h)) => h.m.clone(),
            (Some(a), Some(h)) => {
                if *a >= h.m {
                    a.clone()
                } else {
                    h.m.clone()
                }
            }
        };
        let mut c = C::nil();
        if from_f == Some(&m) {
            if !C::add_to(&mut c, &f[k].1) {
                return Ok(None);
            }
            k += 1;
        }
        while heap.peek().is_some_and(|h| h.m == m) {
            let Pending { j, .. } = heap.pop().expect("peeked");
            let i = next[j];
            if !C::sub_mul(&mut c, &quotient[i].1, &g[j].1) {
                return Ok(None);
            }
            next[j] = i + 1;
            if i + 1 < quotient.len() {
                heap.push(Pending { m: keys.mul(&quotient[i + 1].0, &g[j].0), j });
            } else {
                waiting.push(j);
            }
        }
        if c.vanishes() {
            continue;
        }
        let qm = keys.quotient(&m, lm).ok_or(DivisionError::NotDivisible)?;
        let qc = c.div_exact(lc).ok_or(DivisionError::NotDivisible)?;
        for j in waiting.drain(..) {
            heap.push(Pending { m: keys.mul(&qm, &g[j].0), j });
        }
        quotient.push((qm, qc));
    }
    Ok(Some(quotient))
}

fn to_small<K: Clone>(terms: &[(K, BigInt)]) -> Option<Vec<(K, i128)>> {
    terms
        .iter()
        .map(|(m, c)| c.to_i64().map(|v| (m.clone(), v as i128)))
        .collect()
}

fn divide_keyed<P: Keys>(
    keys: &P,
    f: &[(P::K, BigInt)],
    g: &[(P::K, BigInt)],
) -> Result<Vec<(P::K, BigInt)>, DivisionError> {
    if let (Some(fs), Some(gs)) = (to_small(f), to_small(g)) {
        if let Some(quot) = divide_heap(keys, &fs, &gs)? {
            return Ok(quot.into_iter().map(|(m, c)| (m, BigInt::from(c))).collect());
        }
    }
    Ok(divide_heap(keys, f, g)?.expect("big integers do not overflow"))
}

/// Ordinary multivariate division; both inputs have nonnegative exponents.
///
/// In an exact division every product `q_i g_j` lies in the Newton polytope
/// of the dividend, so bounds covering both operands fit all keys.
fn divide_polynomial(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly, DivisionError> {
    if let Some(packing) = Packing::covering(p.terms().iter().chain(q.terms()).map(|t| &t.0)) {
        let pack = |terms: &[(Monomial, BigInt)]| -> Vec<(u128, BigInt)> {
            terms.iter().map(|(m, c)| (packing.pack(m), c.clone())).collect()
        };
        let quot = divide_keyed(&packing, &pack(p.terms()), &pack(q.terms()))?;
        return Ok(LaurentPoly::from_sorted_unchecked(
            quot.into_iter().map(|(k, c)| (packing.unpack(k), c)).collect(),
        ));
    }
    let quot = divide_keyed(&Plain, p.terms(), q.terms())?;
    Ok(LaurentPoly::from_sorted_unchecked(quot))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::VarId;

    fn a() -> LaurentPoly {
        LaurentPoly::var(VarId(0))
    }
    fn b() -> LaurentPoly {
        LaurentPoly::var(VarId(1))
    }

    #[test]
    fn difference_of_squares() {
        let p = &a().pow(2) - &b().pow(2);
        assert_eq!(p.exact_div(&(&a() + &b())), Ok(&a() - &b()));
    }

    #[test]
    fn monomial_divisor_always_succeeds() {
        let p = &a().pow(2) + &LaurentPoly::one();
        let expected = &a() + &LaurentPoly::monomial(Monomial::var(VarId(0), -1), 1);
        assert_eq!(p.exact_div(&a()), Ok(expected));
        let neg = LaurentPoly::monomial(Monomial::from_exponents(&[3, -2]), -1);
        assert!(p.exact_div(&neg).is_ok());
    }

    #[test]
    fn short_dividend_long_divisor() {
        // a^5 - 1 = (a - 1)(a^4 + a^3 + a^2 + a + 1)
        let p = &a().pow(5) - &LaurentPoly::one();
        let q: LaurentPoly = (0..5).map(|k| a().pow(k)).sum();
        assert_eq!(p.exact_div(&q), Ok(&a() - &LaurentPoly::one()));
    }

    #[test]
    fn non_divisor_is_rejected() {
        let p = &a() + &b();
        let q = &a() + &LaurentPoly::one();
        assert_eq!(p.exact_div(&q), Err(DivisionError::NotDivisible));
        assert_eq!(p.exact_div(&LaurentPoly::zero()), Err(DivisionError::ByZero));
        assert_eq!(
            LaurentPoly::constant(3).exact_div(&LaurentPoly::constant(2)),
            Err(DivisionError::NotDivisible)
        );
    }

    #[test]
    fn laurent_shifts_are_handled() {
        let f = &a() + &b().pow(2);
        let g = &(&a() * &b()) - &LaurentPoly::constant(7);
        let s = LaurentPoly::monomial(Monomial::from_exponents(&[-4, 2]), 1);
        let prod = &(&f * &g) * &s;
        assert_eq!(prod.exact_div(&g), Ok(&f * &s));
        let q = prod.exact_div(&f.mul_monomial(&Monomial::from_exponents(&[5, -5]))).unwrap();
        assert_eq!(&q * &f.mul_monomial(&Monomial::from_exponents(&[5, -5])), prod);
    }
}
