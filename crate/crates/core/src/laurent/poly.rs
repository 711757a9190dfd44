use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::pack::Packing;
use super::{Monomial, VarId};

/// Sparse Laurent polynomial with arbitrary-precision integer coefficients.
///
/// Terms are kept in canonical form at all times: sorted by descending
/// graded-lex monomial order, with no zero coefficients. The zero polynomial
/// has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, BigInt)>,
}

/// Result of [`LaurentPoly::classify_unit`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitClass {
    Zero,
    /// `sign * monomial`; `negative` is true for a leading `-1`.
    Unit { negative: bool, monomial: Monomial },
    NonUnit,
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.exponents().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<i32> = Vec::deserialize(d)?;
        Ok(Monomial::from_exponents(&v))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("degree of the zero polynomial is undefined")]
pub struct ZeroPolynomialError;

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn var(v: VarId) -> Self {
        Self::monomial(Monomial::var(v, 1), 1)
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        LaurentPoly { terms }
    }

    /// Wraps terms that are already sorted descending, distinct and nonzero.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        LaurentPoly { terms }
    }

    /// Canonical form. Values of this type are always canonical, so this is a copy.
    pub fn normalize(&self) -> LaurentPoly {
        self.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, BigInt)> {
        self.terms
    }

    pub fn leading_term(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.terms.first().map(|t| &t.1)
    }

    /// The constant coefficient (coefficient of the empty monomial).
    pub fn constant_term(&self) -> BigInt {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Variables that occur with a nonzero exponent, ascending.
    pub fn vars(&self) -> Vec<VarId> {
        let width = self.terms.iter().map(|(m, _)| m.width()).max().unwrap_or(0);
        let mut seen = vec![false; width];
        for (m, _) in &self.terms {
            for (v, _) in m.iter() {
                seen[v.index()] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| VarId(i as u32))
            .collect()
    }

    /// Smallest and largest exponent of `v` over all terms.
    pub fn degree_range(&self, v: VarId) -> Result<(i32, i32), ZeroPolynomialError> {
        let mut it = self.terms.iter().map(|(m, _)| m.exponent(v));
        let first = it.next().ok_or(ZeroPolynomialError)?;
        Ok(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Componentwise minimum of all exponent vectors: the largest monomial dividing
    /// the polynomial in the ordinary-polynomial sense.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(),
            Some((m0, _)) => it.fold(m0.clone(), |acc, (m, _)| acc.meet(m)),
        }
    }

    /// Nonnegative gcd of all coefficients (zero for the zero polynomial).
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        if m.is_one() {
            return self.clone();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> LaurentPoly {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Divides every coefficient by `k`; caller guarantees divisibility.
    pub(crate) fn div_integer_exact(&self, k: &BigInt) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c / k)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> LaurentPoly {
        if e == 0 {
            return Self::one();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Self::monomial(m.pow(e as i32), num_traits::pow(c.clone(), e as usize));
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        loop {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e == 0 {
                break acc;
            }
            base = &base * &base;
        }
    }

    /// Ring-unit test in `Z[x^±]`: units are `±1` times a monomial.
    pub fn classify_unit(&self) -> UnitClass {
        match self.terms.as_slice() {
            [] => UnitClass::Zero,
            [(m, c)] if c.abs().is_one() => UnitClass::Unit {
                negative: c.is_negative(),
                monomial: m.clone(),
            },
            _ => UnitClass::NonUnit,
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.classify_unit(), UnitClass::Unit { .. })
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<LaurentPoly> {
        match self.classify_unit() {
            UnitClass::Unit { negative, monomial } => Some(Self::monomial(
                monomial.inverse(),
                if negative { -1 } else { 1 },
            )),
            _ => None,
        }
    }

    /// Removes the monomial content and makes the leading coefficient positive.
    /// The result is the unique associate with nonnegative, minimal exponents
    /// and positive leading coefficient.
    pub fn unit_normal(&self) -> LaurentPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let shifted = self.mul_monomial(&self.monomial_content().inverse());
        if shifted.terms[0].1.is_negative() {
            -shifted
        } else {
            shifted
        }
    }

    /// Unit `u` such that `self = u * self.unit_normal()`.
    pub fn unit_part(&self) -> LaurentPoly {
        if self.is_zero() {
            return Self::one();
        }
        let sign = if self.terms[0].1.is_negative() { -1 } else { 1 };
        Self::monomial(self.monomial_content(), sign)
    }

    /// True when `self = u * other` for some unit `u`.
    pub fn is_associate(&self, other: &LaurentPoly) -> bool {
        self.unit_normal() == other.unit_normal()
    }

    /// Applies `f` to each monomial; `f` must be injective on this support and
    /// compatible with multiplication (a translation or a variable renaming).
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    fn merge(&self, other: &LaurentPoly, negate_other: bool) -> LaurentPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        LaurentPoly { terms: out }
    }

    fn product(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if std::ptr::eq(self, other) {
            return self.square();
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            return LaurentPoly {
                terms: large
                    .terms
                    .iter()
                    .map(|(t, d)| (t.mul(m), d * c))
                    .collect(),
            };
        }
        if let Some(p) = product_packed(&small.terms, &large.terms, false) {
            return p;
        }
        let cap = (small.terms.len() * large.terms.len() / 2 + 1).min(1 << 16);
        if let Some(p) = product_small(&small.terms, &large.terms, cap) {
            return p;
        }
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::with_capacity_and_hasher(cap, Default::default());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let prod = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|c| *c += &prod)
                    .or_insert(prod);
            }
        }
        let mut terms: Vec<(Monomial, BigInt)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        LaurentPoly { terms }
    }
}

impl LaurentPoly {
    /// `self * self`, visiting each unordered pair of terms once.
    pub fn square(&self) -> LaurentPoly {
        let n = self.terms.len();
        if n <= 1 {
            return match self.terms.first() {
                None => Self::zero(),
                Some((m, c)) => Self::monomial(m.mul(m), c * c),
            };
        }
        if let Some(p) = product_packed(&self.terms, &self.terms, true) {
            return p;
        }
        let cap = (n * (n + 1) / 4 + 1).min(1 << 16);
        let small: Option<Vec<i64>> = self.terms.iter().map(|(_, c)| c.to_i64()).collect();
        if let Some(cs) = small {
            let mut acc: FxHashMap<Monomial, i128> = FxHashMap::with_capacity_and_hasher(cap, Default::default());
            let mut ok = true;
            'outer: for i in 0..n {
                let (mi, ci) = (&self.terms[i].0, cs[i] as i128);
                for j in i..n {
                    let w = if i == j { ci * ci } else { 2 * ci * cs[j] as i128 };
                    let slot = acc.entry(mi.mul(&self.terms[j].0)).or_insert(0);
                    match slot.checked_add(w) {
                        Some(v) => *slot = v,
                        None => {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if ok {
                let mut terms: Vec<(Monomial, BigInt)> = acc
                    .into_iter()
                    .filter(|(_, c)| *c != 0)
                    .map(|(m, c)| (m, BigInt::from(c)))
                    .collect();
                terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                return LaurentPoly { terms };
            }
        }
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::with_capacity_and_hasher(cap, Default::default());
        for i in 0..n {
            let (mi, ci) = &self.terms[i];
            for j in i..n {
                let w = if i == j { ci * ci } else { ci * &self.terms[j].1 * 2 };
                *acc.entry(mi.mul(&self.terms[j].0)).or_default() += w;
            }
        }
        let mut terms: Vec<(Monomial, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        LaurentPoly { terms }
    }
}

/// Product with machine-word coefficients; `None` when an input coefficient
/// exceeds `i64` or an accumulated sum overflows `i128`.
fn product_small(
    small: &[(Monomial, BigInt)],
    large: &[(Monomial, BigInt)],
    cap: usize,
) -> Option<LaurentPoly> {
    let to_i64 = |t: &[(Monomial, BigInt)]| -> Option<Vec<i64>> { t.iter().map(|(_, c)| c.to_i64()).collect() };
    let (cs, cl) = (to_i64(small)?, to_i64(large)?);
    let mut acc: FxHashMap<Monomial, i128> = FxHashMap::with_capacity_and_hasher(cap, Default::default());
    for ((ma, _), &a) in small.iter().zip(&cs) {
        for ((mb, _), &b) in large.iter().zip(&cl) {
            let prod = a as i128 * b as i128;
            let slot = acc.entry(ma.mul(mb)).or_insert(0);
            *slot = slot.checked_add(prod)?;
        }
    }
    let mut terms: Vec<(Monomial, BigInt)> = acc
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(m, c)| (m, BigInt::from(c)))
        .collect();
    terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    Some(LaurentPoly { terms })
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.product(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in self.terms.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl From<i64> for LaurentPoly {
    fn from(v: i64) -> Self {
        LaurentPoly::constant(v)
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |a, b| &a * &b)
    }
}

impl std::fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{c}*{m:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Product over packed keys after shifting both operands to nonnegative
/// exponents; graded-lex order is translation invariant, so sorting keys
/// sorts the result. `None` when the exponent range does not fit a key.
fn product_packed(a: &[(Monomial, BigInt)], b: &[(Monomial, BigInt)], square: bool) -> Option<LaurentPoly> {
    let content = |t: &[(Monomial, BigInt)]| t.iter().skip(1).fold(t[0].0.clone(), |acc, (m, _)| acc.meet(m));
    let (oa, ob) = (content(a), content(b));
    let shift = |t: &[(Monomial, BigInt)], o: &Monomial| -> Vec<Monomial> { t.iter().map(|(m, _)| m.div(o)).collect() };
    let (sa, sb) = (shift(a, &oa), shift(b, &ob));
    let span = |ms: &[Monomial]| -> (Vec<u32>, u64) {
        let mut bounds: Vec<u32> = Vec::new();
        let mut deg = 0u64;
        for m in ms {
            let e = m.exponents();
            if bounds.len() < e.len() {
                bounds.resize(e.len(), 0);
            }
            for (x, &v) in bounds.iter_mut().zip(e) {
                *x = (*x).max(v as u32);
            }
            deg = deg.max(m.total_degree() as u64);
        }
        (bounds, deg)
    };
    let ((mut bounds, da), (bb, db)) = (span(&sa), span(&sb));
    if bounds.len() < bb.len() {
        bounds.resize(bb.len(), 0);
    }
    for (x, y) in bounds.iter_mut().zip(&bb) {
        *x = x.checked_add(*y)?;
    }
    let packing = Packing::new(&bounds, da + db)?;
    let ka: Vec<u128> = sa.iter().map(|m| packing.pack(m)).collect();
    let kb: Vec<u128> = sb.iter().map(|m| packing.pack(m)).collect();
    let pairs = |f: &mut dyn FnMut(usize, usize, bool) -> bool| {
        for i in 0..a.len() {
            let from = if square { i } else { 0 };
            for j in from..b.len() {
                if !f(i, j, square && i != j) {
                    return false;
                }
            }
        }
        true
    };
    let cap = (a.len() * b.len() / if square { 4 } else { 2 } + 1).min(1 << 16);
    let to_i64 = |t: &[(Monomial, BigInt)]| -> Option<Vec<i64>> { t.iter().map(|(_, c)| c.to_i64()).collect() };
    let mut terms: Vec<(u128, BigInt)> = Vec::new();
    let mut done = false;
    if let (Some(ca), Some(cb)) = (to_i64(a), to_i64(b)) {
        let mut acc: FxHashMap<u128, i128> = FxHashMap::with_capacity_and_hasher(cap, Default::default());
        let ok = pairs(&mut |i, j, twice| {
            let w = ca[i] as i128 * cb[j] as i128;
            let w = if twice { w.checked_mul(2) } else { Some(w) };
            let slot = acc.entry(ka[i] + kb[j]).or_insert(0);
            match w.and_then(|w| slot.checked_add(w)) {
                Some(v) => {
                    *slot = v;
                    true
                }
                None => false,
            }
        });
        if ok {
            terms = acc.into_iter().filter(|(_, c)| *c != 0).map(|(k, c)| (k, BigInt::from(c))).collect();
            done = true;
        }
    }
    if !done {
        let mut acc: FxHashMap<u128, BigInt> = FxHashMap::with_capacity_and_hasher(cap, Default::default());
        pairs(&mut |i, j, twice| {
            let w = &a[i].1 * &b[j].1;
            *acc.entry(ka[i] + kb[j]).or_default() += if twice { w * 2 } else { w };
            true
        });
        terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }
    terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
    let offset = oa.mul(&ob);
    Some(LaurentPoly {
        terms: terms.into_iter().map(|(k, c)| (packing.unpack(k).mul(&offset), c)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LaurentPoly {
        LaurentPoly::var(VarId(0))
    }
    fn y() -> LaurentPoly {
        LaurentPoly::var(VarId(1))
    }

    #[test]
    fn cancellation_and_identity() {
        assert_eq!(&(&x() + &y()) + &(&x() - &y()), x().scale(&2.into()));
        assert_eq!(&x() + &LaurentPoly::zero(), x());
    }

    #[test]
    fn unit_inverse_and_difference_of_squares() {
        let xinv = LaurentPoly::monomial(Monomial::var(VarId(0), -1), 1);
        assert!((&x() * &xinv).is_one());
        let lhs = &(&x() + &y()) * &(&x() - &y());
        assert_eq!(lhs, &x().pow(2) - &y().pow(2));
    }

    #[test]
    fn classify_units() {
        let m = LaurentPoly::monomial(
            Monomial::var(VarId(0), 2).mul(&Monomial::var(VarId(1), -1)),
            -1,
        );
        assert_eq!(
            m.classify_unit(),
            UnitClass::Unit {
                negative: true,
                monomial: Monomial::from_exponents(&[2, -1])
            }
        );
        let three_xy = (&x() * &y()).scale(&3.into());
        assert_eq!(three_xy.classify_unit(), UnitClass::NonUnit);
        assert_eq!(LaurentPoly::zero().classify_unit(), UnitClass::Zero);
    }

    #[test]
    fn degree_range_of_mixed_signs() {
        let p = &LaurentPoly::monomial(Monomial::var(VarId(0), -2), 1) + &x().pow(3);
        assert_eq!(p.degree_range(VarId(0)), Ok((-2, 3)));
        assert_eq!(LaurentPoly::zero().degree_range(VarId(0)), Err(ZeroPolynomialError));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = LaurentPoly::from_terms(vec![
            (Monomial::var(VarId(0), 1), BigInt::from(1)),
            (Monomial::var(VarId(1), 1), BigInt::from(0)),
        ]);
        assert_eq!(p, x());
        assert_eq!(p.normalize().normalize(), p.normalize());
    }

    #[test]
    fn unit_normal_strips_monomials_and_sign() {
        let p = (&x() + &y()).mul_monomial(&Monomial::from_exponents(&[-1, 3]));
        let p = -p;
        assert_eq!(p.unit_normal(), &x() + &y());
        assert!(p.is_associate(&(&x() + &y())));
        assert_eq!(&p.unit_part() * &p.unit_normal(), p);
    }
}
