use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::VarId;

/// Exponent vector of a Laurent monomial.
///
/// Stored densely by [`VarId`] with trailing zeros trimmed, so two equal
/// monomials always have identical storage.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[i32; 8]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: VarId, exp: i32) -> Self {
        let mut e = SmallVec::new();
        e.resize(v.index() + 1, 0);
        e[v.index()] = exp;
        let mut m = Monomial(e);
        m.trim();
        m
    }

    pub fn from_exponents(exps: &[i32]) -> Self {
        let mut m = Monomial(SmallVec::from_slice(exps));
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: VarId) -> i32 {
        self.0.get(v.index()).copied().unwrap_or(0)
    }

    /// Number of dense slots (one past the highest variable with a nonzero exponent).
    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    /// Nonzero `(variable, exponent)` pairs in variable order.
    pub fn iter(&self) -> impl Iterator<Item = (VarId, i32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (VarId(i as u32), e))
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut e = long.0.clone();
        for (a, b) in e.iter_mut().zip(short.0.iter()) {
            *a += *b;
        }
        let mut m = Monomial(e);
        m.trim();
        m
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inverse())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// Componentwise minimum (absent variables count as exponent 0).
    pub fn meet(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let mut e: SmallVec<[i32; 8]> = SmallVec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            e.push(a.min(b));
        }
        let mut m = Monomial(e);
        m.trim();
        m
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let mut e: SmallVec<[i32; 8]> = SmallVec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            e.push(a.max(b));
        }
        let mut m = Monomial(e);
        m.trim();
        m
    }

    /// True when every exponent of `self` is at least the matching exponent of `other`.
    pub fn is_multiple_of(&self, other: &Monomial) -> bool {
        let n = self.0.len().max(other.0.len());
        (0..n).all(|i| {
            self.0.get(i).copied().unwrap_or(0) >= other.0.get(i).copied().unwrap_or(0)
        })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Splits off the exponents of the variables selected by `keep`.
    pub fn project(&self, keep: impl Fn(VarId) -> bool) -> (Monomial, Monomial) {
        let mut kept = self.0.clone();
        let mut rest = self.0.clone();
        for i in 0..self.0.len() {
            if keep(VarId(i as u32)) {
                rest[i] = 0;
            } else {
                kept[i] = 0;
            }
        }
        let mut a = Monomial(kept);
        let mut b = Monomial(rest);
        a.trim();
        b.trim();
        (a, b)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// lowest-numbered variable, and so on.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(v, e)| format!("v{}^{}", v.0, e)).collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}
