//! Univariate images modulo a prime, used to bound gcd degrees.
//!
//! For a ring map Z[x] -> Z_p[v] that fixes the degree in `v` of both inputs,
//! the image of their gcd divides the univariate gcd of the images and keeps
//! its degree. A degree-zero image gcd therefore proves that the true gcd does
//! not involve `v`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::laurent::{LaurentPoly, VarId};

pub(crate) const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn addmod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn submod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64) -> u64 {
    powmod(a, P - 2)
}

pub(crate) fn reduce(c: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let r = ((c % &p) + &p) % &p;
    r.to_u64().expect("reduced residue fits")
}

/// Random nonzero residues for every variable index below `width`.
pub(crate) fn random_point(rng: &mut ChaCha8Rng, width: usize) -> Vec<u64> {
    (0..width).map(|_| rng.gen_range(1..P)).collect()
}

/// Image of `p` in Z_p[v] under `point`; negative exponents use inverses.
/// Index `k` of the result is the coefficient of `v^(k + lo)` where `lo` is
/// the smallest exponent of `v`.
pub(crate) fn univariate_image(p: &LaurentPoly, v: VarId, point: &[u64]) -> Vec<u64> {
    let (lo, hi) = p.degree_range(v).expect("nonzero");
    let mut out = vec![0u64; (hi - lo) as usize + 1];
    for (m, c) in p.terms() {
        let mut val = reduce(c);
        for (w, e) in m.iter() {
            if w == v {
                continue;
            }
            let base = point[w.index()];
            let f = if e >= 0 {
                powmod(base, e as u64)
            } else {
                invmod(powmod(base, (-e) as u64))
            };
            val = mulmod(val, f);
        }
        let k = (m.exponent(v) - lo) as usize;
        out[k] = addmod(out[k], val);
    }
    out
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Degree of the monic gcd of two univariate polynomials over Z_p.
pub(crate) fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let inv = invmod(*b.last().unwrap());
        while a.len() >= b.len() {
            let q = mulmod(*a.last().unwrap(), inv);
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                a[shift + i] = submod(a[shift + i], mulmod(q, bc));
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Upper bound on `deg_v gcd(a, b)`, or `None` when no valid point was found.
///
/// Degrees are measured as spans of exponents, which is the right notion up
/// to units.
pub(crate) fn gcd_degree_bound(
    a: &LaurentPoly,
    b: &LaurentPoly,
    v: VarId,
    rng: &mut ChaCha8Rng,
    tries: usize,
) -> Option<usize> {
    let width = a
        .terms()
        .iter()
        .chain(b.terms())
        .map(|(m, _)| m.width())
        .max()
        .unwrap_or(0);
    let span = |p: &LaurentPoly| p.degree_range(v).map(|(lo, hi)| (hi - lo) as usize);
    let da = span(a).ok()?;
    let db = span(b).ok()?;
    let mut best: Option<usize> = None;
    for _ in 0..tries {
        let point = random_point(rng, width);
        let ia = univariate_image(a, v, &point);
        let ib = univariate_image(b, v, &point);
        // The leading coefficient in v must survive for the bound to hold.
        // Both ends must survive: the leading coefficient keeps the degree and
        // the trailing one rules out a spurious power of v.
        if ia[da] == 0 || ib[db] == 0 || ia[0] == 0 || ib[0] == 0 {
            continue;
        }
        let d = gcd_degree(ia, ib);
        best = Some(best.map_or(d, |b: usize| b.min(d)));
        if d == 0 {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn univariate_gcd_degree() {
        // (v-1)(v-2) and (v-1)(v+3) share one root
        let a = vec![2, P - 3, 1];
        let b = vec![P - 3, 2, 1];
        assert_eq!(gcd_degree(a, b), 1);
        assert_eq!(gcd_degree(vec![1, 1], vec![P - 1, 1]), 0);
    }

    #[test]
    fn inverse_round_trip() {
        for a in [2u64, 12345, P - 1] {
            assert_eq!(mulmod(a, invmod(a)), 1);
        }
    }
}
