//! Subresultant polynomial remainder sequences over a main variable.

use rand_chacha::ChaCha8Rng;

use super::{gcd_inner, gcd_many};
use crate::laurent::{LaurentPoly, Monomial, VarId};

/// Coefficients by degree in the main variable, highest entry nonzero.
type UPoly = Vec<LaurentPoly>;

fn to_upoly(p: &LaurentPoly, v: VarId) -> UPoly {
    let (lo, hi) = p.degree_range(v).expect("nonzero");
    let mut parts: Vec<Vec<(Monomial, num_bigint::BigInt)>> = vec![Vec::new(); (hi - lo) as usize + 1];
    for (m, c) in p.terms() {
        let k = m.exponent(v);
        let rest = m.mul(&Monomial::var(v, -k));
        parts[(k - lo) as usize].push((rest, c.clone()));
    }
    parts.into_iter().map(LaurentPoly::from_terms).collect()
}

fn from_upoly(u: &UPoly, v: VarId) -> LaurentPoly {
    u.iter()
        .enumerate()
        .map(|(k, c)| c.mul_monomial(&Monomial::var(v, k as i32)))
        .sum()
}

fn trim(u: &mut UPoly) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

fn degree(u: &UPoly) -> usize {
    u.len() - 1
}

fn content(u: &UPoly, rng: &mut ChaCha8Rng) -> LaurentPoly {
    gcd_many(u.iter().filter(|c| !c.is_zero()).cloned().collect(), rng)
}

fn divide_all(u: &UPoly, d: &LaurentPoly) -> UPoly {
    if d.is_one() {
        return u.clone();
    }
    u.iter()
        .map(|c| c.exact_div(d).expect("content divides every coefficient"))
        .collect()
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &UPoly, b: &UPoly) -> UPoly {
    let n = degree(b);
    let lb = b.last().unwrap();
    let mut r = a.clone();
    let mut e = degree(a) + 1 - n;
    while !r.is_empty() && r.len() > n {
        let d = degree(&r) - n;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[d + i] = &r[d + i] - &(&lr * bc);
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

/// gcd of primitive polynomials that both involve `v`.
pub(super) fn gcd_by_prs(
    a: &LaurentPoly,
    b: &LaurentPoly,
    v: VarId,
    rng: &mut ChaCha8Rng,
) -> LaurentPoly {
    let mut ua = to_upoly(a, v);
    let mut ub = to_upoly(b, v);
    if ua.len() < ub.len() {
        std::mem::swap(&mut ua, &mut ub);
    }
    let ca = content(&ua, rng);
    let cb = content(&ub, rng);
    let c = gcd_inner(&ca, &cb, rng).unit_normal();
    let mut ua = divide_all(&ua, &ca);
    let mut ub = divide_all(&ub, &cb);

    let mut g = LaurentPoly::one();
    let mut h = LaurentPoly::one();
    loop {
        let delta = degree(&ua) - degree(&ub);
        let r = prem(&ua, &ub);
        if r.is_empty() {
            break;
        }
        if degree(&r) == 0 {
            ub = vec![LaurentPoly::one()];
            break;
        }
        let divisor = &g * &h.pow(delta as u32);
        ua = ub;
        ub = divide_all(&r, &divisor);
        g = ua.last().unwrap().clone();
        if delta > 0 {
            h = g
                .pow(delta as u32)
                .exact_div(&h.pow(delta as u32 - 1))
                .expect("subresultant scaling is exact");
        }
    }
    let pp = divide_all(&ub, &content(&ub, rng));
    (&from_upoly(&pp, v) * &c).unit_normal()
}
