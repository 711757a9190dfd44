//! Exact gcd in the Laurent ring, fraction reduction and coprimeness tests.

mod evidence;
pub(crate) mod modp;
mod prs;
mod rational;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::laurent::{LaurentPoly, Monomial, VarId};

pub use evidence::{irreducibility_evidence, EvidenceOptions, IrreducibilityEvidence};
pub use rational::{rational_coprime, reduce_fraction, RationalFunction};

/// Greatest common divisor in `Z[x^±]`, unit-normalized: no monomial content
/// and a positive leading coefficient. `gcd(p, 0)` is `p` normalized.
pub fn gcd(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return q.unit_normal();
    }
    if q.is_zero() {
        return p.unit_normal();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a3d_91c5);
    gcd_inner(&p.unit_normal(), &q.unit_normal(), &mut rng).unit_normal()
}

/// True when `gcd(p, q)` is a unit.
pub fn coprime(p: &LaurentPoly, q: &LaurentPoly) -> bool {
    gcd(p, q).is_unit()
}

/// Both arguments are unit-normal and nonzero.
fn gcd_inner(a: &LaurentPoly, b: &LaurentPoly, rng: &mut ChaCha8Rng) -> LaurentPoly {
    let ca = a.integer_content();
    let cb = b.integer_content();
    let g_int = ca.gcd(&cb);
    let a = if ca.is_one() { a.clone() } else { a.div_integer_exact(&ca) };
    let b = if cb.is_one() { b.clone() } else { b.div_integer_exact(&cb) };
    let h = primitive_gcd(&a, &b, rng);
    if g_int.is_one() {
        h
    } else {
        h.scale(&g_int)
    }
}

/// gcd of two primitive polynomials without monomial content.
fn primitive_gcd(a: &LaurentPoly, b: &LaurentPoly, rng: &mut ChaCha8Rng) -> LaurentPoly {
    if a.is_constant() || b.is_constant() {
        return LaurentPoly::one();
    }
    if a == b {
        return a.clone();
    }
    let va = a.vars();
    let vb = b.vars();
    let common: Vec<VarId> = va.iter().copied().filter(|v| vb.contains(v)).collect();
    if common.is_empty() {
        return LaurentPoly::one();
    }
    // Variables the gcd provably does not involve.
    let mut free: Vec<VarId> = va
        .iter()
        .chain(vb.iter())
        .copied()
        .filter(|v| !common.contains(v))
        .collect();
    let mut live = Vec::new();
    for &v in &common {
        match modp::gcd_degree_bound(a, b, v, rng, 2) {
            Some(0) => free.push(v),
            _ => live.push(v),
        }
    }
    if live.is_empty() {
        return LaurentPoly::one();
    }
    if !free.is_empty() {
        free.sort_unstable();
        free.dedup();
        let is_free = |v: VarId| free.binary_search(&v).is_ok();
        let mut parts = coefficients(a, &is_free);
        parts.extend(coefficients(b, &is_free));
        return gcd_many(parts, rng);
    }
    let main = choose_main_variable(a, b, &live);
    prs::gcd_by_prs(a, b, main, rng)
}

/// gcd of a list of nonzero polynomials, smallest first, stopping at a unit.
pub(crate) fn gcd_many(mut parts: Vec<LaurentPoly>, rng: &mut ChaCha8Rng) -> LaurentPoly {
    parts.sort_by_key(|p| p.len());
    let mut it = parts.into_iter();
    let mut acc = match it.next() {
        Some(p) => p.unit_normal(),
        None => return LaurentPoly::zero(),
    };
    for p in it {
        if acc.is_unit() {
            break;
        }
        acc = gcd_inner(&acc, &p.unit_normal(), rng).unit_normal();
    }
    acc
}

/// Coefficients of `p` viewed as a polynomial in the variables selected by
/// `outer`, each a polynomial in the remaining variables.
pub(crate) fn coefficients(p: &LaurentPoly, outer: &dyn Fn(VarId) -> bool) -> Vec<LaurentPoly> {
    let mut groups: HashMap<Monomial, Vec<(Monomial, BigInt)>> = HashMap::new();
    for (m, c) in p.terms() {
        let (out, inner) = m.project(outer);
        groups.entry(out).or_default().push((inner, c.clone()));
    }
    let mut keys: Vec<Monomial> = groups.keys().cloned().collect();
    keys.sort();
    keys.into_iter()
        .map(|k| LaurentPoly::from_terms(groups.remove(&k).unwrap()))
        .collect()
}

/// The common variable with the smallest combined degree; ties go to the one
/// occurring in the most terms.
fn choose_main_variable(a: &LaurentPoly, b: &LaurentPoly, live: &[VarId]) -> VarId {
    let score = |v: VarId| {
        let (_, da) = a.degree_range(v).unwrap();
        let (_, db) = b.degree_range(v).unwrap();
        let occ = a
            .terms()
            .iter()
            .chain(b.terms())
            .filter(|(m, _)| m.exponent(v) != 0)
            .count();
        (da.max(db), std::cmp::Reverse(occ), v)
    };
    live.iter().copied().min_by_key(|&v| score(v)).unwrap()
}

/// `lcm` up to units.
pub fn lcm(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() || q.is_zero() {
        return LaurentPoly::zero();
    }
    let g = gcd(p, q);
    (p * q)
        .exact_div(&g)
        .expect("gcd divides the product")
        .unit_normal()
}
