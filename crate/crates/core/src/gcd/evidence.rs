//! Irreducibility evidence by exact gcds and integer specialization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::gcd;
use crate::laurent::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibilityEvidence {
    ProvenUnit,
    /// Carries a non-unit divisor that is not an associate of the input.
    ProvenReducible(LaurentPoly),
    EvidenceIrreducible {
        trials: usize,
        details: Vec<SpecializationRecord>,
    },
    Inconclusive(String),
}

impl IrreducibilityEvidence {
    pub fn label(&self) -> &'static str {
        match self {
            IrreducibilityEvidence::ProvenUnit => "proven-unit",
            IrreducibilityEvidence::ProvenReducible(_) => "proven-reducible",
            IrreducibilityEvidence::EvidenceIrreducible { .. } => "evidence-irreducible",
            IrreducibilityEvidence::Inconclusive(_) => "inconclusive",
        }
    }
}

/// One integer specialization: the value of the candidate, the values of the
/// catalog members, and which catalog exponents the values force to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializationRecord {
    /// Assigned value per variable index (each `1` or `-1`).
    pub point: Vec<i8>,
    pub value: String,
    pub catalog_values: Vec<String>,
    pub forced_zero: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct EvidenceOptions {
    /// Random sign vectors tried after the all-ones point.
    pub trials: usize,
    pub seed: u64,
}

impl Default for EvidenceOptions {
    fn default() -> Self {
        EvidenceOptions { trials: 3, seed: 1 }
    }
}

/// Collects evidence that `p` is irreducible, given a catalog of (assumed
/// irreducible, pairwise coprime) lower-level elements.
///
/// A factorization `p = prod C_i^{r_i} * q` survives every ring map, so at an
/// integer point a catalog value that does not divide the value of `p` forces
/// `r_i = 0`. Evidence is reported only when every non-unit catalog member has
/// its exponent forced to zero and no exact gcd with the catalog is a non-unit.
pub fn irreducibility_evidence(
    p: &LaurentPoly,
    catalog: &[LaurentPoly],
    opts: &EvidenceOptions,
) -> IrreducibilityEvidence {
    if p.is_zero() {
        return IrreducibilityEvidence::Inconclusive("zero polynomial".into());
    }
    if p.is_unit() {
        return IrreducibilityEvidence::ProvenUnit;
    }
    let content = p.integer_content();
    if !content.is_one() && !p.is_constant() {
        return IrreducibilityEvidence::ProvenReducible(LaurentPoly::constant(content));
    }
    if p.is_constant() {
        let c = p.constant_term().abs();
        return match smallest_factor(&c) {
            Some(f) if f != c => IrreducibilityEvidence::ProvenReducible(LaurentPoly::constant(f)),
            _ => IrreducibilityEvidence::EvidenceIrreducible {
                trials: 0,
                details: Vec::new(),
            },
        };
    }
    let members: Vec<&LaurentPoly> = catalog.iter().filter(|c| !c.is_unit() && !c.is_zero()).collect();
    for c in &members {
        if c.is_associate(p) {
            continue;
        }
        let g = gcd(p, c);
        if !g.is_unit() && !g.is_associate(p) {
            return IrreducibilityEvidence::ProvenReducible(g);
        }
    }

    let width = std::iter::once(p)
        .chain(members.iter().copied())
        .flat_map(|q| q.terms().iter().map(|(m, _)| m.width()))
        .max()
        .unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut forced = vec![false; members.len()];
    let mut details = Vec::new();
    for trial in 0..=opts.trials {
        let point: Vec<i8> = if trial == 0 {
            vec![1; width]
        } else {
            (0..width).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect()
        };
        let at = |q: &LaurentPoly| -> BigInt {
            let vals: Vec<BigRational> = point
                .iter()
                .map(|&s| BigRational::from_integer(BigInt::from(s)))
                .collect();
            q.eval_rational(&vals)
                .expect("sign vectors never vanish")
                .to_integer()
        };
        let value = at(p);
        let cvals: Vec<BigInt> = members.iter().map(|c| at(c)).collect();
        let mut rec_forced = vec![false; members.len()];
        if !value.is_zero() {
            for (i, cv) in cvals.iter().enumerate() {
                if cv.abs() > BigInt::one() && !value.is_multiple_of(cv) {
                    rec_forced[i] = true;
                    forced[i] = true;
                }
            }
        }
        details.push(SpecializationRecord {
            point,
            value: value.to_string(),
            catalog_values: cvals.iter().map(|v| v.to_string()).collect(),
            forced_zero: rec_forced,
        });
    }
    let trials = details.len();
    if forced.iter().all(|&f| f) {
        IrreducibilityEvidence::EvidenceIrreducible { trials, details }
    } else {
        let open: Vec<usize> = forced
            .iter()
            .enumerate()
            .filter(|(_, &f)| !f)
            .map(|(i, _)| i)
            .collect();
        IrreducibilityEvidence::Inconclusive(format!(
            "specializations left catalog exponents {open:?} undetermined"
        ))
    }
}

fn smallest_factor(n: &BigInt) -> Option<BigInt> {
    if *n <= BigInt::one() {
        return None;
    }
    let mut d = BigInt::from(2);
    let limit = BigInt::from(1_000_000);
    while &d * &d <= *n && d < limit {
        if n.is_multiple_of(&d) {
            return Some(d);
        }
        d += 1;
    }
    Some(n.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{Monomial, VarId};

    fn v(i: u32) -> LaurentPoly {
        LaurentPoly::var(VarId(i))
    }

    #[test]
    fn square_of_catalog_member_is_reducible() {
        let z = &v(0) + &v(1);
        let ev = irreducibility_evidence(&z.pow(2), std::slice::from_ref(&z), &EvidenceOptions::default());
        assert_eq!(ev, IrreducibilityEvidence::ProvenReducible(z));
    }

    #[test]
    fn units_and_contents() {
        let u = LaurentPoly::monomial(Monomial::from_exponents(&[2, -1]), -1);
        assert_eq!(
            irreducibility_evidence(&u, &[], &EvidenceOptions::default()),
            IrreducibilityEvidence::ProvenUnit
        );
        let p = LaurentPoly::constant(3) * (&v(0) + &v(1));
        assert!(matches!(
            irreducibility_evidence(&p, &[], &EvidenceOptions::default()),
            IrreducibilityEvidence::ProvenReducible(_)
        ));
    }

    #[test]
    fn specialization_forces_exponents() {
        // catalog member evaluates to 2 at ones; candidate to 3
        let c = &v(0) + &v(1);
        let p = &(&v(0) * &v(1)) + &v(0) + &v(1);
        match irreducibility_evidence(&p, &[c], &EvidenceOptions::default()) {
            IrreducibilityEvidence::EvidenceIrreducible { details, .. } => {
                assert_eq!(details[0].value, "3");
                assert_eq!(details[0].catalog_values, vec!["2"]);
                assert!(details[0].forced_zero[0]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
