//! Human-readable text and a stable JSON form for polynomials.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{LaurentPoly, Monomial, VarRegistry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("malformed polynomial near `{0}`")]
    Malformed(String),
}

/// One term of the machine form: decimal coefficient and exponents by symbol name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord(pub String, pub BTreeMap<String, i32>);

impl LaurentPoly {
    /// Text such as `2 x1^-1 y1^2 - x2 + 3`, terms in descending graded-lex order.
    pub fn to_text(&self, reg: &VarRegistry) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.abs();
            let mono = monomial_text(m, reg);
            if mono.is_empty() {
                let _ = write!(out, "{abs}");
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                let _ = write!(out, "{abs} {mono}");
            }
        }
        out
    }

    /// Like [`LaurentPoly::to_text`] but pulls out the monomial content:
    /// `(y1^2 + x2) x1^-1`.
    pub fn to_factored_text(&self, reg: &VarRegistry) -> String {
        let content = self.monomial_content();
        if self.len() < 2 || content.is_one() {
            return self.to_text(reg);
        }
        let inner = self.mul_monomial(&content.inverse());
        format!("({}) {}", inner.to_text(reg), monomial_text(&content, reg))
    }

    /// Parses the output of [`LaurentPoly::to_text`]; `*` is accepted as a product sign.
    pub fn parse(text: &str, reg: &VarRegistry) -> Result<LaurentPoly, ParseError> {
        let bad = || ParseError::Malformed(text.to_string());
        let spaced = text.replace('*', " ");
        let mut terms = Vec::new();
        let mut cur: Option<(BigInt, Monomial)> = None;
        let mut pending_sign = 1i32;
        for tok in spaced.split_whitespace() {
            if tok == "+" || tok == "-" {
                if let Some(t) = cur.take() {
                    terms.push((t.1, t.0));
                } else if !terms.is_empty() {
                    return Err(bad());
                }
                pending_sign *= if tok == "-" { -1 } else { 1 };
                continue;
            }
            let (sign, factor) = match tok.as_bytes()[0] {
                b'+' => (1, &tok[1..]),
                b'-' => (-1, &tok[1..]),
                _ => (0, tok),
            };
            if sign != 0 {
                if let Some(t) = cur.take() {
                    terms.push((t.1, t.0));
                }
                pending_sign *= sign;
            }
            let (c, m) = cur.get_or_insert_with(|| {
                let s = std::mem::replace(&mut pending_sign, 1);
                (BigInt::from(s), Monomial::one())
            });
            apply_factor(factor, c, m, reg).map_err(|e| match e {
                ParseError::Malformed(_) => bad(),
                other => other,
            })?;
        }
        match cur {
            Some(t) => terms.push((t.1, t.0)),
            None => return Err(bad()),
        }
        Ok(LaurentPoly::from_terms(terms))
    }

    /// Stable machine form: a list of `[coefficient, {symbol: exponent}]`.
    pub fn to_records(&self, reg: &VarRegistry) -> Vec<TermRecord> {
        self.terms()
            .iter()
            .map(|(m, c)| {
                TermRecord(
                    c.to_string(),
                    m.iter().map(|(v, e)| (reg.name(v).to_string(), e)).collect(),
                )
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord], reg: &VarRegistry) -> Result<LaurentPoly, ParseError> {
        let mut terms = Vec::with_capacity(records.len());
        for TermRecord(c, exps) in records {
            let c: BigInt = c.parse().map_err(|_| ParseError::Malformed(c.clone()))?;
            let mut m = Monomial::one();
            for (name, &e) in exps {
                let v = reg
                    .lookup(name)
                    .map_err(|_| ParseError::UnknownSymbol(name.clone()))?;
                m = m.mul(&Monomial::var(v, e));
            }
            terms.push((m, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

fn monomial_text(m: &Monomial, reg: &VarRegistry) -> String {
    m.iter()
        .map(|(v, e)| {
            if e == 1 {
                reg.name(v).to_string()
            } else {
                format!("{}^{}", reg.name(v), e)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn apply_factor(
    factor: &str,
    coeff: &mut BigInt,
    m: &mut Monomial,
    reg: &VarRegistry,
) -> Result<(), ParseError> {
    let bad = || ParseError::Malformed(factor.to_string());
    let first = *factor.as_bytes().first().ok_or_else(bad)?;
    if first.is_ascii_digit() {
        let k: BigInt = factor.parse().map_err(|_| bad())?;
        *coeff *= k;
        return Ok(());
    }
    let (name, exp) = match factor.split_once('^') {
        Some((n, e)) => (n, e.parse::<i32>().map_err(|_| bad())?),
        None => (factor, 1),
    };
    let v = reg
        .lookup(name)
        .map_err(|_| ParseError::UnknownSymbol(name.to_string()))?;
    *m = m.mul(&Monomial::var(v, exp));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::VarRole;

    fn reg() -> VarRegistry {
        let mut r = VarRegistry::new();
        for n in ["x1", "x2", "y1"] {
            r.declare(n, VarRole::Parameter).unwrap();
        }
        r
    }

    #[test]
    fn text_round_trip() {
        let r = reg();
        let p = LaurentPoly::parse("+2 x1^-1 y1^2 - x2 + 3", &r).unwrap();
        assert_eq!(p.len(), 3);
        let back = LaurentPoly::parse(&p.to_text(&r), &r).unwrap();
        assert_eq!(p, back);
        assert_eq!(LaurentPoly::zero().to_text(&r), "0");
        assert_eq!(LaurentPoly::parse("-x1", &r).unwrap().to_text(&r), "-x1");
        assert_eq!(p, LaurentPoly::parse("3 - x2 + 2*x1^-1*y1^2", &r).unwrap());
    }

    #[test]
    fn factored_text_pulls_out_monomial() {
        let r = reg();
        let z1 = LaurentPoly::parse("y1^2 x1^-1 + x2 x1^-1", &r).unwrap();
        assert_eq!(z1.to_factored_text(&r), "(y1^2 + x2) x1^-1");
    }

    #[test]
    fn records_round_trip() {
        let r = reg();
        let p = LaurentPoly::parse("x1^2*x2^-3 - 7*y1 + 1", &r).unwrap();
        let json = serde_json::to_string(&p.to_records(&r)).unwrap();
        let recs: Vec<TermRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(LaurentPoly::from_records(&recs, &r).unwrap(), p);
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        let r = reg();
        assert_eq!(
            LaurentPoly::parse("z + 1", &r),
            Err(ParseError::UnknownSymbol("z".into()))
        );
        assert!(LaurentPoly::parse("x1^", &r).is_err());
        assert!(LaurentPoly::parse("x1 + + x2", &r).is_err());
        assert!(LaurentPoly::parse("", &r).is_err());
    }
}
