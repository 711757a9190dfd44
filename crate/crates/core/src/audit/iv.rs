//! Coprimeness of the I/V variables inside a finite window.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::evolve::{tau_to_iv, BoundaryKind, EvolveError, TauGrid};
use crate::gcd::{rational_coprime, RationalFunction};
use crate::laurent::LaurentPoly;
use crate::par::par_map;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IvKind {
    I,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IvLabel {
    pub kind: IvKind,
    pub n: usize,
    pub t: usize,
}

/// Offset `(m - n, s - t)` between two labels that share a tau factor while
/// violating the separation condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ShiftPattern {
    pub first: IvKind,
    pub second: IvKind,
    pub dn: i64,
    pub dt: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IvPairRecord {
    pub a: IvLabel,
    pub b: IvLabel,
    /// The separation condition holds, so coprimeness is mandated.
    pub required: bool,
    pub coprime: bool,
    /// Non-unit tau cells occurring in both dictionary expressions.
    pub shared_tau: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IvAudit {
    pub n_max: usize,
    pub t_max: usize,
    pub pairs: Vec<IvPairRecord>,
    pub required: usize,
    /// Closed-form count of pairs meeting the separation condition.
    pub expected_required: usize,
    pub violations: usize,
    /// Pairs that share a non-unit tau cell but still test coprime, or the reverse.
    pub structure_mismatches: usize,
    pub exceptions: Vec<ShiftPattern>,
    /// Periodic chains shorter than 6 are outside the theorem; findings only.
    pub informational: bool,
}

/// Tau cells in the dictionary expression of `label`, folded into the stored
/// window (periodic sites modulo N; open boundary sites dropped).
pub fn iv_cells(label: IvLabel, boundary: BoundaryKind) -> Vec<(usize, usize)> {
    let (n, t) = (label.n as i64, label.t);
    let raw: [(i64, usize); 4] = match label.kind {
        IvKind::I => [(n - 1, t), (n, t + 1), (n, t), (n - 1, t + 1)],
        IvKind::V => [(n + 1, t), (n - 1, t + 1), (n, t), (n, t + 1)],
    };
    let mut out: Vec<(usize, usize)> = raw
        .iter()
        .filter_map(|&(m, s)| match boundary {
            BoundaryKind::Periodic(p) => Some((m.rem_euclid(p as i64) as usize, s)),
            BoundaryKind::Molecule(p) if m == 0 || m == p as i64 + 2 => None,
            _ if m == 0 => None,
            _ => Some((m as usize, s)),
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn site_distance(boundary: BoundaryKind, n: usize, m: usize) -> usize {
    let d = n.abs_diff(m);
    match boundary {
        BoundaryKind::Periodic(p) => d.min(p - d),
        _ => d,
    }
}

fn separated(boundary: BoundaryKind, a: IvLabel, b: IvLabel) -> bool {
    site_distance(boundary, a.n, b.n) >= 3 || a.t.abs_diff(b.t) >= 2
}

/// Number of unordered label pairs over sites `1..=n_max` and `t_count` rows
/// that meet the separation condition, counted without enumeration.
pub fn expected_required_pairs(boundary: BoundaryKind, n_max: usize, t_count: usize) -> usize {
    let items = 2 * n_max * t_count;
    let all = items * items.saturating_sub(1) / 2;
    // Ordered site pairs with distance <= 2.
    let near_sites = match boundary {
        BoundaryKind::Periodic(p) => p * p.min(5),
        _ => (-2i64..=2)
            .map(|d| n_max.saturating_sub(d.unsigned_abs() as usize))
            .sum(),
    };
    let near_times: usize = (-1i64..=1)
        .map(|d| t_count.saturating_sub(d.unsigned_abs() as usize))
        .sum();
    let near_ordered = 4 * near_sites * near_times - items;
    all - near_ordered / 2
}

/// Checks every pair of `I_n^t`, `V_n^t` with `1 <= n <= n_max`, `0 <= t <= t_max`.
///
/// Pairs meeting the separation condition (`|n - m| >= 3` or `|t - s| >= 2`,
/// with periodic distances taken modulo N) must be coprime as rational
/// functions. The others are recorded together with the tau cells they share.
pub fn audit_iv_coprime(grid: &TauGrid<LaurentPoly>, n_max: usize, t_max: usize) -> Result<IvAudit, EvolveError> {
    let boundary = grid.boundary;
    if let BoundaryKind::Periodic(p) = boundary {
        if n_max != p {
            return Err(EvolveError::Config(format!("periodic window must cover all {p} sites")));
        }
    }
    let lift = |p: &LaurentPoly| RationalFunction::from_poly(p.clone());
    let mut labels = Vec::new();
    let mut values = Vec::new();
    for t in 0..=t_max {
        let row = tau_to_iv(grid, t, lift)?;
        if row.i.len() < n_max {
            return Err(EvolveError::Config(format!(
                "row {t} has {} sites, window needs {n_max}",
                row.i.len()
            )));
        }
        for n in 1..=n_max {
            for (kind, v) in [(IvKind::I, &row.i[n - 1]), (IvKind::V, &row.v[n - 1])] {
                labels.push(IvLabel { kind, n, t });
                values.push(v.clone());
            }
        }
    }
    let nonunit = |(n, t): (usize, usize)| grid.get(n, t).is_some_and(|v| !v.is_unit());

    let mut jobs = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            jobs.push((i, j));
        }
    }
    let coprime = par_map(&jobs, |&(i, j)| rational_coprime(&values[i], &values[j]));

    let mut audit = IvAudit {
        n_max,
        t_max,
        pairs: Vec::with_capacity(jobs.len()),
        required: 0,
        expected_required: expected_required_pairs(boundary, n_max, t_max + 1),
        violations: 0,
        structure_mismatches: 0,
        exceptions: Vec::new(),
        informational: matches!(boundary, BoundaryKind::Periodic(p) if p < 6),
    };
    let mut patterns = BTreeSet::new();
    for (&(i, j), coprime) in jobs.iter().zip(coprime) {
        let (a, b) = (labels[i], labels[j]);
        let cells_a = iv_cells(a, boundary);
        let shared_tau: Vec<_> = iv_cells(b, boundary)
            .into_iter()
            .filter(|c| cells_a.contains(c) && nonunit(*c))
            .collect();
        let required = separated(boundary, a, b);
        if required {
            audit.required += 1;
            if !coprime {
                audit.violations += 1;
            }
        } else if !shared_tau.is_empty() {
            patterns.insert(ShiftPattern {
                first: a.kind,
                second: b.kind,
                dn: b.n as i64 - a.n as i64,
                dt: b.t as i64 - a.t as i64,
            });
        }
        if shared_tau.is_empty() != coprime {
            audit.structure_mismatches += 1;
        }
        audit.pairs.push(IvPairRecord { a, b, required, coprime, shared_tau });
    }
    audit.exceptions = patterns.into_iter().collect();
    Ok(audit)
}
