//! Region sweeps over evolved grids: Laurentness, pairwise coprimeness,
//! irreducibility evidence and the I/V coprimeness windows.

mod iv;

use serde::{Deserialize, Serialize};

use crate::evolve::{tilde_exponent, BoundaryKind, EvolveError, TauGrid};
use crate::gcd::{gcd, irreducibility_evidence, EvidenceOptions, IrreducibilityEvidence};
use crate::laurent::{LaurentPoly, VarRegistry};
use crate::par::par_map;

pub use iv::{
    audit_iv_coprime, expected_required_pairs, iv_cells, IvAudit, IvKind, IvLabel, IvPairRecord,
    ShiftPattern,
};

/// A finite set of `(n, t)` cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Region {
    /// `D_k = {(n, t) | 1 <= n <= k, 0 <= t <= 2k - 2n + 1}`, exactly the cells
    /// determined by initial columns `1..=k` of a semi-infinite grid.
    Diamond { k: usize },
    Rect { n_min: usize, n_max: usize, t_min: usize, t_max: usize },
}

impl Region {
    pub fn contains(&self, n: usize, t: usize) -> bool {
        match *self {
            Region::Diamond { k } => (1..=k).contains(&n) && t + 2 * n <= 2 * k + 1,
            Region::Rect { n_min, n_max, t_min, t_max } => {
                (n_min..=n_max).contains(&n) && (t_min..=t_max).contains(&t)
            }
        }
    }

    /// Cells in `(n, t)` order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let (n_max, t_max) = self.bounds();
        let mut out = Vec::new();
        for n in 0..=n_max {
            for t in 0..=t_max {
                if self.contains(n, t) {
                    out.push((n, t));
                }
            }
        }
        out
    }

    /// Largest site and time index.
    pub fn bounds(&self) -> (usize, usize) {
        match *self {
            Region::Diamond { k } => (k, (2 * k).saturating_sub(1)),
            Region::Rect { n_max, t_max, .. } => (n_max, t_max),
        }
    }

    /// Smallest and largest time index.
    pub fn t_range(&self) -> (usize, usize) {
        match *self {
            Region::Diamond { k } => (0, (2 * k).saturating_sub(1)),
            Region::Rect { t_min, t_max, .. } => (t_min, t_max),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum CellVerdict {
    /// Every division producing this value was exact.
    Laurent,
    /// The division producing this value was not exact.
    NotLaurent,
    /// Evolution stopped before this cell; the cause is at `blocked_by`.
    Unreached { blocked_by: Option<(usize, usize)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub n: usize,
    pub t: usize,
    #[serde(flatten)]
    pub verdict: CellVerdict,
    /// Number of terms, when the value exists.
    pub terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub irreducibility: Option<EvidenceRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceRecord {
    pub label: String,
    /// Divisor text for reducible cells, reason for inconclusive ones.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Values at the specialization points, first the all-ones point.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub specializations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum PairVerdict {
    CoprimeUnitGcd,
    SharedFactor { gcd: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub a: (usize, usize),
    pub b: (usize, usize),
    #[serde(flatten)]
    pub verdict: PairVerdict,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub cells: usize,
    pub laurent_failures: usize,
    pub pairs: usize,
    pub shared_factors: usize,
    pub proven_unit: usize,
    pub proven_reducible: usize,
    pub evidence_irreducible: usize,
    pub inconclusive: usize,
    pub iv_required_pairs: usize,
    pub iv_violations: usize,
    /// True when no theorem-mandated check failed.
    pub passed: bool,
}

/// A located failure of a mandated check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub n: usize,
    pub t: usize,
    pub message: String,
}

/// Deterministic audit output; identical grid and region give identical JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimeReport {
    pub summary: Summary,
    pub cells: Vec<CellRecord>,
    pub pairs: Vec<PairRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iv: Option<IvAudit>,
    pub failures: Vec<Failure>,
}

impl CoprimeReport {
    /// Recomputes the summary from the records.
    pub fn finish(&mut self) {
        let mut s = Summary {
            cells: self.cells.len(),
            pairs: self.pairs.len(),
            ..Summary::default()
        };
        for c in &self.cells {
            if c.verdict != CellVerdict::Laurent {
                s.laurent_failures += 1;
            }
            match c.irreducibility.as_ref().map(|e| e.label.as_str()) {
                Some("proven-unit") => s.proven_unit += 1,
                Some("proven-reducible") => s.proven_reducible += 1,
                Some("evidence-irreducible") => s.evidence_irreducible += 1,
                Some(_) => s.inconclusive += 1,
                None => {}
            }
        }
        s.shared_factors = self
            .pairs
            .iter()
            .filter(|p| matches!(p.verdict, PairVerdict::SharedFactor { .. }))
            .count();
        if let Some(iv) = &self.iv {
            s.iv_required_pairs = iv.required;
            s.iv_violations = if iv.informational { 0 } else { iv.violations };
        }
        s.passed = s.laurent_failures == 0 && s.shared_factors == 0 && s.iv_violations == 0;
        self.summary = s;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn failure_cell(err: &EvolveError) -> Option<(usize, usize)> {
    match *err {
        EvolveError::NotLaurent { n, t } | EvolveError::Singular { n, t } => Some((n, t)),
        _ => None,
    }
}

/// Laurentness verdict for every cell of `region`.
///
/// Grid values only exist when their division was exact, so a present value is
/// Laurent and the recorded failure marks the first inexact division.
pub fn audit_laurent(grid: &TauGrid<LaurentPoly>, region: &Region) -> CoprimeReport {
    let failed_at = grid.failure().and_then(failure_cell);
    let mut report = CoprimeReport::default();
    for (n, t) in region.cells() {
        let (verdict, terms) = match grid.get(n, t) {
            Some(v) => (CellVerdict::Laurent, Some(v.len())),
            None if failed_at == Some((n, t)) => (CellVerdict::NotLaurent, None),
            None => (CellVerdict::Unreached { blocked_by: failed_at }, None),
        };
        if verdict != CellVerdict::Laurent {
            report.failures.push(Failure {
                check: "laurent".into(),
                n,
                t,
                message: match (&verdict, grid.failure()) {
                    (CellVerdict::NotLaurent, Some(e)) => e.to_string(),
                    _ => "not computed".into(),
                },
            });
        }
        report.cells.push(CellRecord { n, t, verdict, terms, irreducibility: None });
    }
    report.finish();
    report
}

/// Laurentness of the untransformed periodic values `tau = tilde / s^{t(t-1)/2}`
/// with `s = lambda^2/mu - 1`. Cells from `t = 2` on need the power of `s`.
pub fn audit_raw_periodic(grid: &TauGrid<LaurentPoly>, region: &Region) -> CoprimeReport {
    let mut report = CoprimeReport::default();
    let Some(c) = grid.constants() else {
        return report;
    };
    let s = c.weight().expect("periodic weight");
    for (n, t) in region.cells() {
        let Some(tilde) = grid.get(n, t) else {
            continue;
        };
        let power = s.pow((-tilde_exponent(t)) as u32);
        let laurent = tilde.exact_div(&power).is_ok();
        let verdict = if laurent { CellVerdict::Laurent } else { CellVerdict::NotLaurent };
        if !laurent {
            report.failures.push(Failure {
                check: "laurent-raw".into(),
                n,
                t,
                message: format!("needs the factor (lambda^2/mu - 1)^{}", -tilde_exponent(t)),
            });
        }
        report.cells.push(CellRecord { n, t, verdict, terms: Some(tilde.len()), irreducibility: None });
    }
    report.finish();
    report
}

/// Values of the cells of `region` present in the grid, in region order.
pub fn region_values<'a>(grid: &'a TauGrid<LaurentPoly>, region: &Region) -> Vec<((usize, usize), &'a LaurentPoly)> {
    region
        .cells()
        .into_iter()
        .filter_map(|(n, t)| grid.get(n, t).map(|v| ((n, t), v)))
        .collect()
}

/// Exact gcd of every unordered pair of distinct cells of `region`.
///
/// A non-unit gcd is re-verified to divide both members before it is reported.
pub fn audit_pairwise_coprime(grid: &TauGrid<LaurentPoly>, region: &Region, reg: &VarRegistry) -> CoprimeReport {
    let cells = region_values(grid, region);
    let mut jobs = Vec::new();
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            jobs.push((i, j));
        }
    }
    let results = par_map(&jobs, |&(i, j)| {
        let (a, b) = (cells[i].1, cells[j].1);
        let g = gcd(a, b);
        if g.is_unit() {
            return Ok(PairVerdict::CoprimeUnitGcd);
        }
        if a.exact_div(&g).is_err() || b.exact_div(&g).is_err() {
            return Err(g);
        }
        Ok(PairVerdict::SharedFactor { gcd: g.to_text(reg) })
    });
    let mut report = CoprimeReport::default();
    for (&(i, j), res) in jobs.iter().zip(results) {
        let (a, b) = (cells[i].0, cells[j].0);
        let verdict = match res {
            Ok(v) => v,
            Err(g) => panic!("gcd {g:?} of {a:?} and {b:?} does not divide both"),
        };
        if let PairVerdict::SharedFactor { gcd } = &verdict {
            report.failures.push(Failure {
                check: "coprime".into(),
                n: b.0,
                t: b.1,
                message: format!("shares {gcd} with ({}, {})", a.0, a.1),
            });
        }
        report.pairs.push(PairRecord { a, b, verdict });
    }
    report.finish();
    report
}

/// Irreducibility evidence per cell. The catalog holds the non-unit cells of
/// the two preceding rows, the only possible sources of a common factor in
/// the specialization argument.
pub fn audit_irreducibility(
    grid: &TauGrid<LaurentPoly>,
    region: &Region,
    trials: usize,
    reg: &VarRegistry,
) -> CoprimeReport {
    let cells = region_values(grid, region);
    let results = par_map(&cells, |&((n, t), p)| {
        let catalog: Vec<LaurentPoly> = grid
            .cells()
            .filter(|&(_, s, v)| s < t && s + 2 >= t && !v.is_unit())
            .map(|(_, _, v)| v.clone())
            .collect();
        let opts = EvidenceOptions { trials, seed: (n as u64) << 32 | t as u64 };
        irreducibility_evidence(p, &catalog, &opts)
    });
    let mut report = CoprimeReport::default();
    for (((n, t), p), ev) in cells.iter().zip(results) {
        let record = match ev {
            IrreducibilityEvidence::ProvenReducible(f) => EvidenceRecord {
                label: "proven-reducible".into(),
                detail: Some(f.to_text(reg)),
                specializations: Vec::new(),
            },
            IrreducibilityEvidence::Inconclusive(why) => EvidenceRecord {
                label: "inconclusive".into(),
                detail: Some(why),
                specializations: Vec::new(),
            },
            IrreducibilityEvidence::EvidenceIrreducible { details, .. } => EvidenceRecord {
                label: "evidence-irreducible".into(),
                detail: None,
                specializations: details.into_iter().map(|d| d.value).collect(),
            },
            IrreducibilityEvidence::ProvenUnit => EvidenceRecord {
                label: "proven-unit".into(),
                detail: None,
                specializations: Vec::new(),
            },
        };
        report.cells.push(CellRecord {
            n: *n,
            t: *t,
            verdict: CellVerdict::Laurent,
            terms: Some(p.len()),
            irreducibility: Some(record),
        });
    }
    report.finish();
    report
}

/// Laurentness, pairwise coprimeness and (optionally) irreducibility in one report.
pub fn audit_grid(
    grid: &TauGrid<LaurentPoly>,
    region: &Region,
    reg: &VarRegistry,
    irreducibility_trials: Option<usize>,
) -> CoprimeReport {
    let mut report = audit_laurent(grid, region);
    let pairs = audit_pairwise_coprime(grid, region, reg);
    report.pairs = pairs.pairs;
    report.failures.extend(pairs.failures);
    if let Some(trials) = irreducibility_trials {
        let ev = audit_irreducibility(grid, region, trials, reg);
        for (cell, e) in report.cells.iter_mut().filter(|c| c.terms.is_some()).zip(ev.cells) {
            debug_assert_eq!((cell.n, cell.t), (e.n, e.t));
            cell.irreducibility = e.irreducibility;
        }
    }
    report.finish();
    report
}

/// Default audit region for a boundary: `D_k` for semi-infinite grids,
/// all stored sites up to `t_max` otherwise.
pub fn default_region(boundary: BoundaryKind, sites: usize, t_max: usize) -> Region {
    match boundary {
        BoundaryKind::SemiInfinite => Region::Diamond { k: sites },
        BoundaryKind::Molecule(n) => Region::Rect { n_min: 1, n_max: n + 1, t_min: 0, t_max },
        BoundaryKind::Periodic(n) => Region::Rect { n_min: 0, n_max: n - 1, t_min: 0, t_max },
    }
}
