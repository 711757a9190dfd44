use num_rational::BigRational;
use serde_json::{json, Value};
use toda_core::audit::{audit_grid, audit_iv_coprime, audit_raw_periodic, default_region, Region};
use toda_core::evolve::{
    molecule_symbolic, periodic_from_iv, periodic_special_x, periodic_symbolic, semi_infinite_symbolic,
    tau_to_iv, tilde_exponent, BoundaryKind, EvolveError, IvRow, PeriodicConstants, SymbolicGrid, TauGrid,
};
use toda_core::gcd::RationalFunction;
use toda_core::identity::{scan_f_positivity, verify_catalog, verify_identity, IdentityName, IdentityVerdict, VerifyOptions};
use toda_core::laurent::{LaurentPoly, VarRegistry};
use toda_core::scalar::Scalar;

use crate::args::{Boundary, Form};
use crate::config::{input_hash, load_input, parse_rational, InitMode, LoadedInput, RunConfig};
use crate::error::{evolve_exit_code, exit, CliError};
use crate::report::{to_values, verdict, Report};

enum Built {
    Symbolic(SymbolicGrid),
    Numeric(TauGrid<BigRational>),
}

fn rationals(name: &str, values: &Option<Vec<String>>) -> Result<Vec<BigRational>, CliError> {
    values
        .as_ref()
        .ok_or_else(|| CliError::Config(format!("input file needs `{name}`")))?
        .iter()
        .map(|s| parse_rational(s))
        .collect()
}

fn build(cfg: &RunConfig, input: Option<&LoadedInput>) -> Result<Built, CliError> {
    let boundary = cfg.boundary.expect("grid command");
    let rule = cfg.rule_kind();
    Ok(match (cfg.init_mode(), boundary) {
        (InitMode::Symbolic, Boundary::Semi) => Built::Symbolic(semi_infinite_symbolic(cfg.sites(), false, rule)?),
        (InitMode::Symbolic, Boundary::Molecule) => Built::Symbolic(molecule_symbolic(cfg.n.expect("validated"), rule)?),
        (InitMode::Symbolic, Boundary::Periodic) => Built::Symbolic(periodic_symbolic(cfg.n.expect("validated"))?),
        (InitMode::PeriodicX, _) => Built::Symbolic(periodic_special_x(cfg.n.expect("validated"))?),
        (InitMode::Ones | InitMode::FibonacciCheck, b) => {
            let sites = match b {
                Boundary::Semi => cfg.sites(),
                Boundary::Molecule => cfg.n.expect("validated") + 1,
                Boundary::Periodic => cfg.n.expect("validated"),
            };
            let ones = vec![<BigRational as Scalar>::one(); sites];
            Built::Numeric(match b {
                Boundary::Periodic => {
                    let one = <BigRational as Scalar>::one();
                    let c = PeriodicConstants { k: one.clone(), lambda: one.clone(), mu: one };
                    TauGrid::periodic(sites, ones.clone(), ones, c)?
                }
                _ => TauGrid::open(cfg.boundary_kind(), ones.clone(), ones, rule)?,
            })
        }
        (InitMode::File(_), b) => {
            let file = &input.expect("file input is loaded").file;
            match b {
                Boundary::Periodic => {
                    let (i, v) = (rationals("I", &file.i)?, rationals("V", &file.v)?);
                    let n = cfg.n.expect("validated");
                    if i.len() != n || v.len() != n {
                        return Err(CliError::Config(format!("periodic N={n} needs {n} values of I and of V")));
                    }
                    Built::Numeric(periodic_from_iv(&i, &v)?.0)
                }
                _ => {
                    let (r0, r1) = (rationals("tau0", &file.tau0)?, rationals("tau1", &file.tau1)?);
                    let boundary = match b {
                        Boundary::Semi => BoundaryKind::SemiInfinite,
                        _ => cfg.boundary_kind(),
                    };
                    Built::Numeric(TauGrid::open(boundary, r0, r1, rule)?)
                }
            }
        }
    })
}

/// `tau = s^e tilde` with `s = lambda^2/mu - 1` and `e = -t(t-1)/2`.
fn raw_numeric(grid: &TauGrid<BigRational>, t: usize, tilde: &BigRational) -> Result<BigRational, EvolveError> {
    let s = grid.constants().expect("periodic constants").weight()?;
    let power = Scalar::pow(&s, (-tilde_exponent(t)) as u32);
    tilde.try_div(&power).map_err(|_| EvolveError::Degenerate)
}

fn raw_symbolic_text(grid: &TauGrid<LaurentPoly>, reg: &VarRegistry, t: usize, tilde: &LaurentPoly) -> String {
    let e = -tilde_exponent(t);
    if e == 0 {
        return tilde.to_factored_text(reg);
    }
    let s = grid.constants().expect("periodic constants").weight().expect("nonzero mu");
    format!("({}) / ({})^{e}", tilde.to_factored_text(reg), s.to_text(reg))
}

fn sorted_cells<S: Scalar>(grid: &TauGrid<S>, t_max: usize) -> Vec<(usize, usize, &S)> {
    let mut cells: Vec<_> = grid.cells().filter(|c| c.1 <= t_max).collect();
    cells.sort_by_key(|&(n, t, _)| (t, n));
    cells
}

fn header(cfg: &RunConfig) -> String {
    let mut h = format!("# {} boundary={:?}", cfg.command, cfg.boundary.expect("grid command")).to_lowercase();
    match (cfg.region, cfg.n) {
        (Some(Region::Diamond { k }), _) => h.push_str(&format!(" region=D{k}")),
        (_, Some(n)) => h.push_str(&format!(" N={n}")),
        _ => {}
    }
    h.push_str(&format!(" tmax={}", cfg.t()));
    h
}

pub fn evolve(cfg: RunConfig) -> Result<Report, CliError> {
    let input = load_input(&cfg)?;
    let mut report = Report::new(cfg.clone(), input_hash(&cfg, input.as_ref()));
    let built = build(&cfg, input.as_ref())?;
    let form = cfg.form.unwrap_or(Form::Tau);
    let t_max = cfg.t();
    let target = if form == Form::Iv { t_max + 1 } else { t_max };
    let periodic = cfg.boundary == Some(Boundary::Periodic);
    let raw = periodic && cfg.tilde != Some(true);
    report.line(header(&cfg));

    let outcome = match &built {
        Built::Symbolic(s) => {
            let mut grid = s.grid.clone();
            let res = grid.evolve(target);
            match form {
                Form::Tau => {
                    if periodic {
                        report.line(if raw { "# raw values tau = tilde / s^(t(t-1)/2), s = lambda^2/mu - 1" } else { "# tilde values" });
                    }
                    for (n, t, v) in sorted_cells(&grid, t_max) {
                        let text = if raw { raw_symbolic_text(&grid, &s.registry, t, v) } else { v.to_factored_text(&s.registry) };
                        report.line(format!("tau[n={n}, t={t}] = {text}"));
                        report.cells.push(json!({ "n": n, "t": t, "value": text, "terms": v.len() }));
                    }
                }
                Form::Iv => {
                    let lift = |p: &LaurentPoly| RationalFunction::from_poly(p.clone());
                    iv_rows(&mut report, &grid, t_max, lift, |f: &RationalFunction| f.to_text(&s.registry))?;
                }
            }
            res
        }
        Built::Numeric(g) => {
            let mut grid = g.clone();
            let res = grid.evolve(target);
            match form {
                Form::Tau => {
                    if periodic {
                        report.line(if raw { "# raw values" } else { "# tilde values" });
                    }
                    for (n, t, v) in sorted_cells(&grid, t_max) {
                        let value = if raw { raw_numeric(&grid, t, v)? } else { v.clone() };
                        report.line(format!("tau[n={n}, t={t}] = {value}"));
                        report.cells.push(json!({ "n": n, "t": t, "value": value.to_string() }));
                    }
                }
                Form::Iv => iv_rows(&mut report, &grid, t_max, |q: &BigRational| q.clone(), |q: &BigRational| q.to_string())?,
            }
            res
        }
    };
    let error = outcome.as_ref().err();
    if let Some(e) = error {
        report.line(format!("error: {e}"));
        report.exit = evolve_exit_code(e);
    }
    report.summary = json!({
        "passed": error.is_none(),
        "cells": report.cells.len(),
        "rows": report.rows.len(),
        "error": error,
    });
    Ok(report)
}

fn iv_rows<S: Scalar, T: Scalar>(
    report: &mut Report,
    grid: &TauGrid<S>,
    t_max: usize,
    lift: impl Fn(&S) -> T + Copy,
    show: impl Fn(&T) -> String,
) -> Result<(), CliError> {
    let mut first = true;
    for t in 0..=t_max {
        if grid.get(if matches!(grid.boundary, BoundaryKind::Periodic(_)) { 0 } else { 1 }, t + 1).is_none() {
            break;
        }
        let row: IvRow<T> = tau_to_iv(grid, t, lift)?;
        if first {
            let order: Vec<String> = (1..=row.i.len()).map(|k| format!("I{k}, V{k}")).collect();
            report.line(format!("# order per row: {}", order.join(", ")));
            first = false;
        }
        let is: Vec<String> = row.i.iter().map(&show).collect();
        let vs: Vec<String> = row.v.iter().map(&show).collect();
        let joined: Vec<String> = is.iter().zip(&vs).flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        report.line(format!("t={t}: ({})", joined.join(", ")));
        report.rows.push(json!({ "t": t, "I": is, "V": vs }));
    }
    Ok(())
}

pub fn audit(cfg: RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new(cfg.clone(), input_hash(&cfg, None));
    let Built::Symbolic(s) = build(&cfg, None)? else {
        unreachable!("audit configs are symbolic")
    };
    let t_max = cfg.t();
    let boundary = cfg.boundary_kind();
    let iv_t = cfg.iv_window.map(|(_, t)| t);
    let mut grid = s.grid.clone();
    let evolve_to = match (boundary, iv_t) {
        (BoundaryKind::SemiInfinite, _) | (_, None) => t_max,
        (_, Some(t)) => t_max.max(t + 1),
    };
    if let Err(e) = grid.evolve(evolve_to) {
        if !matches!(e, EvolveError::NotLaurent { .. }) {
            return Err(e.into());
        }
    }
    let region = cfg.region.unwrap_or_else(|| default_region(boundary, cfg.n.unwrap_or(1), t_max));
    let trials = cfg.evidence_trials.filter(|&k| k > 0);
    let mut audit = audit_grid(&grid, &region, &s.registry, trials);

    if let Some((sites, t)) = cfg.iv_window {
        let iv = match boundary {
            BoundaryKind::SemiInfinite => {
                let mut g = semi_infinite_symbolic(sites + t + 3, true, cfg.rule_kind())?;
                g.grid.evolve(t + 2)?;
                audit_iv_coprime(&g.grid, sites, t)?
            }
            _ => audit_iv_coprime(&grid, sites, t)?,
        };
        audit.iv = Some(iv);
        audit.finish();
    }

    report.line(header(&cfg));
    let sm = &audit.summary;
    report.line(format!("cells: {}  laurent failures: {}", sm.cells, sm.laurent_failures));
    report.line(format!("pairs: {}  shared factors: {}", sm.pairs, sm.shared_factors));
    if trials.is_some() {
        report.line(format!(
            "irreducibility evidence: proven-unit {}, evidence-irreducible {}, proven-reducible {}, inconclusive {}",
            sm.proven_unit, sm.evidence_irreducible, sm.proven_reducible, sm.inconclusive
        ));
    }
    if let Some(iv) = &audit.iv {
        let note = if iv.informational { " (informational)" } else { "" };
        report.line(format!(
            "I/V window n<={} t<={}: {} pairs, {} required, {} violations, {} exception patterns{note}",
            iv.n_max,
            iv.t_max,
            iv.pairs.len(),
            iv.required,
            iv.violations,
            iv.exceptions.len()
        ));
    }
    if let (BoundaryKind::Periodic(_), false) = (boundary, cfg.tilde == Some(true)) {
        let raw = audit_raw_periodic(&grid, &region);
        report.line(format!(
            "raw values (informational): {} of {} cells Laurent before removing powers of lambda^2/mu - 1",
            raw.summary.cells - raw.summary.laurent_failures,
            raw.summary.cells
        ));
        report.informational = Some(json!({
            "raw_periodic": { "cells": raw.summary.cells, "laurent_failures": raw.summary.laurent_failures, "failures": raw.failures }
        }));
    }
    for f in &audit.failures {
        report.line(format!("failure: {} at (n={}, t={}): {}", f.check, f.n, f.t, f.message));
    }
    report.line(verdict(sm.passed));
    report.exit = if sm.passed { exit::PASS } else { exit::CHECK_FAILED };
    report.summary = serde_json::to_value(&audit.summary).expect("summary serializes");
    report.cells = to_values(&audit.cells);
    report.pairs = to_values(&audit.pairs);
    report.failures = to_values(&audit.failures);
    report.iv = audit.iv.as_ref().map(|iv| serde_json::to_value(iv).expect("iv serializes"));
    Ok(report)
}

fn verdict_line(v: &IdentityVerdict) -> String {
    let clean = v.substitutions.iter().filter(|s| s.nonzero == 0).count();
    let size = v.size.map(|n| format!(" N={n}")).unwrap_or_default();
    let note = if v.informational { " [informational]" } else { "" };
    let mut line = format!(
        "{} ({}) {}{size}: {} symbolic residuals {}, {}/{} substitutions clean{note}",
        verdict(v.passed),
        v.key,
        v.name,
        v.residuals,
        if v.symbolic_zero { "zero" } else { "NONZERO" },
        clean,
        v.substitutions.len()
    );
    if let Some(e) = &v.error {
        line.push_str(&format!("; error: {e}"));
    }
    line
}

pub fn verify(cfg: RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new(cfg.clone(), input_hash(&cfg, None));
    let opts = VerifyOptions { trials: cfg.trials.unwrap_or(3), seed: cfg.seed.unwrap_or(0) };
    let (verdicts, passed) = match &cfg.name {
        Some(name) => {
            let v = verify_identity(IdentityName::parse(name)?, cfg.n, &opts)?;
            let passed = v.passed;
            report.summary = json!({ "passed": passed, "checked": 1 });
            (vec![v], passed)
        }
        None => {
            let cat = verify_catalog(cfg.n, &opts)?;
            let passed = cat.all_passed();
            report.summary = json!({
                "passed": passed,
                "catalog_size": cat.catalog_size,
                "catalog_passed": cat.passed,
                "checked": cat.verdicts.len(),
            });
            (cat.verdicts, passed)
        }
    };
    for v in &verdicts {
        report.line(verdict_line(v));
        if let Some(r) = &v.residual {
            const SHOWN: usize = 240;
            let cut: String = r.chars().take(SHOWN).collect();
            let more = if r.chars().count() > SHOWN { " ..." } else { "" };
            report.line(format!("    residual: {cut}{more}"));
        }
    }
    if cfg.name.is_none() {
        let size = report.summary["catalog_size"].clone();
        report.line(format!("catalog: {}/{} entries passed", report.summary["catalog_passed"], size));
    }
    report.line(verdict(passed));
    report.identities = to_values(&verdicts);
    report.exit = if passed { exit::PASS } else { exit::CHECK_FAILED };
    Ok(report)
}

pub fn scan_f(cfg: RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new(cfg.clone(), input_hash(&cfg, None));
    let scan = scan_f_positivity(cfg.n_max.expect("scan command"))?;
    let passed = scan.passed();
    report.line(format!(
        "F(N, j) for {} <= N <= {}, 1 <= j <= N-2: {} values",
        scan.n_min,
        scan.n_max,
        scan.values.len()
    ));
    report.line(format!("minimum F({}, {}) = {}", scan.min.n, scan.min.j, scan.min.value));
    report.line(format!("nonpositive values: {}", scan.violations.len()));
    for p in scan.violations.iter().take(20) {
        report.line(format!("    F({}, {}) = {}", p.n, p.j, p.value));
    }
    report.line(verdict(passed));
    report.summary = json!({
        "passed": passed,
        "points": scan.values.len(),
        "min": scan.min,
        "violations": scan.violations.len(),
    });
    report.failures = to_values(&scan.violations);
    report.scan = Some(Value::from(to_values(&scan.values)));
    report.exit = if passed { exit::PASS } else { exit::CHECK_FAILED };
    Ok(report)
}
