//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the test harness so the lines reach the terminal. The process
//! fails when the set of failing criteria differs from `KNOWN_RED`, in either
//! direction, so a change in outcome cannot go unnoticed.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toda_core::audit::{audit_grid, audit_iv_coprime, audit_laurent, audit_pairwise_coprime, default_region, IvKind, Region};
use toda_core::evolve::*;
use toda_core::identity::{
    eval_f, factored_f, oracle_f, scan_f_positivity, verify_identity, VerifyOptions, CATALOG,
};
use toda_core::laurent::LaurentPoly;
use toda_core::scalar::Scalar;

/// Criteria that fail for documented reasons.
/// 9: the telescoped form of entry (k) has a nonzero residual.
/// 12: the cubed rule stays Laurent and coprime through t = 4.
const KNOWN_RED: [u32; 2] = [9, 12];

const SEEDS: [u64; 3] = [11, 23, 47];

type Criterion<'a> = (u32, &'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    BigRational::new(num.into(), rng.gen_range(1..=5i64).into())
}

fn randoms(rng: &mut ChaCha8Rng, k: usize) -> Vec<BigRational> {
    (0..k).map(|_| random_rational(rng)).collect()
}

fn show(v: &[BigRational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn ones_column(n: usize, site: usize) -> Vec<BigRational> {
    let mut g = molecule_values(n, vec![q(1); n + 1], vec![q(1); n + 1]).unwrap();
    g.evolve(6).unwrap();
    (2..=6).map(|t| g.value(site, t).unwrap()).collect()
}

fn c1() -> Outcome {
    let start = Instant::now();
    let col = ones_column(1, 1);
    let took = start.elapsed();
    let want: Vec<_> = [2, 5, 13, 34, 89].map(q).to_vec();
    outcome(col == want && took < Duration::from_secs(1), format!("tau_1 = {} in {}", show(&col), secs(took)))
}

fn c2() -> Outcome {
    let start = Instant::now();
    let (a, b) = (ones_column(2, 1), ones_column(2, 2));
    let took = start.elapsed();
    let ok = a == [2, 5, 14, 42, 131].map(q) && b == [3, 14, 70, 353, 1782].map(q);
    outcome(ok && took < Duration::from_secs(1), format!("n=1 ({}), n=2 ({}) in {}", show(&a), show(&b), secs(took)))
}

/// The symbolic windows of criteria 3 and 4.
struct Window {
    label: String,
    grid: SymbolicGrid,
    region: Region,
    evolve_time: Duration,
}

fn windows() -> Vec<Window> {
    let mut out = Vec::new();
    let mut push = |label: String, mut grid: SymbolicGrid, t: usize, region: Region| {
        let start = Instant::now();
        let _ = grid.grid.evolve(t);
        out.push(Window { label, grid, region, evolve_time: start.elapsed() });
    };
    push("semi D4".into(), semi_infinite_symbolic(4, false, Rule::Standard).unwrap(), 7, Region::Diamond { k: 4 });
    for n in 1..=3 {
        let g = molecule_symbolic(n, Rule::Standard).unwrap();
        push(format!("molecule N={n} t<=8"), g, 8, default_region(BoundaryKind::Molecule(n), n + 1, 8));
    }
    for n in [3, 4] {
        let g = periodic_symbolic(n).unwrap();
        push(format!("periodic tilde N={n} t<=6"), g, 6, default_region(BoundaryKind::Periodic(n), n, 6));
    }
    out
}

fn c3(ws: &[Window]) -> Outcome {
    let start = Instant::now();
    let mut failures = 0;
    let mut cells = 0;
    let mut parts = Vec::new();
    for w in ws {
        let r = audit_laurent(&w.grid.grid, &w.region);
        failures += r.summary.laurent_failures;
        cells += r.summary.cells;
        parts.push(format!("{} {}", w.label, secs(w.evolve_time)));
    }
    let total = start.elapsed() + ws.iter().map(|w| w.evolve_time).sum::<Duration>();
    let ok = failures == 0 && total < Duration::from_secs(600);
    outcome(ok, format!("{cells} cells, {failures} failures, {} total [{}]", secs(total), parts.join(", ")))
}

fn c4(ws: &[Window]) -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    let mut shared = 0;
    for w in ws {
        let r = audit_pairwise_coprime(&w.grid.grid, &w.region, &w.grid.registry);
        pairs += r.summary.pairs;
        shared += r.summary.shared_factors;
    }
    outcome(shared == 0 && pairs > 0, format!("{pairs} pairs, {shared} shared factors in {}", secs(start.elapsed())))
}

fn c5() -> Outcome {
    let mut ok = true;
    for n in 3..=5usize {
        let mut s = periodic_special_x(n).unwrap();
        s.grid.evolve(6).unwrap();
        let x = LaurentPoly::var(s.registry.lookup("x").unwrap());
        for k in 0..n {
            let want = x.scale(&BigInt::from(k as i64 + 1)).add(&LaurentPoly::constant((n - k - 1) as i64));
            ok &= s.grid.value(k, 2).unwrap() == want;
            for (t, e) in [(2, 1u32), (3, 3), (4, 6), (5, 10), (6, 15)] {
                let v = s.grid.value(k, t).unwrap().eval_rational(&[q(1)]).unwrap();
                ok &= v == q((n as i64).pow(e));
            }
        }
    }
    outcome(ok, "c_k = (k+1)x + N-k-1 and c,d,e,f,g = N, N^3, N^6, N^10, N^15 at x = 1 for N = 3, 4, 5")
}

/// Open grid from random tau rows, redrawn on singular data.
fn random_open(rng: &mut ChaCha8Rng, boundary: BoundaryKind, sites: usize, t: usize) -> TauGrid<BigRational> {
    loop {
        let mut g = TauGrid::open(boundary, randoms(rng, sites), randoms(rng, sites), Rule::Standard).unwrap();
        if g.evolve(t).is_ok() {
            return g;
        }
    }
}

fn random_periodic(rng: &mut ChaCha8Rng, n: usize, t: usize) -> (TauGrid<BigRational>, IvSeeds<BigRational>, IvRow<BigRational>) {
    loop {
        let (i, v) = (randoms(rng, n), randoms(rng, n));
        let Ok((mut g, seeds)) = periodic_from_iv(&i, &v) else { continue };
        if g.evolve(t).is_ok() {
            return (g, seeds, IvRow { i, v });
        }
    }
}

fn c6() -> Outcome {
    let mut residuals = 0usize;
    let mut nonzero = 0usize;
    let mut mismatched_rows = 0usize;
    let mut compared_rows = 0usize;
    let mut tally = |boundary: BoundaryKind, grid: &TauGrid<BigRational>, rows: usize| {
        let iv: Vec<_> = (0..=rows).map(|t| tau_to_iv(grid, t, |v: &BigRational| v.clone()).unwrap()).collect();
        for t in 0..rows {
            for r in iv_residuals(boundary, &iv[t], &iv[t + 1]) {
                residuals += 1;
                nonzero += usize::from(!r.is_zero());
            }
        }
    };
    for seed in SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let semi = random_open(&mut rng, BoundaryKind::SemiInfinite, 9, 6);
        tally(BoundaryKind::SemiInfinite, &semi, 5);
        let mol = random_open(&mut rng, BoundaryKind::Molecule(3), 4, 6);
        tally(BoundaryKind::Molecule(3), &mol, 5);
        let (per, _, _) = random_periodic(&mut rng, 4, 6);
        tally(BoundaryKind::Periodic(4), &per, 5);
        for n in 2..=5 {
            let (grid, _, row0) = random_periodic(&mut rng, n, 7);
            let mut state = IvState::new(BoundaryKind::Periodic(n), row0);
            for t in 0..=6 {
                if t > 0 {
                    state.step().unwrap();
                }
                compared_rows += 1;
                let via_tau = tau_to_iv(&grid, t, |v: &BigRational| v.clone()).unwrap();
                mismatched_rows += usize::from(via_tau != state.rows[t]);
            }
        }
    }
    outcome(
        nonzero == 0 && mismatched_rows == 0 && residuals > 0,
        format!("{residuals} residuals ({nonzero} nonzero); {compared_rows} I/V rows vs tau route ({mismatched_rows} differ)"),
    )
}

fn c7() -> Outcome {
    let mut checks = 0;
    let mut broken = 0;
    for seed in SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for n in 2..=5 {
            let (_, seeds, row0) = random_periodic(&mut rng, n, 2);
            let (lambda, mu) = (&seeds.constants.lambda, &seeds.constants.mu);
            let mut state = IvState::new(BoundaryKind::Periodic(n), row0);
            for t in 0..=10 {
                if t > 0 {
                    state.step().unwrap();
                }
                let row = &state.rows[t];
                let prod_i = row.i.iter().fold(q(1), |a, b| a * b);
                let prod_iv = row.i.iter().zip(&row.v).fold(q(1), |a, (i, v)| a * i * v);
                checks += 2;
                broken += usize::from(&prod_i != lambda) + usize::from(&prod_iv != mu);
            }
        }
    }
    outcome(broken == 0, format!("{checks} exact comparisons, {broken} broken"))
}

fn c8() -> Outcome {
    let mut s = semi_infinite_symbolic(8, true, Rule::Standard).unwrap();
    s.grid.evolve(4).unwrap();
    let audit = audit_iv_coprime(&s.grid, 5, 2).unwrap();
    let vv = audit
        .exceptions
        .iter()
        .any(|p| p.first == IvKind::V && p.second == IvKind::V && (p.dn.abs(), p.dt.abs()) == (2, 1) && p.dn * p.dt < 0);
    let shared = audit.pairs.iter().filter(|p| !p.required && !p.coprime).count();
    let ok = audit.violations == 0 && audit.required == audit.expected_required && audit.structure_mismatches == 0 && vv && shared > 0;
    outcome(
        ok,
        format!(
            "{} required pairs coprime ({} violations); {} exception patterns incl. V-V (2,-1): {vv}; {shared} non-required pairs share a factor",
            audit.required,
            audit.violations,
            audit.exceptions.len()
        ),
    )
}

fn c9() -> Outcome {
    let opts = VerifyOptions { trials: 3, seed: 0 };
    let mut failed = Vec::new();
    for id in CATALOG {
        let v = verify_identity(id, id.min_size(), &opts).unwrap();
        let clean = v.symbolic_zero && v.substitutions.len() == 3 && v.substitutions.iter().all(|s| s.nonzero == 0);
        if !(v.passed && clean) {
            failed.push(format!("({}) {}", v.key, v.name));
        }
    }
    let detail = if failed.is_empty() {
        format!("{} entries clean", CATALOG.len())
    } else {
        format!("{}/{} entries clean; failing: {}", CATALOG.len() - failed.len(), CATALOG.len(), failed.join(", "))
    };
    outcome(failed.is_empty(), detail)
}

fn c10() -> Outcome {
    let start = Instant::now();
    let factored = (3..=6).all(|n| (1..=n - 2).all(|j| factored_f(n, j) == Some(eval_f(n, j).unwrap())));
    let oracle = (3..=8).all(|n| (1..=n - 2).all(|j| oracle_f(n, j).unwrap() == BigRational::from_integer(eval_f(n, j).unwrap())));
    let scan = scan_f_positivity(200).unwrap();
    let took = start.elapsed();
    outcome(
        factored && oracle && scan.passed() && took < Duration::from_secs(30),
        format!(
            "factored forms {factored}, oracle {oracle}, scan min F({}, {}) = {} over {} points, {}",
            scan.min.n,
            scan.min.j,
            scan.min.value,
            scan.values.len(),
            secs(took)
        ),
    )
}

/// Raw values extended column by column with the untransformed recurrence
/// from seed rows, then compared with the quasi-periodic images.
fn raw_quasi_periodicity(grid: &TauGrid<BigRational>, seeds: &IvSeeds<BigRational>, n: usize, t_max: usize) -> (usize, usize) {
    let c = grid.constants().unwrap();
    let s = c.weight().unwrap();
    let raw = |m: usize, t: usize| grid.value(m, t).unwrap() / Scalar::pow(&s, (-tilde_exponent(t)) as u32);
    let width = 2 * n + t_max;
    let mut ext = std::collections::BTreeMap::new();
    for m in 0..=width {
        ext.insert((m, 0), seeds.seed(m, 0));
        ext.insert((m, 1), seeds.seed(m, 1));
    }
    for t in 2..=t_max {
        ext.insert((0, t), raw(0, t));
    }
    for t in 1..t_max {
        for m in 1..=width {
            let (Some(l), Some(r), Some(cur), Some(prev)) = (ext.get(&(m - 1, t + 1)), ext.get(&(m + 1, t - 1)), ext.get(&(m, t)), ext.get(&(m, t - 1))) else {
                break;
            };
            let v = (l * r + cur * cur) / prev;
            ext.insert((m, t + 1), v);
        }
    }
    let (mut checked, mut broken) = (0, 0);
    for t in 0..=t_max {
        for m in 0..n {
            if let Some(far) = ext.get(&(m + n, t)) {
                checked += 1;
                broken += usize::from(*far != raw(m, t) * c.shift_factor(m, t));
            }
        }
    }
    (checked, broken)
}

fn c11() -> Outcome {
    let (mut checked, mut broken) = (0, 0);
    for seed in SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for n in [3, 4] {
            let (grid, seeds, _) = random_periodic(&mut rng, n, 5);
            let (c, b) = raw_quasi_periodicity(&grid, &seeds, n, 5);
            checked += c;
            broken += b;
        }
    }
    let mut symbolic = 0;
    for n in [3, 4] {
        let mut s = periodic_symbolic(n).unwrap();
        s.grid.evolve(5).unwrap();
        let w = s.grid.constants().unwrap().weight().unwrap();
        let seed = |m: usize, t: usize| s.grid.value(m, t).unwrap();
        for (_, _, r) in quasi_periodicity_residuals(&s.grid, 5, &w, seed).unwrap() {
            symbolic += 1;
            broken += usize::from(!r.is_zero());
        }
    }
    outcome(
        broken == 0 && checked > 0 && symbolic > 0,
        format!("{checked} raw numeric cells and {symbolic} symbolic cells compared, {broken} broken"),
    )
}

fn c12() -> Outcome {
    let mut s = semi_infinite_symbolic(5, false, Rule::Cubed).unwrap();
    let evolved = s.grid.evolve(4);
    let region = Region::Rect { n_min: 1, n_max: 3, t_min: 0, t_max: 4 };
    let report = audit_grid(&s.grid, &region, &s.registry, None);
    let detected = evolved.is_err() || !report.summary.passed;
    let first = report.failures.first().map(|f| format!("first failure {} at (n={}, t={})", f.check, f.n, f.t));
    outcome(
        detected,
        first.unwrap_or_else(|| {
            format!(
                "no failure: {} cells Laurent, {} pairs coprime; the detector exits 0",
                report.summary.cells, report.summary.pairs
            )
        }),
    )
}

fn main() {
    let start = Instant::now();
    let ws = windows();
    let criteria: Vec<Criterion> = vec![
        (1, "molecule N=1 from ones", Box::new(c1)),
        (2, "molecule N=2 from ones", Box::new(c2)),
        (3, "symbolic Laurentness", Box::new(|| c3(&ws))),
        (4, "pairwise coprimeness", Box::new(|| c4(&ws))),
        (5, "periodic special init", Box::new(c5)),
        (6, "dictionary consistency", Box::new(c6)),
        (7, "conservation", Box::new(c7)),
        (8, "I/V coprimeness window", Box::new(c8)),
        (9, "identity catalog", Box::new(c9)),
        (10, "quartic F", Box::new(c10)),
        (11, "quasi-periodicity", Box::new(c11)),
        (12, "negative control", Box::new(c12)),
    ];
    let mut red = Vec::new();
    for (id, title, run) in &criteria {
        let o = run();
        println!("{} criterion {id:>2} {title}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        if !o.passed {
            red.push(*id);
        }
    }
    println!("acceptance: {}/{} criteria pass in {}", criteria.len() - red.len(), criteria.len(), secs(start.elapsed()));
    if red != KNOWN_RED {
        eprintln!("failing criteria {red:?} differ from the recorded set {KNOWN_RED:?}");
        std::process::exit(1);
    }
    println!("failing criteria match the recorded set {KNOWN_RED:?}");
}
