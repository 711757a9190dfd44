//! Validated run configuration and initial-data loading.

use std::path::PathBuf;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use toda_core::audit::Region;
use toda_core::evolve::{BoundaryKind, Rule};

use crate::args::{AuditArgs, Boundary, Form, Format, GridArgs, RuleArg, ScanArgs, VerifyArgs};
use crate::error::CliError;

/// Initial data selected by `--init`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "path")]
pub enum InitMode {
    Symbolic,
    Ones,
    PeriodicX,
    FibonacciCheck,
    File(PathBuf),
}

impl InitMode {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        Ok(match text {
            "symbolic" => InitMode::Symbolic,
            "ones" => InitMode::Ones,
            "periodic-x" => InitMode::PeriodicX,
            "fibonacci-check" => InitMode::FibonacciCheck,
            _ => match text.strip_prefix("file:") {
                Some(p) if !p.is_empty() => InitMode::File(PathBuf::from(p)),
                _ => {
                    return Err(CliError::Config(format!(
                        "unknown --init '{text}'; expected ones, periodic-x, fibonacci-check, symbolic or file:PATH"
                    )))
                }
            },
        })
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, InitMode::Symbolic | InitMode::PeriodicX)
    }
}

/// Everything that determines a report; serialized into it verbatim.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Boundary>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub init: Option<InitMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<Form>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<Region>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleArg>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tilde: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence_trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iv_window: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(rename = "N_max", skip_serializing_if = "Option::is_none")]
    pub n_max: Option<i64>,
    pub format: Format,
}

impl RunConfig {
    fn bare(command: &'static str, format: Format) -> Self {
        RunConfig {
            command,
            boundary: None,
            n: None,
            t_max: None,
            init: None,
            form: None,
            region: None,
            rule: None,
            tilde: None,
            evidence_trials: None,
            iv_window: None,
            name: None,
            all: None,
            seed: None,
            trials: None,
            n_max: None,
            format,
        }
    }

    pub fn boundary_kind(&self) -> BoundaryKind {
        match (self.boundary.expect("grid command"), self.n) {
            (Boundary::Semi, _) => BoundaryKind::SemiInfinite,
            (Boundary::Molecule, n) => BoundaryKind::Molecule(n.expect("validated")),
            (Boundary::Periodic, n) => BoundaryKind::Periodic(n.expect("validated")),
        }
    }

    pub fn rule_kind(&self) -> Rule {
        match self.rule {
            Some(RuleArg::Cubed) => Rule::Cubed,
            _ => Rule::Standard,
        }
    }

    pub fn t(&self) -> usize {
        self.t_max.expect("grid command")
    }

    pub fn init_mode(&self) -> &InitMode {
        self.init.as_ref().expect("grid command")
    }

    /// Semi-infinite sites: the diamond size when a region is set.
    pub fn sites(&self) -> usize {
        match (self.region, self.n) {
            (Some(Region::Diamond { k }), _) => k,
            (_, Some(n)) => n,
            _ => unreachable!("validated"),
        }
    }
}

fn parse_region(text: &str) -> Result<Region, CliError> {
    let k = text
        .strip_prefix('D')
        .or_else(|| text.strip_prefix('d'))
        .and_then(|k| k.parse::<usize>().ok())
        .filter(|&k| k >= 1)
        .ok_or_else(|| CliError::Config(format!("region must look like D4, got '{text}'")))?;
    Ok(Region::Diamond { k })
}

const DEFAULT_DIAMOND: usize = 4;

fn grid_config(command: &'static str, a: &GridArgs) -> Result<RunConfig, CliError> {
    let mut init = InitMode::parse(&a.init)?;
    let mut boundary = a.boundary;
    let mut n = a.n;
    if init == InitMode::FibonacciCheck {
        // Molecule N = 1 with every initial value 1.
        boundary = Boundary::Molecule;
        n = Some(1);
        init = InitMode::Ones;
    }
    let region = match (&a.region, boundary) {
        (Some(r), Boundary::Semi) => Some(parse_region(r)?),
        (Some(_), _) => return Err(CliError::Config("--region applies to the semi-infinite boundary only".into())),
        (None, _) => None,
    };
    match boundary {
        Boundary::Semi => {
            if n == Some(0) {
                return Err(CliError::Config("--N must be at least 1".into()));
            }
            if n.is_none() && region.is_none() {
                n = Some(DEFAULT_DIAMOND);
            }
        }
        Boundary::Molecule if n.unwrap_or(0) < 1 => {
            return Err(CliError::Config("molecule boundary needs --N >= 1".into()))
        }
        Boundary::Periodic if n.unwrap_or(0) < 2 => {
            return Err(CliError::Config("periodic boundary needs --N >= 2".into()))
        }
        _ => {}
    }
    if init == InitMode::PeriodicX && boundary != Boundary::Periodic {
        return Err(CliError::Config("--init periodic-x needs --boundary periodic".into()));
    }
    if a.tilde && boundary != Boundary::Periodic {
        return Err(CliError::Config("--tilde applies to the periodic boundary only".into()));
    }
    if a.rule == RuleArg::Cubed && boundary == Boundary::Periodic {
        return Err(CliError::Config("the cubed rule is defined for open boundaries only".into()));
    }
    let t_max = match a.tmax {
        Some(t) => t,
        None => match (boundary, region) {
            (Boundary::Semi, Some(Region::Diamond { k })) => 2 * k - 1,
            (Boundary::Semi, _) => 2 * n.unwrap_or(DEFAULT_DIAMOND) - 1,
            (Boundary::Molecule, _) => 8,
            (Boundary::Periodic, _) => 6,
        },
    };
    if t_max < 1 {
        return Err(CliError::Config("--tmax must be at least 1".into()));
    }
    let mut cfg = RunConfig::bare(command, a.output.format);
    cfg.boundary = Some(boundary);
    cfg.n = n;
    cfg.t_max = Some(t_max);
    cfg.init = Some(init);
    cfg.form = Some(a.form);
    cfg.region = region;
    cfg.rule = Some(a.rule);
    cfg.tilde = Some(a.tilde);
    Ok(cfg)
}

pub fn evolve_config(a: &GridArgs) -> Result<RunConfig, CliError> {
    grid_config("evolve", a)
}

pub fn audit_config(a: &AuditArgs) -> Result<RunConfig, CliError> {
    let mut cfg = grid_config("audit", &a.grid)?;
    if !cfg.init_mode().is_symbolic() {
        return Err(CliError::Config("audit needs symbolic initial data (symbolic or periodic-x)".into()));
    }
    if cfg.form == Some(Form::Iv) {
        return Err(CliError::Config("audit works on tau grids; use --iv-sites for I/V coprimeness".into()));
    }
    cfg.form = None;
    if cfg.boundary == Some(Boundary::Semi) {
        // The diamond fixes both the sites and the rows.
        let k = cfg.sites();
        cfg.region = Some(Region::Diamond { k });
        cfg.n = None;
        cfg.t_max = Some(2 * k - 1);
    }
    cfg.evidence_trials = Some(a.evidence_trials);
    if let Some(sites) = a.iv_sites {
        if sites == 0 {
            return Err(CliError::Config("--iv-sites must be at least 1".into()));
        }
        match cfg.boundary_kind() {
            BoundaryKind::Periodic(p) if sites != p => {
                return Err(CliError::Config(format!("periodic I/V window must cover all {p} sites")))
            }
            BoundaryKind::Molecule(m) if sites > m => {
                return Err(CliError::Config(format!("molecule N={m} has only {m} I/V sites")))
            }
            _ => {}
        }
        if cfg.init_mode() != &InitMode::Symbolic {
            return Err(CliError::Config("the I/V window needs --init symbolic".into()));
        }
        cfg.iv_window = Some((sites, a.iv_tmax));
    }
    Ok(cfg)
}

pub fn verify_config(a: &VerifyArgs) -> Result<RunConfig, CliError> {
    if a.trials == 0 {
        return Err(CliError::Config("--trials must be at least 1".into()));
    }
    let mut cfg = RunConfig::bare("verify", a.output.format);
    cfg.name = a.name.clone();
    cfg.all = Some(a.all);
    cfg.n = a.n;
    cfg.seed = Some(a.seed);
    cfg.trials = Some(a.trials);
    Ok(cfg)
}

pub fn scan_config(a: &ScanArgs) -> Result<RunConfig, CliError> {
    if a.n_max < 3 {
        return Err(CliError::Config("--Nmax must be at least 3".into()));
    }
    let mut cfg = RunConfig::bare("scan-F", a.output.format);
    cfg.n_max = Some(a.n_max);
    Ok(cfg)
}

/// Initial data read from `--init file:PATH`.
///
/// Periodic files carry `I` and `V` (sites 1..N); open files carry the tau
/// rows `tau0` and `tau1` listed from site 1. Values are exact rationals
/// written as strings such as `"3"` or `"-7/4"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    pub boundary: Option<Boundary>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    #[serde(rename = "I")]
    pub i: Option<Vec<String>>,
    #[serde(rename = "V")]
    pub v: Option<Vec<String>>,
    pub tau0: Option<Vec<String>>,
    pub tau1: Option<Vec<String>>,
}

pub struct LoadedInput {
    pub file: InputFile,
    pub bytes: Vec<u8>,
}

pub fn parse_rational(text: &str) -> Result<BigRational, CliError> {
    text.trim()
        .parse::<BigRational>()
        .map_err(|_| CliError::Config(format!("'{text}' is not an exact rational")))
}

pub fn load_input(cfg: &RunConfig) -> Result<Option<LoadedInput>, CliError> {
    let InitMode::File(path) = cfg.init_mode() else {
        return Ok(None);
    };
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let file: InputFile = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    if let Some(b) = file.boundary {
        if Some(b) != cfg.boundary {
            return Err(CliError::Config(format!("{} declares a different boundary", path.display())));
        }
    }
    if let (Some(n), Some(want)) = (file.n, cfg.n) {
        if n != want {
            return Err(CliError::Config(format!("{} declares N={n}, run uses N={want}", path.display())));
        }
    }
    Ok(Some(LoadedInput { file, bytes }))
}

/// SHA-256 over the canonical config JSON followed by the input file bytes.
pub fn input_hash(cfg: &RunConfig, input: Option<&LoadedInput>) -> String {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(cfg).expect("config serializes"));
    if let Some(inp) = input {
        h.update(&inp.bytes);
    }
    hex::encode(h.finalize())
}
