use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "toda", version, about = "Exact evolution and coprimeness audits for the discrete Toda equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evolve a grid and print tau values or I/V rows.
    Evolve(GridArgs),
    /// Audit Laurentness, pairwise coprimeness and irreducibility evidence.
    Audit(AuditArgs),
    /// Verify catalog identities symbolically and on random rationals.
    Verify(VerifyArgs),
    /// Evaluate F(N, j) exactly over a range and report its minimum.
    #[command(name = "scan-F", alias = "scan-f")]
    ScanF(ScanArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    Semi,
    Molecule,
    Periodic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    Tau,
    Iv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleArg {
    Standard,
    Cubed,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    #[arg(long, value_enum, default_value_t = Boundary::Semi)]
    pub boundary: Boundary,
    /// Chain size: sites for semi-infinite grids, N for molecule and periodic.
    #[arg(long = "N", alias = "n")]
    pub n: Option<usize>,
    #[arg(long)]
    pub tmax: Option<usize>,
    /// ones | periodic-x | fibonacci-check | symbolic | file:PATH
    #[arg(long, default_value = "symbolic")]
    pub init: String,
    #[arg(long, value_enum, default_value_t = Form::Tau)]
    pub form: Form,
    /// Semi-infinite diamond region, written `D<k>`.
    #[arg(long)]
    pub region: Option<String>,
    #[arg(long, value_enum, default_value_t = RuleArg::Standard)]
    pub rule: RuleArg,
    /// Report the rescaled periodic values instead of the raw ones.
    #[arg(long)]
    pub tilde: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct AuditArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Random specialization trials per cell for irreducibility evidence; 0 skips it.
    #[arg(long, default_value_t = 2)]
    pub evidence_trials: usize,
    /// Also audit I/V coprimeness for sites up to this bound.
    #[arg(long)]
    pub iv_sites: Option<usize>,
    /// Last time row of the I/V window.
    #[arg(long, default_value_t = 2)]
    pub iv_tmax: usize,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Catalog entry, by name or key letter.
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    pub name: Option<String>,
    #[arg(long)]
    pub all: bool,
    /// Size override for sized entries.
    #[arg(long = "N", alias = "n")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    #[arg(long = "Nmax", alias = "nmax", default_value_t = 200)]
    pub n_max: i64,
    #[command(flatten)]
    pub output: OutputArgs,
}
