//! The `qsorep` command line.
//!
//! Every subcommand reads one job description assembled from, in decreasing
//! priority, command-line flags, a JSON `--config` file with the same field
//! names, the `QSOREP_TOL` environment variable (tolerance only) and built-in
//! defaults. Exit status is 0 when all checks pass, 1 when a check fails and 2
//! for invalid input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::io::{load_json, save_csv, save_json, write_atomic};
use crate::patterns::{enumerate, parse_halves, Flavor, Half, HighestWeight, SignVector};
use crate::qnum::QParam;
use crate::repmatrix::{build, RepKind, RepMatrices, RepSpec};
use crate::suite::{self, SuiteOptions};
use crate::verify::{
    check_relations, commutant_dimension, decompose_prime, identify_blocks, BlockSummary, RelationReport, DEFAULT_CAP,
};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const TOL_ENV: &str = "QSOREP_TOL";
const MATCH_TOL: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "qsorep", version, about = "Matrix representations of the nonstandard q-deformed algebra U'_q(so_n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub job: JobArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// List the Gel'fand-Tsetlin basis of a representation.
    Enumerate,
    /// Build the generator matrices and write them out.
    Build,
    /// Check the defining relations and irreducibility.
    Verify,
    /// Split T' into invariant blocks and identify each one.
    Decompose,
    /// Run the full desk-scale verification grid.
    Suite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, Args)]
pub struct JobArgs {
    /// Rank parameter: the algebra is U'_q(so_n).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// classical, nonclassical, one-dim or prime.
    #[arg(long, visible_alias = "kind", global = true)]
    pub flavor: Option<String>,
    /// Highest weight, e.g. "3/2,1/2" or "1,0".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub weight: Option<String>,
    /// Signs eps_2..eps_n as "+,-,+" or "1,-1,1". For prime, the even ones suffice.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub signs: Option<String>,
    #[arg(long, global = true)]
    pub q: Option<f64>,
    /// Tolerance for relation residuals and block leakage.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Job description as JSON; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Matrix file to verify instead of building one.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Print every tableau (enumerate).
    #[arg(long, global = true)]
    pub list: bool,
}

/// A list given either as a comma-separated string or as a JSON array.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Tokens {
    Text(String),
    List(Vec<Value>),
}

impl Tokens {
    fn joined(&self) -> String {
        match self {
            Tokens::Text(s) => s.clone(),
            Tokens::List(v) => v
                .iter()
                .map(|x| match x {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect::<Vec<_>>()
                .join(","),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    command: Option<Command>,
    n: Option<usize>,
    #[serde(alias = "kind")]
    flavor: Option<String>,
    weight: Option<Tokens>,
    signs: Option<Tokens>,
    q: Option<f64>,
    tol: Option<f64>,
    output: Option<PathBuf>,
    format: Option<Format>,
    input: Option<PathBuf>,
    #[serde(default)]
    list: bool,
}

/// A fully resolved job.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub command: Command,
    pub n: Option<usize>,
    pub kind: RepKind,
    pub weight: Option<Vec<Half>>,
    pub signs: Option<Vec<i8>>,
    pub q: f64,
    pub tol: f64,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub input: Option<PathBuf>,
    pub list: bool,
}

fn parse_signs(s: &str) -> Result<Vec<i8>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t {
            "+" | "+1" | "1" => Ok(1),
            "-" | "-1" => Ok(-1),
            _ => Err(Error::Parse(format!("bad sign {t:?}: use +, -, 1 or -1"))),
        })
        .collect()
}

impl JobConfig {
    pub fn resolve(cli: Cli) -> Result<Self> {
        let file: ConfigFile = match &cli.job.config {
            Some(path) => serde_json::from_str(&fs::read_to_string(path)?)
                .map_err(|e| Error::Parse(format!("config {}: {e}", path.display())))?,
            None => ConfigFile::default(),
        };
        let job = cli.job;
        let command = cli
            .command
            .or(file.command)
            .ok_or_else(|| Error::Parse("no command given (enumerate, build, verify, decompose, suite)".into()))?;
        let kind = match job.flavor.or(file.flavor) {
            Some(k) => k.parse()?,
            None => RepKind::Classical,
        };
        let weight = match job.weight.or_else(|| file.weight.map(|t| t.joined())) {
            Some(w) => Some(parse_halves(&w)?),
            None => None,
        };
        let signs = match job.signs.or_else(|| file.signs.map(|t| t.joined())) {
            Some(s) => Some(parse_signs(&s)?),
            None => None,
        };
        let env_tol = match std::env::var(TOL_ENV) {
            Ok(v) => Some(v.trim().parse::<f64>().map_err(|_| Error::Parse(format!("{TOL_ENV}={v:?} is not a number")))?),
            Err(_) => None,
        };
        let tol = job.tol.or(file.tol).or(env_tol).unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Parse(format!("tolerance must be positive, got {tol}")));
        }
        Ok(JobConfig {
            command,
            n: job.n.or(file.n),
            kind,
            weight,
            signs,
            q: job.q.or(file.q).unwrap_or(2.0),
            tol,
            output: job.output.or(file.output),
            format: job.format.or(file.format).unwrap_or(Format::Json),
            input: job.input.or(file.input),
            list: job.list || file.list,
        })
    }

    fn n(&self) -> Result<usize> {
        self.n.ok_or_else(|| Error::Parse("--n is required".into()))
    }

    fn weight(&self, flavor: Flavor) -> Result<HighestWeight> {
        let n = self.n()?;
        let entries = match (&self.weight, self.kind) {
            (Some(w), _) => w.clone(),
            (None, RepKind::OneDim) => vec![Half::HALF; n / 2],
            (None, _) => return Err(Error::Parse("--weight is required".into())),
        };
        HighestWeight::new(n, entries, flavor)
    }

    fn full_signs(&self, n: usize) -> Result<SignVector> {
        match &self.signs {
            Some(s) => SignVector::new(n, s.clone()),
            None => Err(Error::InvalidSigns(format!("--signs with {} entries is required for {}", n - 1, self.kind))),
        }
    }

    /// Returns the spec and any diagnostic to print.
    pub fn spec(&self) -> Result<(RepSpec, Option<String>)> {
        let n = self.n()?;
        let q = QParam::new(self.q)?;
        let mut note = None;
        let spec = match self.kind {
            RepKind::Classical => {
                if self.signs.is_some() {
                    return Err(Error::InvalidSpec("classical representations take no signs".into()));
                }
                RepSpec::classical(self.weight(Flavor::Classical)?, q)?
            }
            RepKind::Nonclassical => RepSpec::nonclassical(self.weight(Flavor::Nonclassical)?, self.full_signs(n)?, q)?,
            RepKind::OneDim => {
                let w = self.weight(Flavor::Nonclassical)?;
                RepSpec::new(w, Some(self.full_signs(n)?), q, RepKind::OneDim)?
            }
            RepKind::Prime => {
                let signs = match &self.signs {
                    None => SignVector::from_evens(n, &vec![1; n / 2])?,
                    Some(s) if s.len() == n / 2 => SignVector::from_evens(n, s)?,
                    Some(s) if s.len() == n - 1 => {
                        let full = SignVector::new(n, s.clone())?;
                        if (3..=n).step_by(2).any(|k| full.get(k) != 1) {
                            note = Some("warning: odd signs ignored; T' reads eps_2, eps_4, ... only".to_string());
                        }
                        SignVector::from_evens(n, &full.evens())?
                    }
                    Some(s) => {
                        return Err(Error::InvalidSigns(format!(
                            "prime kind takes {} even signs or {} full signs, got {}",
                            n / 2,
                            n - 1,
                            s.len()
                        )))
                    }
                };
                RepSpec::prime(self.weight(Flavor::Nonclassical)?, signs, q)?
            }
        };
        Ok((spec, note))
    }
}

/// Outcome of one command, mapped to the exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Debug, Serialize)]
struct EnumerateReport {
    n: usize,
    flavor: Flavor,
    weight: String,
    dim: usize,
    basis: Vec<crate::patterns::GtPattern>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub dim: usize,
    pub kind: Option<RepKind>,
    pub relations: RelationReport,
    /// `None` when not applicable (T', dimension above the cap).
    pub commutant_dimension: Option<usize>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
struct DecomposeBlock {
    #[serde(flatten)]
    summary: BlockSummary,
    matched: Vec<SignVector>,
    relations_max_residual: f64,
}

#[derive(Debug, Serialize)]
struct DecomposeReport {
    n: usize,
    weight: String,
    dim: usize,
    invariance_residual: f64,
    blocks: Vec<DecomposeBlock>,
    pass: bool,
}

fn emit<T: Serialize>(value: &T, output: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match output {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            writeln!(std::io::stdout(), "{text}")?;
            Ok(())
        }
    }
}

pub fn cmd_enumerate(cfg: &JobConfig) -> Result<Outcome> {
    let flavor = match cfg.kind {
        RepKind::Classical | RepKind::Prime => Flavor::Classical,
        RepKind::Nonclassical | RepKind::OneDim => Flavor::Nonclassical,
    };
    let w = cfg.weight(flavor)?;
    if cfg.kind == RepKind::Prime && !w.is_half_integral() {
        return Err(Error::InvalidWeight("prime kind needs a half-integral weight".into()));
    }
    let basis = enumerate(&w);
    println!("dim = {}", basis.len());
    if cfg.list {
        for p in &basis {
            println!("{p}");
        }
    }
    if let Some(path) = &cfg.output {
        let report = EnumerateReport { n: w.n(), flavor, weight: w.to_string(), dim: basis.len(), basis };
        emit(&report, Some(path))?;
    }
    Ok(Outcome::Pass)
}

pub fn cmd_build(cfg: &JobConfig) -> Result<Outcome> {
    let (spec, note) = cfg.spec()?;
    if let Some(note) = note {
        eprintln!("{note}");
    }
    let rep = build(&spec)?;
    match (cfg.format, &cfg.output) {
        (Format::Json, Some(path)) => {
            save_json(&rep, path)?;
            println!("wrote {} ({} generators, dim = {})", path.display(), rep.n() - 1, rep.dim());
        }
        (Format::Json, None) => println!("{}", crate::io::to_json(&rep)?),
        (Format::Csv, Some(dir)) => {
            for p in save_csv(&rep, dir)? {
                println!("wrote {}", p.display());
            }
        }
        (Format::Csv, None) => return Err(Error::Parse("--format csv needs --output <directory>".into())),
    }
    Ok(Outcome::Pass)
}

/// Relations plus, for the irreducible kinds, the commutant dimension.
pub fn verify_rep(rep: &RepMatrices, tol: f64) -> Result<VerifyReport> {
    let relations = check_relations(rep, tol)?;
    let kind = rep.spec().map(RepSpec::kind);
    let irreducible_kind = matches!(kind, Some(RepKind::Classical | RepKind::Nonclassical | RepKind::OneDim));
    let commutant = if irreducible_kind && rep.dim() <= DEFAULT_CAP {
        Some(commutant_dimension(rep, crate::verify::commutant::DEFAULT_TOL)?)
    } else {
        None
    };
    let pass = relations.pass && commutant.is_none_or(|c| c == 1);
    Ok(VerifyReport { n: rep.n(), dim: rep.dim(), kind, relations, commutant_dimension: commutant, pass })
}

pub fn cmd_verify(cfg: &JobConfig) -> Result<Outcome> {
    let rep = match &cfg.input {
        Some(path) => load_json(path)?,
        None => {
            let (spec, note) = cfg.spec()?;
            if let Some(note) = note {
                eprintln!("{note}");
            }
            build(&spec)?
        }
    };
    let report = verify_rep(&rep, cfg.tol)?;
    let worst = report.relations.worst.map(|w| w.to_string()).unwrap_or_else(|| "none".into());
    println!("relations: max residual {:.3e} ({worst})", report.relations.max_residual);
    if let Some(c) = report.commutant_dimension {
        println!("commutant dimension = {c}");
    }
    if let Some(path) = &cfg.output {
        emit(&report, Some(path))?;
    }
    if report.pass {
        println!("PASS");
        Ok(Outcome::Pass)
    } else if !report.relations.pass {
        println!("FAIL: relation {worst} residual {:.3e} >= {:.1e}", report.relations.max_residual, cfg.tol);
        Ok(Outcome::Fail)
    } else {
        println!("FAIL: commutant dimension {:?} != 1", report.commutant_dimension);
        Ok(Outcome::Fail)
    }
}

pub fn cmd_decompose(cfg: &JobConfig) -> Result<Outcome> {
    let mut prime_cfg = cfg.clone();
    prime_cfg.kind = RepKind::Prime;
    let (spec, note) = prime_cfg.spec()?;
    if let Some(note) = note {
        eprintln!("{note}");
    }
    let rep = build(&spec)?;
    let report = match decompose_prime(&rep, cfg.tol) {
        Ok(r) => r,
        Err(e @ Error::Leakage { .. }) => {
            println!("FAIL: {e}");
            return Ok(Outcome::Fail);
        }
        Err(e) => return Err(e),
    };
    let matches = identify_blocks(&rep, &report, MATCH_TOL)?;
    let mut blocks = Vec::new();
    let mut pass = report.blocks.len() == 1 << ((rep.n() - 1) / 2);
    for ((b, summary), matched) in report.blocks.iter().zip(report.summary()).zip(matches) {
        let rel = check_relations(&b.rep, cfg.tol)?;
        let ok = matched.len() == 1 && matched[0] == b.signs && rel.pass;
        pass &= ok;
        let shown: Vec<String> = matched.iter().map(ToString::to_string).collect();
        println!(
            "block eps={} dim = {} matched [{}] relations {:.3e} {}",
            b.signs,
            b.rep.dim(),
            shown.join(", "),
            rel.max_residual,
            if ok { "ok" } else { "FAIL" }
        );
        blocks.push(DecomposeBlock { summary, matched, relations_max_residual: rel.max_residual });
    }
    println!("{} blocks, leakage {:.3e}", blocks.len(), report.invariance_residual);
    let out = DecomposeReport {
        n: rep.n(),
        weight: spec.weight().to_string(),
        dim: rep.dim(),
        invariance_residual: report.invariance_residual,
        blocks,
        pass,
    };
    if let Some(path) = &cfg.output {
        emit(&out, Some(path))?;
    }
    println!("{}", if pass { "PASS" } else { "FAIL: block identification" });
    Ok(if pass { Outcome::Pass } else { Outcome::Fail })
}

pub fn cmd_suite(cfg: &JobConfig) -> Result<Outcome> {
    let mut opts = SuiteOptions { tol: cfg.tol, ..Default::default() };
    if let Some(n) = cfg.n {
        opts.ns = vec![n];
    }
    let report = suite::run(&opts)?;
    for c in &report.checks {
        println!("{} {:<14} {:>5} cases  {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.cases, c.detail);
    }
    if let Some(path) = &cfg.output {
        emit(&report, Some(path))?;
    }
    match report.first_failure() {
        None => Ok(Outcome::Pass),
        Some(c) => {
            println!("FAIL: {}", c.name);
            Ok(Outcome::Fail)
        }
    }
}

pub fn run(cfg: &JobConfig) -> Result<Outcome> {
    match cfg.command {
        Command::Enumerate => cmd_enumerate(cfg),
        Command::Build => cmd_build(cfg),
        Command::Verify => cmd_verify(cfg),
        Command::Decompose => cmd_decompose(cfg),
        Command::Suite => cmd_suite(cfg),
    }
}

/// Entry point of the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = JobConfig::resolve(cli).and_then(|cfg| run(&cfg));
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
