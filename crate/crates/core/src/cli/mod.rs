//! Command-line surface: `count`, `verify` and `trace`.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.

pub mod checks;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bijections::{phi0_traced, phi_traced, psi0_traced, psi_traced, Trace};
use crate::classes::{count_series, Family};
use crate::core::{DistinctEtaPartition, Overpartition, Params};
use crate::error::{Error, Result};
use crate::marking::gordon_marking;
use crate::qseries::BaileyPair;
use crate::report::VerificationReport;

use checks::CheckInput;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "bressoud-over", version, about = "Overpartition bijections and identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// JSON run configuration; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Parameters, e.g. `eta=10,alphas=3:7,k=4,r=3,j=0`. Repeatable.
    #[arg(long = "params")]
    pub params: Vec<String>,
    #[arg(long)]
    pub max_weight: Option<i64>,
    #[arg(long = "trunc")]
    pub trunc: Option<i64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Bijection {
    Phi,
    Psi,
    Phi0,
    Psi0,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count members of a family for each weight.
    Count {
        /// `A0`, `A1`, `B0`, `B1`, `Abar0`, `Abar1`, `Bbar0`, `Bbar1` or `D`.
        family: String,
        #[arg(long, default_value_t = 0)]
        min_weight: i64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Run a named check and emit a JSON report.
    Verify {
        /// One of the names in `checks::CHECKS`; may come from the config instead.
        check: Option<String>,
        /// Bailey pair fixture for the `bailey` check.
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Print the intermediate stages of a bijection.
    Trace {
        #[arg(value_enum)]
        bijection: Bijection,
        /// Distinct multiples of η, e.g. `100,80,50`; empty for ∅.
        #[arg(long, default_value = "")]
        zeta: String,
        /// The (over)partition to map, e.g. `23o,20,7o,3o`.
        #[arg(long)]
        input: String,
        /// Also print the Gordon marking of each stage.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        common: Common,
    },
}

/// Run configuration file.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub params: Vec<String>,
    pub max_weight: Option<i64>,
    pub trunc: Option<i64>,
    #[serde(default)]
    pub checks: Vec<String>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub trace: bool,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    /// Command-line values win over file values.
    fn merged(common: &Common) -> Result<Self> {
        let mut cfg = match &common.config {
            Some(p) => Self::load(p)?,
            None => RunConfig::default(),
        };
        if !common.params.is_empty() {
            cfg.params = common.params.clone();
        }
        cfg.max_weight = common.max_weight.or(cfg.max_weight);
        cfg.trunc = common.trunc.or(cfg.trunc);
        cfg.out = common.out.clone().or(cfg.out);
        if cfg.max_weight.is_some_and(|w| w < 0) || cfg.trunc.is_some_and(|t| t < 0) {
            return Err(Error::InvalidParams("max weight and truncation must be non-negative".into()));
        }
        Ok(cfg)
    }

    fn parsed_params(&self) -> Result<Vec<Params>> {
        self.params.iter().map(|s| s.parse()).collect()
    }
}

/// Entry point used by `main` and the tests.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => writeln!(out, "{text}").map_err(|e| Error::Parse(e.to_string())),
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Count { family, min_weight, format, common } => {
            let cfg = RunConfig::merged(&common)?;
            let family: Family = family.parse()?;
            let params = single_params(&cfg)?;
            let max = cfg.max_weight.ok_or_else(|| Error::InvalidParams("count needs --max-weight".into()))?;
            let counts = if min_weight > max { Vec::new() } else { count_series(family, &params, max)? };
            let rows: Vec<(i64, u64)> =
                counts.into_iter().enumerate().map(|(n, c)| (n as i64, c)).filter(|(n, _)| *n >= min_weight).collect();
            let text = match format {
                Format::Csv => {
                    let mut s = String::from("n,count");
                    for (n, c) in &rows {
                        s.push_str(&format!("\n{n},{c}"));
                    }
                    s
                }
                Format::Json => {
                    let v: Vec<_> = rows.iter().map(|(n, c)| serde_json::json!({"n": n, "count": c})).collect();
                    serde_json::to_string_pretty(&v).expect("table serializes")
                }
            };
            emit(&text, cfg.out.as_deref(), out)?;
            Ok(EXIT_PASS)
        }
        Command::Verify { check, pair, n_max, common } => {
            let cfg = RunConfig::merged(&common)?;
            let ids: Vec<String> = match check {
                Some(c) => vec![c],
                None if !cfg.checks.is_empty() => cfg.checks.clone(),
                None => return Err(Error::Parse("verify needs a check name".into())),
            };
            if let Some(bad) = ids.iter().find(|c| !checks::CHECKS.contains(&c.as_str())) {
                return Err(Error::Parse(format!("unknown check `{bad}`; expected one of {}", checks::CHECKS.join(", "))));
            }
            let pair = match pair {
                Some(p) => {
                    let text = std::fs::read_to_string(&p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
                    Some(BaileyPair::from_json(&text)?)
                }
                None => None,
            };
            let plist = cfg.parsed_params()?;
            let plist: Vec<Option<Params>> =
                if plist.is_empty() { vec![None] } else { plist.into_iter().map(Some).collect() };
            let mut reports = Vec::new();
            for id in &ids {
                for p in &plist {
                    let input = CheckInput {
                        params: p.clone(),
                        max_weight: cfg.max_weight.unwrap_or(30),
                        trunc: cfg.trunc.unwrap_or(100),
                        n_max,
                        pair: pair.clone(),
                    };
                    reports.push(checks::run_check(id, &input)?);
                }
            }
            let report = if reports.len() == 1 { reports.pop().unwrap() } else { VerificationReport::all("verify", reports) };
            emit(&report.to_json(), cfg.out.as_deref(), out)?;
            let status = if report.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(err, "{}: {status}", report.check);
            Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Trace { bijection, zeta, input, trace, common } => {
            let cfg = RunConfig::merged(&common)?;
            let params = single_params(&cfg)?;
            let mut t = Trace::default();
            let obj: Overpartition = input.parse()?;
            let result = match bijection {
                Bijection::Phi | Bijection::Phi0 => {
                    let z = parse_zeta(&zeta, params.eta)?;
                    let f = if bijection == Bijection::Phi { phi_traced } else { phi0_traced };
                    f(&z, &obj, &params, Some(&mut t)).map(|o| o.to_string())?
                }
                Bijection::Psi | Bijection::Psi0 => {
                    let f = if bijection == Bijection::Psi { psi_traced } else { psi0_traced };
                    let (z, m) = f(&obj, &params, Some(&mut t))?;
                    format!("zeta={z} mu={m}")
                }
            };
            let mut text = String::new();
            for (i, s) in t.stages.iter().enumerate() {
                text.push_str(&format!("{i:>2}  {:<28} {}\n", s.action, s.state));
                if trace || cfg.trace {
                    let o: Overpartition = s.state.parse()?;
                    text.push_str(&format!("    marks {}\n", gordon_marking(&o, params.eta).render()));
                }
            }
            text.push_str(&format!("result {result}"));
            match cfg.out.as_deref() {
                Some(p) => emit(&serde_json::to_string_pretty(&t).expect("trace serializes"), Some(p), out)?,
                None => emit(&text, None, out)?,
            }
            let _ = err;
            Ok(EXIT_PASS)
        }
    }
}

fn single_params(cfg: &RunConfig) -> Result<Params> {
    match cfg.parsed_params()?.as_slice() {
        [p] => Ok(p.clone()),
        [] => Err(Error::InvalidParams("missing --params".into())),
        _ => Err(Error::InvalidParams("exactly one --params expected".into())),
    }
}

fn parse_zeta(s: &str, eta: i64) -> Result<DistinctEtaPartition> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if s.is_empty() || s == "-" {
        return Ok(DistinctEtaPartition::empty(eta));
    }
    let parts = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad zeta part `{x}`"))))
        .collect::<Result<Vec<_>>>()?;
    DistinctEtaPartition::new(eta, parts)
}
