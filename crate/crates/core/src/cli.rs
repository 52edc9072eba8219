//! Command-line front end.
//!
//! ```text
//! lambdaphi sieve      --limit N [--out PATH]
//! lambdaphi eval       --n N | --x X
//! lambdaphi decompose  --x X
//! lambdaphi experiment --name {theorem1,mp,blss,harland,egps,prop4,lemma3} --x X
//! lambdaphi constants  --name {mertens,eps,bt,tk,lemma2}
//! lambdaphi dist       --x X --t-grid T1,T2,...
//! ```
//!
//! Data goes to stdout (or `--out`), diagnostics to stderr. Exit code is 0
//! on success, 1 on a runtime or config error and 2 on a usage error.
//!
//! Tables are cached when `--table PATH` is given or `LAMBDAPHI_CACHE_DIR`
//! is set (file `spf-<limit>.bin` in that directory); otherwise they are
//! built in memory.
//!
//! CSV layouts:
//! - `decompose`: `n,large_sum,small_lambda_lambda,g,g0,h,in_S`
//! - `eval --x`: `# schema_version=1`, then
//!   `n,phi,lambda,lambda_phi,lambda_lambda,log_ratio,g,g0,h,in_S`
//! - `dist`: `t,fraction`

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::{compose, FunctionTag, NumberProfile};
use crate::constants::{
    bt_ratios, eps_constant, lemma2_check, mertens_sum, tk_empirical, tk_moments, ConstantRecord,
    EPS_SUMMAND_NOTE, TK_RATIO_THRESHOLD,
};
use crate::decomposition::{ProofParams, PsiChoice, DEFAULT_BT_CONSTANT};
use crate::error::{Error, Result};
use crate::factorint::SpfTable;
use crate::harness::{
    blss_experiments, egps_experiment, harland_experiment, lemma3_grid, mp_experiment,
    prop4_experiment, schoenberg_distribution, theorem1_experiment, write_decomposition_csv,
    write_per_n_csv, Lemma3Record, NormalOrderReport,
};
use crate::output::format_real;
use crate::parallel::DEFAULT_BLOCK_SIZE;

/// Environment variable naming the default table cache directory.
pub const CACHE_DIR_ENV: &str = "LAMBDAPHI_CACHE_DIR";

pub const DEFAULT_X: u64 = 1_000_000;
pub const DEFAULT_SIEVE_LIMIT: u64 = 10_000_000;
pub const MIN_X: u64 = 100;

#[derive(Debug, Parser)]
#[command(name = "lambdaphi", version, about = "Exact φ/λ compositions and normal-order experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a smallest-prime-factor table and cache it.
    Sieve {
        #[arg(long, default_value_t = DEFAULT_SIEVE_LIMIT)]
        limit: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one n, or dump every n up to x.
    Eval {
        #[arg(long, conflicts_with = "x")]
        n: Option<u64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Stream the log-ratio decomposition for every n up to x.
    Decompose {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run a normal-order experiment.
    Experiment {
        #[arg(long)]
        name: ExperimentName,
        /// Iterate depth for harland and egps.
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Primes for lemma3.
        #[arg(long, value_delimiter = ',', default_values_t = [3u64, 5, 7])]
        q: Vec<u64>,
        /// Exponents for lemma3.
        #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3])]
        a: Vec<u32>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evaluate prime sums and constants.
    Constants {
        #[arg(long)]
        name: ConstantName,
        /// Evaluation points for mertens and lemma2.
        #[arg(long, value_delimiter = ',')]
        z: Vec<f64>,
        /// Prime bound for eps.
        #[arg(long, default_value_t = 1_000_000)]
        prime_limit: u64,
        /// Moduli for bt.
        #[arg(long, value_delimiter = ',', default_values_t = [3u64, 4, 5, 7, 8, 9, 11, 13, 16])]
        moduli: Vec<u64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Empirical distribution of n/φ(n).
    Dist {
        #[arg(long = "t-grid", value_delimiter = ',', default_values_t = [1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0])]
        t_grid: Vec<f64>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    #[arg(long)]
    x: Option<u64>,
    /// Brun–Titchmarsh constant in the prime cutoff 3cy.
    #[arg(long, default_value_t = DEFAULT_BT_CONSTANT)]
    c: f64,
    /// sqrt-log3, log3-pow:E or fixed:V.
    #[arg(long, default_value = "sqrt-log3", value_parser = parse_psi)]
    psi: PsiChoice,
    /// Table cache file.
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_BLOCK_SIZE)]
    block_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentName {
    Theorem1,
    Mp,
    Blss,
    Harland,
    Egps,
    Prop4,
    Lemma3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstantName {
    Mertens,
    Eps,
    Bt,
    Tk,
    Lemma2,
}

/// Parses `sqrt-log3`, `log3-pow:E` or `fixed:V`.
pub fn parse_psi(s: &str) -> std::result::Result<PsiChoice, String> {
    let num = |v: &str| v.parse::<f64>().map_err(|e| format!("bad number {v:?}: {e}"));
    match s.split_once(':') {
        None if s == "sqrt-log3" => Ok(PsiChoice::SqrtLog3),
        Some(("log3-pow", e)) => Ok(PsiChoice::Log3Power(num(e)?)),
        Some(("fixed", v)) => Ok(PsiChoice::Fixed(num(v)?)),
        _ => Err(format!("expected sqrt-log3, log3-pow:E or fixed:V, got {s:?}")),
    }
}

/// Validated settings shared by the range subcommands.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub x: u64,
    pub c: f64,
    pub psi: PsiChoice,
    pub table_path: Option<PathBuf>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub block_size: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            x: DEFAULT_X,
            c: DEFAULT_BT_CONSTANT,
            psi: PsiChoice::SqrtLog3,
            table_path: None,
            format: Format::Json,
            out: None,
            block_size: DEFAULT_BLOCK_SIZE,
        }
    }
}

fn field_error(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(format!("field `{field}`: {msg}"))
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.x < MIN_X {
            return Err(field_error("x", format!("must be at least {MIN_X}, got {}", self.x)));
        }
        if self.block_size == 0 {
            return Err(field_error("block_size", "must be at least 1"));
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(field_error("c", format!("must be positive, got {}", self.c)));
        }
        self.params().map(|_| ())
    }

    pub fn params(&self) -> Result<ProofParams> {
        ProofParams::new(self.x as f64, self.c, self.psi).map_err(|e| field_error("psi", e))
    }

    fn from_args(args: &CommonArgs, default_format: Format) -> Result<Self> {
        let cfg = ExperimentConfig {
            x: args.x.unwrap_or(DEFAULT_X),
            c: args.c,
            psi: args.psi,
            table_path: args.table.clone(),
            format: args.format.unwrap_or(default_format),
            out: args.out.clone(),
            block_size: args.block_size,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Cache file for a table of the given limit, if any cache location is configured.
pub fn cache_path(limit: u64, explicit: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = explicit {
        return Some(p.to_path_buf());
    }
    std::env::var_os(CACHE_DIR_ENV)
        .filter(|d| !d.is_empty())
        .map(|d| PathBuf::from(d).join(format!("spf-{limit}.bin")))
}

/// Loads a cached table covering `limit`, or builds one and caches it.
pub fn obtain_table(limit: u64, explicit: Option<&Path>) -> Result<SpfTable> {
    let limit = limit.max(2);
    let Some(path) = cache_path(limit, explicit) else {
        return SpfTable::build(limit);
    };
    if path.exists() {
        let table = SpfTable::load(&path)?;
        if table.limit() < limit {
            return Err(field_error(
                "table",
                format!(
                    "{} covers n <= {}, need {limit}",
                    path.display(),
                    table.limit()
                ),
            ));
        }
        return Ok(table);
    }
    let table = SpfTable::build(limit)?;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    table.save(&path)?;
    Ok(table)
}

fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn with_output(
    out: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            body(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => {
            body(stdout)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Sieve { limit, out } => {
            let Some(path) = cache_path(limit, out.as_deref()) else {
                return Err(field_error(
                    "out",
                    format!("no output path; pass --out or set {CACHE_DIR_ENV}"),
                ));
            };
            let table = SpfTable::build(limit)?;
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            table.save(&path)?;
            writeln!(
                stdout,
                "limit={} primes={} path={}",
                table.limit(),
                table.primes().len(),
                path.display()
            )?;
            Ok(())
        }
        Command::Eval { n: Some(n), common } => {
            if n == 0 {
                return Err(field_error("n", "must be positive"));
            }
            let table = obtain_table(n, common.table.as_deref())?;
            let text = eval_one(n, &table, common.format)?;
            with_output(common.out.as_deref(), stdout, |w| Ok(w.write_all(text.as_bytes())?))
        }
        Command::Eval { n: None, common } => {
            let cfg = ExperimentConfig::from_args(&common, Format::Csv)?;
            require_csv(&cfg, "eval --x")?;
            let params = cfg.params()?;
            let table = obtain_table(cfg.x, cfg.table_path.as_deref())?;
            with_output(cfg.out.as_deref(), stdout, |w| {
                write_per_n_csv(w, 1, cfg.x, &params, &table, cfg.block_size)
            })
        }
        Command::Decompose { common } => {
            let cfg = ExperimentConfig::from_args(&common, Format::Csv)?;
            require_csv(&cfg, "decompose")?;
            let params = cfg.params()?;
            let table = obtain_table(cfg.x, cfg.table_path.as_deref())?;
            with_output(cfg.out.as_deref(), stdout, |w| {
                write_decomposition_csv(w, cfg.x, &params, &table, cfg.block_size)
            })
        }
        Command::Experiment {
            name,
            k,
            q,
            a,
            common,
        } => {
            let cfg = ExperimentConfig::from_args(&common, Format::Json)?;
            let text = run_experiment(name, k, &q, &a, &cfg)?;
            with_output(cfg.out.as_deref(), stdout, |w| Ok(w.write_all(text.as_bytes())?))
        }
        Command::Constants {
            name,
            z,
            prime_limit,
            moduli,
            common,
        } => {
            let cfg = ExperimentConfig::from_args(&common, Format::Json)?;
            let records = run_constants(name, &z, prime_limit, &moduli, &cfg, stderr)?;
            let text = match cfg.format {
                Format::Json => to_json(&records),
                Format::Csv => constants_csv(&records),
            };
            with_output(cfg.out.as_deref(), stdout, |w| Ok(w.write_all(text.as_bytes())?))
        }
        Command::Dist { t_grid, common } => {
            let cfg = ExperimentConfig::from_args(&common, Format::Csv)?;
            let table = obtain_table(cfg.x, cfg.table_path.as_deref())?;
            let d = schoenberg_distribution(cfg.x, &t_grid, &table, cfg.block_size)
                .map_err(|e| field_error("t_grid", e))?;
            let text = match cfg.format {
                Format::Json => to_json(&d),
                Format::Csv => d.to_csv(),
            };
            with_output(cfg.out.as_deref(), stdout, |w| Ok(w.write_all(text.as_bytes())?))
        }
    }
}

fn require_csv(cfg: &ExperimentConfig, what: &str) -> Result<()> {
    if cfg.format != Format::Csv {
        return Err(field_error("format", format!("{what} writes csv only")));
    }
    Ok(())
}

#[derive(Serialize)]
struct EvalRecord {
    n: u64,
    phi: u64,
    lambda: u64,
    phi_phi: u64,
    phi_lambda: u64,
    lambda_phi: u64,
    lambda_lambda: u64,
    log_ratio: String,
    #[serde(serialize_with = "crate::output::rounded")]
    log_ratio_value: f64,
}

/// `key=value` lines for one `n` (or a JSON object with `Format::Json`).
pub fn eval_one(n: u64, table: &SpfTable, format: Option<Format>) -> Result<String> {
    let p = NumberProfile::compute(n, table)?;
    let ratio = p.log_ratio();
    let rec = EvalRecord {
        n,
        phi: p.phi.value(),
        lambda: p.lambda.value(),
        phi_phi: compose(n, FunctionTag::Phi, FunctionTag::Phi, table)?,
        phi_lambda: p.phi_lambda.value(),
        lambda_phi: p.lambda_phi.value(),
        lambda_lambda: p.lambda_lambda.value(),
        log_ratio: ratio.to_string(),
        log_ratio_value: ratio.real_value(),
    };
    Ok(match format {
        Some(Format::Json) => to_json(&rec),
        Some(Format::Csv) => format!(
            "n,phi,lambda,phi_phi,phi_lambda,lambda_phi,lambda_lambda,log_ratio,log_ratio_value\n\
             {},{},{},{},{},{},{},{},{}\n",
            rec.n,
            rec.phi,
            rec.lambda,
            rec.phi_phi,
            rec.phi_lambda,
            rec.lambda_phi,
            rec.lambda_lambda,
            rec.log_ratio,
            format_real(rec.log_ratio_value)
        ),
        None => format!(
            "n={}\nphi={}\nlambda={}\nphi_phi={}\nphi_lambda={}\nlambda_phi={}\nlambda_lambda={}\nlog_ratio={}\nlog_ratio_value={}\n",
            rec.n,
            rec.phi,
            rec.lambda,
            rec.phi_phi,
            rec.phi_lambda,
            rec.lambda_phi,
            rec.lambda_lambda,
            rec.log_ratio,
            format_real(rec.log_ratio_value)
        ),
    })
}

fn reports_text(reports: &[NormalOrderReport], format: Format) -> String {
    match format {
        Format::Json if reports.len() == 1 => to_json(&reports[0]),
        Format::Json => to_json(reports),
        Format::Csv => {
            let mut out = String::new();
            for (i, r) in reports.iter().enumerate() {
                let csv = r.to_csv();
                if i == 0 {
                    out.push_str(&csv);
                } else {
                    out.extend(csv.lines().skip(1).map(|l| format!("{l}\n")));
                }
            }
            out
        }
    }
}

fn lemma3_text(records: &[Lemma3Record], format: Format) -> String {
    match format {
        Format::Json => to_json(records),
        Format::Csv => {
            let mut out = String::from("schema_version,x,q,a,count,ratio\n");
            for r in records {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.schema_version,
                    r.x,
                    r.q,
                    r.a,
                    r.count,
                    format_real(r.ratio)
                ));
            }
            out
        }
    }
}

/// Runs one named experiment and renders it in `cfg.format`.
pub fn run_experiment(
    name: ExperimentName,
    k: u32,
    qs: &[u64],
    exponents: &[u32],
    cfg: &ExperimentConfig,
) -> Result<String> {
    cfg.validate()?;
    if matches!(name, ExperimentName::Harland | ExperimentName::Egps) && k == 0 {
        return Err(field_error("k", "must be at least 1"));
    }
    let params = cfg.params()?;
    let table = obtain_table(cfg.x, cfg.table_path.as_deref())?;
    let (x, b) = (cfg.x, cfg.block_size);
    let reports = match name {
        ExperimentName::Theorem1 => vec![theorem1_experiment(x, &params, &table, b)?],
        ExperimentName::Mp => vec![mp_experiment(x, &table, b)?],
        ExperimentName::Blss => {
            let (a, c) = blss_experiments(x, &table, b)?;
            vec![a, c]
        }
        ExperimentName::Harland => vec![harland_experiment(x, k, &table, b)?],
        ExperimentName::Egps => vec![egps_experiment(x, k, &table, b)?],
        ExperimentName::Prop4 => vec![prop4_experiment(x, &params, &table, b)?],
        ExperimentName::Lemma3 => {
            let records = lemma3_grid(x, qs, exponents, &table, b).map_err(|e| field_error("q", e))?;
            return Ok(lemma3_text(&records, cfg.format));
        }
    };
    Ok(reports_text(&reports, cfg.format))
}

fn default_z_grid() -> Vec<f64> {
    (4..=14).map(|i| 10f64.powf(f64::from(i) / 2.0).round()).collect()
}

fn run_constants(
    name: ConstantName,
    z: &[f64],
    prime_limit: u64,
    moduli: &[u64],
    cfg: &ExperimentConfig,
    stderr: &mut dyn Write,
) -> Result<Vec<ConstantRecord>> {
    let zs = if z.is_empty() { default_z_grid() } else { z.to_vec() };
    if let Some(bad) = zs.iter().find(|v| !(v.is_finite() && **v >= 2.0)) {
        return Err(field_error("z", format!("{bad} is not a finite value >= 2")));
    }
    let z_max = zs.iter().cloned().fold(2.0, f64::max).ceil() as u64;
    let path = cfg.table_path.as_deref();
    match name {
        ConstantName::Mertens => {
            let table = obtain_table(z_max, path)?;
            zs.iter()
                .map(|&z| {
                    let terms = table.primes_up_to(z as u64).len() as u64;
                    Ok(ConstantRecord::exact("mertens", mertens_sum(z, &table)?, terms).at_z(z))
                })
                .collect()
        }
        ConstantName::Lemma2 => {
            let table = obtain_table(z_max, path)?;
            Ok(lemma2_check(&zs, &table)?
                .iter()
                .map(|r| r.to_record())
                .collect())
        }
        ConstantName::Eps => {
            if prime_limit < 3 {
                return Err(field_error("prime_limit", "must be at least 3"));
            }
            let table = obtain_table(prime_limit, path)?;
            let b = eps_constant(prime_limit, &table)?;
            let _ = writeln!(stderr, "note: {EPS_SUMMAND_NOTE}");
            Ok(vec![ConstantRecord::bracket("eps", &b)
                .at_x(prime_limit)
                .with_note(EPS_SUMMAND_NOTE)])
        }
        ConstantName::Bt => {
            let table = obtain_table(cfg.x, path)?;
            let z = cfg.x as f64;
            let ratios = bt_ratios(z, moduli, &table).map_err(|e| field_error("moduli", e))?;
            Ok(ratios
                .into_iter()
                .map(|(m, r)| {
                    let terms = table
                        .primes_up_to(cfg.x)
                        .iter()
                        .filter(|&&p| u64::from(p) % m == 1 % m)
                        .count() as u64;
                    ConstantRecord::exact(&format!("bt_mod_{m}"), r, terms).at_z(z)
                })
                .collect())
        }
        ConstantName::Tk => {
            let params = cfg.params()?;
            let table = obtain_table(cfg.x, path)?;
            let m = tk_moments(cfg.x, &params, &table)?;
            let ratio = tk_empirical(cfg.x, &params, &table)?;
            let terms = table.primes_up_to(cfg.x).len() as u64;
            Ok(vec![
                ConstantRecord::exact("tk_mean", m.first, terms).at_x(cfg.x),
                ConstantRecord::exact("tk_variance", m.second, terms).at_x(cfg.x),
                ConstantRecord::exact("tk_ratio", ratio, cfg.x)
                    .at_x(cfg.x)
                    .with_note(&format!("threshold {TK_RATIO_THRESHOLD}")),
            ])
        }
    }
}

fn constants_csv(records: &[ConstantRecord]) -> String {
    let opt = |v: Option<String>| v.unwrap_or_default();
    let mut out = String::from("name,z,x,value,lower,upper,terms_used\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.name,
            opt(r.z.map(format_real)),
            opt(r.x.map(|x| x.to_string())),
            format_real(r.value),
            format_real(r.lower),
            format_real(r.upper),
            r.terms_used
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("lambdaphi").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn eval_341() {
        let (code, out, err) = run_capture(&["eval", "--n", "341"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("lambda_phi=20\n"));
        assert!(out.contains("lambda_lambda=4\n"));
        assert!(out.contains("log_ratio=log 5\n"));
        assert!(err.is_empty());
    }

    #[test]
    fn eval_prime() {
        let (code, out, _) = run_capture(&["eval", "--n", "7"]);
        assert_eq!(code, 0);
        assert!(out.contains("lambda_phi=2\n") && out.contains("lambda_lambda=2\n"));
        assert!(out.contains("log_ratio=0\n"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["bogus"]).0, 2);
        assert_eq!(run_capture(&["eval", "--frobnicate"]).0, 2);
        assert_eq!(run_capture(&["experiment", "--name", "nope"]).0, 2);
        let (code, out, err) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("experiment") && err.is_empty());
    }

    #[test]
    fn config_errors_name_the_field() {
        let (code, out, err) = run_capture(&["experiment", "--name", "theorem1", "--x", "50"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(err.contains("`x`"), "{err}");
        let (code, _, err) =
            run_capture(&["experiment", "--name", "mp", "--x", "1000", "--block-size", "0"]);
        assert_eq!(code, 1);
        assert!(err.contains("`block_size`"), "{err}");
        let (_, _, err) = run_capture(&["decompose", "--x", "1000", "--format", "json"]);
        assert!(err.contains("`format`"), "{err}");
    }

    #[test]
    fn psi_parsing() {
        assert_eq!(parse_psi("sqrt-log3"), Ok(PsiChoice::SqrtLog3));
        assert_eq!(parse_psi("log3-pow:0.25"), Ok(PsiChoice::Log3Power(0.25)));
        assert_eq!(parse_psi("fixed:2"), Ok(PsiChoice::Fixed(2.0)));
        assert!(parse_psi("cubic").is_err());
        assert!(parse_psi("fixed:abc").is_err());
    }

    #[test]
    fn experiment_json_report() {
        let (code, out, err) = run_capture(&["experiment", "--name", "theorem1", "--x", "5000"]);
        assert_eq!(code, 0, "{err}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["count"], 5000 - 15);
    }
}
