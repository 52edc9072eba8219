//! Batch experiments over `1 <= n <= x`.
//!
//! A [`NormalOrderReport`] summarizes `f(n)` and `f(n)/normalizer(n)` for
//! one statistic: mean, median and standard deviation of both, plus the
//! fraction of `n` whose ratio misses 1 by more than each `ε` in
//! [`EPSILON_GRID`]. Integers where the normalizer is undefined or not
//! positive (everything up to `e^e`, because of the `log log log n` factor)
//! are skipped and counted in `excluded`.
//!
//! All per-`n` work runs block-parallel through [`crate::parallel`]; values
//! are gathered in `n` order before any floating-point reduction, so reports
//! are bit-for-bit reproducible.

use std::io::Write;

use serde::Serialize;

use crate::arith::{
    iterate_factored, ExactLog, FunctionTag, IterateSpec, NumberProfile,
};
use crate::decomposition::{g, g0, h, in_exceptional_s, split_profile, DecompositionRow, ProofParams};
use crate::error::{Error, Result};
use crate::factorint::SpfTable;
use crate::output::{format_real, rounded, rounded_opt, rounded_vec};
use crate::parallel::map_range;

/// Version tag carried by every report and dump.
pub const SCHEMA_VERSION: u32 = 1;

/// `ε` values for the exceptional-density curves.
pub const EPSILON_GRID: [f64; 4] = [0.1, 0.25, 0.5, 1.0];

/// Multipliers `K` for the small-prime `λλ` tail curve.
pub const PROP4_MULTIPLIERS: [f64; 7] = [0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0];

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// An iterate experiment is flagged degenerate once more than this share of
/// the included `n` has already collapsed to 1.
pub const DEGENERATE_SHARE: f64 = 0.5;

/// The statistic a normal-order report is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    /// `log(λφ(n)/λλ(n))` against `log2 n · log3 n`.
    LambdaPhiOverLambdaLambda,
    /// `log(n/λλ(n))` against `(log2 n)² log3 n`.
    NOverLambdaLambda,
    /// `log(n/φλ(n))` against `log2 n · log3 n`.
    NOverPhiLambda,
    /// `log(n/λφ(n))` against `(log2 n)² log3 n`.
    NOverLambdaPhi,
    /// `log(n/λ_k(n))` against `(log2 n)^k log3 n / (k-1)!`.
    NOverLambdaIterate(u32),
    /// `φ_k(n)/φ_{k+1}(n)` against `k e^γ log3 n`.
    PhiIterateRatio(u32),
}

impl Statistic {
    pub fn name(&self) -> String {
        match self {
            Statistic::LambdaPhiOverLambdaLambda => "log(lambda_phi/lambda_lambda)".into(),
            Statistic::NOverLambdaLambda => "log(n/lambda_lambda)".into(),
            Statistic::NOverPhiLambda => "log(n/phi_lambda)".into(),
            Statistic::NOverLambdaPhi => "log(n/lambda_phi)".into(),
            Statistic::NOverLambdaIterate(k) => format!("log(n/lambda_{k})"),
            Statistic::PhiIterateRatio(k) => format!("phi_{k}/phi_{}", k + 1),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Statistic::NOverLambdaIterate(0) | Statistic::PhiIterateRatio(0) => Err(
                Error::InvalidArgument("iterate depth k must be at least 1".into()),
            ),
            _ => Ok(()),
        }
    }

    /// `None` where the normalizer is undefined or not positive.
    pub fn normalizer(&self, n: u64) -> Option<f64> {
        let l2 = (n as f64).ln().ln();
        let l3 = l2.ln();
        if !(l3 > 0.0) {
            return None;
        }
        let v = match *self {
            Statistic::LambdaPhiOverLambdaLambda | Statistic::NOverPhiLambda => l2 * l3,
            Statistic::NOverLambdaLambda | Statistic::NOverLambdaPhi => l2 * l2 * l3,
            Statistic::NOverLambdaIterate(k) => {
                let fact: f64 = (1..k).map(f64::from).product();
                l2.powi(k as i32) * l3 / fact
            }
            Statistic::PhiIterateRatio(k) => f64::from(k) * EULER_GAMMA.exp() * l3,
        };
        (v > 0.0 && v.is_finite()).then_some(v)
    }

    /// Exact value for the logarithmic statistics; `None` for the φ-iterate ratio.
    pub fn exact_log(&self, n: u64, table: &SpfTable) -> Result<Option<ExactLog>> {
        self.validate()?;
        let nf = table.factorize(n)?;
        let lam = |k| IterateSpec::new(FunctionTag::Lambda, k);
        Ok(match *self {
            Statistic::PhiIterateRatio(_) => None,
            Statistic::NOverLambdaIterate(k) => {
                let it = iterate_factored(&nf, lam(k)?, table)?;
                Some(ExactLog::ratio(&nf, &it))
            }
            _ => {
                let p = NumberProfile::compute(n, table)?;
                Some(match *self {
                    Statistic::LambdaPhiOverLambdaLambda => p.log_ratio(),
                    Statistic::NOverLambdaLambda => ExactLog::ratio(&p.n, &p.lambda_lambda),
                    Statistic::NOverPhiLambda => ExactLog::ratio(&p.n, &p.phi_lambda),
                    Statistic::NOverLambdaPhi => ExactLog::ratio(&p.n, &p.lambda_phi),
                    _ => unreachable!(),
                })
            }
        })
    }

    /// `(f(n), degenerate)`; degenerate marks an iterate that already reached 1.
    fn evaluate(&self, n: u64, table: &SpfTable) -> Result<(f64, bool)> {
        match *self {
            Statistic::PhiIterateRatio(k) => {
                let nf = table.factorize(n)?;
                let a = iterate_factored(&nf, IterateSpec::new(FunctionTag::Phi, k)?, table)?;
                let b = iterate_factored(&a, IterateSpec::new(FunctionTag::Phi, 1)?, table)?;
                Ok((a.value() as f64 / b.value() as f64, b.is_one()))
            }
            Statistic::NOverLambdaIterate(k) => {
                let nf = table.factorize(n)?;
                let it = iterate_factored(&nf, IterateSpec::new(FunctionTag::Lambda, k)?, table)?;
                Ok((ExactLog::ratio(&nf, &it).real_value(), it.is_one()))
            }
            _ => {
                let v = self.exact_log(n, table)?.expect("logarithmic statistic");
                Ok((v.real_value(), false))
            }
        }
    }
}

/// Mean, median and population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    #[serde(serialize_with = "rounded")]
    pub mean: f64,
    #[serde(serialize_with = "rounded")]
    pub median: f64,
    #[serde(serialize_with = "rounded")]
    pub stddev: f64,
}

impl Summary {
    /// Summary of `values`; all zeros when empty.
    pub fn of(values: &[f64]) -> Summary {
        if values.is_empty() {
            return Summary {
                mean: 0.0,
                median: 0.0,
                stddev: 0.0,
            };
        }
        let count = values.len() as f64;
        let mean = values.iter().sum::<f64>() / count;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / count;
        let mut sorted = values.to_vec();
        sorted.sort_unstable_by(f64::total_cmp);
        let mid = sorted.len() / 2;
        let median = if sorted.len() % 2 == 1 {
            sorted[mid]
        } else {
            0.5 * (sorted[mid - 1] + sorted[mid])
        };
        Summary {
            mean,
            median,
            stddev: var.sqrt(),
        }
    }
}

/// Fraction of values above each threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailCurve {
    /// Scale the thresholds are measured in.
    #[serde(serialize_with = "rounded")]
    pub unit: f64,
    #[serde(serialize_with = "rounded_vec")]
    pub multipliers: Vec<f64>,
    #[serde(serialize_with = "rounded_vec")]
    pub fractions: Vec<f64>,
}

/// Finite-`x` summary of a statistic against its conjectured normal order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalOrderReport {
    pub schema_version: u32,
    pub statistic: String,
    pub x: u64,
    /// Number of `n` included.
    pub count: u64,
    /// Number of `n <= x` skipped because the normalizer is not positive.
    pub excluded: u64,
    /// Summary of `f(n)`.
    pub value: Summary,
    /// Summary of `f(n)/normalizer(n)`; the median is the headline number.
    pub ratio: Summary,
    #[serde(serialize_with = "rounded_vec")]
    pub epsilon_grid: Vec<f64>,
    /// Fraction of included `n` with `|ratio - 1| > ε`, per `ε`.
    #[serde(serialize_with = "rounded_vec")]
    pub exceptional_density: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "rounded_opt")]
    pub degenerate_fraction: Option<f64>,
    pub degenerate: bool,
    /// `ψ(x) · log log x`, the size of the error term in the normal-order statement.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "rounded_opt")]
    pub error_scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail: Option<TailCurve>,
}

impl NormalOrderReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One header line and one data line.
    pub fn to_csv(&self) -> String {
        let mut head = String::from(
            "schema_version,statistic,x,count,excluded,mean,median,stddev,ratio_mean,ratio_median,ratio_stddev",
        );
        let mut row = format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.schema_version,
            self.statistic,
            self.x,
            self.count,
            self.excluded,
            format_real(self.value.mean),
            format_real(self.value.median),
            format_real(self.value.stddev),
            format_real(self.ratio.mean),
            format_real(self.ratio.median),
            format_real(self.ratio.stddev),
        );
        for (e, d) in self.epsilon_grid.iter().zip(&self.exceptional_density) {
            head.push_str(&format!(",density_eps_{e}"));
            row.push_str(&format!(",{}", format_real(*d)));
        }
        if let Some(tail) = &self.tail {
            for (k, f) in tail.multipliers.iter().zip(&tail.fractions) {
                head.push_str(&format!(",tail_above_{k}"));
                row.push_str(&format!(",{}", format_real(*f)));
            }
        }
        format!("{head}\n{row}\n")
    }
}

fn check_x(x: u64, table: &SpfTable) -> Result<()> {
    if x == 0 {
        return Err(Error::InvalidArgument("x must be positive".into()));
    }
    if x > table.limit() {
        return Err(Error::OutOfRange {
            value: x,
            limit: table.limit(),
        });
    }
    Ok(())
}

fn build_report(
    statistic: String,
    x: u64,
    per_n: Vec<Option<(f64, f64, bool)>>,
    track_degenerate: bool,
) -> NormalOrderReport {
    let excluded = per_n.iter().filter(|v| v.is_none()).count() as u64;
    let included: Vec<(f64, f64, bool)> = per_n.into_iter().flatten().collect();
    let values: Vec<f64> = included.iter().map(|v| v.0).collect();
    let ratios: Vec<f64> = included.iter().map(|v| v.1).collect();
    let count = included.len() as u64;
    let exceptional_density = EPSILON_GRID
        .iter()
        .map(|&eps| fraction(&ratios, |r| (r - 1.0).abs() > eps))
        .collect();
    let degenerate_fraction =
        track_degenerate.then(|| included.iter().filter(|v| v.2).count() as f64 / count.max(1) as f64);
    NormalOrderReport {
        schema_version: SCHEMA_VERSION,
        statistic,
        x,
        count,
        excluded,
        value: Summary::of(&values),
        ratio: Summary::of(&ratios),
        epsilon_grid: EPSILON_GRID.to_vec(),
        exceptional_density,
        degenerate: degenerate_fraction.is_some_and(|f| f > DEGENERATE_SHARE),
        degenerate_fraction,
        error_scale: None,
        tail: None,
    }
}

fn fraction(values: &[f64], pred: impl Fn(f64) -> bool) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().filter(|&&v| pred(v)).count() as f64 / values.len() as f64
}

/// Normal-order report for any [`Statistic`] over `1 <= n <= x`.
pub fn normal_order_report(
    statistic: Statistic,
    x: u64,
    table: &SpfTable,
    block_size: usize,
) -> Result<NormalOrderReport> {
    check_x(x, table)?;
    statistic.validate()?;
    let per_n = map_range(1, x, block_size, |n| {
        statistic.normalizer(n).map(|norm| {
            let (v, degenerate) = statistic.evaluate(n, table).expect("n within table");
            (v, v / norm, degenerate)
        })
    });
    let iterate = matches!(
        statistic,
        Statistic::NOverLambdaIterate(_) | Statistic::PhiIterateRatio(_)
    );
    Ok(build_report(statistic.name(), x, per_n, iterate))
}

/// `log(λφ(n)/λλ(n))` against `log2 n · log3 n`.
pub fn theorem1_experiment(
    x: u64,
    params: &ProofParams,
    table: &SpfTable,
    block_size: usize,
) -> Result<NormalOrderReport> {
    let mut report =
        normal_order_report(Statistic::LambdaPhiOverLambdaLambda, x, table, block_size)?;
    report.error_scale = Some(params.psi() * params.y());
    Ok(report)
}

/// `log(n/λλ(n))` against `(log2 n)² log3 n`.
pub fn mp_experiment(x: u64, table: &SpfTable, block_size: usize) -> Result<NormalOrderReport> {
    normal_order_report(Statistic::NOverLambdaLambda, x, table, block_size)
}

/// Reports for `log(n/φλ(n))` and `log(n/λφ(n))`, in that order.
pub fn blss_experiments(
    x: u64,
    table: &SpfTable,
    block_size: usize,
) -> Result<(NormalOrderReport, NormalOrderReport)> {
    Ok((
        normal_order_report(Statistic::NOverPhiLambda, x, table, block_size)?,
        normal_order_report(Statistic::NOverLambdaPhi, x, table, block_size)?,
    ))
}

/// `log(n/λ_k(n))` against `(log2 n)^k log3 n / (k-1)!`.
pub fn harland_experiment(
    x: u64,
    k: u32,
    table: &SpfTable,
    block_size: usize,
) -> Result<NormalOrderReport> {
    normal_order_report(Statistic::NOverLambdaIterate(k), x, table, block_size)
}

/// `φ_k(n)/φ_{k+1}(n)` against `k e^γ log3 n`.
pub fn egps_experiment(
    x: u64,
    k: u32,
    table: &SpfTable,
    block_size: usize,
) -> Result<NormalOrderReport> {
    normal_order_report(Statistic::PhiIterateRatio(k), x, table, block_size)
}

/// `Σ_{q ≤ Y} ν_q(λλ(n)) log q`, the small-prime part of `log λλ(n)`.
pub fn small_lambda_lambda_sum(n: u64, params: &ProofParams, table: &SpfTable) -> Result<f64> {
    let p = NumberProfile::compute(n, table)?;
    Ok(ExactLog::of(&p.lambda_lambda)
        .restrict(|q| params.is_small(q))
        .real_value())
}

/// Small-prime `λλ` sums measured in units of `y ψ(x)`, with the fraction
/// of `n` exceeding each multiple in [`PROP4_MULTIPLIERS`].
pub fn prop4_experiment(
    x: u64,
    params: &ProofParams,
    table: &SpfTable,
    block_size: usize,
) -> Result<NormalOrderReport> {
    check_x(x, table)?;
    let unit = params.y() * params.psi();
    let per_n = map_range(1, x, block_size, |n| {
        let v = small_lambda_lambda_sum(n, params, table).expect("n within table");
        Some((v, v / unit, false))
    });
    let mut report = build_report("small_prime_log_lambda_lambda".into(), x, per_n.clone(), false);
    let ratios: Vec<f64> = per_n.into_iter().flatten().map(|v| v.1).collect();
    report.tail = Some(TailCurve {
        unit,
        multipliers: PROP4_MULTIPLIERS.to_vec(),
        fractions: PROP4_MULTIPLIERS
            .iter()
            .map(|&k| fraction(&ratios, |r| r > k))
            .collect(),
    });
    report.error_scale = Some(unit);
    Ok(report)
}

/// Exact count of `n <= x` with `q^a | λλ(n)`, normalized by `x y² / q^a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma3Record {
    pub schema_version: u32,
    pub x: u64,
    pub q: u64,
    pub a: u32,
    pub count: u64,
    #[serde(serialize_with = "rounded")]
    pub ratio: f64,
}

/// Count records for every `(q, a)` pair of the grid, from one pass over `n`.
pub fn lemma3_grid(
    x: u64,
    qs: &[u64],
    exponents: &[u32],
    table: &SpfTable,
    block_size: usize,
) -> Result<Vec<Lemma3Record>> {
    check_x(x, table)?;
    let ee = std::f64::consts::E.powf(std::f64::consts::E);
    if !(x as f64 > ee) {
        return Err(Error::InvalidArgument(format!("x must exceed e^e, got {x}")));
    }
    for &q in qs {
        if !table.is_prime(q) {
            return Err(Error::InvalidArgument(format!("q = {q} is not prime")));
        }
    }
    if exponents.contains(&0) {
        return Err(Error::InvalidArgument("exponent a must be at least 1".into()));
    }
    let valuations = map_range(1, x, block_size, |n| {
        let p = NumberProfile::compute(n, table).expect("n within table");
        qs.iter()
            .map(|&q| p.lambda_lambda.exponent_of(q))
            .collect::<Vec<u32>>()
    });
    let y = (x as f64).ln().ln();
    let mut out = Vec::new();
    for (i, &q) in qs.iter().enumerate() {
        for &a in exponents {
            let count = valuations.iter().filter(|v| v[i] >= a).count() as u64;
            let qa = (q as f64).powi(a as i32);
            out.push(Lemma3Record {
                schema_version: SCHEMA_VERSION,
                x,
                q,
                a,
                count,
                ratio: count as f64 * qa / (x as f64 * y * y),
            });
        }
    }
    Ok(out)
}

/// Single `(q, a)` version of [`lemma3_grid`].
pub fn lemma3_count_check(
    x: u64,
    q: u64,
    a: u32,
    table: &SpfTable,
    block_size: usize,
) -> Result<Lemma3Record> {
    Ok(lemma3_grid(x, &[q], &[a], table, block_size)?[0])
}

/// Empirical `#{n ≤ x : n/φ(n) ≥ t} / x` on a grid of `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionEstimate {
    pub schema_version: u32,
    pub x: u64,
    #[serde(serialize_with = "rounded_vec")]
    pub t_grid: Vec<f64>,
    #[serde(serialize_with = "rounded_vec")]
    pub values: Vec<f64>,
}

impl DistributionEstimate {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,fraction\n");
        for (t, v) in self.t_grid.iter().zip(&self.values) {
            out.push_str(&format!("{},{}\n", format_real(*t), format_real(*v)));
        }
        out
    }
}

pub fn schoenberg_distribution(
    x: u64,
    t_grid: &[f64],
    table: &SpfTable,
    block_size: usize,
) -> Result<DistributionEstimate> {
    check_x(x, table)?;
    if let Some(t) = t_grid.iter().find(|t| !t.is_finite()) {
        return Err(Error::InvalidArgument(format!("t = {t} is not finite")));
    }
    let mut ratios = map_range(1, x, block_size, |n| {
        let f = table.factorize(n).expect("n within table");
        n as f64 / crate::arith::euler_phi(&f).expect("phi(n) <= n") as f64
    });
    ratios.sort_unstable_by(f64::total_cmp);
    let values = t_grid
        .iter()
        .map(|&t| {
            let below = ratios.partition_point(|&r| r < t);
            (ratios.len() - below) as f64 / x as f64
        })
        .collect();
    Ok(DistributionEstimate {
        schema_version: SCHEMA_VERSION,
        x,
        t_grid: t_grid.to_vec(),
        values,
    })
}

/// Header of the per-`n` dump, after the `# schema_version=` line.
pub const PER_N_HEADER: &str = "n,phi,lambda,lambda_phi,lambda_lambda,log_ratio,g,g0,h,in_S";

fn per_n_line(n: u64, params: &ProofParams, table: &SpfTable) -> Result<String> {
    let p = NumberProfile::compute(n, table)?;
    Ok(format!(
        "{},{},{},{},{},{},{},{},{},{}",
        n,
        p.phi.value(),
        p.lambda.value(),
        p.lambda_phi.value(),
        p.lambda_lambda.value(),
        format_real(p.log_ratio().real_value()),
        format_real(g(n, params, table)?.real_value()),
        format_real(g0(n, params, table)?.real_value()),
        format_real(h(n, params, table)?.real_value()),
        u8::from(in_exceptional_s(n, params.prime_cutoff(), table)?),
    ))
}

fn stream_lines<W: Write>(
    mut out: W,
    lo: u64,
    hi: u64,
    block_size: usize,
    line: impl Fn(u64) -> Result<String> + Sync,
) -> Result<()> {
    let window = (block_size.max(1) as u64).saturating_mul(16);
    let mut start = lo;
    while start <= hi {
        let end = start.saturating_add(window - 1).min(hi);
        for l in map_range(start, end, block_size, &line) {
            writeln!(out, "{}", l?)?;
        }
        start = end + 1;
    }
    out.flush()?;
    Ok(())
}

/// Writes the versioned per-`n` CSV dump for `lo <= n <= hi`.
pub fn write_per_n_csv<W: Write>(
    mut out: W,
    lo: u64,
    hi: u64,
    params: &ProofParams,
    table: &SpfTable,
    block_size: usize,
) -> Result<()> {
    table.check_range(lo)?;
    table.check_range(hi)?;
    writeln!(out, "# schema_version={SCHEMA_VERSION}")?;
    writeln!(out, "{PER_N_HEADER}")?;
    stream_lines(out, lo, hi, block_size, |n| per_n_line(n, params, table))
}

/// Streams [`DecompositionRow`] CSV lines for `1 <= n <= x`.
pub fn write_decomposition_csv<W: Write>(
    mut out: W,
    x: u64,
    params: &ProofParams,
    table: &SpfTable,
    block_size: usize,
) -> Result<()> {
    check_x(x, table)?;
    writeln!(out, "{}", DecompositionRow::CSV_HEADER)?;
    stream_lines(out, 1, x, block_size, |n| {
        let p = NumberProfile::compute(n, table)?;
        Ok(split_profile(&p, params, table).to_csv_line())
    })
}
