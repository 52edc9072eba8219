//! Prime sums and analytic constants: Mertens' sum, the five standard
//! prime-sum estimates, the Erdős–Pomerance–Schmutz constant, an empirical
//! Brun–Titchmarsh ratio, and the Turán–Kubilius moments of `g0`.
//!
//! Infinite sums are returned as [`Bracket`]s: a partial sum over the sieved
//! primes plus an explicit bound on the omitted tail. Tail bounds use partial
//! summation against Chebyshev's `θ(t) < 1.01624 t` (Rosser–Schoenfeld, valid
//! for all `t > 0`): for positive decreasing `f` and any `L`,
//!
//! ```text
//! Σ_{p > L} f(p) log p  ≤  1.01624 · (L f(L) + ∫_L^∞ f(t) dt).
//! ```

use serde::Serialize;

use crate::decomposition::{g0, ProofParams};
use crate::error::{Error, Result};
use crate::factorint::SpfTable;
use crate::output::{rounded, rounded_opt};
use crate::parallel::{map_range, ordered_sum, DEFAULT_BLOCK_SIZE};

/// Upper constant in `θ(t) < THETA_UPPER · t`.
pub const THETA_UPPER: f64 = 1.01624;

/// Reference value of the Erdős–Pomerance–Schmutz constant.
pub const EPS_REFERENCE: f64 = 0.2269688;

/// Emitted alongside every EPS bracket.
pub const EPS_SUMMAND_NOTE: &str = "summed as -1 + sum_q log(q)/(q-1)^2; \
the variant with summand q/(q-1)^2 diverges and is not used";

/// Default ceiling for the Turán–Kubilius ratio checks.
pub const TK_RATIO_THRESHOLD: f64 = 16.0;

/// Rigorous enclosure of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    #[serde(serialize_with = "rounded")]
    pub lower: f64,
    #[serde(serialize_with = "rounded")]
    pub upper: f64,
    pub terms_used: u64,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// First and second Turán–Kubilius moments `A(x)` and `B(x)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentPair {
    #[serde(serialize_with = "rounded")]
    pub first: f64,
    #[serde(serialize_with = "rounded")]
    pub second: f64,
}

/// One JSON result line: `{name, z | x, value, lower, upper, terms_used}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantRecord {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "rounded_opt")]
    pub z: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<u64>,
    #[serde(serialize_with = "rounded")]
    pub value: f64,
    #[serde(serialize_with = "rounded")]
    pub lower: f64,
    #[serde(serialize_with = "rounded")]
    pub upper: f64,
    pub terms_used: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ConstantRecord {
    /// Record for an exactly computed finite sum.
    pub fn exact(name: &str, value: f64, terms_used: u64) -> Self {
        ConstantRecord {
            name: name.to_string(),
            z: None,
            x: None,
            value,
            lower: value,
            upper: value,
            terms_used,
            note: None,
        }
    }

    pub fn bracket(name: &str, b: &Bracket) -> Self {
        ConstantRecord {
            lower: b.lower,
            upper: b.upper,
            ..ConstantRecord::exact(name, b.midpoint(), b.terms_used)
        }
    }

    pub fn at_z(mut self, z: f64) -> Self {
        self.z = Some(z);
        self
    }

    pub fn at_x(mut self, x: u64) -> Self {
        self.x = Some(x);
        self
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }
}

fn check_z(z: f64, table: &SpfTable) -> Result<()> {
    if !(z >= 2.0) {
        return Err(Error::InvalidArgument(format!("z must be at least 2, got {z}")));
    }
    if z > table.limit() as f64 {
        return Err(Error::OutOfRange {
            value: z.ceil() as u64,
            limit: table.limit(),
        });
    }
    Ok(())
}

fn primes_to(z: f64, table: &SpfTable) -> &[u32] {
    table.primes_up_to(z.floor() as u64)
}

fn primes_after(z: f64, table: &SpfTable) -> &[u32] {
    let below = primes_to(z, table).len();
    &table.primes()[below..]
}

/// Mertens' sum `M(z) = Σ_{p ≤ z} (log p)/p`.
pub fn mertens_sum(z: f64, table: &SpfTable) -> Result<f64> {
    check_z(z, table)?;
    Ok(ordered_sum(primes_to(z, table), DEFAULT_BLOCK_SIZE, |p| {
        (p as f64).ln() / p as f64
    }))
}

/// The five prime sums with their claimed growth shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeSum {
    /// `Σ_{p ≤ z} log p ≪ z`.
    LogP,
    /// `Σ_{p ≤ z} (log p)/p ≪ log z`.
    LogPOverP,
    /// `Σ_{p ≤ z} (log p)²/p ≪ (log z)²`.
    LogSquaredPOverP,
    /// `Σ_{p > z} (log p)/p² ≪ 1/z`.
    TailLogPOverPSquared,
    /// `Σ_{p > z} 1/p² ≪ 1/(z log z)`.
    TailInversePSquared,
}

impl PrimeSum {
    pub const ALL: [PrimeSum; 5] = [
        PrimeSum::LogP,
        PrimeSum::LogPOverP,
        PrimeSum::LogSquaredPOverP,
        PrimeSum::TailLogPOverPSquared,
        PrimeSum::TailInversePSquared,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PrimeSum::LogP => "sum_log_p",
            PrimeSum::LogPOverP => "sum_log_p_over_p",
            PrimeSum::LogSquaredPOverP => "sum_log2_p_over_p",
            PrimeSum::TailLogPOverPSquared => "tail_log_p_over_p2",
            PrimeSum::TailInversePSquared => "tail_inv_p2",
        }
    }

    /// Factor that turns the sum into a ratio against its growth shape.
    pub fn normalizer(self, z: f64) -> f64 {
        let lz = z.ln();
        match self {
            PrimeSum::LogP => 1.0 / z,
            PrimeSum::LogPOverP => 1.0 / lz,
            PrimeSum::LogSquaredPOverP => 1.0 / (lz * lz),
            PrimeSum::TailLogPOverPSquared => z,
            PrimeSum::TailInversePSquared => z * lz,
        }
    }

    fn term(self, p: u64) -> f64 {
        let pf = p as f64;
        let lp = pf.ln();
        match self {
            PrimeSum::LogP => lp,
            PrimeSum::LogPOverP => lp / pf,
            PrimeSum::LogSquaredPOverP => lp * lp / pf,
            PrimeSum::TailLogPOverPSquared => lp / (pf * pf),
            PrimeSum::TailInversePSquared => 1.0 / (pf * pf),
        }
    }

    fn is_tail(self) -> bool {
        matches!(
            self,
            PrimeSum::TailLogPOverPSquared | PrimeSum::TailInversePSquared
        )
    }

    /// Bound on the part of a tail sum beyond `limit`.
    pub fn remainder_bound(self, limit: f64) -> f64 {
        let l = limit;
        match self {
            // f(t) = 1/t²: L f(L) + ∫ f = 2/L
            PrimeSum::TailLogPOverPSquared => THETA_UPPER * 2.0 / l,
            // f(t) = 1/(t² log t): L f(L) + ∫ f ≤ 2/(L log L)
            PrimeSum::TailInversePSquared => THETA_UPPER * 2.0 / (l * l.ln()),
            _ => 0.0,
        }
    }
}

/// One evaluated prime sum at one `z`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimeSumRecord {
    pub sum: PrimeSum,
    #[serde(serialize_with = "rounded")]
    pub z: f64,
    /// Partial sum over the sieved primes.
    #[serde(serialize_with = "rounded")]
    pub value: f64,
    /// `value` plus the bound on primes beyond the table (equal to `value` for finite sums).
    #[serde(serialize_with = "rounded")]
    pub upper: f64,
    #[serde(serialize_with = "rounded")]
    pub normalized: f64,
    #[serde(serialize_with = "rounded")]
    pub normalized_upper: f64,
    pub terms_used: u64,
}

impl PrimeSumRecord {
    pub fn to_record(&self) -> ConstantRecord {
        ConstantRecord {
            lower: self.value,
            upper: self.upper,
            ..ConstantRecord::exact(self.sum.name(), self.value, self.terms_used)
        }
        .at_z(self.z)
    }
}

/// Evaluates every [`PrimeSum`] at every `z`, normalized by its growth shape.
pub fn lemma2_check(z_values: &[f64], table: &SpfTable) -> Result<Vec<PrimeSumRecord>> {
    let mut out = Vec::with_capacity(z_values.len() * PrimeSum::ALL.len());
    let limit = table.limit() as f64;
    for &z in z_values {
        check_z(z, table)?;
        for sum in PrimeSum::ALL {
            let primes = if sum.is_tail() {
                primes_after(z, table)
            } else {
                primes_to(z, table)
            };
            let value = ordered_sum(primes, DEFAULT_BLOCK_SIZE, |p| sum.term(p));
            let upper = value + sum.remainder_bound(limit);
            let norm = sum.normalizer(z);
            out.push(PrimeSumRecord {
                sum,
                z,
                value,
                upper,
                normalized: value * norm,
                normalized_upper: upper * norm,
                terms_used: primes.len() as u64,
            });
        }
    }
    Ok(out)
}

/// Bound on `Σ_{q > L} log q/(q - 1)²`, valid for `L ≥ 2`.
pub fn eps_tail_bound(limit: f64) -> f64 {
    // f(t) = 1/(t-1)²: L f(L) + ∫_L^∞ f = L/(L-1)² + 1/(L-1)
    let lm = limit - 1.0;
    THETA_UPPER * (limit / (lm * lm) + 1.0 / lm)
}

/// Bracket for `A = -1 + Σ_q log q/(q - 1)²` using every prime `q ≤ prime_limit`.
///
/// The upper end is the smallest `partial(p) + tail(p)` seen over all
/// prefixes, so raising `prime_limit` can only shrink the bracket.
pub fn eps_constant(prime_limit: u64, table: &SpfTable) -> Result<Bracket> {
    if prime_limit < 2 {
        return Err(Error::InvalidArgument(format!(
            "prime_limit must be at least 2, got {prime_limit}"
        )));
    }
    if prime_limit > table.limit() {
        return Err(Error::OutOfRange {
            value: prime_limit,
            limit: table.limit(),
        });
    }
    let mut partial = -1.0;
    let mut upper = f64::INFINITY;
    let primes = table.primes_up_to(prime_limit);
    for (i, &q) in primes.iter().enumerate() {
        let qf = f64::from(q);
        partial += qf.ln() / ((qf - 1.0) * (qf - 1.0));
        // the omitted primes are the same for every L in [q, next prime), so take L as large as possible
        let reach = primes
            .get(i + 1)
            .map_or(prime_limit as f64, |&next| f64::from(next) - 1.0);
        upper = upper.min(partial + eps_tail_bound(reach));
    }
    Ok(Bracket {
        lower: partial,
        upper,
        terms_used: primes.len() as u64,
    })
}

/// `φ(m) · Σ_{p ≤ z, p ≡ 1 (mod m)} 1/p / log log z` for each modulus `m`.
pub fn bt_ratios(z: f64, moduli: &[u64], table: &SpfTable) -> Result<Vec<(u64, f64)>> {
    let ee = std::f64::consts::E.powf(std::f64::consts::E);
    if !(z > ee) {
        return Err(Error::InvalidArgument(format!("z must exceed e^e, got {z}")));
    }
    check_z(z, table)?;
    if moduli.is_empty() {
        return Err(Error::InvalidArgument("at least one modulus is required".into()));
    }
    let loglog = z.ln().ln();
    let primes = primes_to(z, table);
    moduli
        .iter()
        .map(|&m| {
            let phi = crate::arith::euler_phi(&table.factorize(m)?)? as f64;
            let s = ordered_sum(primes, DEFAULT_BLOCK_SIZE, |p| {
                if p % m == 1 % m {
                    1.0 / p as f64
                } else {
                    0.0
                }
            });
            Ok((m, phi * s / loglog))
        })
        .collect()
}

/// Largest of [`bt_ratios`]: an empirical lower estimate of the Brun–Titchmarsh constant.
pub fn bt_ratio_estimate(z: f64, moduli: &[u64], table: &SpfTable) -> Result<f64> {
    Ok(bt_ratios(z, moduli, table)?
        .into_iter()
        .map(|(_, r)| r)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// `g0(r)` for a prime `r`, as a real.
fn g0_prime(r: u64, params: &ProofParams, table: &SpfTable) -> f64 {
    table
        .factorize_unchecked(r - 1)
        .parts()
        .iter()
        .filter(|&&(q, _)| params.is_small(q))
        .fold(0.0, |acc, &(q, a)| acc + f64::from(a) * (q as f64).ln())
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

/// `A(x) = Σ_{r ≤ x} g0(r)/r` and `B(x)² = Σ_{r^k ≤ x} g0(r^k)²/r^k`, `g0(r^k) = g0(r)`.
pub fn tk_moments(x: u64, params: &ProofParams, table: &SpfTable) -> Result<MomentPair> {
    check_x(x, table)?;
    let primes = table.primes_up_to(x);
    let first = ordered_sum(primes, DEFAULT_BLOCK_SIZE, |r| {
        g0_prime(r, params, table) / r as f64
    });
    let second = ordered_sum(primes, DEFAULT_BLOCK_SIZE, |r| {
        let v = g0_prime(r, params, table);
        if v == 0.0 {
            return 0.0;
        }
        let mut acc = 0.0;
        let mut rk = r;
        while rk <= x {
            acc += 1.0 / rk as f64;
            match rk.checked_mul(r) {
                Some(next) => rk = next,
                None => break,
            }
        }
        v * v * acc
    });
    Ok(MomentPair { first, second })
}

/// `Σ_{n ≤ x} (g0(n) - A(x))² / (x B(x)²)`; 0 when `B(x)² = 0`.
pub fn tk_empirical(x: u64, params: &ProofParams, table: &SpfTable) -> Result<f64> {
    let moments = tk_moments(x, params, table)?;
    if moments.second == 0.0 {
        return Ok(0.0);
    }
    let squares = map_range(1, x, DEFAULT_BLOCK_SIZE, |n| {
        let d = g0(n, params, table).expect("n within table").real_value() - moments.first;
        d * d
    });
    let total: f64 = squares.iter().sum();
    Ok(total / (x as f64 * moments.second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::PsiChoice;

    fn table() -> SpfTable {
        SpfTable::build(1_000_000).unwrap()
    }

    #[test]
    fn mertens_examples() {
        let t = table();
        assert!((mertens_sum(2.0, &t).unwrap() - 2f64.ln() / 2.0).abs() < 1e-15);
        let m = mertens_sum(1e6, &t).unwrap();
        assert!((m - 1e6f64.ln()).abs() < 2.0);
        let mut prev = 0.0;
        for z in [2.0, 3.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6] {
            let m = mertens_sum(z, &t).unwrap();
            assert!(m >= prev);
            prev = m;
        }
        assert!(mertens_sum(1.5, &t).is_err());
        assert!(mertens_sum(2e6, &t).is_err());
    }

    #[test]
    fn prime_sum_examples() {
        let t = table();
        let recs = lemma2_check(&[2.0, 1e3, 1e6], &t).unwrap();
        assert_eq!(recs.len(), 15);
        let theta = recs
            .iter()
            .find(|r| r.sum == PrimeSum::LogP && r.z == 1e6)
            .unwrap();
        assert!(theta.normalized > 0.9 && theta.normalized < 1.1);
        for r in &recs {
            assert!(r.normalized.is_finite() && r.upper >= r.value);
        }
        let tail = recs
            .iter()
            .find(|r| r.sum == PrimeSum::TailInversePSquared && r.z == 1e3)
            .unwrap();
        assert!(tail.value > 0.0 && tail.normalized_upper < 2.0);
    }

    #[test]
    fn eps_examples() {
        let t = table();
        let b = eps_constant(1_000_000, &t).unwrap();
        assert!(b.width() < 1e-4);
        assert!(b.contains(EPS_REFERENCE));
        let small = eps_constant(2, &t).unwrap();
        assert!((small.lower - (-1.0 + 2f64.ln())).abs() < 1e-15);
        assert!(small.upper > small.lower && small.terms_used == 1);
        let mid = eps_constant(100_000, &t).unwrap();
        assert!(mid.lower <= b.lower && b.upper <= mid.upper);
        assert!(eps_constant(1, &t).is_err());
        assert!(eps_constant(2_000_000, &t).is_err());
    }

    #[test]
    fn bt_examples() {
        let t = table();
        let one = bt_ratio_estimate(1e6, &[1], &t).unwrap();
        let ll = 1e6f64.ln().ln();
        // Σ 1/p ≈ log log z + 0.2615
        assert!((one - (ll + 0.2615) / ll).abs() < 0.01);
        let few = bt_ratio_estimate(1e6, &[3, 4, 5], &t).unwrap();
        assert!(few > 0.0);
        let more = bt_ratio_estimate(1e6, &[3, 4, 5, 7, 8], &t).unwrap();
        assert!(more >= few);
        assert!(bt_ratio_estimate(10.0, &[1], &t).is_err());
        assert!(bt_ratio_estimate(1e6, &[], &t).is_err());
    }

    #[test]
    fn tk_examples() {
        let t = table();
        let p = ProofParams::new(1e4, 2.0, PsiChoice::SqrtLog3).unwrap();
        let m = tk_moments(10_000, &p, &t).unwrap();
        let shape = p.y() * p.prime_cutoff().ln();
        assert!(m.first > 0.0 && m.first / shape > 0.1 && m.first / shape < 10.0);
        assert!(m.second >= 0.0);
        let m2 = tk_moments(20_000, &p, &t).unwrap();
        assert!(m2.first >= m.first);
        let ratio = tk_empirical(10_000, &p, &t).unwrap();
        assert!(ratio > 0.0 && ratio < TK_RATIO_THRESHOLD);
    }

    #[test]
    fn tk_degenerate_cutoff() {
        let t = table();
        // Y = 3 c y < 2 leaves no small primes, so g0 vanishes
        let p = ProofParams::new(1e4, 0.1, PsiChoice::SqrtLog3).unwrap();
        assert!(p.prime_cutoff() < 2.0);
        assert_eq!(tk_moments(10_000, &p, &t).unwrap().second, 0.0);
        assert_eq!(tk_empirical(10_000, &p, &t).unwrap(), 0.0);
    }
}
