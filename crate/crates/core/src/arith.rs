//! Euler's φ, Carmichael's λ, their compositions and iterates.
//!
//! Values are computed from factorizations. For compositions the
//! factorization of the intermediate value is assembled directly from the
//! factorizations of `p - 1` (looked up in the sieve) instead of re-factoring
//! the product, so `λφ(n)` and `λλ(n)` come out as exact prime-exponent
//! vectors and [`log_ratio`] never touches a floating-point logarithm until
//! [`ExactLog::real_value`] is asked for.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::factorint::{Factorization, Parts, SpfTable};

/// `Σ m_q · log q` over finitely many primes `q`, with integer `m_q`.
///
/// Terms are kept sorted by prime and zero exponents are never stored, so
/// two values are equal exactly when they represent the same real number.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ExactLog {
    terms: SmallVec<[(u64, i64); 8]>,
}

impl ExactLog {
    pub fn zero() -> Self {
        ExactLog::default()
    }

    /// `log q` with multiplicity `m`.
    pub fn term(q: u64, m: i64) -> Self {
        let mut out = ExactLog::zero();
        out.add_term(q, m);
        out
    }

    /// Builds from `(q, m_q)` pairs in any order; repeated primes accumulate.
    pub fn from_terms(terms: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut out = ExactLog::zero();
        for (q, m) in terms {
            out.add_term(q, m);
        }
        out
    }

    /// `log` of a factored positive integer.
    pub fn of(f: &Factorization) -> Self {
        ExactLog {
            terms: f.parts().iter().map(|&(p, a)| (p, i64::from(a))).collect(),
        }
    }

    /// `log(num / den)`.
    pub fn ratio(num: &Factorization, den: &Factorization) -> Self {
        &ExactLog::of(num) - &ExactLog::of(den)
    }

    pub fn add_term(&mut self, q: u64, m: i64) {
        if m == 0 {
            return;
        }
        match self.terms.binary_search_by_key(&q, |&(p, _)| p) {
            Ok(i) => {
                self.terms[i].1 += m;
                if self.terms[i].1 == 0 {
                    self.terms.remove(i);
                }
            }
            Err(i) => self.terms.insert(i, (q, m)),
        }
    }

    pub fn terms(&self) -> &[(u64, i64)] {
        &self.terms
    }

    /// Exponent attached to `q` (0 if absent).
    pub fn get(&self, q: u64) -> i64 {
        match self.terms.binary_search_by_key(&q, |&(p, _)| p) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.iter().all(|&(_, m)| m > 0)
    }

    /// Keeps only the terms whose prime satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(u64) -> bool) -> Self {
        ExactLog {
            terms: self.terms.iter().copied().filter(|&(q, _)| keep(q)).collect(),
        }
    }

    /// `Σ m_q ln q`, summed in increasing order of `q`.
    pub fn real_value(&self) -> f64 {
        self.terms
            .iter()
            .fold(0.0, |acc, &(q, m)| acc + m as f64 * (q as f64).ln())
    }

    fn combine(&self, other: &ExactLog, sign: i64) -> ExactLog {
        let (a, b) = (&self.terms, &other.terms);
        let mut terms = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some(&(p, m)), Some(&(q, _))) if p < q => {
                    i += 1;
                    (p, m)
                }
                (Some(&(p, _)), Some(&(q, k))) if q < p => {
                    j += 1;
                    (q, sign * k)
                }
                (Some(&(p, m)), Some(&(_, k))) => {
                    i += 1;
                    j += 1;
                    (p, m + sign * k)
                }
                (Some(&(p, m)), None) => {
                    i += 1;
                    (p, m)
                }
                (None, Some(&(q, k))) => {
                    j += 1;
                    (q, sign * k)
                }
                (None, None) => unreachable!(),
            };
            if next.1 != 0 {
                terms.push(next);
            }
        }
        ExactLog { terms }
    }
}

impl Add for &ExactLog {
    type Output = ExactLog;
    fn add(self, rhs: &ExactLog) -> ExactLog {
        self.combine(rhs, 1)
    }
}

impl Sub for &ExactLog {
    type Output = ExactLog;
    fn sub(self, rhs: &ExactLog) -> ExactLog {
        self.combine(rhs, -1)
    }
}

impl Add for ExactLog {
    type Output = ExactLog;
    fn add(self, rhs: ExactLog) -> ExactLog {
        &self + &rhs
    }
}

impl Sub for ExactLog {
    type Output = ExactLog;
    fn sub(self, rhs: ExactLog) -> ExactLog {
        &self - &rhs
    }
}

impl Neg for ExactLog {
    type Output = ExactLog;
    fn neg(mut self) -> ExactLog {
        for t in self.terms.iter_mut() {
            t.1 = -t.1;
        }
        self
    }
}

/// Renders as e.g. `2 log 2 + log 5 - log 7`; zero renders as `0`.
impl fmt::Display for ExactLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(q, m)) in self.terms.iter().enumerate() {
            let mag = m.unsigned_abs();
            match (i, m < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag == 1 {
                write!(f, "log {q}")?;
            } else {
                write!(f, "{mag} log {q}")?;
            }
        }
        Ok(())
    }
}

/// Arithmetic function selector for compositions and iterates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionTag {
    Phi,
    Lambda,
    /// Only meaningful on reals; see [`log_iterate`].
    Log,
}

/// `k`-fold iterate of a base function, `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterateSpec {
    base: FunctionTag,
    depth: u32,
}

impl IterateSpec {
    pub fn new(base: FunctionTag, depth: u32) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidArgument("iterate depth must be at least 1".into()));
        }
        Ok(IterateSpec { base, depth })
    }

    pub fn base(&self) -> FunctionTag {
        self.base
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }
}

/// `φ(n) = Π p^(a-1) (p - 1)`.
pub fn euler_phi(f: &Factorization) -> Result<u64> {
    f.parts().iter().try_fold(1u64, |acc, &(p, a)| {
        p.checked_pow(a - 1)
            .and_then(|pp| pp.checked_mul(p - 1))
            .and_then(|v| acc.checked_mul(v))
            .ok_or(Error::Overflow("euler_phi"))
    })
}

/// `λ(p^a)` for a prime power.
fn lambda_prime_power(p: u64, a: u32) -> Option<u64> {
    if p == 2 && a >= 3 {
        Some(1 << (a - 2))
    } else {
        p.checked_pow(a - 1)?.checked_mul(p - 1)
    }
}

/// Carmichael's `λ(n)`: lcm of `λ(p^a)` over the prime powers of `n`.
pub fn carmichael_lambda(f: &Factorization) -> Result<u64> {
    f.parts().iter().try_fold(1u64, |acc, &(p, a)| {
        let v = lambda_prime_power(p, a).ok_or(Error::Overflow("carmichael_lambda"))?;
        (acc / gcd(acc, v))
            .checked_mul(v)
            .ok_or(Error::Overflow("carmichael_lambda"))
    })
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn factor_shifted(p: u64, table: &SpfTable) -> Result<Factorization> {
    if p - 1 > table.limit() {
        return Err(Error::OutOfRange {
            value: p - 1,
            limit: table.limit(),
        });
    }
    Ok(table.factorize_unchecked(p - 1))
}

/// Factorization of `φ(n)` built from that of `n` and of each `p - 1`.
pub fn phi_factorization(f: &Factorization, table: &SpfTable) -> Result<Factorization> {
    let mut acc = Factorization::one();
    for &(p, a) in f.parts() {
        acc = acc.mul(&factor_shifted(p, table)?)?;
        if a > 1 {
            acc = acc.mul(&Factorization::from_sorted_parts(Parts::from_slice(&[(p, a - 1)]))?)?;
        }
    }
    Ok(acc)
}

/// Factorization of `λ(n)` built from that of `n` and of each `p - 1`.
pub fn lambda_factorization(f: &Factorization, table: &SpfTable) -> Result<Factorization> {
    let mut acc = Factorization::one();
    for &(p, a) in f.parts() {
        let local = if p == 2 {
            match a {
                1 => Factorization::one(),
                2 => Factorization::from_sorted_parts(Parts::from_slice(&[(2, 1)]))?,
                _ => Factorization::from_sorted_parts(Parts::from_slice(&[(2, a - 2)]))?,
            }
        } else {
            let shifted = factor_shifted(p, table)?;
            if a > 1 {
                shifted.mul(&Factorization::from_sorted_parts(Parts::from_slice(&[(p, a - 1)]))?)?
            } else {
                shifted
            }
        };
        acc = acc.lcm(&local)?;
    }
    Ok(acc)
}

fn apply_factored(tag: FunctionTag, f: &Factorization, table: &SpfTable) -> Result<Factorization> {
    match tag {
        FunctionTag::Phi => phi_factorization(f, table),
        FunctionTag::Lambda => lambda_factorization(f, table),
        FunctionTag::Log => Err(Error::InvalidArgument(
            "log is a real-valued iterate; use log_iterate".into(),
        )),
    }
}

/// `outer(inner(n))`.
pub fn compose(n: u64, outer: FunctionTag, inner: FunctionTag, table: &SpfTable) -> Result<u64> {
    let f = table.factorize(n)?;
    let mid = apply_factored(inner, &f, table)?;
    Ok(apply_factored(outer, &mid, table)?.value())
}

/// `k`-fold iterate `f_k(n)` for `f ∈ {φ, λ}`.
pub fn iterate(n: u64, spec: IterateSpec, table: &SpfTable) -> Result<u64> {
    Ok(iterate_factored(&table.factorize(n)?, spec, table)?.value())
}

pub(crate) fn iterate_factored(
    f: &Factorization,
    spec: IterateSpec,
    table: &SpfTable,
) -> Result<Factorization> {
    let mut cur = f.clone();
    for _ in 0..spec.depth {
        if cur.is_one() {
            break;
        }
        cur = apply_factored(spec.base, &cur, table)?;
    }
    Ok(cur)
}

/// `log_k x`, the `k`-fold natural logarithm; `None` once an intermediate is not positive.
pub fn log_iterate(x: f64, k: u32) -> Option<f64> {
    let mut v = x;
    for _ in 0..k {
        if v <= 0.0 || v.is_nan() {
            return None;
        }
        v = v.ln();
    }
    Some(v)
}

/// `log(λφ(n) / λλ(n))` as an exact prime-exponent vector.
pub fn log_ratio(n: u64, table: &SpfTable) -> Result<ExactLog> {
    let p = NumberProfile::compute(n, table)?;
    Ok(p.log_ratio())
}

/// Factorizations of `n` and of the single compositions used throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberProfile {
    pub n: Factorization,
    pub phi: Factorization,
    pub lambda: Factorization,
    pub lambda_phi: Factorization,
    pub lambda_lambda: Factorization,
    pub phi_lambda: Factorization,
}

impl NumberProfile {
    pub fn compute(n: u64, table: &SpfTable) -> Result<Self> {
        let nf = table.factorize(n)?;
        let phi = phi_factorization(&nf, table)?;
        let lambda = lambda_factorization(&nf, table)?;
        let lambda_phi = lambda_factorization(&phi, table)?;
        let lambda_lambda = lambda_factorization(&lambda, table)?;
        let phi_lambda = phi_factorization(&lambda, table)?;
        Ok(NumberProfile {
            n: nf,
            phi,
            lambda,
            lambda_phi,
            lambda_lambda,
            phi_lambda,
        })
    }

    pub fn log_ratio(&self) -> ExactLog {
        ExactLog::ratio(&self.lambda_phi, &self.lambda_lambda)
    }
}
