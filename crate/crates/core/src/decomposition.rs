//! The large/small prime split of `log(λφ(n)/λλ(n))` and the auxiliary
//! small-prime functions `g`, `g0`, `h`, the sets `Q_{q^α}`, the exceptional
//! set `S`, and the divisibility case trees for odd `q`.
//!
//! Everything here is a finite, exact computation on one `n` at a time. Sums
//! of `log q` are returned as [`ExactLog`] so identities between them can be
//! checked with integer arithmetic.

use std::fmt::Write as _;

use smallvec::SmallVec;

use crate::arith::{phi_factorization, ExactLog, NumberProfile};
use crate::error::{Error, Result};
use crate::factorint::{valuation, Factorization, SpfTable};
use crate::output::format_real;

/// How `ψ(x)`, the slowly growing error scale, is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum PsiChoice {
    /// `sqrt(log log log x)`.
    #[default]
    SqrtLog3,
    /// `(log log log x)^e` with `0 < e < 1`.
    Log3Power(f64),
    /// A fixed positive constant.
    Fixed(f64),
}

impl PsiChoice {
    fn evaluate(self, log3_x: f64) -> Result<f64> {
        let v = match self {
            PsiChoice::SqrtLog3 => log3_x.sqrt(),
            PsiChoice::Log3Power(e) => {
                if !(e > 0.0 && e < 1.0) {
                    return Err(Error::InvalidArgument(format!(
                        "psi exponent must lie in (0, 1), got {e}"
                    )));
                }
                log3_x.powf(e)
            }
            PsiChoice::Fixed(v) => v,
        };
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument(format!("psi(x) = {v} is not positive")));
        }
        Ok(v)
    }
}

/// Brun–Titchmarsh constant used when none is given.
pub const DEFAULT_BT_CONSTANT: f64 = 2.0;

/// Scale parameters for a range bound `x`.
///
/// `y = log log x`, prime cutoff `Y = 3cy`, power cutoff `Z = y²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProofParams {
    x: f64,
    c: f64,
    y: f64,
    prime_cutoff: f64,
    power_cutoff: f64,
    psi: f64,
}

impl ProofParams {
    /// Requires `x > e^e` (so `y > 1`) and `c > 0`.
    pub fn new(x: f64, c: f64, psi: PsiChoice) -> Result<Self> {
        if !(x > std::f64::consts::E.powf(std::f64::consts::E)) {
            return Err(Error::InvalidArgument(format!(
                "x must exceed e^e so that log log log x > 0, got {x}"
            )));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidArgument(format!("c must be positive, got {c}")));
        }
        let y = x.ln().ln();
        let psi = psi.evaluate(y.ln())?;
        Ok(ProofParams {
            x,
            c,
            y,
            prime_cutoff: 3.0 * c * y,
            power_cutoff: y * y,
            psi,
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `log log x`.
    pub fn y(&self) -> f64 {
        self.y
    }

    /// `Y = 3cy`, the split between small and large primes.
    pub fn prime_cutoff(&self) -> f64 {
        self.prime_cutoff
    }

    /// `Z = y²`.
    pub fn power_cutoff(&self) -> f64 {
        self.power_cutoff
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn is_small(&self, q: u64) -> bool {
        (q as f64) <= self.prime_cutoff
    }
}

/// `Σ_{q ≤ Y} max(ν_q(φ(n)) - 1, 0) log q`, i.e. one `log q` for each
/// `α ≥ 1` with `q^(α+1) | φ(n)`.
pub fn g(n: u64, params: &ProofParams, table: &SpfTable) -> Result<ExactLog> {
    let phi = phi_factorization(&table.factorize(n)?, table)?;
    Ok(g_from_phi(&phi, params))
}

fn g_from_phi(phi: &Factorization, params: &ProofParams) -> ExactLog {
    ExactLog::from_terms(
        phi.parts()
            .iter()
            .filter(|&&(q, a)| params.is_small(q) && a >= 2)
            .map(|&(q, a)| (q, i64::from(a) - 1)),
    )
}

/// Additive approximation `g0(n) = Σ_{q ≤ Y} Σ_{p | n} ν_q(p - 1) log q`.
pub fn g0(n: u64, params: &ProofParams, table: &SpfTable) -> Result<ExactLog> {
    table.check_range(n)?;
    let mut out = ExactLog::zero();
    for p in table.distinct_primes(n) {
        for &(q, a) in table.factorize_unchecked(p - 1).parts() {
            if params.is_small(q) {
                out.add_term(q, i64::from(a));
            }
        }
    }
    Ok(out)
}

/// Whether the prime `r` lies in `Q_{q^α}`: some prime `p ≡ 1 (mod q^α)` divides `r - 1`.
pub fn q_set_contains(r: u64, q: u64, alpha: u32, table: &SpfTable) -> Result<bool> {
    table.check_range(r)?;
    if !table.is_prime(r) {
        return Err(Error::InvalidArgument(format!("r = {r} is not prime")));
    }
    if !table.is_prime(q) {
        return Err(Error::InvalidArgument(format!("q = {q} is not prime")));
    }
    if alpha == 0 {
        return Err(Error::InvalidArgument("alpha must be at least 1".into()));
    }
    let Some(modulus) = q.checked_pow(alpha) else {
        return Ok(false);
    };
    Ok(table
        .distinct_primes(r - 1)
        .into_iter()
        .any(|p| p % modulus == 1))
}

/// `h(n) = Σ_{q ≤ Y} #{α ≥ 1 : some prime r | n lies in Q_{q^α}} · log q`.
///
/// `r ∈ Q_{q^α}` exactly when `α ≤ ν_q(p - 1)` for some prime `p | r - 1`,
/// so the count for `q` is the largest such `ν_q(p - 1)` over all `r | n`.
pub fn h(n: u64, params: &ProofParams, table: &SpfTable) -> Result<ExactLog> {
    table.check_range(n)?;
    let mut best: SmallVec<[(u64, u32); 8]> = SmallVec::new();
    for r in table.distinct_primes(n) {
        for p in table.distinct_primes(r - 1) {
            for &(q, a) in table.factorize_unchecked(p - 1).parts() {
                if !params.is_small(q) {
                    continue;
                }
                match best.iter_mut().find(|(b, _)| *b == q) {
                    Some(slot) => slot.1 = slot.1.max(a),
                    None => best.push((q, a)),
                }
            }
        }
    }
    Ok(ExactLog::from_terms(
        best.into_iter().map(|(q, a)| (q, i64::from(a))),
    ))
}

/// Which divisibility tree a [`CaseSet`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTree {
    /// Ways for `q | λλ(n)`.
    LambdaLambda,
    /// Ways for `q | λφ(n)`.
    LambdaPhi,
}

/// Leaf conditions of the divisibility trees; `P_m` is the set of primes `≡ 1 (mod m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Leaf {
    /// `q³ | n`.
    QCubed,
    /// Two distinct `p1, p2 ∈ P_q` with `p1 p2 | n`.
    TwoPrimesInPq,
    /// `q² | n` and some `p ∈ P_q` divides `n`.
    QSquaredWithPrimeInPq,
    /// Some `p ∈ P_{q²}` divides `n`.
    PrimeInPqSquared,
    /// Some `p ∈ P_q` with `p² | n`.
    SquareOfPrimeInPq,
    /// Some `p ∈ P_q` and prime `r ∈ P_p` with `r | n`.
    ChainThroughPq,
}

impl CaseTree {
    pub fn leaves(self) -> &'static [Leaf] {
        match self {
            CaseTree::LambdaLambda => &[
                Leaf::QCubed,
                Leaf::PrimeInPqSquared,
                Leaf::SquareOfPrimeInPq,
                Leaf::ChainThroughPq,
            ],
            CaseTree::LambdaPhi => &[
                Leaf::QCubed,
                Leaf::TwoPrimesInPq,
                Leaf::QSquaredWithPrimeInPq,
                Leaf::PrimeInPqSquared,
                Leaf::SquareOfPrimeInPq,
                Leaf::ChainThroughPq,
            ],
        }
    }
}

/// Leaf flags of one tree for a fixed `(n, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseSet {
    tree: CaseTree,
    flags: SmallVec<[(Leaf, bool); 6]>,
}

impl CaseSet {
    pub fn tree(&self) -> CaseTree {
        self.tree
    }

    /// `None` when the leaf is not part of this tree.
    pub fn get(&self, leaf: Leaf) -> Option<bool> {
        self.flags.iter().find(|(l, _)| *l == leaf).map(|&(_, v)| v)
    }

    pub fn flags(&self) -> &[(Leaf, bool)] {
        &self.flags
    }

    pub fn any(&self) -> bool {
        self.flags.iter().any(|&(_, v)| v)
    }
}

fn leaf_holds(leaf: Leaf, nf: &Factorization, q: u64, table: &SpfTable) -> bool {
    let in_pq = |p: u64| p % q == 1;
    match leaf {
        Leaf::QCubed => nf.exponent_of(q) >= 3,
        Leaf::TwoPrimesInPq => nf.primes().filter(|&p| in_pq(p)).count() >= 2,
        Leaf::QSquaredWithPrimeInPq => nf.exponent_of(q) >= 2 && nf.primes().any(in_pq),
        Leaf::PrimeInPqSquared => nf.primes().any(|p| p % (q * q) == 1),
        Leaf::SquareOfPrimeInPq => nf.parts().iter().any(|&(p, a)| a >= 2 && in_pq(p)),
        Leaf::ChainThroughPq => nf
            .primes()
            .any(|r| table.distinct_primes(r - 1).into_iter().any(in_pq)),
    }
}

fn classify(n: u64, q: u64, tree: CaseTree, table: &SpfTable) -> Result<CaseSet> {
    let nf = table.factorize(n)?;
    if !table.is_prime(q) {
        return Err(Error::InvalidArgument(format!("q = {q} is not prime")));
    }
    if q == 2 {
        return Err(Error::Unsupported(
            "the divisibility trees are stated for odd q only".into(),
        ));
    }
    let flags = tree
        .leaves()
        .iter()
        .map(|&leaf| (leaf, leaf_holds(leaf, &nf, q, table)))
        .collect();
    Ok(CaseSet { tree, flags })
}

/// Leaves of the `q | λλ(n)` tree, odd prime `q`.
pub fn lambda_lambda_cases(n: u64, q: u64, table: &SpfTable) -> Result<CaseSet> {
    classify(n, q, CaseTree::LambdaLambda, table)
}

/// Leaves of the `q | λφ(n)` tree, odd prime `q`.
pub fn lambda_phi_cases(n: u64, q: u64, table: &SpfTable) -> Result<CaseSet> {
    classify(n, q, CaseTree::LambdaPhi, table)
}

/// Membership in `S = ∪_{q > Y} S_q`: some prime `q > Y` has `q² | n`
/// or `q² | p - 1` for a prime `p | n`.
pub fn in_exceptional_s(n: u64, prime_cutoff: f64, table: &SpfTable) -> Result<bool> {
    let nf = table.factorize(n)?;
    Ok(in_s_factored(&nf, prime_cutoff, table))
}

fn in_s_factored(nf: &Factorization, prime_cutoff: f64, table: &SpfTable) -> bool {
    let large = |q: u64| (q as f64) > prime_cutoff;
    nf.parts().iter().any(|&(p, a)| {
        (a >= 2 && large(p))
            || table
                .factorize_unchecked(p - 1)
                .parts()
                .iter()
                .any(|&(q, b)| b >= 2 && large(q))
    })
}

/// Every piece of the small/large prime split for one `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionRow {
    pub n: u64,
    /// `Σ_{q > Y} (ν_q(λφ(n)) - ν_q(λλ(n))) log q`.
    pub large_sum: ExactLog,
    /// `Σ_{q ≤ Y} ν_q(λφ(n)) log q`.
    pub small_lambda_phi: ExactLog,
    /// `Σ_{q ≤ Y} ν_q(λλ(n)) log q`.
    pub small_lambda_lambda: ExactLog,
    pub g: ExactLog,
    pub g0: ExactLog,
    pub h: ExactLog,
    pub in_s: bool,
}

impl DecompositionRow {
    /// Column order of [`DecompositionRow::to_csv_line`].
    pub const CSV_HEADER: &'static str = "n,large_sum,small_lambda_lambda,g,g0,h,in_S";

    /// `large_sum + small_lambda_phi - small_lambda_lambda`, which equals `log_ratio(n)`.
    pub fn reassemble(&self) -> ExactLog {
        &(&self.large_sum + &self.small_lambda_phi) - &self.small_lambda_lambda
    }

    pub fn to_csv_line(&self) -> String {
        let mut line = self.n.to_string();
        for v in [
            &self.large_sum,
            &self.small_lambda_lambda,
            &self.g,
            &self.g0,
            &self.h,
        ] {
            let _ = write!(line, ",{}", format_real(v.real_value()));
        }
        let _ = write!(line, ",{}", u8::from(self.in_s));
        line
    }
}

/// Splits `log(λφ(n)/λλ(n))` at `Y` and evaluates `g`, `g0`, `h` and `S` for `n`.
pub fn split_sums(n: u64, params: &ProofParams, table: &SpfTable) -> Result<DecompositionRow> {
    let profile = NumberProfile::compute(n, table)?;
    Ok(split_profile(&profile, params, table))
}

pub(crate) fn split_profile(
    profile: &NumberProfile,
    params: &ProofParams,
    table: &SpfTable,
) -> DecompositionRow {
    let n = profile.n.value();
    let small = |q: u64| params.is_small(q);
    let lp = ExactLog::of(&profile.lambda_phi);
    let ll = ExactLog::of(&profile.lambda_lambda);
    let large_sum = (&lp - &ll).restrict(|q| !small(q));
    DecompositionRow {
        n,
        large_sum,
        small_lambda_phi: lp.restrict(small),
        small_lambda_lambda: ll.restrict(small),
        g: g_from_phi(&profile.phi, params),
        // n is in range: the profile was built from the same table
        g0: g0(n, params, table).expect("n within table"),
        h: h(n, params, table).expect("n within table"),
        in_s: in_s_factored(&profile.n, params.prime_cutoff, table),
    }
}

/// `(Σ_{p | n} ν_q(p - 1), ν_q(φ(n)), Σ_{p | n} ν_q(p - 1) + ν_q(n))`; the middle
/// value always lies between the outer two.
pub fn phi_valuation_bounds(n: u64, q: u64, table: &SpfTable) -> Result<(u32, u32, u32)> {
    let nf = table.factorize(n)?;
    if !table.is_prime(q) {
        return Err(Error::InvalidArgument(format!("q = {q} is not prime")));
    }
    let lower: u32 = nf.primes().map(|p| valuation(q, p - 1)).sum();
    let exact = phi_factorization(&nf, table)?.exponent_of(q);
    Ok((lower, exact, lower + nf.exponent_of(q)))
}
