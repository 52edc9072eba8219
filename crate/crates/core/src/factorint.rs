//! Smallest-prime-factor sieve and the factorization queries built on it.
//!
//! Everything downstream factors integers through [`SpfTable`]: a linear
//! (Euler) sieve storing, for each `2 <= n <= limit`, the smallest prime
//! dividing `n` as a 32-bit entry. Factoring any `n` in range is then a walk
//! of at most `log2 n` table lookups.
//!
//! The table can be cached on disk. The binary layout is
//!
//! ```text
//! offset 0   magic  b"SPF1"
//! offset 4   limit  u64, little-endian
//! offset 12  spf[2], spf[3], ..., spf[limit]  each u32, little-endian
//! ```

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Default ceiling on the bytes a table may occupy.
pub const DEFAULT_MEMORY_BUDGET: u64 = 4 << 30;

const MAGIC: &[u8; 4] = b"SPF1";
const ENTRY_BYTES: u64 = 4;

/// Prime-power parts of a factorization; numbers below 2^64 have at most 15
/// distinct prime factors, and anything factored through a u32 table at most 9.
pub type Parts = SmallVec<[(u64, u32); 10]>;

/// Exact prime-power decomposition of a positive 64-bit integer.
///
/// `parts` holds `(prime, exponent)` pairs with strictly increasing primes and
/// exponents at least one. The empty list is the factorization of 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: u64,
    parts: Parts,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization {
            value: 1,
            parts: Parts::new(),
        }
    }

    /// Builds a factorization from explicit parts, checking ordering,
    /// primality, exponents and that the product fits in 64 bits.
    pub fn from_parts(parts: &[(u64, u32)]) -> Result<Self> {
        let mut prev = 1u64;
        for &(p, a) in parts {
            if p <= prev {
                return Err(Error::InvalidArgument(format!(
                    "primes must be strictly increasing, got {p} after {prev}"
                )));
            }
            if !is_prime_u64(p) {
                return Err(Error::InvalidArgument(format!("{p} is not prime")));
            }
            if a == 0 {
                return Err(Error::InvalidArgument(format!("zero exponent for {p}")));
            }
            prev = p;
        }
        let parts: Parts = parts.iter().copied().collect();
        let value = product_of(&parts).ok_or(Error::Overflow("factorization value"))?;
        Ok(Factorization { value, parts })
    }

    /// Callers guarantee sorted distinct primes with positive exponents.
    pub(crate) fn from_sorted_parts(parts: Parts) -> Result<Self> {
        let value = product_of(&parts).ok_or(Error::Overflow("factorization value"))?;
        Ok(Factorization { value, parts })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn parts(&self) -> &[(u64, u32)] {
        &self.parts
    }

    pub fn is_one(&self) -> bool {
        self.parts.is_empty()
    }

    /// Exponent of `q` in this factorization; 0 when `q` does not divide the value.
    pub fn exponent_of(&self, q: u64) -> u32 {
        match self.parts.binary_search_by_key(&q, |&(p, _)| p) {
            Ok(i) => self.parts[i].1,
            Err(_) => 0,
        }
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.parts.iter().map(|&(p, _)| p)
    }

    /// Factorization of the product `self * other`.
    pub fn mul(&self, other: &Factorization) -> Result<Factorization> {
        let value = self
            .value
            .checked_mul(other.value)
            .ok_or(Error::Overflow("product of factorizations"))?;
        let parts = merge(&self.parts, &other.parts, |a, b| a + b);
        Ok(Factorization { value, parts })
    }

    /// Factorization of `lcm(self, other)`.
    pub fn lcm(&self, other: &Factorization) -> Result<Factorization> {
        Factorization::from_sorted_parts(merge(&self.parts, &other.parts, u32::max))
    }
}

/// Merges two sorted part lists, combining exponents of shared primes with `join`.
fn merge(a: &[(u64, u32)], b: &[(u64, u32)], join: impl Fn(u32, u32) -> u32) -> Parts {
    let mut out = Parts::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (pa, ea) = a[i];
        let (pb, eb) = b[j];
        if pa < pb {
            out.push((pa, ea));
            i += 1;
        } else if pb < pa {
            out.push((pb, eb));
            j += 1;
        } else {
            out.push((pa, join(ea, eb)));
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn product_of(parts: &[(u64, u32)]) -> Option<u64> {
    parts
        .iter()
        .try_fold(1u64, |acc, &(p, a)| acc.checked_mul(p.checked_pow(a)?))
}

/// Smallest-prime-factor table over `[2, limit]`.
///
/// Immutable once built, so it can be shared freely between threads.
#[derive(Clone, PartialEq, Eq)]
pub struct SpfTable {
    limit: u32,
    // indexed directly by n; entries 0 and 1 are unused zeros
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl std::fmt::Debug for SpfTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpfTable")
            .field("limit", &self.limit)
            .field("primes", &self.primes.len())
            .finish()
    }
}

impl SpfTable {
    /// Builds the table under [`DEFAULT_MEMORY_BUDGET`].
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_budget(limit, DEFAULT_MEMORY_BUDGET)
    }

    pub fn build_with_budget(limit: u64, budget: u64) -> Result<Self> {
        let limit = check_limit(limit, budget)?;
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m > n {
                    break;
                }
                spf[m] = p;
            }
        }
        Ok(SpfTable { limit, spf, primes })
    }

    pub fn limit(&self) -> u64 {
        u64::from(self.limit)
    }

    /// All primes up to the limit, ascending.
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// Primes `p <= z`, ascending. `z` beyond the limit is clamped.
    pub fn primes_up_to(&self, z: u64) -> &[u32] {
        let end = self.primes.partition_point(|&p| u64::from(p) <= z);
        &self.primes[..end]
    }

    /// Smallest prime factor of `n`, for `2 <= n <= limit`.
    pub fn smallest_factor(&self, n: u64) -> Option<u64> {
        if n < 2 || n > self.limit() {
            return None;
        }
        Some(u64::from(self.spf[n as usize]))
    }

    /// Primality by table lookup inside the range, deterministic Miller-Rabin beyond it.
    pub fn is_prime(&self, n: u64) -> bool {
        if n <= self.limit() {
            n >= 2 && u64::from(self.spf[n as usize]) == n
        } else {
            is_prime_u64(n)
        }
    }

    pub(crate) fn check_range(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        if n > self.limit() {
            return Err(Error::OutOfRange {
                value: n,
                limit: self.limit(),
            });
        }
        Ok(())
    }

    /// Prime-power decomposition of `1 <= n <= limit`.
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        self.check_range(n)?;
        Ok(self.factorize_unchecked(n))
    }

    pub(crate) fn factorize_unchecked(&self, mut n: u64) -> Factorization {
        let value = n;
        let mut parts = Parts::new();
        while n > 1 {
            let p = u64::from(self.spf[n as usize]);
            let mut a = 0;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            parts.push((p, a));
        }
        Factorization { value, parts }
    }

    /// Distinct prime divisors of `1 <= n <= limit`, ascending.
    pub(crate) fn distinct_primes(&self, mut n: u64) -> SmallVec<[u64; 10]> {
        let mut out = SmallVec::new();
        while n > 1 {
            let p = u64::from(self.spf[n as usize]);
            while n % p == 0 {
                n /= p;
            }
            out.push(p);
        }
        out
    }

    /// Multiplicity of the prime `q` in `n`, with `q` checked for primality
    /// against the table (or Miller-Rabin when `q` exceeds the limit).
    pub fn nu(&self, q: u64, n: u64) -> Result<u32> {
        if !self.is_prime(q) {
            return Err(Error::InvalidArgument(format!("{q} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        Ok(valuation(q, n))
    }

    /// Primes `p <= limit` with `p ≡ 1 (mod modulus)`, ascending.
    pub fn primes_in_progression(&self, modulus: u64, limit: u64) -> Result<Vec<u64>> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        if limit > self.limit() {
            return Err(Error::OutOfRange {
                value: limit,
                limit: self.limit(),
            });
        }
        Ok(self
            .primes_up_to(limit)
            .iter()
            .map(|&p| u64::from(p))
            .filter(|&p| p % modulus == 1 % modulus)
            .collect())
    }

    /// Product of the distinct primes `p | m` with `p ≡ 1 (mod modulus)`, or 1 if none.
    pub fn gcd_with_progression(&self, m: u64, modulus: u64) -> Result<u64> {
        self.check_range(m)?;
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        Ok(self
            .distinct_primes(m)
            .into_iter()
            .filter(|&p| p % modulus == 1 % modulus)
            .product())
    }

    /// Writes the table in the `SPF1` binary layout.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&self.limit().to_le_bytes())?;
        let mut buf = Vec::with_capacity(1 << 16);
        for chunk in self.spf[2..].chunks(1 << 14) {
            buf.clear();
            for &e in chunk {
                buf.extend_from_slice(&e.to_le_bytes());
            }
            w.write_all(&buf)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a table in the `SPF1` layout and checks it for internal consistency.
    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)
            .map_err(|_| Error::Format("missing header".into()))?;
        if &magic != MAGIC {
            return Err(Error::Format(format!("bad magic {magic:?}")));
        }
        let mut word = [0u8; 8];
        r.read_exact(&mut word)
            .map_err(|_| Error::Format("missing limit".into()))?;
        let limit = u64::from_le_bytes(word);
        let limit = check_limit(limit, DEFAULT_MEMORY_BUDGET)?;
        let n = limit as usize;
        let mut bytes = vec![0u8; (n - 1) * ENTRY_BYTES as usize];
        r.read_exact(&mut bytes)
            .map_err(|_| Error::Format("truncated entry array".into()))?;
        let mut extra = [0u8; 1];
        if r.read(&mut extra)? != 0 {
            return Err(Error::Format("trailing bytes after entry array".into()));
        }
        let mut spf = vec![0u32; n + 1];
        for (slot, raw) in spf[2..].iter_mut().zip(bytes.chunks_exact(4)) {
            *slot = u32::from_le_bytes([raw[0], raw[1], raw[2], raw[3]]);
        }
        drop(bytes);

        // Replays the linear sieve: every composite is reached exactly once as
        // i * p with p <= spf[i], so checking those cells checks the whole table.
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            let si = spf[i];
            if si as usize == i {
                primes.push(si);
            } else if si < 2 || si as usize > i || i % si as usize != 0 {
                return Err(Error::Format(format!("entry {si} invalid for {i}")));
            }
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m > n {
                    break;
                }
                if spf[m] != p {
                    return Err(Error::Format(format!("entry {} invalid for {m}", spf[m])));
                }
            }
        }
        Ok(SpfTable { limit, spf, primes })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_to(BufWriter::new(File::create(path)?))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_from(BufReader::new(File::open(path)?))
    }
}

fn check_limit(limit: u64, budget: u64) -> Result<u32> {
    if limit < 2 {
        return Err(Error::InvalidArgument(format!(
            "table limit must be at least 2, got {limit}"
        )));
    }
    if limit > u64::from(u32::MAX) {
        return Err(Error::InvalidArgument(format!(
            "table limit {limit} exceeds 32-bit entries"
        )));
    }
    let required = (limit + 1) * ENTRY_BYTES;
    if required > budget {
        return Err(Error::ResourceExhausted {
            limit,
            required,
            budget,
        });
    }
    Ok(limit as u32)
}

/// Largest `a` with `q^a | n`. No primality check; `q >= 2`, `n >= 1`.
pub(crate) fn valuation(q: u64, mut n: u64) -> u32 {
    debug_assert!(q >= 2 && n >= 1);
    let mut a = 0;
    while n % q == 0 {
        n /= q;
        a += 1;
    }
    a
}

/// Multiplicity of the prime `q` in `n`; `q` is checked with Miller-Rabin.
pub fn nu(q: u64, n: u64) -> Result<u32> {
    if !is_prime_u64(q) {
        return Err(Error::InvalidArgument(format!("{q} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    Ok(valuation(q, n))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    // the first twelve primes are a complete witness set below 3.3e24
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_spf(n: u64) -> u64 {
        (2..=n).find(|d| n % d == 0).unwrap()
    }

    #[test]
    fn small_table_entries() {
        let t = SpfTable::build(10).unwrap();
        assert_eq!(t.smallest_factor(4), Some(2));
        assert_eq!(t.smallest_factor(9), Some(3));
        assert_eq!(t.smallest_factor(7), Some(7));
        let t2 = SpfTable::build(2).unwrap();
        assert_eq!(t2.smallest_factor(2), Some(2));
        assert_eq!(t2.primes(), &[2]);
    }

    #[test]
    fn table_matches_trial_division() {
        let t = SpfTable::build(100).unwrap();
        assert_eq!(t.smallest_factor(91), Some(7));
        for n in 2..=100 {
            assert_eq!(t.smallest_factor(n), Some(trial_division_spf(n)), "n={n}");
        }
    }

    #[test]
    fn limit_errors() {
        assert!(matches!(SpfTable::build(1), Err(Error::InvalidArgument(_))));
        match SpfTable::build_with_budget(1_000, 100) {
            Err(Error::ResourceExhausted { required, .. }) => assert_eq!(required, 4004),
            other => panic!("unexpected {other:?}"),
        }
        assert!(SpfTable::build(u64::from(u32::MAX) + 1).is_err());
    }

    #[test]
    fn factorize_examples() {
        let t = SpfTable::build(10_000).unwrap();
        assert!(t.factorize(1).unwrap().is_one());
        assert_eq!(t.factorize(12).unwrap().parts(), &[(2, 2), (3, 1)]);
        assert_eq!(t.factorize(9973).unwrap().parts(), &[(9973, 1)]);
        assert!(matches!(t.factorize(0), Err(Error::InvalidArgument(_))));
        assert_eq!(
            t.factorize(10_001),
            Err(Error::OutOfRange {
                value: 10_001,
                limit: 10_000
            })
        );
    }

    #[test]
    fn nu_examples() {
        let t = SpfTable::build(100).unwrap();
        assert_eq!(t.nu(2, 12).unwrap(), 2);
        assert_eq!(t.nu(5, 12).unwrap(), 0);
        assert_eq!(t.nu(3, 3u64.pow(7) * 2).unwrap(), 7);
        assert!(t.nu(4, 12).is_err());
        // above the table: Miller-Rabin decides
        assert_eq!(t.nu(101, 101 * 101 * 7).unwrap(), 2);
        assert!(t.nu(121, 5).is_err());
        assert_eq!(nu(1_000_000_007, 1_000_000_007).unwrap(), 1);
        assert!(nu(1, 5).is_err());
    }

    #[test]
    fn progression_examples() {
        let t = SpfTable::build(100).unwrap();
        assert_eq!(t.primes_in_progression(4, 30).unwrap(), vec![5, 13, 17, 29]);
        assert_eq!(t.primes_in_progression(1, 10).unwrap(), vec![2, 3, 5, 7]);
        assert!(t.primes_in_progression(100, 100).unwrap().is_empty());
        assert!(t.primes_in_progression(4, 101).is_err());
        assert!(t.primes_in_progression(0, 10).is_err());
    }

    #[test]
    fn gcd_with_progression_examples() {
        let t = SpfTable::build(100).unwrap();
        assert_eq!(t.gcd_with_progression(65, 4).unwrap(), 65);
        assert_eq!(t.gcd_with_progression(8, 3).unwrap(), 1);
        assert_eq!(t.gcd_with_progression(7, 3).unwrap(), 7);
        assert_eq!(t.gcd_with_progression(1, 3).unwrap(), 1);
        assert_eq!(t.gcd_with_progression(98, 3).unwrap(), 7);
    }

    #[test]
    fn miller_rabin_agrees_with_table() {
        let t = SpfTable::build(200_000).unwrap();
        for n in 0..=200_000u64 {
            assert_eq!(is_prime_u64(n), t.is_prime(n), "n={n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
    }

    #[test]
    fn factorization_arithmetic() {
        let a = Factorization::from_parts(&[(2, 2), (3, 1)]).unwrap();
        let b = Factorization::from_parts(&[(3, 2), (5, 1)]).unwrap();
        assert_eq!(a.mul(&b).unwrap().parts(), &[(2, 2), (3, 3), (5, 1)]);
        assert_eq!(a.mul(&b).unwrap().value(), 540);
        assert_eq!(a.lcm(&b).unwrap().value(), 180);
        assert_eq!(a.exponent_of(3), 1);
        assert_eq!(a.exponent_of(7), 0);
        assert!(Factorization::from_parts(&[(3, 1), (2, 1)]).is_err());
        assert!(Factorization::from_parts(&[(4, 1)]).is_err());
        assert!(Factorization::from_parts(&[(2, 0)]).is_err());
        assert!(Factorization::from_parts(&[(2, 64)]).is_err());
    }

    #[test]
    fn dump_round_trip_is_bit_exact() {
        let t = SpfTable::build(5_000).unwrap();
        let mut bytes = Vec::new();
        t.write_to(&mut bytes).unwrap();
        assert_eq!(&bytes[..4], b"SPF1");
        assert_eq!(u64::from_le_bytes(bytes[4..12].try_into().unwrap()), 5_000);
        assert_eq!(bytes.len(), 12 + 4 * 4_999);
        let back = SpfTable::read_from(&bytes[..]).unwrap();
        assert_eq!(back, t);
        let mut again = Vec::new();
        back.write_to(&mut again).unwrap();
        assert_eq!(again, bytes);
    }

    #[test]
    fn load_rejects_corruption() {
        let t = SpfTable::build(100).unwrap();
        let mut bytes = Vec::new();
        t.write_to(&mut bytes).unwrap();

        let mut bad_magic = bytes.clone();
        bad_magic[0] = b'X';
        assert!(matches!(SpfTable::read_from(&bad_magic[..]), Err(Error::Format(_))));

        let truncated = &bytes[..bytes.len() - 2];
        assert!(matches!(SpfTable::read_from(truncated), Err(Error::Format(_))));

        let mut trailing = bytes.clone();
        trailing.push(0);
        assert!(matches!(SpfTable::read_from(&trailing[..]), Err(Error::Format(_))));

        for (n, claim) in [(15u32, 5u32), (15, 15), (13, 2), (97, 0)] {
            let mut wrong = bytes.clone();
            let off = 12 + 4 * (n as usize - 2);
            wrong[off..off + 4].copy_from_slice(&claim.to_le_bytes());
            assert!(
                matches!(SpfTable::read_from(&wrong[..]), Err(Error::Format(_))),
                "spf[{n}] = {claim} accepted"
            );
        }
    }
}
