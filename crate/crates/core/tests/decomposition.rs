mod common;

use std::sync::OnceLock;

use common::{td_factor, td_lambda, td_phi, valuation};
use lambdaphi::decomposition::{
    g, g0, h, in_exceptional_s, lambda_lambda_cases, lambda_phi_cases, phi_valuation_bounds,
    q_set_contains, Leaf,
};
use lambdaphi::{log_ratio, split_sums, Error, ExactLog, ProofParams, PsiChoice, SpfTable};

fn table() -> &'static SpfTable {
    static T: OnceLock<SpfTable> = OnceLock::new();
    T.get_or_init(|| SpfTable::build(100_000).unwrap())
}

fn params() -> ProofParams {
    ProofParams::new(1e6, 2.0, PsiChoice::SqrtLog3).unwrap()
}

const ODD_PRIMES: [u64; 14] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

#[test]
fn case_trees_match_divisibility() {
    let t = table();
    for n in 1..=20_000 {
        let lam = td_lambda(n);
        let ll = td_lambda(lam);
        let lp = td_lambda(td_phi(n));
        for q in ODD_PRIMES {
            let a = lambda_lambda_cases(n, q, t).unwrap();
            let b = lambda_phi_cases(n, q, t).unwrap();
            assert_eq!(a.flags().len(), 4);
            assert_eq!(b.flags().len(), 6);
            assert_eq!(a.any(), ll % q == 0, "q={q} | lambda_lambda({n})");
            assert_eq!(b.any(), lp % q == 0, "q={q} | lambda_phi({n})");
        }
    }
}

#[test]
fn case_tree_leaves() {
    let t = table();
    for q in [3u64, 5, 7] {
        let c = lambda_lambda_cases(q * q * q, q, t).unwrap();
        assert_eq!(c.get(Leaf::QCubed), Some(true));
        assert_eq!(c.get(Leaf::TwoPrimesInPq), None);
    }
    assert_eq!(lambda_phi_cases(11 * 31, 5, t).unwrap().get(Leaf::TwoPrimesInPq), Some(true));
    assert!(matches!(lambda_lambda_cases(100, 2, t), Err(Error::Unsupported(_))));
    assert!(lambda_phi_cases(100, 9, t).is_err());
}

#[test]
fn phi_valuation_double_inequality() {
    let t = table();
    for n in 1..=100_000u64 {
        let f = td_factor(n);
        let phi = td_phi(n);
        for q in ODD_PRIMES.iter().copied().chain([2]).filter(|&q| q <= 31) {
            let lower: u32 = f.iter().map(|&(p, _)| valuation(q, p - 1)).sum();
            let exact = valuation(q, phi);
            assert!(lower <= exact && exact <= lower + valuation(q, n), "n={n} q={q}");
            assert_eq!(phi_valuation_bounds(n, q, t).unwrap(), (lower, exact, lower + valuation(q, n)));
        }
    }
}

fn small_primes(p: &ProofParams) -> Vec<u64> {
    (2..=p.prime_cutoff() as u64).filter(|&q| td_factor(q) == [(q, 1)]).collect()
}

fn in_q_set(r: u64, q: u64, alpha: u32) -> bool {
    let m = q.pow(alpha);
    td_factor(r - 1).iter().any(|&(p, _)| p % m == 1)
}

#[test]
fn h_matches_definition() {
    let t = table();
    let p = params();
    let qs = small_primes(&p);
    for n in 1..=20_000u64 {
        let rs: Vec<u64> = td_factor(n).iter().map(|f| f.0).collect();
        let mut want = ExactLog::zero();
        for &q in &qs {
            // q^alpha > 20000 leaves no prime p = 1 (mod q^alpha) below r
            for alpha in 1..=15u32 {
                let hit = rs.iter().any(|&r| in_q_set(r, q, alpha));
                for &r in &rs {
                    assert_eq!(q_set_contains(r, q, alpha, t).unwrap(), in_q_set(r, q, alpha));
                }
                if hit {
                    want.add_term(q, 1);
                }
            }
        }
        assert_eq!(h(n, &p, t).unwrap(), want, "n = {n}");
    }
}

#[test]
fn g_and_g0_match_definitions() {
    let t = table();
    let p = params();
    let qs = small_primes(&p);
    for n in 1..=50_000u64 {
        let phi = td_phi(n);
        let mut want_g = ExactLog::zero();
        let mut want_g0 = ExactLog::zero();
        for &q in &qs {
            let mut alpha = 1;
            while phi % q.pow(alpha + 1) == 0 {
                want_g.add_term(q, 1);
                alpha += 1;
            }
            for &(r, _) in &td_factor(n) {
                want_g0.add_term(q, i64::from(valuation(q, r - 1)));
            }
        }
        assert_eq!(g(n, &p, t).unwrap(), want_g, "g({n})");
        assert_eq!(g0(n, &p, t).unwrap(), want_g0, "g0({n})");
    }
}

#[test]
fn exceptional_set_matches_definition() {
    let t = table();
    let p = params();
    let y = p.prime_cutoff();
    for n in 1..=50_000u64 {
        let f = td_factor(n);
        let want = f.iter().any(|&(q, a)| q as f64 > y && a >= 2)
            || f.iter().any(|&(r, _)| {
                td_factor(r - 1).iter().any(|&(q, b)| q as f64 > y && b >= 2)
            });
        assert_eq!(in_exceptional_s(n, y, t).unwrap(), want, "n = {n}");
    }
}

#[test]
fn split_sums_reassemble() {
    let t = table();
    let p = params();
    for n in 1..=100_000 {
        let row = split_sums(n, &p, t).unwrap();
        assert_eq!(row.reassemble(), log_ratio(n, t).unwrap(), "n = {n}");
        assert!(row.large_sum.terms().iter().all(|&(q, _)| !p.is_small(q)));
        assert!(row.small_lambda_lambda.terms().iter().all(|&(q, _)| p.is_small(q)));
    }
}
