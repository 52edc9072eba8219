mod common;

use std::sync::OnceLock;

use common::{brute_lambda, brute_phi, td_factor, td_lambda, td_phi};
use lambdaphi::arith::{
    carmichael_lambda, euler_phi, lambda_factorization, phi_factorization,
};
use lambdaphi::harness::Statistic;
use lambdaphi::{compose, FunctionTag, NumberProfile, SpfTable};

fn table() -> &'static SpfTable {
    static T: OnceLock<SpfTable> = OnceLock::new();
    T.get_or_init(|| SpfTable::build(100_000).unwrap())
}

#[test]
fn phi_and_lambda_match_unit_group() {
    let t = table();
    for n in 1..=2_000 {
        let f = t.factorize(n).unwrap();
        assert_eq!(euler_phi(&f).unwrap(), brute_phi(n), "phi({n})");
        assert_eq!(carmichael_lambda(&f).unwrap(), brute_lambda(n), "lambda({n})");
    }
}

#[test]
fn factorization_matches_trial_division() {
    let t = table();
    for n in 1..=100_000 {
        assert_eq!(t.factorize(n).unwrap().parts(), td_factor(n).as_slice(), "n = {n}");
    }
}

#[test]
fn factored_values_match_trial_division() {
    let t = table();
    for n in 1..=100_000 {
        let f = t.factorize(n).unwrap();
        assert_eq!(phi_factorization(&f, t).unwrap().value(), td_phi(n));
        assert_eq!(lambda_factorization(&f, t).unwrap().value(), td_lambda(n));
    }
}

#[test]
fn compositions_match_trial_division() {
    use FunctionTag::{Lambda, Phi};
    let t = table();
    for n in 1..=30_000 {
        let (phi, lam) = (td_phi(n), td_lambda(n));
        assert_eq!(compose(n, Lambda, Phi, t).unwrap(), td_lambda(phi));
        assert_eq!(compose(n, Lambda, Lambda, t).unwrap(), td_lambda(lam));
        assert_eq!(compose(n, Phi, Lambda, t).unwrap(), td_phi(lam));
        assert_eq!(compose(n, Phi, Phi, t).unwrap(), td_phi(phi));
    }
}

#[test]
fn cyclic_groups_have_lambda_equal_phi() {
    let t = table();
    let mut checked = 0;
    for n in 1..=100_000u64 {
        let f = t.factorize(n).unwrap();
        let odd = f.parts().iter().filter(|p| p.0 != 2).count();
        let two = f.exponent_of(2);
        let cyclic = n <= 2 || n == 4 || (odd == 1 && two <= 1);
        if cyclic {
            assert_eq!(euler_phi(&f).unwrap(), carmichael_lambda(&f).unwrap(), "n = {n}");
            checked += 1;
        } else {
            assert!(carmichael_lambda(&f).unwrap() < euler_phi(&f).unwrap(), "n = {n}");
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn divisibility_chain() {
    let t = table();
    for n in 1..=100_000 {
        let p = NumberProfile::compute(n, t).unwrap();
        let (phi, lam) = (p.phi.value(), p.lambda.value());
        let (lp, ll, pl) = (p.lambda_phi.value(), p.lambda_lambda.value(), p.phi_lambda.value());
        assert_eq!(phi % lam, 0, "lambda | phi at {n}");
        assert_eq!(lp % ll, 0, "lambda_lambda | lambda_phi at {n}");
        assert_eq!(pl % ll, 0, "lambda_lambda | phi_lambda at {n}");
        assert!(pl <= lam && lam <= phi && phi <= n);
    }
}

#[test]
fn divisibility_monotonicity() {
    let t = table();
    let phi: Vec<u64> = (0..=10_000).map(|n| if n == 0 { 0 } else { td_phi(n) }).collect();
    let lam: Vec<u64> = (0..=10_000).map(|n| if n == 0 { 0 } else { td_lambda(n) }).collect();
    for a in 1..=10_000u64 {
        let fa = t.factorize(a).unwrap();
        let (pa, la) = (euler_phi(&fa).unwrap(), carmichael_lambda(&fa).unwrap());
        for b in (a..=10_000).step_by(a as usize) {
            assert_eq!(phi[b as usize] % pa, 0, "phi({a}) | phi({b})");
            assert_eq!(lam[b as usize] % la, 0, "lambda({a}) | lambda({b})");
        }
    }
}

#[test]
fn exact_logs_match_floating_logs() {
    let t = table();
    for n in 1..=100_000u64 {
        let p = NumberProfile::compute(n, t).unwrap();
        let direct = (p.lambda_phi.value() as f64).ln() - (p.lambda_lambda.value() as f64).ln();
        assert!((p.log_ratio().real_value() - direct).abs() < 1e-9, "n = {n}");
    }
}

#[test]
fn statistics_are_nonnegative_and_subtract_exactly() {
    let t = table();
    for n in 1..=100_000u64 {
        let get = |s: Statistic| s.exact_log(n, t).unwrap().unwrap();
        let mp = get(Statistic::NOverLambdaLambda);
        let pl = get(Statistic::NOverPhiLambda);
        let lp = get(Statistic::NOverLambdaPhi);
        let lam = get(Statistic::NOverLambdaIterate(1));
        for v in [&mp, &pl, &lp, &lam] {
            assert!(v.real_value() >= 0.0, "n = {n}: {v}");
        }
        let p = NumberProfile::compute(n, t).unwrap();
        for den in [&p.lambda_lambda, &p.phi_lambda, &p.lambda_phi, &p.lambda] {
            assert!(den.value() <= n);
        }
        let direct = lambdaphi::ExactLog::ratio(&p.phi_lambda, &p.lambda_lambda);
        assert_eq!(&mp - &pl, direct, "n = {n}");
        assert_eq!(&mp - &lp, get(Statistic::LambdaPhiOverLambdaLambda), "n = {n}");
    }
}
