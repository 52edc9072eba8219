// Which branch of the case analysis explains q | λλ(n) or q | λφ(n).

use lambdaphi::decomposition::{lambda_lambda_cases, lambda_phi_cases};
use lambdaphi::{compose, FunctionTag, Result, SpfTable};

pub fn run_example() -> Result<()> {
    let table = SpfTable::build(100_000)?;
    let q = 5;
    for n in [11, 121, 341, 1331, 2_201, 55_001] {
        let ll = compose(n, FunctionTag::Lambda, FunctionTag::Lambda, &table)?;
        let lp = compose(n, FunctionTag::Lambda, FunctionTag::Phi, &table)?;
        let a = lambda_lambda_cases(n, q, &table)?;
        let b = lambda_phi_cases(n, q, &table)?;
        println!("n = {n}: lambda_lambda = {ll}, lambda_phi = {lp}");
        println!("  q | lambda_lambda: {} via {:?}", a.any(), active(a.flags()));
        println!("  q | lambda_phi:    {} via {:?}", b.any(), active(b.flags()));
        assert_eq!(a.any(), ll % q == 0);
        assert_eq!(b.any(), lp % q == 0);
    }
    assert!(lambda_lambda_cases(341, 2, &table).is_err());
    Ok(())
}

fn active<L: Copy>(flags: &[(L, bool)]) -> Vec<L> {
    flags.iter().filter(|f| f.1).map(|f| f.0).collect()
}

fn main() -> Result<()> {
    run_example()
}
