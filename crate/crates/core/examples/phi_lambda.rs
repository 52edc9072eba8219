// φ, λ, their compositions and iterates, and the exact log ratio.

use lambdaphi::arith::NumberProfile;
use lambdaphi::{compose, iterate, FunctionTag, IterateSpec, Result, SpfTable};

pub fn run_example() -> Result<()> {
    let table = SpfTable::build(100_000)?;

    println!("{:>6} {:>6} {:>6} {:>6} {:>6} {:>6}  log(lambda_phi/lambda_lambda)", "n", "phi", "lambda", "lphi", "llam", "philam");
    for n in [7, 12, 341, 561, 1105, 65_535, 99_991] {
        let p = NumberProfile::compute(n, &table)?;
        println!(
            "{:>6} {:>6} {:>6} {:>6} {:>6} {:>6}  {}",
            n,
            p.phi.value(),
            p.lambda.value(),
            p.lambda_phi.value(),
            p.lambda_lambda.value(),
            p.phi_lambda.value(),
            p.log_ratio()
        );
    }

    println!("phi(phi(341)) = {}", compose(341, FunctionTag::Phi, FunctionTag::Phi, &table)?);

    let n = 99_991;
    for k in 1..=6 {
        let phi_k = iterate(n, IterateSpec::new(FunctionTag::Phi, k)?, &table)?;
        let lambda_k = iterate(n, IterateSpec::new(FunctionTag::Lambda, k)?, &table)?;
        println!("k={k}: phi_k({n}) = {phi_k}, lambda_k({n}) = {lambda_k}");
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
