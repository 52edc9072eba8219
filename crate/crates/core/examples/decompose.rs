// Splits log(λφ(n)/λλ(n)) into its large-prime and small-prime parts
// and checks that the pieces add back up exactly.

use lambdaphi::decomposition::{g, h, in_exceptional_s, DecompositionRow};
use lambdaphi::{log_ratio, split_sums, ProofParams, PsiChoice, Result, SpfTable};

pub fn run_example() -> Result<()> {
    let x = 100_000u64;
    let table = SpfTable::build(x)?;
    let params = ProofParams::new(x as f64, 2.0, PsiChoice::SqrtLog3)?;
    println!(
        "x = {x}: y = {:.4}, prime cutoff Y = {:.4}, power cutoff Z = {:.4}, psi = {:.4}",
        params.y(),
        params.prime_cutoff(),
        params.power_cutoff(),
        params.psi()
    );

    println!("{}", DecompositionRow::CSV_HEADER);
    for n in [341, 561, 1729, 6_533, 30_030, 65_537, 99_999] {
        let row = split_sums(n, &params, &table)?;
        assert_eq!(row.reassemble(), log_ratio(n, &table)?);
        println!("{}", row.to_csv_line());
    }

    let n = 30_030;
    println!("g({n})  = {}", g(n, &params, &table)?);
    println!("h({n})  = {}", h(n, &params, &table)?);
    println!("{n} in S: {}", in_exceptional_s(n, params.prime_cutoff(), &table)?);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
