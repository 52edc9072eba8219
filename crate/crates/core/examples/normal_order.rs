// Compares log(λφ/λλ), log(n/λλ) and the iterate statistics with their
// conjectured normal orders at a modest x.

use lambdaphi::harness::{
    egps_experiment, harland_experiment, mp_experiment, prop4_experiment, theorem1_experiment,
};
use lambdaphi::parallel::DEFAULT_BLOCK_SIZE;
use lambdaphi::{NormalOrderReport, ProofParams, PsiChoice, Result, SpfTable};

fn show(r: &NormalOrderReport) {
    println!(
        "{:<32} n<={} count {} median {:.4} ratio median {:.4} ratio mean {:.4}",
        r.statistic, r.x, r.count, r.value.median, r.ratio.median, r.ratio.mean
    );
}

pub fn run_example() -> Result<()> {
    let x = 100_000;
    let table = SpfTable::build(x)?;
    let params = ProofParams::new(x as f64, 2.0, PsiChoice::SqrtLog3)?;
    let b = DEFAULT_BLOCK_SIZE;

    let t1 = theorem1_experiment(x, &params, &table, b)?;
    show(&t1);
    for (eps, d) in t1.epsilon_grid.iter().zip(&t1.exceptional_density) {
        println!("  |ratio - 1| > {eps}: {d:.4}");
    }
    show(&mp_experiment(x, &table, b)?);
    show(&harland_experiment(x, 2, &table, b)?);
    show(&egps_experiment(x, 1, &table, b)?);

    let p4 = prop4_experiment(x, &params, &table, b)?;
    if let Some(tail) = &p4.tail {
        for (k, f) in tail.multipliers.iter().zip(&tail.fractions) {
            println!("  small-prime sum > {k} * y * psi: {f:.4}");
        }
    }

    println!("{}", t1.to_json());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
