// Distribution of n/φ(n), plus exact counts of q^a | λλ(n).

use lambdaphi::harness::{lemma3_grid, schoenberg_distribution};
use lambdaphi::{Result, SpfTable};

pub fn run_example() -> Result<()> {
    let x = 200_000;
    let table = SpfTable::build(x)?;
    let t_grid: Vec<f64> = (0..=12).map(|i| 1.0 + 0.25 * f64::from(i)).collect();
    let d = schoenberg_distribution(x, &t_grid, &table, 4096)?;
    print!("{}", d.to_csv());

    for r in lemma3_grid(x, &[3, 5, 7], &[1, 2], &table, 4096)? {
        println!("q^a = {}^{}: count {}, ratio {:.4}", r.q, r.a, r.count, r.ratio);
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
