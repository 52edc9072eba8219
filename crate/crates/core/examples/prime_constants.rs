// Prime sums and constants: Mertens' sum, the EPS constant bracket,
// normalized prime sums, a Brun–Titchmarsh ratio and the Turán–Kubilius ratio.

use lambdaphi::constants::{
    bt_ratio_estimate, eps_constant, lemma2_check, mertens_sum, tk_empirical, EPS_REFERENCE,
};
use lambdaphi::{ProofParams, PsiChoice, Result, SpfTable};

pub fn run_example() -> Result<()> {
    let table = SpfTable::build(1_000_000)?;

    for z in [1e2, 1e4, 1e6] {
        let m = mertens_sum(z, &table)?;
        println!("M({z:e}) = {m:.6}, M - ln z = {:.6}", m - z.ln());
    }

    let eps = eps_constant(1_000_000, &table)?;
    println!(
        "EPS in [{:.9}, {:.9}] (width {:.2e}), reference {EPS_REFERENCE} inside: {}",
        eps.lower,
        eps.upper,
        eps.width(),
        eps.contains(EPS_REFERENCE)
    );

    for r in lemma2_check(&[1e5], &table)? {
        println!("{:<28} value {:.6e} normalized {:.4}", r.sum.name(), r.value, r.normalized);
    }

    let bt = bt_ratio_estimate(1e6, &[3, 4, 5, 7, 8, 11, 13], &table)?;
    println!("largest phi(m) * sum 1/p / log log z over the moduli: {bt:.4}");

    let params = ProofParams::new(1e5, 2.0, PsiChoice::SqrtLog3)?;
    println!("Turan-Kubilius ratio at x = 1e5: {:.4}", tk_empirical(100_000, &params, &table)?);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
