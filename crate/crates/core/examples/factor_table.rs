// Builds a smallest-prime-factor table, factors a few numbers and
// round-trips the table through its binary file format.

use lambdaphi::{Result, SpfTable};

pub fn run_example() -> Result<()> {
    let table = SpfTable::build(1_000_000)?;
    println!("{} primes up to {}", table.primes().len(), table.limit());

    for n in [360, 341, 65_536, 999_983, 1_000_000] {
        let parts: Vec<String> = table
            .factorize(n)?
            .parts()
            .iter()
            .map(|&(p, a)| if a == 1 { p.to_string() } else { format!("{p}^{a}") })
            .collect();
        println!("{n} = {}", parts.join(" * "));
    }

    println!("nu_2(360) = {}", table.nu(2, 360)?);
    let ap = table.primes_in_progression(12, 200)?;
    println!("primes = 1 (mod 12) below 200: {ap:?}");

    let dir = std::env::temp_dir().join(format!("lambdaphi-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("spf.bin");
    table.save(&path)?;
    let loaded = SpfTable::load(&path)?;
    assert_eq!(loaded, table);
    println!("saved and reloaded {} bytes", std::fs::metadata(&path)?.len());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
