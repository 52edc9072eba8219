// Drives the command-line front end in-process and captures its output.

use lambdaphi::cli::run;

pub fn run_example() -> Result<(), String> {
    for args in [
        vec!["lambdaphi", "eval", "--n", "341"],
        vec!["lambdaphi", "experiment", "--name", "mp", "--x", "20000", "--format", "csv"],
        vec!["lambdaphi", "dist", "--x", "10000", "--t-grid", "2,3"],
    ] {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.clone(), &mut out, &mut err);
        println!("$ {}", args.join(" "));
        print!("{}", String::from_utf8_lossy(&out));
        if code != 0 {
            return Err(String::from_utf8_lossy(&err).into_owned());
        }
    }
    Ok(())
}

fn main() -> Result<(), String> {
    run_example()
}
