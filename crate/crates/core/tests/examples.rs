mod factor_table {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/factor_table.rs"));
}

mod phi_lambda {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/phi_lambda.rs"));
}

mod decompose {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/decompose.rs"));
}

mod case_trees {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/case_trees.rs"));
}

mod prime_constants {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/prime_constants.rs"));
}

mod normal_order {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/normal_order.rs"));
}

mod schoenberg {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/schoenberg.rs"));
}

mod command_line {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/command_line.rs"));
}

#[test]
fn factor_table_example_runs() {
    factor_table::run_example().expect("factor_table example should run");
}

#[test]
fn phi_lambda_example_runs() {
    phi_lambda::run_example().expect("phi_lambda example should run");
}

#[test]
fn decompose_example_runs() {
    decompose::run_example().expect("decompose example should run");
}

#[test]
fn case_trees_example_runs() {
    case_trees::run_example().expect("case_trees example should run");
}

#[test]
fn prime_constants_example_runs() {
    prime_constants::run_example().expect("prime_constants example should run");
}

#[test]
fn normal_order_example_runs() {
    normal_order::run_example().expect("normal_order example should run");
}

#[test]
fn schoenberg_example_runs() {
    schoenberg::run_example().expect("schoenberg example should run");
}

#[test]
fn command_line_example_runs() {
    command_line::run_example().expect("command_line example should run");
}
