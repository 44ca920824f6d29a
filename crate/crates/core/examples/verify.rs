//! Runs verification suites by name; all of them when none is given.
//!
//!     cargo run --release --example verify -- sigma-constructive

use genus2::suites::{run_suite, SUITES};

fn main() {
    let names: Vec<String> = std::env::args().skip(1).collect();
    let names: Vec<&str> = if names.is_empty() {
        SUITES.to_vec()
    } else {
        names.iter().map(String::as_str).collect()
    };
    let mut failed = false;
    for name in names {
        match run_suite(name) {
            Ok(r) => {
                failed |= !r.passed();
                println!("{r}\n");
            }
            Err(e) => {
                eprintln!("{e}");
                std::process::exit(1);
            }
        }
    }
    if failed {
        std::process::exit(3);
    }
}
