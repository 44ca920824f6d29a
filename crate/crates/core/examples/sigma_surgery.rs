//! The 2-symmetric move, computed from its formula and rebuilt from the
//! block surgery on the enlarged graph G(f).
//!
//!     cargo run --example sigma_surgery -- "(1,3,3;2,2,2)"

use genus2::moves::{build_gf, sigma, sigma_case, verify_sigma_constructively};
use genus2::SixTuple;

fn main() {
    let arg = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "(1,3,3;2,2,2)".into());
    let f: SixTuple = arg.parse().expect("a 6-tuple");
    match sigma(&f) {
        Ok(s) => println!("sigma{f} = {s}  ({:?})", sigma_case(&f)),
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    }
    if f.q()[0] == 0 {
        println!("q0 = 0: no surgery, sigma fixes the tuple");
        return;
    }
    println!("\n{}", build_gf(&f).expect("admissible with q0 != 0"));
    let report = verify_sigma_constructively(&f).expect("surgery succeeds");
    println!("\n{report}");
}
