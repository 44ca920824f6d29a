//! Descends through the G-orbit by complexity-lowering moves and checks the
//! end point with both minimality tests.
//!
//!     cargo run --example minimize_chain -- "(1,3,3;2,2,2)"

use genus2::moves::{delta, psi1_pow};
use genus2::orbits::{is_minimal, is_root, minimize_path};
use genus2::SixTuple;

fn main() {
    let arg = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "(1,3,3;2,2,2)".into());
    let f: SixTuple = arg.parse().expect("a 6-tuple");
    let deltas: Vec<i64> = (0..3).map(|i| delta(&psi1_pow(&f, i))).collect();
    println!("delta of the rotations of {f}: {deltas:?}");
    let steps = minimize_path(&f);
    for s in &steps {
        println!(
            "{} --sigma psi1^{}--> {}  (complexity {} -> {})",
            s.from,
            s.rotation,
            s.to,
            s.from.complexity(),
            s.to.complexity()
        );
    }
    let end = steps.last().map_or(f, |s| s.to);
    let end = genus2::moves::canonical(&end);
    println!(
        "minimal {end}: is_minimal {:?}, is_root {:?}",
        is_minimal(&end),
        is_root(&end)
    );
}
