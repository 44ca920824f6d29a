//! Explores a G-orbit through sigma moves between canonical tuples, up to a
//! complexity bound, and prints it as DOT.
//!
//!     cargo run --release --example orbit_explore -- "(2,2,2;1,1,3)" 17

use genus2::orbits::explore;
use genus2::SixTuple;

fn main() {
    let mut args = std::env::args().skip(1);
    let f: SixTuple = args
        .next()
        .unwrap_or_else(|| "(2,2,2;1,1,3)".into())
        .parse()
        .expect("a 6-tuple");
    let bound: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(17);
    let orbit = explore(&f, bound, 5_000);
    eprintln!(
        "{} nodes, {} edges, {} on the frontier, {}",
        orbit.nodes.len(),
        orbit.edges.len(),
        orbit.frontier.len(),
        if orbit.is_closed() { "closed" } else { "open" }
    );
    let max_degree = (0..orbit.nodes.len())
        .map(|v| orbit.degree(v))
        .max()
        .unwrap_or(0);
    eprintln!("max degree {max_degree}");
    print!("{}", orbit.to_dot());
}
