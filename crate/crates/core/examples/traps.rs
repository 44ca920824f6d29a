//! Traps: tuples whose G-orbit is finite. Lists the traps up to a
//! complexity bound and shows that each orbit closes on traps of one type.
//!
//!     cargo run --release --example traps -- 13

use genus2::catalogue::enumerate_canonical;
use genus2::orbits::{explore, is_trap};
use genus2::{build_graph, h1};

fn main() {
    let n: i64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(13);
    println!("tuple\ttype\torbit\tclosed\th1");
    for f in enumerate_canonical(n) {
        let Some(w) = is_trap(&f) else { continue };
        let orbit = explore(&f, 3 * n, 10_000);
        let same = orbit
            .nodes
            .iter()
            .all(|g| is_trap(g).map(|x| x.trap_type()) == Some(w.trap_type()));
        let h = h1(&build_graph(&f)).expect("tuple graphs are gems");
        println!(
            "{f}\t{:?}\t{}\t{}\t{h}",
            w.trap_type(),
            orbit.nodes.len(),
            orbit.is_closed() && same
        );
    }
}
