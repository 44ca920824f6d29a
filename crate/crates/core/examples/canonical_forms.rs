//! H-orbits under psi1, psi2, psi3 and the canonical member of each.
//!
//!     cargo run --example canonical_forms -- "(2,2,2;3,1,1)"

use genus2::moves::{canonical_conditions, canonical_report, h_orbit, psi1, psi2, psi3};
use genus2::SixTuple;

fn main() {
    let arg = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "(2,2,2;3,1,1)".into());
    let f: SixTuple = arg.parse().expect("a 6-tuple");
    println!("psi1 {}  psi2 {}  psi3 {}", psi1(&f), psi2(&f), psi3(&f));
    println!("member\t\t(b)..(i)");
    for g in h_orbit(&f) {
        let marks: String = canonical_conditions(&g)
            .iter()
            .map(|&c| if c { '+' } else { '.' })
            .collect();
        println!("{g}\t{marks}");
    }
    let r = canonical_report(&f);
    println!(
        "canonical {} ({} left by the conditions, {} meet all at once)",
        r.tuple, r.matches, r.simultaneous
    );
}
