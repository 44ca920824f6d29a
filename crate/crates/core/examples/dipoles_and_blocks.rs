//! Dipole insertion and cancellation, and block cancellation carried out
//! directly and as a sequence of dipoles.
//!
//!     cargo run --example dipoles_and_blocks

use genus2::gem::{
    cancel_block, cancel_block_by_dipoles, cancel_dipole, cp_isomorphic, find_dipoles,
    find_gluing_blocks, insert_dipole,
};
use genus2::moves::build_gf;
use genus2::{build_graph, h1, ColourSet, SixTuple};

fn main() {
    let f: SixTuple = "(1,1,3;2,0,2)".parse().unwrap();
    let g = build_graph(&f);
    let (big, d) = insert_dipole(&g, 0, ColourSet::of(&[0, 2])).unwrap();
    println!(
        "inserted a type-{} dipole: {} -> {} vertices",
        d.kind(),
        g.vertex_count(),
        big.vertex_count()
    );
    println!("dipoles now present: {}", find_dipoles(&big).len());
    let back = cancel_dipole(&big, &d).unwrap();
    println!(
        "cancelled again, isomorphic to the original: {}",
        cp_isomorphic(&back, &g).is_some()
    );
    println!(
        "H1 before {} / with dipole {}",
        h1(&g).unwrap(),
        h1(&big).unwrap()
    );

    let f: SixTuple = "(2,2,2;1,1,3)".parse().unwrap();
    let trace = build_gf(&f).unwrap();
    for b in find_gluing_blocks(&trace.graph, 0, 1, 3) {
        let direct = cancel_block(&trace.graph, &b).unwrap();
        let stepwise = cancel_block_by_dipoles(&trace.graph, &b).unwrap();
        println!(
            "block of length {}: {} vertices left, dipole route agrees {}, H1 {}",
            b.len(),
            direct.vertex_count(),
            cp_isomorphic(&direct, &stepwise).is_some(),
            h1(&direct).unwrap()
        );
    }
}
