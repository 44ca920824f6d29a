//! First homology of tuple graphs by two routes: the crystallization
//! presentation and the simplicial chain complex.
//!
//!     cargo run --example homology -- 7

use genus2::homology::{h1_presentation, h1_simplicial, smith_normal_form};
use genus2::tuple::lens_expectation;
use genus2::{build_graph, h1, SixTuple};

fn main() {
    let p: i64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    for s in [
        "(1,1,1;0,0,0)",
        "(1,1,3;2,0,2)",
        "(2,2,2;1,1,3)",
        "(1,3,3;2,2,2)",
    ] {
        let g = build_graph(&s.parse().unwrap());
        println!(
            "{s}\tH1 = {}\t(simplicial {})",
            h1(&g).unwrap(),
            h1_simplicial(&g).unwrap()
        );
    }
    println!("\nlens spaces L({p},q) as (1,1,{};0,0,2q):", 2 * p - 1);
    for q in 1..p {
        let f = SixTuple::new([1, 1, 2 * p - 1], [0, 0, 2 * q]).unwrap();
        let g = build_graph(&f);
        println!(
            "q={q}\tH1 = {}\texpected {:?}",
            h1(&g).unwrap(),
            lens_expectation(&f).map(|x| x.to_string())
        );
    }
    let f: SixTuple = "(1,1,5;0,0,2)".parse().unwrap();
    let rows = h1_presentation(&build_graph(&f)).unwrap();
    println!("\npresentation of {f}:");
    for r in &rows {
        println!("  {r:?}");
    }
    println!("invariant factors {:?}", smith_normal_form(&rows));
}
