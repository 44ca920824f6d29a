//! Builds the crystallization of a tuple and prints its structure, then the
//! graph itself in DOT form.
//!
//!     cargo run --example graph -- "(2,2,2;1,1,3)"

use genus2::gem::ColourSet;
use genus2::tuple::{admissibility, exchange_symmetry, rho_symmetry_check};
use genus2::{build_graph, SixTuple};

fn main() {
    let arg = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "(2,2,2;1,1,3)".into());
    let f: SixTuple = match arg.parse() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    let g = build_graph(&f);
    eprintln!("tuple              {f}");
    eprintln!("vertices           {}", g.vertex_count());
    eprintln!("{}", admissibility(&f));
    for pair in [[0, 1], [2, 3], [0, 2], [1, 3]] {
        let sizes = g.residues(ColourSet::of(&pair)).sizes();
        eprintln!("{{{},{}}}-residues      {sizes:?}", pair[0], pair[1]);
    }
    eprintln!("gem                {}", g.is_gem());
    eprintln!("contracted         {}", g.is_contracted());
    eprintln!("embedding euler    {}", g.embedding_euler([0, 2, 1, 3]));
    eprintln!("rho conjugates     {}", rho_symmetry_check(&f));
    eprintln!("2-3 exchange       {:?}", exchange_symmetry(&f));
    print!("{}", g.to_dot());
}
