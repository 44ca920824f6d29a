//! Catalogue of canonical admissible tuples with trap, minimality, root,
//! homology and orbit columns, written as TSV.
//!
//!     cargo run --release --example catalogue -- 11 > catalogue.tsv

use genus2::catalogue::{build_catalogue, enumerate_canonical, to_tsv};

fn main() {
    let n: i64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(9);
    let records = build_catalogue(n).expect("tuple graphs are gems");
    print!("{}", to_tsv(&records));
    let orbits = records
        .iter()
        .filter(|r| r.orbit_id == records.iter().position(|x| x == *r).unwrap())
        .count();
    eprintln!(
        "{} canonical tuples, {} orbit components, {} roots",
        records.len(),
        orbits,
        records.iter().filter(|r| r.root).count()
    );
    for m in (3..=n).step_by(2) {
        eprintln!("complexity <= {m}: {}", enumerate_canonical(m).len());
    }
}
