//! Enumeration of canonical admissible tuples and classified catalogue records.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::homology::{h1, AbelianGroupSignature, HomologyError};
use crate::moves::{canonical_report, sigma_neighbors};
use crate::orbits::{fails_genus_guard, is_trap, minimal_closed_form, root_closed_form};
use crate::tuple::{build_graph, is_admissible, SixTuple, TupleError};

/// Sorted `h` triples of one parity with `h0 + h1 + h2 <= n`.
fn sorted_h_triples(n: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for h0 in 1..=n {
        for h1 in h0..=n {
            for h2 in h1..=n {
                if h0 + h1 + h2 <= n && (h0 - h1) % 2 == 0 && (h1 - h2) % 2 == 0 {
                    out.push([h0, h1, h2]);
                }
            }
        }
    }
    out
}

/// All tuples with the given `h` that satisfy (I) to (V).
fn tuples_with_h(h: [i64; 3]) -> impl Iterator<Item = SixTuple> {
    let m = [h[2] + h[0], h[0] + h[1], h[1] + h[2]];
    // (V): q_i has the parity opposite to h
    let start = (h[0] + 1) % 2;
    (start..m[0]).step_by(2).flat_map(move |q0| {
        (start..m[1]).step_by(2).flat_map(move |q1| {
            (start..m[2])
                .step_by(2)
                .filter_map(move |q2| SixTuple::new(h, [q0, q1, q2]).ok())
        })
    })
}

/// Every admissible tuple (any order of `h`) with complexity at most `n`,
/// ordered by complexity then lexicographically.
pub fn admissible_tuples(n: i64) -> Vec<SixTuple> {
    let mut hs = Vec::new();
    for h0 in 1..=n {
        for h1 in 1..=n {
            for h2 in 1..=n {
                if h0 + h1 + h2 <= n && (h0 - h1) % 2 == 0 && (h1 - h2) % 2 == 0 {
                    hs.push([h0, h1, h2]);
                }
            }
        }
    }
    let mut out: Vec<SixTuple> = hs
        .par_iter()
        .flat_map_iter(|&h| tuples_with_h(h).filter(is_admissible).collect::<Vec<_>>())
        .collect();
    out.sort_unstable_by_key(|f| (f.complexity(), *f));
    out
}

/// Canonical admissible tuples of complexity at most `n`, one per H-orbit,
/// ordered by complexity then lexicographically. Independent of the number
/// of worker threads.
pub fn enumerate_canonical(n: i64) -> Vec<SixTuple> {
    let mut out: Vec<SixTuple> = sorted_h_triples(n)
        .par_iter()
        .flat_map_iter(|&h| {
            tuples_with_h(h)
                .filter(|f| canonical_report(f).tuple == *f)
                .filter(is_admissible)
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_unstable_by_key(|f| (f.complexity(), *f));
    out
}

/// Union-find over indices.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the two classes, keeping the smaller index as representative.
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// One line of a catalogue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogueRecord {
    pub tuple: SixTuple,
    pub upsilon: i64,
    /// Trap type `(r, s)` when the tuple is a trap.
    pub trap_type: Option<(i64, i64)>,
    pub minimal: bool,
    pub root: bool,
    pub h1: AbelianGroupSignature,
    /// Index of the first record of the same G-orbit component found within the bound.
    pub orbit_id: usize,
    pub warnings: Vec<String>,
}

pub const TSV_HEADER: &str =
    "tuple\tupsilon\ttrap\ttrap_type\tminimal\troot\th1\torbit_id\twarnings";

#[derive(Debug, Error)]
pub enum CatalogueError {
    #[error("line {line}: expected 9 tab-separated fields")]
    Fields { line: usize },
    #[error("line {line}: bad {field} `{value}`")]
    Field {
        line: usize,
        field: &'static str,
        value: String,
    },
    #[error("line {line}: {source}")]
    Tuple { line: usize, source: TupleError },
    #[error("line {line}: {source}")]
    Homology { line: usize, source: HomologyError },
    #[error("missing or wrong header")]
    Header,
}

impl fmt::Display for CatalogueRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let trap_type = self
            .trap_type
            .map(|(r, s)| format!("{r},{s}"))
            .unwrap_or_default();
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.tuple,
            self.upsilon,
            self.trap_type.is_some(),
            trap_type,
            self.minimal,
            self.root,
            self.h1,
            self.orbit_id,
            self.warnings.join(";")
        )
    }
}

impl CatalogueRecord {
    fn parse_line(line: &str, n: usize) -> Result<Self, CatalogueError> {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 9 {
            return Err(CatalogueError::Fields { line: n });
        }
        let bad = |field: &'static str, value: &str| CatalogueError::Field {
            line: n,
            field,
            value: value.to_string(),
        };
        let flag =
            |field: &'static str, value: &str| value.parse::<bool>().map_err(|_| bad(field, value));
        let tuple = SixTuple::from_str(fields[0])
            .map_err(|source| CatalogueError::Tuple { line: n, source })?;
        let upsilon = fields[1].parse().map_err(|_| bad("upsilon", fields[1]))?;
        let trap = flag("trap", fields[2])?;
        let trap_type = if fields[3].is_empty() {
            None
        } else {
            let (r, s) = fields[3]
                .split_once(',')
                .ok_or_else(|| bad("trap_type", fields[3]))?;
            Some((
                r.parse().map_err(|_| bad("trap_type", fields[3]))?,
                s.parse().map_err(|_| bad("trap_type", fields[3]))?,
            ))
        };
        if trap != trap_type.is_some() {
            return Err(bad("trap", fields[2]));
        }
        let h1 = fields[6]
            .parse()
            .map_err(|source| CatalogueError::Homology { line: n, source })?;
        Ok(CatalogueRecord {
            tuple,
            upsilon,
            trap_type,
            minimal: flag("minimal", fields[4])?,
            root: flag("root", fields[5])?,
            h1,
            orbit_id: fields[7].parse().map_err(|_| bad("orbit_id", fields[7]))?,
            warnings: if fields[8].is_empty() {
                Vec::new()
            } else {
                fields[8].split(';').map(str::to_string).collect()
            },
        })
    }
}

/// Classifies one canonical admissible tuple. The orbit id is left at 0.
pub fn classify_record(f: &SixTuple) -> Result<CatalogueRecord, HomologyError> {
    let mut warnings = Vec::new();
    let report = canonical_report(f);
    if report.is_fallback() {
        warnings.push(format!("canonical-ambiguous({})", report.matches));
    }
    if report.tuple != *f {
        warnings.push("not-canonical".to_string());
    }
    let trap = is_trap(f);
    if trap.is_none() && fails_genus_guard(f) {
        warnings.push("genus-guard".to_string());
    }
    Ok(CatalogueRecord {
        tuple: *f,
        upsilon: f.complexity(),
        trap_type: trap.map(|w| w.trap_type()),
        minimal: minimal_closed_form(f),
        root: root_closed_form(f),
        h1: h1(&build_graph(f))?,
        orbit_id: 0,
        warnings,
    })
}

/// Classified records of every canonical admissible tuple with complexity
/// at most `n`, with orbit ids joined along `sigma` moves inside the bound.
pub fn build_catalogue(n: i64) -> Result<Vec<CatalogueRecord>, HomologyError> {
    let tuples = enumerate_canonical(n);
    let mut records: Vec<CatalogueRecord> = tuples
        .par_iter()
        .map(classify_record)
        .collect::<Result<_, _>>()?;
    let index: BTreeMap<SixTuple, usize> =
        tuples.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let links: Vec<Vec<usize>> = tuples
        .par_iter()
        .map(|f| {
            sigma_neighbors(f)
                .iter()
                .filter_map(|g| index.get(g).copied())
                .collect()
        })
        .collect();
    let mut sets = DisjointSets::new(tuples.len());
    for (i, ns) in links.iter().enumerate() {
        for &j in ns {
            sets.union(i, j);
        }
    }
    for (i, r) in records.iter_mut().enumerate() {
        r.orbit_id = sets.find(i);
    }
    Ok(records)
}

pub fn to_tsv(records: &[CatalogueRecord]) -> String {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

pub fn from_tsv(text: &str) -> Result<Vec<CatalogueRecord>, CatalogueError> {
    let mut lines = text.lines();
    if lines.next() != Some(TSV_HEADER) {
        return Err(CatalogueError::Header);
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| CatalogueRecord::parse_line(l, i + 2))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> SixTuple {
        s.parse().unwrap()
    }

    #[test]
    fn smallest_catalogues() {
        assert_eq!(enumerate_canonical(3), vec![t("(1,1,1;0,0,0)")]);
        assert_eq!(
            enumerate_canonical(5),
            vec![t("(1,1,1;0,0,0)"), t("(1,1,3;0,0,2)"), t("(1,1,3;2,0,2)")]
        );
    }

    #[test]
    fn enumeration_is_canonical_and_admissible() {
        for f in enumerate_canonical(9) {
            assert!(is_admissible(&f));
            assert_eq!(crate::moves::canonical(&f), f);
        }
    }

    #[test]
    fn every_admissible_tuple_has_its_canonical_form_listed() {
        let canon = enumerate_canonical(9);
        for f in admissible_tuples(9) {
            assert!(canon.contains(&crate::moves::canonical(&f)), "{f}");
        }
    }

    #[test]
    fn records() {
        let r = classify_record(&t("(1,1,3;2,0,2)")).unwrap();
        assert_eq!(r.trap_type, Some((1, 3)));
        assert!(r.minimal && r.root);
        assert_eq!(r.h1.to_string(), "Z");
        let r = classify_record(&t("(1,1,1;0,0,0)")).unwrap();
        assert_eq!(r.trap_type, Some((1, 1)));
        assert!(r.minimal && r.root);
        assert!(r.h1.is_trivial());
        let r = classify_record(&t("(2,2,2;1,1,3)")).unwrap();
        assert_eq!(r.trap_type, None);
        assert!(r.minimal && r.root);
    }

    #[test]
    fn tsv_round_trip() {
        let recs = build_catalogue(9).unwrap();
        let text = to_tsv(&recs);
        assert_eq!(from_tsv(&text).unwrap(), recs);
        assert!(from_tsv("nope\n").is_err());
        let broken = text.replacen("\ttrue\t", "\tmaybe\t", 1);
        assert!(from_tsv(&broken).is_err());
    }

    #[test]
    fn orbit_ids_follow_sigma_links() {
        let recs = build_catalogue(9).unwrap();
        let id = |s: &str| recs.iter().find(|r| r.tuple == t(s)).unwrap().orbit_id;
        assert_eq!(id("(1,3,3;2,2,2)"), id("(2,2,2;1,1,3)"));
        assert_ne!(id("(1,1,3;2,0,2)"), id("(2,2,2;1,1,3)"));
        for r in &recs {
            assert!(!r.root || r.minimal);
        }
    }

    #[test]
    fn disjoint_sets() {
        let mut d = DisjointSets::new(5);
        d.union(3, 4);
        d.union(4, 1);
        assert_eq!(d.find(3), 1);
        assert_ne!(d.find(0), d.find(2));
    }
}
