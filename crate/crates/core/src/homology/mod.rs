//! First integer homology of the manifold represented by a crystallization.
//!
//! Two independent routes are provided. [`h1`] abelianizes the standard
//! presentation with the `{0,1}`-residues as generators and the
//! `{2,3}`-residues as relators. [`h1_simplicial`] works on the chain complex
//! of the pseudocomplex dual to the graph: 2-colour residues are the edges,
//! graph edges are the triangles.

mod snf;

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::gem::{ColourSet, ColouredGraph, COLOURS};

pub use snf::{multiply, smith_form, smith_normal_form, to_big, Matrix, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not bipartite: the manifold is not orientable")]
    NotBipartite,
    #[error("graph is not a gem")]
    NotGem,
    #[error("graph is not contracted")]
    NotContracted,
    #[error("malformed group signature `{0}`")]
    Malformed(String),
    #[error("invariant factor too large for u64")]
    Overflow,
}

/// A finitely generated abelian group `Z^r + Z/d1 + ... + Z/dk` with
/// `1 < d1 | d2 | ... | dk`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroupSignature {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroupSignature {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// `Z/n`, with `Z/0 = Z` and `Z/1 = 0`.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => AbelianGroupSignature {
                free_rank: 1,
                torsion: Vec::new(),
            },
            1 => Self::trivial(),
            n => AbelianGroupSignature {
                free_rank: 0,
                torsion: vec![n],
            },
        }
    }

    /// From invariant factors: zeros count towards the free rank, ones are dropped.
    pub fn from_invariants(free_rank: usize, factors: impl IntoIterator<Item = u64>) -> Self {
        let mut torsion: Vec<u64> = factors.into_iter().filter(|&d| d > 1).collect();
        torsion.sort_unstable();
        AbelianGroupSignature { free_rank, torsion }
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroupSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl FromStr for AbelianGroupSignature {
    type Err = HomologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HomologyError::Malformed(s.to_string());
        let s = s.trim();
        if s == "0" {
            return Ok(Self::trivial());
        }
        let mut free_rank = 0;
        let mut torsion = Vec::new();
        for part in s.split('+').map(str::trim) {
            if part == "Z" {
                free_rank += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                free_rank += r.parse::<usize>().map_err(|_| bad())?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                let d: u64 = d.parse().map_err(|_| bad())?;
                if d < 2 {
                    return Err(bad());
                }
                torsion.push(d);
            } else {
                return Err(bad());
            }
        }
        if torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(bad());
        }
        Ok(AbelianGroupSignature { free_rank, torsion })
    }
}

fn check(g: &ColouredGraph) -> Result<Vec<bool>, HomologyError> {
    if !g.is_connected() {
        return Err(HomologyError::Disconnected);
    }
    let side = g.bipartition().ok_or(HomologyError::NotBipartite)?;
    if !g.is_gem() {
        return Err(HomologyError::NotGem);
    }
    Ok(side)
}

/// Relation matrix of the abelianized fundamental group of a
/// crystallization: one column per
/// `{0,1}`-residue, one row per `{2,3}`-residue summing `+1` or `-1` (by
/// bipartition class) into the column of each of its vertices' residues,
/// and a last row killing the generator of the residue through vertex 0.
pub fn h1_presentation(g: &ColouredGraph) -> Result<Vec<Vec<i64>>, HomologyError> {
    let side = check(g)?;
    if !g.is_contracted() {
        return Err(HomologyError::NotContracted);
    }
    let gens = g.residues(ColourSet::of(&[0, 1]));
    let rels = g.residues(ColourSet::of(&[2, 3]));
    let mut rows: Vec<Vec<i64>> = rels
        .classes
        .iter()
        .map(|cycle| {
            let mut row = vec![0i64; gens.len()];
            for &v in cycle {
                row[gens.class_of[v]] += if side[v] { 1 } else { -1 };
            }
            row
        })
        .collect();
    let mut kill = vec![0i64; gens.len()];
    kill[gens.class_of[0]] = 1;
    rows.push(kill);
    Ok(rows)
}

fn signature_from(
    free_rank: usize,
    invariants: &[num_bigint::BigInt],
) -> Result<AbelianGroupSignature, HomologyError> {
    let factors: Option<Vec<u64>> = invariants.iter().map(ToPrimitive::to_u64).collect();
    Ok(AbelianGroupSignature::from_invariants(
        free_rank,
        factors.ok_or(HomologyError::Overflow)?,
    ))
}

/// `H1` as the cokernel of [`h1_presentation`], or by [`h1_simplicial`]
/// when the gem is not contracted.
pub fn h1(g: &ColouredGraph) -> Result<AbelianGroupSignature, HomologyError> {
    check(g)?;
    if !g.is_contracted() {
        return h1_simplicial(g);
    }
    let rows = h1_presentation(g)?;
    let cols = rows.first().map_or(0, Vec::len);
    let inv = smith_normal_form(&rows);
    signature_from(cols - inv.len(), &inv)
}

/// `H1` from the chain complex of the dual pseudocomplex.
///
/// Simplices are labelled by colour sets. A 0-simplex labelled `c` is a
/// residue avoiding `c`; a 1-simplex labelled `{a<b}` is a residue over the
/// two other colours; a 2-simplex labelled `{l0<l1<l2}` is an edge of the
/// remaining colour `c`, whose face `k` is the `{c, l_k}`-residue through it.
pub fn h1_simplicial(g: &ColouredGraph) -> Result<AbelianGroupSignature, HomologyError> {
    if !g.is_connected() {
        return Err(HomologyError::Disconnected);
    }
    let hats: Vec<_> = (0..COLOURS)
        .map(|c| g.residues(ColourSet::hat(c)))
        .collect();
    let mut vertex_offset = [0usize; COLOURS];
    let mut n0 = 0;
    for c in 0..COLOURS {
        vertex_offset[c] = n0;
        n0 += hats[c].len();
    }

    // 1-cells, keyed by label pair (a<b); residue colours are the other two
    let pairs: Vec<(usize, usize)> = (0..COLOURS)
        .flat_map(|a| (a + 1..COLOURS).map(move |b| (a, b)))
        .collect();
    let res: Vec<_> = pairs
        .iter()
        .map(|&(a, b)| g.residues(ColourSet::ALL.without(a).without(b)))
        .collect();
    let mut edge_offset = vec![0usize; pairs.len()];
    let mut n1 = 0;
    for (k, r) in res.iter().enumerate() {
        edge_offset[k] = n1;
        n1 += r.len();
    }
    let pair_index = |a: usize, b: usize| {
        pairs
            .iter()
            .position(|&p| p == (a.min(b), a.max(b)))
            .unwrap()
    };

    // boundary of 1-cells: rows are 0-cells
    let mut d1 = vec![vec![0i64; n1]; n0];
    for (k, &(a, b)) in pairs.iter().enumerate() {
        for (idx, class) in res[k].classes.iter().enumerate() {
            let v = class[0];
            let col = edge_offset[k] + idx;
            d1[vertex_offset[b] + hats[b].class_of[v]][col] += 1;
            d1[vertex_offset[a] + hats[a].class_of[v]][col] -= 1;
        }
    }

    // boundary of 2-cells (graph edges): rows are 1-cells
    let mut d2_cols: Vec<Vec<i64>> = Vec::new();
    for c in 0..COLOURS {
        let labels: Vec<usize> = (0..COLOURS).filter(|&x| x != c).collect();
        for (u, _) in g.edges(c) {
            let mut col = vec![0i64; n1];
            for (k, &l) in labels.iter().enumerate() {
                // the face dropping l is labelled by the two labels other
                // than l, i.e. it is the residue over {c, l}
                let others: Vec<usize> = labels.iter().copied().filter(|&x| x != l).collect();
                let p = pair_index(others[0], others[1]);
                let cell = edge_offset[p] + res[p].class_of[u];
                col[cell] += if k % 2 == 0 { 1 } else { -1 };
            }
            d2_cols.push(col);
        }
    }
    let d2: Vec<Vec<i64>> = (0..n1)
        .map(|i| d2_cols.iter().map(|col| col[i]).collect())
        .collect();

    let rank1 = smith_normal_form(&d1).len();
    let inv2 = smith_normal_form(&d2);
    signature_from(n1 - rank1 - inv2.len(), &inv2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuple::{build_graph, SixTuple};

    fn gamma(s: &str) -> ColouredGraph {
        build_graph(&s.parse::<SixTuple>().unwrap())
    }

    fn sig(s: &str) -> AbelianGroupSignature {
        s.parse().unwrap()
    }

    #[test]
    fn signature_text() {
        for s in ["0", "Z", "Z/5", "Z^2 + Z/2 + Z/4", "Z + Z/3"] {
            assert_eq!(sig(s).to_string(), s);
        }
        assert!("Z/1".parse::<AbelianGroupSignature>().is_err());
        assert!("Z/4 + Z/2".parse::<AbelianGroupSignature>().is_err());
        assert!("Q".parse::<AbelianGroupSignature>().is_err());
        assert_eq!(AbelianGroupSignature::cyclic(0), sig("Z"));
        assert_eq!(AbelianGroupSignature::cyclic(1), sig("0"));
        assert_eq!(
            AbelianGroupSignature::from_invariants(0, [1, 6, 2]),
            sig("Z/2 + Z/6")
        );
    }

    #[test]
    fn presentation_examples() {
        assert_eq!(h1(&gamma("(1,1,1;0,0,0)")).unwrap(), sig("0"));
        assert_eq!(h1(&gamma("(1,1,3;2,0,2)")).unwrap(), sig("Z"));
        assert_eq!(h1(&gamma("(1,1,9;0,0,4)")).unwrap(), sig("Z/5"));
        assert_eq!(h1(&gamma("(1,1,3;0,0,2)")).unwrap(), sig("Z/2"));
        let rows = h1_presentation(&gamma("(1,1,3;2,0,2)")).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.len() == 3));
    }

    #[test]
    fn simplicial_examples() {
        assert_eq!(h1_simplicial(&gamma("(1,1,1;0,0,0)")).unwrap(), sig("0"));
        assert_eq!(h1_simplicial(&gamma("(1,1,3;2,0,2)")).unwrap(), sig("Z"));
        assert_eq!(h1_simplicial(&gamma("(1,1,9;0,0,4)")).unwrap(), sig("Z/5"));
        let sphere = ColouredGraph::from_involutions(std::array::from_fn(|_| vec![1, 0])).unwrap();
        assert_eq!(h1_simplicial(&sphere).unwrap(), sig("0"));
        assert_eq!(h1(&sphere).unwrap(), sig("0"));
    }

    #[test]
    fn dipoles_keep_homology() {
        let g = gamma("(1,1,9;0,0,4)");
        let (big, _) = crate::gem::insert_dipole(&g, 3, ColourSet::of(&[0])).unwrap();
        assert!(!big.is_contracted());
        assert_eq!(h1_presentation(&big), Err(HomologyError::NotContracted));
        assert_eq!(h1(&big).unwrap(), sig("Z/5"));
    }

    #[test]
    fn routes_agree() {
        for s in [
            "(2,2,2;1,1,3)",
            "(1,3,3;2,2,2)",
            "(3,1,5;4,2,2)",
            "(1,1,5;2,0,4)",
            "(3,3,3;2,2,4)",
        ] {
            let g = gamma(s);
            if g.residue_count(ColourSet::of(&[2, 3])) == 3 {
                assert_eq!(h1(&g).unwrap(), h1_simplicial(&g).unwrap(), "{s}");
            }
        }
    }

    #[test]
    fn preconditions() {
        let sphere = ColouredGraph::from_involutions(std::array::from_fn(|_| vec![1, 0])).unwrap();
        let two = sphere.disjoint_union(&sphere);
        assert_eq!(h1(&two), Err(HomologyError::Disconnected));
        // hexagon over {0,1} with the chord 0-2 of colours 2 and 3
        let odd = ColouredGraph::from_involutions([
            vec![1, 0, 3, 2, 5, 4],
            vec![5, 2, 1, 4, 3, 0],
            vec![2, 4, 0, 5, 1, 3],
            vec![2, 4, 0, 5, 1, 3],
        ])
        .unwrap();
        assert!(!odd.is_bipartite());
        assert_eq!(h1(&odd), Err(HomologyError::NotBipartite));
    }
}
