//! `({p,q},r)`-blocks: two parallel arcs of `{p,q}`-residues joined rung by
//! rung with `r`-edges.

use super::dipole::{cancel_dipole, check_dipole};
use super::{weld_out, ColourSet, ColouredGraph, GraphError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub pair: [usize; 2],
    pub rung: usize,
    /// Side lying in the `{p,q}`-residue with the smaller residue index.
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
    /// `links[i]` is the colour of the side edges between positions `i` and `i + 1`.
    pub links: Vec<usize>,
}

/// The two key-vertices of a coherent block, one per side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeyVertices {
    pub a: usize,
    pub b: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.side_a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.side_a.is_empty()
    }

    /// `[a_first, a_last, b_first, b_last]`.
    pub fn corners(&self) -> [usize; 4] {
        let h = self.len() - 1;
        [
            self.side_a[0],
            self.side_a[h],
            self.side_b[0],
            self.side_b[h],
        ]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.side_a.iter().chain(self.side_b.iter()).copied()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices().any(|w| w == v)
    }

    /// Key-vertices with respect to oriented sides, or `None` when the block
    /// is not coherent. Coherent means the two sides run against each other;
    /// the key-vertex of a side is the corner where its orientation starts.
    /// A single rung is always coherent with both endpoints as key-vertices.
    pub fn coherence(&self, orientation: &Orientation) -> Option<KeyVertices> {
        if self.len() == 1 {
            return Some(KeyVertices {
                a: self.side_a[0],
                b: self.side_b[0],
            });
        }
        let last = self.len() - 1;
        let da = orientation.step(self.side_a[0], self.side_a[1])?;
        let db = orientation.step(self.side_b[0], self.side_b[1])?;
        if da == db {
            return None;
        }
        let a = if da > 0 {
            self.side_a[0]
        } else {
            self.side_a[last]
        };
        let b = if db > 0 {
            self.side_b[0]
        } else {
            self.side_b[last]
        };
        Some(KeyVertices { a, b })
    }

    fn validate(&self, g: &ColouredGraph) -> Result<(), GraphError> {
        let h = self.len();
        if h == 0 || self.side_b.len() != h || self.links.len() + 1 != h {
            return Err(GraphError::NotGluing("malformed sides".into()));
        }
        let [p, q] = self.pair;
        let r = self.rung;
        if ColourSet::of(&[p, q, r]).len() != 3 {
            return Err(GraphError::NotGluing("colours must be distinct".into()));
        }
        for i in 0..h {
            if g.partner(r, self.side_a[i]) != self.side_b[i] {
                return Err(GraphError::NotGluing(format!("rung {i} missing")));
            }
        }
        for (i, &c) in self.links.iter().enumerate() {
            if c != p && c != q {
                return Err(GraphError::NotGluing(format!("link {i} has colour {c}")));
            }
            if g.partner(c, self.side_a[i]) != self.side_a[i + 1]
                || g.partner(c, self.side_b[i]) != self.side_b[i + 1]
            {
                return Err(GraphError::NotGluing(format!("link {i} not parallel")));
            }
        }
        let hat = g.residues(ColourSet::hat(r));
        if hat.class_of[self.side_a[0]] == hat.class_of[self.side_b[0]] {
            return Err(GraphError::NotGluing(format!(
                "sides share a {} residue",
                ColourSet::hat(r)
            )));
        }
        Ok(())
    }
}

/// Cyclic orientation of some vertex cycles (typically `{p,q}`-residues).
#[derive(Clone, Debug)]
pub struct Orientation {
    place: Vec<Option<(usize, usize)>>,
    lengths: Vec<usize>,
}

impl Orientation {
    /// Each cycle is oriented in the order given.
    pub fn from_cycles(vertex_count: usize, cycles: &[Vec<usize>]) -> Self {
        let mut place = vec![None; vertex_count];
        for (k, cyc) in cycles.iter().enumerate() {
            for (pos, &v) in cyc.iter().enumerate() {
                place[v] = Some((k, pos));
            }
        }
        Orientation {
            place,
            lengths: cycles.iter().map(Vec::len).collect(),
        }
    }

    /// `+1` if `v` directly follows `u` on a common oriented cycle, `-1` if it
    /// directly precedes it. On 2-cycles both hold; `+1` is reported.
    pub fn step(&self, u: usize, v: usize) -> Option<i8> {
        let (cu, pu) = self.place.get(u).copied().flatten()?;
        let (cv, pv) = self.place.get(v).copied().flatten()?;
        if cu != cv {
            return None;
        }
        let len = self.lengths[cu];
        if (pu + 1) % len == pv {
            Some(1)
        } else if (pv + 1) % len == pu {
            Some(-1)
        } else {
            None
        }
    }

    /// Number of forward steps from `u` to `v` on their common cycle.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        let (cu, pu) = self.place.get(u).copied().flatten()?;
        let (cv, pv) = self.place.get(v).copied().flatten()?;
        (cu == cv).then(|| (pv + self.lengths[cu] - pu) % self.lengths[cu])
    }
}

/// All maximal `({p,q},r)`-blocks whose sides lie in distinct `{p,q}`-residues.
///
/// Rungs are the `r`-edges between distinct residues; two rungs are
/// consecutive when a common colour in `{p,q}` steps from one to the other
/// on both sides. Maximal runs of consecutive rungs (alternating `p`, `q`)
/// are the blocks. Runs that close up into a cycle are not reported.
pub fn find_blocks(g: &ColouredGraph, p: usize, q: usize, r: usize) -> Vec<Block> {
    let pq = g.residues(ColourSet::of(&[p, q]));
    let n = g.vertex_count();
    // a-endpoint of each rung, keyed by vertex
    let is_rung_a = |a: usize| {
        let b = g.partner(r, a);
        pq.class_of[a] < pq.class_of[b]
    };
    let next = |a: usize, c: usize| -> Option<usize> {
        let b = g.partner(r, a);
        let a2 = g.partner(c, a);
        let b2 = g.partner(c, b);
        (g.partner(r, a2) == b2 && is_rung_a(a2)).then_some(a2)
    };
    let walk = |start: usize, first: usize| -> (Vec<(usize, usize)>, bool) {
        let mut out = Vec::new();
        let mut cur = start;
        let mut colour = first;
        while let Some(nxt) = next(cur, colour) {
            if nxt == start {
                return (out, true);
            }
            out.push((nxt, colour));
            cur = nxt;
            colour = if colour == p { q } else { p };
            if out.len() > n {
                break;
            }
        }
        (out, false)
    };

    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if seen[start] || !is_rung_a(start) {
            continue;
        }
        let (fwd, cyclic) = walk(start, p);
        if cyclic {
            seen[start] = true;
            for (v, _) in fwd {
                seen[v] = true;
            }
            continue;
        }
        let (bwd, _) = walk(start, q);
        let mut side_a = Vec::with_capacity(bwd.len() + fwd.len() + 1);
        let mut links = Vec::with_capacity(bwd.len() + fwd.len());
        for &(v, c) in bwd.iter().rev() {
            side_a.push(v);
            links.push(c);
        }
        side_a.push(start);
        for &(v, c) in &fwd {
            side_a.push(v);
            links.push(c);
        }
        for &v in &side_a {
            seen[v] = true;
        }
        let side_b = side_a.iter().map(|&a| g.partner(r, a)).collect();
        blocks.push(Block {
            pair: [p, q],
            rung: r,
            side_a,
            side_b,
            links,
        });
    }
    blocks
}

/// Maximal blocks that are gluing subgraphs: their two sides lie in distinct
/// components of the subgraph missing the rung colour.
pub fn find_gluing_blocks(g: &ColouredGraph, p: usize, q: usize, r: usize) -> Vec<Block> {
    let hat = g.residues(ColourSet::hat(r));
    find_blocks(g, p, q, r)
        .into_iter()
        .filter(|b| hat.class_of[b.side_a[0]] != hat.class_of[b.side_b[0]])
        .collect()
}

/// Cancels a gluing block: its vertices are removed and the hanging edges of
/// equal colour at rung-adjacent endpoints are welded. The result has
/// `2 * b.len()` fewer vertices.
pub fn cancel_block(g: &ColouredGraph, b: &Block) -> Result<ColouredGraph, GraphError> {
    b.validate(g)?;
    let mut gone = vec![false; g.vertex_count()];
    for v in b.vertices() {
        gone[v] = true;
    }
    weld_out(g, &gone, |v| g.partner(b.rung, v))
}

/// The same cancellation as [`cancel_block`], carried out rung by rung as a
/// 1-dipole followed by 2-dipoles. Vertex order is kept.
pub fn cancel_block_by_dipoles(g: &ColouredGraph, b: &Block) -> Result<ColouredGraph, GraphError> {
    b.validate(g)?;
    let mut cur = g.clone();
    let mut ids: Vec<usize> = (0..g.vertex_count()).collect();
    for (&a, &bb) in b.side_a.iter().zip(&b.side_b) {
        let x = ids.iter().position(|&v| v == a).expect("block vertex");
        let y = ids.iter().position(|&v| v == bb).expect("block vertex");
        let d = check_dipole(&cur, x, y)?;
        cur = cancel_dipole(&cur, &d)?;
        ids.retain(|&v| v != a && v != bb);
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gem::cp_isomorphic;
    use crate::tuple::{build_graph, SixTuple};

    fn tuple(s: &str) -> SixTuple {
        s.parse().unwrap()
    }

    #[test]
    fn base_graph_blocks_follow_the_h_values() {
        let f = tuple("(1,3,3;2,2,2)");
        let g = build_graph(&f);
        for r in [2, 3] {
            let mut lens: Vec<usize> = find_blocks(&g, 0, 1, r).iter().map(Block::len).collect();
            lens.sort_unstable();
            assert_eq!(lens, vec![1, 3, 3], "rung {r}");
        }
    }

    #[test]
    fn base_graph_has_no_gluing_blocks() {
        // single hat-2 component, so no ({0,1},2)-block is a gluing subgraph
        for s in ["(1,1,3;2,0,2)", "(1,3,3;2,2,2)", "(2,2,2;1,1,3)"] {
            let g = build_graph(&tuple(s));
            assert!(find_gluing_blocks(&g, 0, 1, 2).is_empty(), "{s}");
            assert!(find_gluing_blocks(&g, 0, 1, 3).is_empty(), "{s}");
        }
    }

    #[test]
    fn natural_blocks_are_coherent() {
        let f = tuple("(2,2,2;1,1,3)");
        let g = build_graph(&f);
        let pq = g.residues(ColourSet::of(&[0, 1]));
        let o = Orientation::from_cycles(g.vertex_count(), &pq.classes);
        for b in find_blocks(&g, 0, 1, 2) {
            assert!(b.coherence(&o).is_some());
        }
    }

    #[test]
    fn orientation_steps_and_distances() {
        let o = Orientation::from_cycles(6, &[vec![0, 1, 2, 3], vec![4, 5]]);
        assert_eq!(o.step(0, 1), Some(1));
        assert_eq!(o.step(0, 3), Some(-1));
        assert_eq!(o.step(0, 2), None);
        assert_eq!(o.step(0, 4), None);
        assert_eq!(o.step(4, 5), Some(1));
        assert_eq!(o.distance(3, 1), Some(2));
        assert_eq!(o.distance(1, 3), Some(2));
        assert_eq!(o.distance(2, 1), Some(3));
    }

    #[test]
    fn cancel_rejects_non_gluing_block() {
        let g = build_graph(&tuple("(1,3,3;2,2,2)"));
        let b = find_blocks(&g, 0, 1, 2).into_iter().next().unwrap();
        assert!(matches!(
            cancel_block(&g, &b),
            Err(GraphError::NotGluing(_))
        ));
    }

    /// Iterated dipole cancellation along the rungs, in side order.
    #[test]
    fn block_cancellation_matches_dipole_sequence() {
        use crate::moves::build_gf;
        for s in ["(1,3,3;2,2,2)", "(2,2,2;1,1,3)", "(3,1,5;4,2,2)"] {
            let trace = build_gf(&tuple(s)).unwrap();
            let gf = &trace.graph;
            for b in find_gluing_blocks(gf, 0, 1, 3) {
                let direct = cancel_block(gf, &b).unwrap();
                let stepwise = cancel_block_by_dipoles(gf, &b).unwrap();
                assert_eq!(direct.vertex_count(), gf.vertex_count() - 2 * b.len());
                assert!(cp_isomorphic(&direct, &stepwise).is_some(), "{s}");
                assert_eq!(direct.labels(), stepwise.labels());
            }
        }
    }
}
