//! Four-coloured graphs: one fixed-point-free involution per colour.
//!
//! Vertices are dense indices `0..n`. Labels live in a side table so that
//! surgery can insert and delete vertices without losing track of where a
//! vertex came from.

mod block;
mod dipole;
mod iso;

use std::collections::VecDeque;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

pub use block::{
    cancel_block, cancel_block_by_dipoles, find_blocks, find_gluing_blocks, Block, KeyVertices,
    Orientation,
};
pub use dipole::{cancel_dipole, check_dipole, find_dipoles, insert_dipole, Dipole};
pub use iso::{cp_isomorphic, cp_isomorphic_modulo, PAIR_SWAPS};

/// Number of colours of a 3-gem.
pub const COLOURS: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("colour {colour} is not an involution at vertex {vertex}")]
    NotInvolution { colour: usize, vertex: usize },
    #[error("colour {colour} fixes vertex {vertex}")]
    FixedPoint { colour: usize, vertex: usize },
    #[error("colour {colour} has no edge at vertex {vertex}")]
    MissingEdge { colour: usize, vertex: usize },
    #[error("colour {colour} already has an edge at vertex {vertex}")]
    EdgeTaken { colour: usize, vertex: usize },
    #[error("vertex {vertex} out of range (n = {n})")]
    OutOfRange { vertex: usize, n: usize },
    #[error("label table has {labels} entries for {n} vertices")]
    LabelCount { labels: usize, n: usize },
    #[error("invalid dipole: {0}")]
    InvalidDipole(String),
    #[error("not a gluing block: {0}")]
    NotGluing(String),
}

/// A subset of the four colours, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColourSet(u8);

impl ColourSet {
    pub const ALL: ColourSet = ColourSet(0b1111);
    pub const EMPTY: ColourSet = ColourSet(0);

    pub fn of(colours: &[usize]) -> Self {
        let mut bits = 0u8;
        for &c in colours {
            assert!(c < COLOURS, "colour {c} out of range");
            bits |= 1 << c;
        }
        ColourSet(bits)
    }

    /// All colours except `c` (the "hat" set).
    pub fn hat(c: usize) -> Self {
        Self::ALL.without(c)
    }

    pub fn with(self, c: usize) -> Self {
        ColourSet(self.0 | (1 << c))
    }

    pub fn without(self, c: usize) -> Self {
        ColourSet(self.0 & !(1 << c))
    }

    pub fn complement(self) -> Self {
        ColourSet(!self.0 & 0b1111)
    }

    pub fn contains(self, c: usize) -> bool {
        c < COLOURS && self.0 & (1 << c) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..COLOURS).filter(move |&c| self.contains(c))
    }
}

impl fmt::Debug for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, c) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    /// `(cycle, position)` coordinates of a tuple graph vertex.
    Coord(usize, usize),
    /// Synthetic vertices introduced by surgery.
    Tag(String),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Coord(i, j) => write!(f, "({i},{j})"),
            VertexLabel::Tag(t) => f.write_str(t),
        }
    }
}

/// A 4-regular properly edge-coloured multigraph without loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredGraph {
    adj: [Vec<usize>; COLOURS],
    labels: Vec<VertexLabel>,
}

impl ColouredGraph {
    /// Builds a graph from its four involutions, checking that each is a
    /// fixed-point-free involution on `0..n`.
    pub fn new(adj: [Vec<usize>; COLOURS], labels: Vec<VertexLabel>) -> Result<Self, GraphError> {
        let n = labels.len();
        for (colour, perm) in adj.iter().enumerate() {
            if perm.len() != n {
                return Err(GraphError::LabelCount {
                    labels: n,
                    n: perm.len(),
                });
            }
            for (vertex, &w) in perm.iter().enumerate() {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
                if w == vertex {
                    return Err(GraphError::FixedPoint { colour, vertex });
                }
                if perm[w] != vertex {
                    return Err(GraphError::NotInvolution { colour, vertex });
                }
            }
        }
        Ok(ColouredGraph { adj, labels })
    }

    /// Graph with unlabelled vertices (tags `v<i>`).
    pub fn from_involutions(adj: [Vec<usize>; COLOURS]) -> Result<Self, GraphError> {
        let labels = (0..adj[0].len())
            .map(|i| VertexLabel::Tag(format!("v{i}")))
            .collect();
        Self::new(adj, labels)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Every vertex carries one edge of each colour, so `|E| = 2|V|`.
    pub fn edge_count(&self) -> usize {
        2 * self.vertex_count()
    }

    #[inline]
    pub fn partner(&self, colour: usize, v: usize) -> usize {
        self.adj[colour][v]
    }

    pub fn involution(&self, colour: usize) -> &[usize] {
        &self.adj[colour]
    }

    pub fn label(&self, v: usize) -> &VertexLabel {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn find_label(&self, label: &VertexLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Colours of the edges joining `u` and `v`.
    pub fn joining_colours(&self, u: usize, v: usize) -> ColourSet {
        (0..COLOURS)
            .filter(|&c| self.adj[c][u] == v)
            .fold(ColourSet::EMPTY, ColourSet::with)
    }

    /// Edges of one colour as `(u, v)` with `u < v`.
    pub fn edges(&self, colour: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj[colour]
            .iter()
            .enumerate()
            .filter(|(u, &v)| *u < v)
            .map(|(u, &v)| (u, v))
    }

    /// The same graph with vertex `v` renamed to `perm[v]`.
    pub fn renumbered(&self, perm: &[usize]) -> ColouredGraph {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n);
        let mut adj: [Vec<usize>; COLOURS] = std::array::from_fn(|_| vec![0; n]);
        let mut labels = vec![VertexLabel::Tag(String::new()); n];
        for v in 0..n {
            for c in 0..COLOURS {
                adj[c][perm[v]] = perm[self.adj[c][v]];
            }
            labels[perm[v]] = self.labels[v].clone();
        }
        ColouredGraph { adj, labels }
    }

    /// The same vertices with colour `c` edges taken from colour `perm[c]`.
    pub fn recoloured(&self, perm: [usize; COLOURS]) -> ColouredGraph {
        ColouredGraph {
            adj: std::array::from_fn(|c| self.adj[perm[c]].clone()),
            labels: self.labels.clone(),
        }
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &ColouredGraph) -> ColouredGraph {
        let shift = self.vertex_count();
        let adj = std::array::from_fn(|c| {
            self.adj[c]
                .iter()
                .copied()
                .chain(other.adj[c].iter().map(|&w| w + shift))
                .collect()
        });
        let labels = self
            .labels
            .iter()
            .chain(other.labels.iter())
            .cloned()
            .collect();
        ColouredGraph { adj, labels }
    }

    /// Connected components of the subgraph keeping only `colours`.
    ///
    /// For two-colour sets each class is listed in cyclic order, starting at
    /// its least vertex and stepping first along the lower colour.
    pub fn residues(&self, colours: ColourSet) -> ResiduePartition {
        let n = self.vertex_count();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        let cs: Vec<usize> = colours.iter().collect();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            if cs.len() == 2 {
                // alternating cycles always have even length
                let mut v = start;
                let mut step = 0;
                loop {
                    class_of[v] = id;
                    members.push(v);
                    v = self.adj[cs[step % 2]][v];
                    step += 1;
                    if v == start {
                        break;
                    }
                }
            } else {
                let mut queue = VecDeque::from([start]);
                class_of[start] = id;
                while let Some(v) = queue.pop_front() {
                    members.push(v);
                    for &c in &cs {
                        let w = self.adj[c][v];
                        if class_of[w] == usize::MAX {
                            class_of[w] = id;
                            queue.push_back(w);
                        }
                    }
                }
                members.sort_unstable();
            }
            classes.push(members);
        }
        ResiduePartition {
            colours,
            class_of,
            classes,
        }
    }

    pub fn residue_count(&self, colours: ColourSet) -> usize {
        self.residues(colours).len()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.residue_count(ColourSet::ALL) == 1
    }

    /// Two-colouring of the vertices (`false`/`true` per vertex) if every edge
    /// joins opposite classes. Each component starts with its least vertex in
    /// class `false`.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let s = side[v].unwrap();
                for c in 0..COLOURS {
                    let w = self.adj[c][v];
                    match side[w] {
                        None => {
                            side[w] = Some(!s);
                            stack.push(w);
                        }
                        Some(t) if t == s => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Sphere test on every 3-residue: `V - E + F = 2` where `F` counts the
    /// bicoloured cycles inside the residue.
    pub fn is_gem(&self) -> bool {
        (0..COLOURS).all(|c| self.three_residue_euler(c).into_iter().all(|chi| chi == 2))
    }

    /// Euler characteristics of the surfaces represented by the components of
    /// the subgraph missing colour `c`, in residue order.
    pub fn three_residue_euler(&self, c: usize) -> Vec<i64> {
        let hat = ColourSet::hat(c);
        let part = self.residues(hat);
        let mut chi: Vec<i64> = part
            .classes
            .iter()
            .map(|cls| cls.len() as i64 - 3 * cls.len() as i64 / 2)
            .collect();
        let cs: Vec<usize> = hat.iter().collect();
        for (a, b) in [(cs[0], cs[1]), (cs[0], cs[2]), (cs[1], cs[2])] {
            let pairs = self.residues(ColourSet::of(&[a, b]));
            for cls in &pairs.classes {
                chi[part.class_of[cls[0]]] += 1;
            }
        }
        chi
    }

    /// Every subgraph missing one colour is connected.
    pub fn is_contracted(&self) -> bool {
        (0..COLOURS).all(|c| self.residue_count(ColourSet::hat(c)) == 1)
    }

    /// Euler characteristic `V - E + F` of the regular embedding induced by a
    /// cyclic order of the colours: faces are the bicoloured cycles of
    /// consecutive colour pairs.
    pub fn embedding_euler(&self, order: [usize; COLOURS]) -> i64 {
        let v = self.vertex_count() as i64;
        let faces: usize = (0..COLOURS)
            .map(|k| self.residue_count(ColourSet::of(&[order[k], order[(k + 1) % COLOURS]])))
            .sum();
        v - self.edge_count() as i64 + faces as i64
    }

    /// Graphviz rendering; colours 0..3 drawn solid, dashed, bold, dotted.
    pub fn to_dot(&self) -> String {
        const STYLE: [&str; COLOURS] = ["solid", "dashed", "bold", "dotted"];
        let mut out = String::from("graph G {\n");
        for (v, label) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  v{v} [label=\"{label}\"];");
        }
        for c in 0..COLOURS {
            for (u, w) in self.edges(c) {
                let _ = writeln!(out, "  v{u} -- v{w} [color=\"{c}\", style={}];", STYLE[c]);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Connected components of a colour-restricted subgraph.
#[derive(Clone, Debug)]
pub struct ResiduePartition {
    pub colours: ColourSet,
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl ResiduePartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn class_containing(&self, v: usize) -> &[usize] {
        &self.classes[self.class_of[v]]
    }
}

/// A graph under construction: edges may be missing while surgery is under
/// way, and vertices may be deleted.
#[derive(Clone, Debug)]
pub struct PartialGraph {
    adj: [Vec<Option<usize>>; COLOURS],
    labels: Vec<VertexLabel>,
    deleted: Vec<bool>,
}

impl PartialGraph {
    pub fn new() -> Self {
        PartialGraph {
            adj: std::array::from_fn(|_| Vec::new()),
            labels: Vec::new(),
            deleted: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn add_vertex(&mut self, label: VertexLabel) -> usize {
        for c in 0..COLOURS {
            self.adj[c].push(None);
        }
        self.labels.push(label);
        self.deleted.push(false);
        self.labels.len() - 1
    }

    pub fn partner(&self, colour: usize, v: usize) -> Option<usize> {
        self.adj[colour][v]
    }

    pub fn join(&mut self, colour: usize, u: usize, v: usize) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::FixedPoint { colour, vertex: u });
        }
        for x in [u, v] {
            if self.adj[colour][x].is_some() {
                return Err(GraphError::EdgeTaken { colour, vertex: x });
            }
        }
        self.adj[colour][u] = Some(v);
        self.adj[colour][v] = Some(u);
        Ok(())
    }

    /// Removes the `colour` edge at `v`, returning its other endpoint.
    pub fn detach(&mut self, colour: usize, v: usize) -> Result<usize, GraphError> {
        let w = self.adj[colour][v].ok_or(GraphError::MissingEdge { colour, vertex: v })?;
        self.adj[colour][v] = None;
        self.adj[colour][w] = None;
        Ok(w)
    }

    /// Marks `v` deleted, detaching whatever edges it still has.
    pub fn delete_vertex(&mut self, v: usize) {
        for c in 0..COLOURS {
            if self.adj[c][v].is_some() {
                let _ = self.detach(c, v);
            }
        }
        self.deleted[v] = true;
    }

    /// Compacts surviving vertices (keeping their relative order) and checks
    /// that the result is a complete 4-coloured graph.
    pub fn finish(self) -> Result<ColouredGraph, GraphError> {
        let n = self.vertex_count();
        let mut new_index = vec![usize::MAX; n];
        let mut labels = Vec::new();
        for v in 0..n {
            if !self.deleted[v] {
                new_index[v] = labels.len();
                labels.push(self.labels[v].clone());
            }
        }
        let mut adj: [Vec<usize>; COLOURS] =
            std::array::from_fn(|_| Vec::with_capacity(labels.len()));
        for c in 0..COLOURS {
            for v in 0..n {
                if self.deleted[v] {
                    continue;
                }
                let w = self.adj[c][v].ok_or(GraphError::MissingEdge {
                    colour: c,
                    vertex: v,
                })?;
                adj[c].push(new_index[w]);
            }
        }
        ColouredGraph::new(adj, labels)
    }
}

impl Default for PartialGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl From<&ColouredGraph> for PartialGraph {
    fn from(g: &ColouredGraph) -> Self {
        PartialGraph {
            adj: std::array::from_fn(|c| g.adj[c].iter().map(|&w| Some(w)).collect()),
            labels: g.labels.clone(),
            deleted: vec![false; g.vertex_count()],
        }
    }
}

/// Removes the vertices in `gone` and rewires each surviving vertex along
/// alternating paths: from a survivor `x`, follow colour `c` into the deleted
/// set, jump to the deleted vertex's mate, follow `c` again, until a survivor
/// is reached. This is the welding of hanging edges of equal colour.
pub(crate) fn weld_out(
    g: &ColouredGraph,
    gone: &[bool],
    mate: impl Fn(usize) -> usize,
) -> Result<ColouredGraph, GraphError> {
    let n = g.vertex_count();
    let mut pg = PartialGraph {
        adj: std::array::from_fn(|_| vec![None; n]),
        labels: g.labels.clone(),
        deleted: gone.to_vec(),
    };
    for c in 0..COLOURS {
        for x in 0..n {
            if gone[x] {
                continue;
            }
            let mut y = g.adj[c][x];
            let mut steps = 0;
            while gone[y] {
                y = g.adj[c][mate(y)];
                steps += 1;
                if steps > n {
                    return Err(GraphError::NotGluing(
                        "welding path does not terminate".into(),
                    ));
                }
            }
            if y == x {
                return Err(GraphError::FixedPoint {
                    colour: c,
                    vertex: x,
                });
            }
            pg.adj[c][x] = Some(y);
        }
    }
    pg.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 2-vertex graph with all four colours on the same pair.
    pub(crate) fn dipole_sphere() -> ColouredGraph {
        ColouredGraph::from_involutions(std::array::from_fn(|_| vec![1, 0])).unwrap()
    }

    fn k4_bad() -> ColouredGraph {
        // 0:(v0v1)(v2v3) 1:(v0v2)(v1v3) 2:(v0v3)(v1v2) 3:(v0v1)(v2v3)
        ColouredGraph::from_involutions([
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
            vec![1, 0, 3, 2],
        ])
        .unwrap()
    }

    #[test]
    fn rejects_non_involution_and_fixed_points() {
        let bad = ColouredGraph::from_involutions([
            vec![1, 2, 0],
            vec![1, 0, 2],
            vec![1, 0, 2],
            vec![1, 0, 2],
        ]);
        assert!(matches!(bad, Err(GraphError::NotInvolution { .. })));
        let fixed =
            ColouredGraph::from_involutions([vec![0, 1], vec![1, 0], vec![1, 0], vec![1, 0]]);
        assert!(matches!(
            fixed,
            Err(GraphError::FixedPoint { colour: 0, .. })
        ));
    }

    #[test]
    fn two_vertex_sphere() {
        let g = dipole_sphere();
        assert!(g.is_gem());
        assert!(g.is_contracted());
        assert!(g.is_bipartite());
        assert_eq!(g.residue_count(ColourSet::ALL), 1);
        assert_eq!(g.residues(ColourSet::of(&[0, 1])).classes, vec![vec![0, 1]]);
    }

    #[test]
    fn k4_is_not_a_gem() {
        let g = k4_bad();
        assert_eq!(g.three_residue_euler(3), vec![1]);
        assert!(!g.is_gem());
    }

    #[test]
    fn disconnected_union_is_not_contracted() {
        let g = dipole_sphere().disjoint_union(&dipole_sphere());
        assert!(!g.is_connected());
        assert!(!g.is_contracted());
        assert_eq!(g.residue_count(ColourSet::ALL), 2);
    }

    #[test]
    fn partial_graph_reports_missing_edges() {
        let mut pg = PartialGraph::new();
        let a = pg.add_vertex(VertexLabel::Tag("a".into()));
        let b = pg.add_vertex(VertexLabel::Tag("b".into()));
        for c in 0..3 {
            pg.join(c, a, b).unwrap();
        }
        assert!(matches!(
            pg.join(0, a, b),
            Err(GraphError::EdgeTaken { .. })
        ));
        assert!(matches!(
            pg.clone().finish(),
            Err(GraphError::MissingEdge { colour: 3, .. })
        ));
        pg.join(3, a, b).unwrap();
        assert_eq!(
            pg.finish().unwrap(),
            dipole_sphere()
                .renumbered(&[0, 1])
                .with_labels_of(&["a", "b"])
        );
    }

    impl ColouredGraph {
        fn with_labels_of(mut self, tags: &[&str]) -> Self {
            self.labels = tags
                .iter()
                .map(|t| VertexLabel::Tag(t.to_string()))
                .collect();
            self
        }
    }

    #[test]
    fn colour_set_basics() {
        let s = ColourSet::of(&[0, 2]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.complement(), ColourSet::of(&[1, 3]));
        assert_eq!(ColourSet::hat(2), ColourSet::of(&[0, 1, 3]));
        assert_eq!(s.to_string(), "{0,2}");
    }

    #[test]
    fn dot_export_shape() {
        let dot = dipole_sphere().to_dot();
        assert!(dot.starts_with("graph G {"));
        assert!(dot.contains("v0 [label=\"v0\"]"));
        assert!(dot.contains("v0 -- v1 [color=\"2\", style=bold]"));
        assert_eq!(dot.matches(" -- ").count(), 4);
    }
}
