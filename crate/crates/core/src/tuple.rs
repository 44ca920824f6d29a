//! Integer 6-tuples `(h0,h1,h2;q0,q1,q2)` and the crystallizations they define.
//!
//! Indices are taken mod 3 and the modulus attached to position `i` is
//! `2l_i = h_{i-1} + h_i`. Every `q_i` is stored as its least non-negative
//! residue mod `2l_i`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gem::{
    cp_isomorphic_modulo, find_blocks, ColourSet, ColouredGraph, Orientation, VertexLabel,
};
use crate::homology::AbelianGroupSignature;

/// The tuple conditions (I) to (VI).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::I => "(I)",
            Condition::II => "(II)",
            Condition::III => "(III)",
            Condition::IV => "(IV)",
            Condition::V => "(V)",
            Condition::VI => "(VI)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TupleError {
    #[error("malformed tuple `{0}`: expected (h0,h1,h2;q0,q1,q2)")]
    Malformed(String),
    #[error("condition {condition} violated: {detail}")]
    Violated {
        condition: Condition,
        detail: String,
    },
}

fn violated(condition: Condition, detail: impl Into<String>) -> TupleError {
    TupleError::Violated {
        condition,
        detail: detail.into(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SixTuple {
    h: [i64; 3],
    q: [i64; 3],
}

impl SixTuple {
    /// Checks (I) to (IV); `q` must already be in range.
    pub fn new(h: [i64; 3], q: [i64; 3]) -> Result<Self, TupleError> {
        if let Some(i) = (0..3).find(|&i| h[i] <= 0) {
            return Err(violated(
                Condition::I,
                format!("h{i} = {} is not positive", h[i]),
            ));
        }
        if (h[0] - h[1]).rem_euclid(2) != 0 || (h[1] - h[2]).rem_euclid(2) != 0 {
            return Err(violated(Condition::II, format!("h = {h:?} mixes parities")));
        }
        let f = SixTuple { h, q };
        for i in 0..3 {
            let m = f.modulus(i);
            if q[i] < 0 || q[i] >= m {
                return Err(violated(
                    Condition::III,
                    format!("q{i} = {} not in [0, {m})", q[i]),
                ));
            }
        }
        if (q[0] - q[1]).rem_euclid(2) != 0 || (q[1] - q[2]).rem_euclid(2) != 0 {
            return Err(violated(Condition::IV, format!("q = {q:?} mixes parities")));
        }
        Ok(f)
    }

    /// Reduces each `q_i` mod `2l_i` before checking (I) to (IV).
    pub fn reduced(h: [i64; 3], q: [i64; 3]) -> Result<Self, TupleError> {
        if let Some(i) = (0..3).find(|&i| h[i] <= 0) {
            return Err(violated(
                Condition::I,
                format!("h{i} = {} is not positive", h[i]),
            ));
        }
        let moduli = [h[2] + h[0], h[0] + h[1], h[1] + h[2]];
        Self::new(h, std::array::from_fn(|i| q[i].rem_euclid(moduli[i])))
    }

    pub fn h(&self) -> [i64; 3] {
        self.h
    }

    pub fn q(&self) -> [i64; 3] {
        self.q
    }

    /// `2l_i = h_{i-1} + h_i`.
    pub fn modulus(&self, i: usize) -> i64 {
        self.h[(i + 2) % 3] + self.h[i]
    }

    /// `l_i`.
    pub fn half_modulus(&self, i: usize) -> i64 {
        self.modulus(i) / 2
    }

    /// `-q_i` as a least non-negative residue.
    pub fn neg_q(&self, i: usize) -> i64 {
        (-self.q[i]).rem_euclid(self.modulus(i))
    }

    /// Complexity: `h0 + h1 + h2`, half the vertex count of the graph.
    pub fn complexity(&self) -> i64 {
        self.h.iter().sum()
    }

    /// For admissible tuples no `q_i` equals any `h_j`.
    pub fn q_avoids_h(&self) -> bool {
        self.q.iter().all(|q| !self.h.contains(q))
    }

    /// Condition (V): every `h_i + q_i` is odd.
    pub fn satisfies_v(&self) -> bool {
        (0..3).all(|i| (self.h[i] + self.q[i]) % 2 == 1)
    }

    fn offset(&self, i: usize) -> usize {
        (0..i).map(|k| self.modulus(k) as usize).sum()
    }

    /// Dense vertex index of `(i, j)`, `j` taken mod `2l_i`.
    pub fn vertex_index(&self, i: usize, j: i64) -> usize {
        self.offset(i) + j.rem_euclid(self.modulus(i)) as usize
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.complexity() as usize
    }

    /// `rho(i, j) = (i, j + q_i)`.
    pub fn rho(&self, (i, j): (usize, i64)) -> (usize, i64) {
        (i, (j + self.q[i]).rem_euclid(self.modulus(i)))
    }

    fn rho_inv(&self, (i, j): (usize, i64)) -> (usize, i64) {
        (i, (j - self.q[i]).rem_euclid(self.modulus(i)))
    }

    /// The colour-`c` involution on coordinates.
    pub fn iota(&self, colour: usize, (i, j): (usize, i64)) -> (usize, i64) {
        let m = self.modulus(i);
        let j = j.rem_euclid(m);
        let sign = if j % 2 == 0 { 1 } else { -1 };
        match colour {
            0 => (i, (j + sign).rem_euclid(m)),
            1 => (i, (j - sign).rem_euclid(m)),
            2 => {
                if j < self.h[i] {
                    let k = (i + 1) % 3;
                    (k, (-j - 1).rem_euclid(self.modulus(k)))
                } else {
                    ((i + 2) % 3, m - j - 1)
                }
            }
            3 => self.rho(self.iota(2, self.rho_inv((i, j)))),
            _ => panic!("colour {colour} out of range"),
        }
    }

    /// Coordinates of every vertex in index order.
    pub fn coordinates(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        (0..3).flat_map(move |i| (0..self.modulus(i)).map(move |j| (i, j)))
    }
}

impl fmt::Display for SixTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [h0, h1, h2] = self.h;
        let [q0, q1, q2] = self.q;
        write!(f, "({h0},{h1},{h2};{q0},{q1},{q2})")
    }
}

impl FromStr for SixTuple {
    type Err = TupleError;

    /// Accepts `(h0,h1,h2;q0,q1,q2)` with optional parentheses and spaces,
    /// or six whitespace-separated integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || TupleError::Malformed(s.to_string());
        let body = s.trim();
        let body = body.strip_prefix('(').unwrap_or(body);
        let body = body.strip_suffix(')').unwrap_or(body);
        let ints = |part: &str, sep: char| -> Result<Vec<i64>, TupleError> {
            let fields: Vec<&str> = if sep == ' ' {
                part.split_whitespace().collect()
            } else {
                part.split(sep).collect()
            };
            fields
                .into_iter()
                .map(|t| t.trim().parse::<i64>().map_err(|_| malformed()))
                .collect()
        };
        let values = if body.contains(';') {
            let (hs, qs) = body.split_once(';').ok_or_else(malformed)?;
            let (hs, qs) = (ints(hs, ',')?, ints(qs, ',')?);
            if hs.len() != 3 || qs.len() != 3 {
                return Err(malformed());
            }
            [hs, qs].concat()
        } else {
            ints(body, ' ')?
        };
        if values.len() != 6 {
            return Err(malformed());
        }
        SixTuple::new(
            [values[0], values[1], values[2]],
            [values[3], values[4], values[5]],
        )
    }
}

/// The crystallization defined by `f`. Vertex `(i, j)` has index
/// `2l_0 + ... + 2l_{i-1} + j` and label `Coord(i, j)`.
pub fn build_graph(f: &SixTuple) -> ColouredGraph {
    let n = f.vertex_count();
    let mut adj: [Vec<usize>; 4] = std::array::from_fn(|_| Vec::with_capacity(n));
    let mut labels = Vec::with_capacity(n);
    for (i, j) in f.coordinates() {
        labels.push(VertexLabel::Coord(i, j as usize));
        for (c, row) in adj.iter_mut().enumerate() {
            let (k, m) = f.iota(c, (i, j));
            row.push(f.vertex_index(k, m));
        }
    }
    ColouredGraph::new(adj, labels).expect("tuple involutions are fixed-point-free involutions")
}

/// Outcome of the admissibility test, with enough detail for reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    /// First index `i` with `h_i + q_i` even, if any.
    pub fails_v: Option<usize>,
    /// Number of `{2,3}`-residues of the graph.
    pub residues_23: usize,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.fails_v.is_none() && self.residues_23 == 3
    }

    /// The first failing condition, if any.
    pub fn failure(&self) -> Option<(Condition, String)> {
        if let Some(i) = self.fails_v {
            return Some((Condition::V, format!("h{i} + q{i} is even")));
        }
        (self.residues_23 != 3).then(|| {
            (
                Condition::VI,
                format!("{} residues over {{2,3}}, expected 3", self.residues_23),
            )
        })
    }
}

impl fmt::Display for Admissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.failure() {
            None => write!(f, "admissible ({} residues over {{2,3}})", self.residues_23),
            Some((c, detail)) => write!(f, "fails {c}: {detail}"),
        }
    }
}

/// Conditions (V) and (VI); (VI) is checked on the constructed graph.
pub fn admissibility(f: &SixTuple) -> Admissibility {
    let fails_v = (0..3).find(|&i| (f.h[i] + f.q[i]) % 2 == 0);
    let residues_23 = build_graph(f).residue_count(ColourSet::of(&[2, 3]));
    Admissibility {
        fails_v,
        residues_23,
    }
}

pub fn is_admissible(f: &SixTuple) -> bool {
    f.satisfies_v() && admissibility(f).is_admissible()
}

/// Whether `rho` maps the graph onto itself exchanging colours 2 and 3,
/// and also 0 and 1 when the `q_i` are odd.
pub fn rho_symmetry_check(f: &SixTuple) -> bool {
    let g = build_graph(f);
    let swap01 = f.q[0] % 2 == 1;
    let image: [usize; 4] = if swap01 { [1, 0, 3, 2] } else { [0, 1, 3, 2] };
    let rho_index: Vec<usize> = f
        .coordinates()
        .map(|v| {
            let (i, j) = f.rho(v);
            f.vertex_index(i, j)
        })
        .collect();
    (0..g.vertex_count())
        .all(|v| (0..4).all(|c| rho_index[g.partner(c, v)] == g.partner(image[c], rho_index[v])))
}

/// A colour permutation exchanging 2 and 3 (keeping or exchanging 0 and 1)
/// realised by some automorphism of the graph, found by search. Prefers the
/// permutation that `rho_symmetry_check` tests.
pub fn exchange_symmetry(f: &SixTuple) -> Option<[usize; 4]> {
    let g = build_graph(f);
    let mut perms = [[0, 1, 3, 2], [1, 0, 3, 2]];
    if f.q[0] % 2 == 1 {
        perms.swap(0, 1);
    }
    cp_isomorphic_modulo(&g, &g, &perms).map(|(p, _)| p)
}

/// Expected first homology when two of the `q_i` vanish: the graph then
/// represents a lens space `L(l_k, q_k / 2)` (or the sphere when all vanish).
pub fn lens_expectation(f: &SixTuple) -> Option<AbelianGroupSignature> {
    let zeros: Vec<usize> = (0..3).filter(|&i| f.q[i] == 0).collect();
    match zeros.len() {
        3 => Some(AbelianGroupSignature::trivial()),
        2 => {
            let k = 3 - zeros[0] - zeros[1];
            Some(AbelianGroupSignature::cyclic(f.half_modulus(k) as u64))
        }
        _ => None,
    }
}

/// Reads 6-tuples back off a graph shaped like a tuple crystallization: three
/// oriented `{0,1}`-residues `C_0, C_1, C_2`, and for each `i` a unique maximal
/// `({0,1},2)`-block and `({0,1},3)`-block joining `C_i` to `C_{i+1}`, of equal
/// length `h_i`, both coherent. `q_i` is the oriented distance on `C_i` from
/// the key-vertex of the colour-2 block to that of the colour-3 block.
///
/// Every ordering and orientation of the three residues is tried; the
/// distinct tuples obtained are returned sorted.
pub fn read_tuples(g: &ColouredGraph) -> Vec<SixTuple> {
    if !g.is_bipartite() {
        return Vec::new();
    }
    let cycles = g.residues(ColourSet::of(&[0, 1]));
    if cycles.len() != 3 {
        return Vec::new();
    }
    let blocks2 = find_blocks(g, 0, 1, 2);
    let blocks3 = find_blocks(g, 0, 1, 3);
    let between = |blocks: &[crate::gem::Block], x: usize, y: usize| {
        let found: Vec<&crate::gem::Block> = blocks
            .iter()
            .filter(|b| {
                let (ca, cb) = (cycles.class_of[b.side_a[0]], cycles.class_of[b.side_b[0]]);
                (ca, cb) == (x, y) || (ca, cb) == (y, x)
            })
            .collect();
        (found.len() == 1).then(|| found[0].clone())
    };
    let key_on = |keys: crate::gem::KeyVertices, cls: usize| {
        if cycles.class_of[keys.a] == cls {
            keys.a
        } else {
            keys.b
        }
    };

    let mut out = Vec::new();
    let orders = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for order in orders {
        for flips in 0..8u8 {
            let oriented: Vec<Vec<usize>> = (0..3)
                .map(|k| {
                    let mut cyc = cycles.classes[order[k]].clone();
                    if flips & (1 << k) != 0 {
                        cyc.reverse();
                    }
                    cyc
                })
                .collect();
            let orientation = Orientation::from_cycles(g.vertex_count(), &oriented);
            let mut h = [0i64; 3];
            let mut q = [0i64; 3];
            let mut ok = true;
            let mut keys2 = [None; 3];
            let mut keys3 = [None; 3];
            for i in 0..3 {
                let (x, y) = (order[i], order[(i + 1) % 3]);
                let (Some(b2), Some(b3)) = (between(&blocks2, x, y), between(&blocks3, x, y))
                else {
                    ok = false;
                    break;
                };
                if b2.len() != b3.len() {
                    ok = false;
                    break;
                }
                let (Some(k2), Some(k3)) = (b2.coherence(&orientation), b3.coherence(&orientation))
                else {
                    ok = false;
                    break;
                };
                h[i] = b2.len() as i64;
                keys2[i] = Some(key_on(k2, x));
                keys3[i] = Some(key_on(k3, x));
            }
            if !ok {
                continue;
            }
            for i in 0..3 {
                let len = oriented[i].len() as i64;
                if len != h[(i + 2) % 3] + h[i] {
                    ok = false;
                    break;
                }
                match orientation.distance(keys2[i].unwrap(), keys3[i].unwrap()) {
                    Some(d) => q[i] = d as i64,
                    None => ok = false,
                }
            }
            if ok {
                if let Ok(f) = SixTuple::new(h, q) {
                    out.push(f);
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gem::PAIR_SWAPS;

    fn t(s: &str) -> SixTuple {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_format() {
        let f = t("(1,1,3;2,0,2)");
        assert_eq!(f.h(), [1, 1, 3]);
        assert_eq!(f.q(), [2, 0, 2]);
        assert_eq!(f.to_string(), "(1,1,3;2,0,2)");
        assert_eq!(t(" ( 1, 1, 3 ; 2, 0, 2 ) "), f);
        assert_eq!(t("1 1 3 2 0 2"), f);
        assert_eq!(t("1,1,3;2,0,2"), f);
    }

    #[test]
    fn parse_errors_name_the_condition() {
        let cond = |s: &str| match s.parse::<SixTuple>() {
            Err(TupleError::Violated { condition, .. }) => Some(condition),
            _ => None,
        };
        assert_eq!(cond("(1,2,3;0,0,0)"), Some(Condition::II));
        assert_eq!(cond("(1,1,3;2,1,2)"), Some(Condition::IV));
        assert_eq!(cond("(0,2,2;0,0,0)"), Some(Condition::I));
        assert_eq!(cond("(1,1,3;4,0,0)"), Some(Condition::III));
        for bad in [
            "",
            "(1,1,3;2,0)",
            "(a,1,3;2,0,2)",
            "1 1 3 2 0",
            "(1,1,3;2,0,2;1)",
        ] {
            assert!(
                matches!(bad.parse::<SixTuple>(), Err(TupleError::Malformed(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn moduli() {
        let f = t("(1,1,3;2,0,2)");
        assert_eq!([f.modulus(0), f.modulus(1), f.modulus(2)], [4, 2, 4]);
        assert_eq!(f.neg_q(0), 2);
        assert_eq!(f.neg_q(1), 0);
    }

    #[test]
    fn involutions_by_hand() {
        let f = t("(1,1,3;2,0,2)");
        assert_eq!(f.iota(2, (0, 0)), (1, 1));
        assert_eq!(f.iota(3, (0, 0)), (2, 3));
        let s3 = t("(1,1,1;0,0,0)");
        let g = build_graph(&s3);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.involution(2), g.involution(3));
    }

    #[test]
    fn residue_shapes() {
        let g = build_graph(&t("(1,1,1;0,0,0)"));
        assert_eq!(g.residues(ColourSet::of(&[0, 1])).sizes(), vec![2, 2, 2]);
        let g = build_graph(&t("(1,1,3;2,0,2)"));
        let mut sizes = g.residues(ColourSet::of(&[2, 3])).sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 2, 6]);
        assert_eq!(g.residue_count(ColourSet::ALL), 1);
    }

    #[test]
    fn bipartition_classes() {
        let f = t("(1,1,3;2,0,2)");
        let g = build_graph(&f);
        let side = g.bipartition().unwrap();
        assert_ne!(side[f.vertex_index(0, 0)], side[f.vertex_index(1, 1)]);
    }

    #[test]
    fn admissibility_examples() {
        let a = admissibility(&t("(1,1,3;2,0,2)"));
        assert!(a.is_admissible());
        assert_eq!(a.residues_23, 3);
        let a = admissibility(&t("(3,3,3;0,0,2)"));
        assert!(!a.is_admissible());
        assert_eq!(a.residues_23, 5);
        assert_eq!(a.failure().unwrap().0, Condition::VI);
        let a = admissibility(&t("(1,1,3;0,0,0)"));
        assert_eq!(a.residues_23, 5);
        assert!(!is_admissible(&t("(1,1,1;1,1,1)")));
        assert_eq!(
            admissibility(&t("(1,1,1;1,1,1)")).failure().unwrap().0,
            Condition::V
        );
    }

    #[test]
    fn complexity_is_half_the_vertex_count() {
        assert_eq!(t("(1,1,1;0,0,0)").complexity(), 3);
        assert_eq!(t("(1,3,3;2,2,2)").complexity(), 7);
        let f = t("(2,2,2;3,1,1)");
        assert_eq!(f.complexity(), 6);
        assert_eq!(build_graph(&f).vertex_count(), 12);
    }

    #[test]
    fn rho_conjugation() {
        assert!(rho_symmetry_check(&t("(1,1,3;2,0,2)")));
        assert!(rho_symmetry_check(&t("(1,1,1;0,0,0)")));
        // rho carries 2-edges onto 3-edges but rho^2 moves 2-edges elsewhere
        for s in ["(2,2,2;3,1,1)", "(1,3,3;2,2,2)", "(3,1,5;4,2,2)"] {
            assert!(!rho_symmetry_check(&t(s)), "{s}");
        }
    }

    #[test]
    fn some_automorphism_exchanges_2_and_3() {
        assert_eq!(exchange_symmetry(&t("(1,1,3;2,0,2)")), Some([0, 1, 3, 2]));
        assert_eq!(exchange_symmetry(&t("(2,2,2;3,1,1)")), Some([1, 0, 3, 2]));
        assert_eq!(exchange_symmetry(&t("(3,1,5;4,2,2)")), Some([1, 0, 3, 2]));
        assert_eq!(exchange_symmetry(&t("(1,3,3;2,2,2)")), Some([0, 1, 3, 2]));
    }

    #[test]
    fn lens_expectations() {
        assert_eq!(
            lens_expectation(&t("(1,1,3;0,0,2)")),
            Some(AbelianGroupSignature::cyclic(2))
        );
        assert_eq!(
            lens_expectation(&t("(1,1,1;0,0,0)")),
            Some(AbelianGroupSignature::trivial())
        );
        assert_eq!(
            lens_expectation(&t("(1,1,9;0,0,4)")),
            Some(AbelianGroupSignature::cyclic(5))
        );
        assert_eq!(lens_expectation(&t("(1,1,3;2,0,2)")), None);
    }

    #[test]
    fn graphs_read_back_their_tuples() {
        for s in [
            "(1,1,3;2,0,2)",
            "(2,2,2;1,1,3)",
            "(1,3,3;2,2,2)",
            "(3,1,5;4,2,2)",
        ] {
            let f = t(s);
            let g = build_graph(&f);
            let read = read_tuples(&g);
            assert!(read.contains(&f), "{s}: {read:?}");
            for r in &read {
                assert!(
                    cp_isomorphic_modulo(&build_graph(r), &g, &PAIR_SWAPS).is_some(),
                    "{s} -> {r}"
                );
            }
        }
    }
}
