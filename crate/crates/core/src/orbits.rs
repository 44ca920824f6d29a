//! Traps, minimal tuples and roots, and exploration of G-orbits through the
//! graph whose vertices are canonical tuples and whose edges are `sigma` moves.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;

use num_integer::Integer;
use thiserror::Error;

use crate::moves::{
    canonical, delta, h_equivalent, h_orbit, psi1, psi1_pow, psi2, sigma_neighbors, sigma_unchecked,
};
use crate::tuple::SixTuple;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("{0} is not canonical")]
    NotCanonical(SixTuple),
    #[error("{0} is a trap")]
    Trap(SixTuple),
    #[error("{0} is H-equivalent to a tuple with two vanishing q's")]
    GenusGuard(SixTuple),
    #[error("no ascending move found from {0}")]
    NoAscent(SixTuple),
}

/// Evidence that a tuple is a trap of type `(r, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrapWitness {
    pub r: i64,
    pub s: i64,
    /// The H-image `(r,r,s;q0,0,q2)` satisfying the closure condition.
    pub base: SixTuple,
    /// `gcd(q0 + q2, r + s)`.
    pub d: i64,
}

impl TrapWitness {
    pub fn trap_type(&self) -> (i64, i64) {
        (self.r, self.s)
    }
}

impl fmt::Display for TrapWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "type ({},{}) via {} with d = {}",
            self.r, self.s, self.base, self.d
        )
    }
}

/// `q` lies in `{0, r+1, ..., s-1}`.
pub fn in_trap_set(q: i64, r: i64, s: i64) -> bool {
    q == 0 || (r < q && q < s)
}

/// The closure test on `(r,r,s;q0,0,q2)`: for `k < (r+s)/d` both `q0 + k d`
/// and `q2 + k d` (mod `r+s`) lie in `{0, r+1, ..., s-1}`.
pub fn trap_condition(r: i64, s: i64, q0: i64, q2: i64) -> (bool, i64) {
    let n = r + s;
    let d = (q0 + q2).gcd(&n);
    let d = if d == 0 { n } else { d };
    let ok = (0..n / d).all(|k| {
        in_trap_set((q0 + k * d).rem_euclid(n), r, s)
            && in_trap_set((q2 + k * d).rem_euclid(n), r, s)
    });
    (ok, d)
}

/// The first H-image of the shape `(r,r,s;q0,0,q2)`, `r <= s`, that passes
/// the closure test, if any. Every matching image is tried.
pub fn is_trap(f: &SixTuple) -> Option<TrapWitness> {
    h_orbit(f).into_iter().find_map(|g| {
        let ([h0, h1, h2], [q0, q1, q2]) = (g.h(), g.q());
        if h0 != h1 || h0 > h2 || q1 != 0 {
            return None;
        }
        let (ok, d) = trap_condition(h0, h2, q0, q2);
        ok.then_some(TrapWitness {
            r: h0,
            s: h2,
            base: g,
            d,
        })
    })
}

fn require_canonical(f: &SixTuple) -> Result<(), OrbitError> {
    if canonical(f) == *f {
        Ok(())
    } else {
        Err(OrbitError::NotCanonical(*f))
    }
}

/// Closed-form minimality of a canonical tuple:
/// `q2 < h0`, or `q2 > h1 + h2 - h0`, or `h0 = h1 < q2 < h2`.
pub fn minimal_closed_form(f: &SixTuple) -> bool {
    let ([h0, h1, h2], q2) = (f.h(), f.q()[2]);
    q2 < h0 || q2 > h1 + h2 - h0 || (h0 == h1 && h1 < q2 && q2 < h2)
}

/// Minimality by complexity change: `delta(psi1^i(f)) >= 0` for `i = 0,1,2`.
pub fn minimal_by_delta(f: &SixTuple) -> bool {
    (0..3).all(|i| delta(&psi1_pow(f, i)) >= 0)
}

/// The exceptional minimal tuples that are not roots, in closed form.
/// `a` concerns `q2`, `b` the symmetric case on `q0`.
pub fn root_exceptions(f: &SixTuple) -> (bool, bool) {
    let ([h0, h1, h2], [q0, q1, q2]) = (f.h(), f.q());
    if h0 != h1 {
        return (false, false);
    }
    // h0 = h1 makes the moduli of q0 and q2 equal
    let m = f.modulus(0);
    let mid = (h0 + h2) / 2;
    let exc = |x: i64, y: i64| {
        h1 < x
            && x < h2
            && x != (-y).rem_euclid(m)
            && x != mid
            && (q1 != 0 || x != (mid - y).rem_euclid(m))
    };
    (exc(q2, q0), exc(q0, q2))
}

pub fn root_closed_form(f: &SixTuple) -> bool {
    let (a, b) = root_exceptions(f);
    minimal_closed_form(f) && !a && !b
}

/// Root by moves: `delta(psi1^i(f)) > 0` whenever `sigma(psi1^i(f))` leaves
/// the H-orbit of `f`.
pub fn root_by_delta(f: &SixTuple) -> bool {
    (0..3).all(|i| {
        let g = psi1_pow(f, i);
        let moved = sigma_unchecked(&g)
            .map(|s| !h_equivalent(f, &s))
            .unwrap_or(false);
        !moved || delta(&g) > 0
    })
}

/// Minimality of a canonical admissible tuple.
pub fn is_minimal(f: &SixTuple) -> Result<bool, OrbitError> {
    require_canonical(f)?;
    let closed = minimal_closed_form(f);
    debug_assert_eq!(
        closed,
        minimal_by_delta(f),
        "minimality forms disagree on {f}"
    );
    Ok(closed)
}

/// Whether a canonical admissible tuple is the unique minimal member of its G-orbit.
pub fn is_root(f: &SixTuple) -> Result<bool, OrbitError> {
    require_canonical(f)?;
    let closed = root_closed_form(f);
    debug_assert_eq!(closed, root_by_delta(f), "root forms disagree on {f}");
    Ok(closed)
}

/// One descent step of [`minimize_path`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    pub from: SixTuple,
    pub rotation: usize,
    pub to: SixTuple,
}

/// Greedy descent: while some rotation has negative `delta`, apply `sigma`
/// there and re-canonicalize. Returns every step taken.
pub fn minimize_path(f: &SixTuple) -> Vec<Descent> {
    let mut cur = canonical(f);
    let mut steps = Vec::new();
    while let Some(i) = (0..3).find(|&i| delta(&psi1_pow(&cur, i)) < 0) {
        let next = canonical(&sigma_unchecked(&psi1_pow(&cur, i)).expect("admissible input"));
        debug_assert!(next.complexity() < cur.complexity());
        steps.push(Descent {
            from: cur,
            rotation: i,
            to: next,
        });
        cur = next;
    }
    steps
}

/// A minimal tuple in the G-orbit of the admissible tuple `f`.
pub fn minimize(f: &SixTuple) -> SixTuple {
    minimize_path(f)
        .last()
        .map_or_else(|| canonical(f), |s| s.to)
}

/// Whether some H-image of `f` has two vanishing `q`'s (so it represents a
/// manifold of genus at most one).
pub fn fails_genus_guard(f: &SixTuple) -> bool {
    f.q().iter().filter(|&&q| q == 0).count() >= 2
}

/// A tuple of the G-orbit of `f` with the same complexity and positive
/// `delta`, so that `sigma` of it is strictly larger.
pub fn ascend_witness(f: &SixTuple) -> Result<SixTuple, OrbitError> {
    require_canonical(f)?;
    if is_trap(f).is_some() {
        return Err(OrbitError::Trap(*f));
    }
    if fails_genus_guard(f) {
        return Err(OrbitError::GenusGuard(*f));
    }
    let positive = |g: SixTuple| (0..3).map(move |i| psi1_pow(&g, i)).find(|x| delta(x) > 0);
    if let Some(g) = positive(*f) {
        return Ok(g);
    }
    // f = (h0,h0,h2;q0,0,q2) with q0, q2 in T: iterate psi1 psi2 sigma
    let step = |g: &SixTuple| psi1(&psi2(&sigma_unchecked(g).expect("admissible input")));
    let n = f.h()[0] + f.h()[2];
    let mut a = *f;
    let mut b = psi1(&psi2(f));
    for _ in 0..=n {
        a = step(&a);
        b = step(&b);
        for g in [a, b] {
            if let Some(w) = positive(g) {
                return Ok(w);
            }
        }
    }
    Err(OrbitError::NoAscent(*f))
}

/// A bounded piece of the graph of canonical tuples linked by `sigma`.
#[derive(Clone, Debug, Default)]
pub struct OrbitGraph {
    /// Canonical tuples in discovery order.
    pub nodes: Vec<SixTuple>,
    /// Unordered edges as index pairs `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Nodes with a neighbour above the complexity bound.
    pub frontier: Vec<usize>,
    /// The node budget ran out before the search finished.
    pub truncated: bool,
}

impl OrbitGraph {
    /// The whole G-orbit fits inside the bounds.
    pub fn is_closed(&self) -> bool {
        self.frontier.is_empty() && !self.truncated
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// One line per node: index, tuple, complexity, frontier flag; then one
    /// line per edge.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("node\ttuple\tupsilon\tfrontier\n");
        for (i, f) in self.nodes.iter().enumerate() {
            let _ = writeln!(
                out,
                "{i}\t{f}\t{}\t{}",
                f.complexity(),
                self.frontier.contains(&i)
            );
        }
        out.push_str("edge\tfrom\tto\n");
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            let _ = writeln!(out, "{k}\t{}\t{}", self.nodes[a], self.nodes[b]);
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph orbit {\n");
        for (i, f) in self.nodes.iter().enumerate() {
            let shape = if self.frontier.contains(&i) {
                "box"
            } else {
                "ellipse"
            };
            let _ = writeln!(
                out,
                "  n{i} [label=\"{f}\\n{}\", shape={shape}];",
                f.complexity()
            );
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -- n{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first search from `canonical(f)` over [`sigma_neighbors`],
/// keeping nodes of complexity at most `max_complexity` and at most
/// `max_nodes` of them.
pub fn explore(f: &SixTuple, max_complexity: i64, max_nodes: usize) -> OrbitGraph {
    let start = canonical(f);
    let mut graph = OrbitGraph::default();
    let mut index: BTreeMap<SixTuple, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    index.insert(start, 0);
    graph.nodes.push(start);
    queue.push_back(0);
    let mut edges = Vec::new();
    while let Some(v) = queue.pop_front() {
        let node = graph.nodes[v];
        for w in sigma_neighbors(&node) {
            if w.complexity() > max_complexity {
                if !graph.frontier.contains(&v) {
                    graph.frontier.push(v);
                }
                continue;
            }
            let wi = match index.get(&w) {
                Some(&wi) => wi,
                None => {
                    if graph.nodes.len() >= max_nodes {
                        graph.truncated = true;
                        continue;
                    }
                    let wi = graph.nodes.len();
                    index.insert(w, wi);
                    graph.nodes.push(w);
                    queue.push_back(wi);
                    wi
                }
            };
            edges.push((v.min(wi), v.max(wi)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    graph.edges = edges;
    graph.frontier.sort_unstable();
    graph
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::sigma;

    fn t(s: &str) -> SixTuple {
        s.parse().unwrap()
    }

    #[test]
    fn trap_examples() {
        let w = is_trap(&t("(1,1,3;2,0,2)")).unwrap();
        assert_eq!(w.trap_type(), (1, 3));
        assert_eq!(w.d, 4);
        let w = is_trap(&t("(1,1,9;0,0,4)")).unwrap();
        assert_eq!(w.trap_type(), (1, 9));
        assert!(is_trap(&t("(1,3,3;2,2,2)")).is_none());
        assert!(is_trap(&t("(2,2,2;1,1,3)")).is_none());
        assert_eq!(is_trap(&t("(1,1,1;0,0,0)")).unwrap().trap_type(), (1, 1));
    }

    #[test]
    fn trap_condition_zero_case() {
        // gcd(0, n) = n: only k = 0 is tested
        assert_eq!(trap_condition(1, 3, 0, 0), (true, 4));
        assert_eq!(trap_condition(1, 9, 0, 4), (true, 2));
        assert!(!trap_condition(1, 9, 0, 1).0);
    }

    #[test]
    fn lens_family_are_traps() {
        for p in 2..9i64 {
            for q in 1..p {
                let f = SixTuple::new([1, 1, 2 * p - 1], [0, 0, 2 * q]).unwrap();
                assert_eq!(
                    is_trap(&f).map(|w| w.trap_type()),
                    Some((1, 2 * p - 1)),
                    "{f}"
                );
            }
        }
    }

    #[test]
    fn minimality_examples() {
        assert!(is_minimal(&t("(2,2,2;1,1,3)")).unwrap());
        assert!(!is_minimal(&t("(1,3,3;2,2,2)")).unwrap());
        assert!(is_minimal(&t("(1,1,3;2,0,2)")).unwrap());
        assert!(is_root(&t("(1,1,3;2,0,2)")).unwrap());
        assert!(is_root(&t("(2,2,2;1,1,3)")).unwrap());
        assert!(!is_root(&t("(1,3,3;2,2,2)")).unwrap());
        assert_eq!(
            is_minimal(&t("(2,2,2;3,1,1)")),
            Err(OrbitError::NotCanonical(t("(2,2,2;3,1,1)")))
        );
    }

    #[test]
    fn worked_chain() {
        let f = t("(1,3,3;2,2,2)");
        let path = minimize_path(&f);
        assert_eq!(path.len(), 1);
        assert_eq!(path[0].rotation, 2);
        assert_eq!(sigma(&t("(3,1,3;2,2,2)")).unwrap(), t("(2,2,2;3,1,1)"));
        assert_eq!(minimize(&f), t("(2,2,2;1,1,3)"));
        assert_eq!(minimize(&t("(2,2,2;1,1,3)")), t("(2,2,2;1,1,3)"));
    }

    #[test]
    fn ascent_examples() {
        assert_eq!(
            ascend_witness(&t("(1,3,3;2,2,2)")).unwrap(),
            t("(1,3,3;2,2,2)")
        );
        assert_eq!(
            ascend_witness(&t("(2,2,2;1,1,3)")).unwrap(),
            t("(2,2,2;1,1,3)")
        );
        assert_eq!(
            ascend_witness(&t("(1,1,3;2,0,2)")),
            Err(OrbitError::Trap(t("(1,1,3;2,0,2)")))
        );
    }

    #[test]
    fn exploration_examples() {
        let o = explore(&t("(1,1,3;2,0,2)"), 30, 10_000);
        assert!(o.is_closed());
        assert_eq!(o.nodes.len(), 1);
        let o = explore(&t("(1,3,3;2,2,2)"), 12, 10_000);
        let cs: Vec<i64> = o.nodes.iter().map(SixTuple::complexity).collect();
        for c in [6, 7, 9] {
            assert!(cs.contains(&c), "{cs:?}");
        }
        assert!(!o.frontier.is_empty());
        assert!((0..o.nodes.len()).all(|v| o.degree(v) <= 3));
        let tiny = explore(&t("(1,3,3;2,2,2)"), 12, 2);
        assert!(tiny.truncated && !tiny.is_closed());
        assert!(o.to_tsv().starts_with("node\ttuple"));
        assert!(o.to_dot().contains("--"));
    }
}
