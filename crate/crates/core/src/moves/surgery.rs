//! The graph `G(f)`: `Gamma(f)` with a `({0,1},3)`-block of length `h1`
//! spliced into the residue `C0`, and the check that cancelling the block
//! `Theta` there yields `Gamma(sigma(f))`.

use std::fmt;

use thiserror::Error;

use super::{sigma_case, sigma_unchecked, table_row, SigmaCase, TableRow};
use crate::gem::{
    cancel_block, cp_isomorphic, cp_isomorphic_modulo, find_gluing_blocks, Block, ColourSet,
    ColouredGraph, GraphError, Orientation, PartialGraph, VertexLabel, PAIR_SWAPS,
};
use crate::tuple::{admissibility, build_graph, read_tuples, SixTuple};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("{0} is not admissible")]
    Inadmissible(SixTuple),
    #[error("{0} has q0 = 0: the block Theta is void")]
    ZeroQ0(SixTuple),
    #[error("graph error during surgery: {0}")]
    Graph(#[from] GraphError),
    #[error("expected one gluing block {what}, found {found}")]
    Blocks { what: &'static str, found: usize },
    #[error("G(f) has {0} components over colours {{0,1,2}}, expected 2")]
    Shape(usize),
}

/// Everything recorded while building `G(f)`.
#[derive(Clone, Debug)]
pub struct SurgeryTrace {
    pub base: SixTuple,
    pub graph: ColouredGraph,
    /// `v'_1, ..., v'_{h1}` as vertex ids of `graph`.
    pub v_prime: Vec<usize>,
    /// `v''_1, ..., v''_{h1}`.
    pub v_second: Vec<usize>,
    /// Oriented `{0,1}`-residues `C0'`, `C0''`, `C1`, `C2`.
    pub c0_prime: Vec<usize>,
    pub c0_second: Vec<usize>,
    pub c1: Vec<usize>,
    pub c2: Vec<usize>,
    pub orientation: Orientation,
    /// Inserted block, joining `C0'` and `C0''`.
    pub gamma: Block,
    /// Its mirror, joining `C1` and `C2`.
    pub gamma_prime: Block,
    /// Joins `C1` and `C0''`.
    pub theta: Block,
    /// Joins `C0'` and `C2`.
    pub theta_prime: Block,
    /// `L, p1, p2, r1, r2` measured on the graph.
    pub measured: TableRow,
}

const PATH_COLOUR: [usize; 2] = [1, 0];

/// Builds `G(f)` and locates its four `({0,1},3)` gluing blocks.
pub fn build_gf(f: &SixTuple) -> Result<SurgeryTrace, SurgeryError> {
    if !admissibility(f).is_admissible() {
        return Err(SurgeryError::Inadmissible(*f));
    }
    let [h0, h1, _] = f.h();
    let q0 = f.q()[0];
    if q0 == 0 {
        return Err(SurgeryError::ZeroQ0(*f));
    }
    let base = build_graph(f);
    let at = |i: usize, j: i64| f.vertex_index(i, j);
    let mut pg = PartialGraph::from(&base);

    for j in 0..h1 {
        pg.detach(2, at(1, j))?;
    }
    pg.detach(1, at(0, 0))?;
    let gamma_a = if h0 % 2 == 1 { 0 } else { 1 };
    pg.detach(gamma_a, at(0, h0 - 1))?;

    let h1u = h1 as usize;
    let v_prime: Vec<usize> = (1..=h1u)
        .map(|i| pg.add_vertex(VertexLabel::Tag(format!("v'{i}"))))
        .collect();
    let v_second: Vec<usize> = (1..=h1u)
        .map(|i| pg.add_vertex(VertexLabel::Tag(format!("v''{i}"))))
        .collect();
    for i in 0..h1u {
        pg.join(3, v_prime[i], v_second[i])?;
        if i + 1 < h1u {
            // edge v_{i+1} -- v_{i+2} in 1-based terms: colour 0 after an odd index
            let c = PATH_COLOUR[(i + 1) % 2];
            pg.join(c, v_prime[i], v_prime[i + 1])?;
            pg.join(c, v_second[i], v_second[i + 1])?;
        }
        pg.join(2, at(1, i as i64), v_prime[i])?;
        pg.join(2, at(2, -(i as i64) - 1), v_second[i])?;
    }
    pg.join(1, at(0, 0), v_prime[0])?;
    pg.join(1, at(0, -1), v_second[0])?;
    pg.join(gamma_a, at(0, h0 - 1), v_prime[h1u - 1])?;
    pg.join(gamma_a, at(0, h0), v_second[h1u - 1])?;
    let graph = pg.finish()?;

    let hat3 = graph.residue_count(ColourSet::hat(3));
    if hat3 != 2 {
        return Err(SurgeryError::Shape(hat3));
    }

    let m0 = f.modulus(0);
    let c0_prime: Vec<usize> = (0..h0)
        .map(|j| at(0, j))
        .chain(v_prime.iter().rev().copied())
        .collect();
    let c0_second: Vec<usize> = (h0..m0)
        .map(|j| at(0, j))
        .chain(v_second.iter().copied())
        .collect();
    let c1: Vec<usize> = (0..f.modulus(1)).map(|j| at(1, j)).collect();
    let c2: Vec<usize> = (0..f.modulus(2)).map(|j| at(2, j)).collect();
    let orientation = Orientation::from_cycles(
        graph.vertex_count(),
        &[c0_prime.clone(), c0_second.clone(), c1.clone(), c2.clone()],
    );

    let blocks = find_gluing_blocks(&graph, 0, 1, 3);
    let in_set = |v: usize, set: &[usize]| set.contains(&v);
    let joining = |x: &[usize], y: &[usize], what: &'static str| -> Result<Block, SurgeryError> {
        let found: Vec<&Block> = blocks
            .iter()
            .filter(|b| {
                let (a, bb) = (b.side_a[0], b.side_b[0]);
                (in_set(a, x) && in_set(bb, y)) || (in_set(a, y) && in_set(bb, x))
            })
            .collect();
        match found.as_slice() {
            [b] => Ok((*b).clone()),
            _ => Err(SurgeryError::Blocks {
                what,
                found: found.len(),
            }),
        }
    };
    let gamma = joining(&c0_prime, &c0_second, "between C0' and C0''")?;
    let gamma_prime = joining(&c1, &c2, "between C1 and C2")?;
    let theta = joining(&c1, &c0_second, "between C1 and C0''")?;
    let theta_prime = joining(&c0_prime, &c2, "between C0' and C2")?;
    if blocks.len() != 4 {
        return Err(SurgeryError::Blocks {
            what: "in total (expected 4)",
            found: blocks.len(),
        });
    }

    let measured = measure(f, &graph, &c0_prime, &c0_second, &c1, &c2, theta.len());
    Ok(SurgeryTrace {
        base: *f,
        graph,
        v_prime,
        v_second,
        c0_prime,
        c0_second,
        c1,
        c2,
        orientation,
        gamma,
        gamma_prime,
        theta,
        theta_prime,
        measured,
    })
}

/// Counts the 3-edges from `C1` into `C0'` and from `C2` into `C0''`, split
/// by where they land on the old cycle `C0`.
fn measure(
    f: &SixTuple,
    g: &ColouredGraph,
    c0_prime: &[usize],
    c0_second: &[usize],
    c1: &[usize],
    c2: &[usize],
    theta_len: usize,
) -> TableRow {
    let [h0, _, _] = f.h();
    let q0 = f.q()[0];
    let landing = |from: &[usize], onto: &[usize]| -> Vec<i64> {
        from.iter()
            .map(|&v| g.partner(3, v))
            .filter(|w| onto.contains(w))
            .filter_map(|w| match g.label(w) {
                VertexLabel::Coord(0, j) => Some(*j as i64),
                _ => None,
            })
            .collect()
    };
    let into_prime = landing(c1, c0_prime);
    let into_second = landing(c2, c0_second);
    let count =
        |xs: &[i64], pred: &dyn Fn(i64) -> bool| xs.iter().filter(|&&j| pred(j)).count() as i64;
    TableRow {
        l: theta_len as i64,
        p1: count(&into_prime, &|j| j < q0),
        r1: count(&into_prime, &|j| j >= q0),
        p2: count(&into_second, &|j| j < h0 + q0),
        r2: count(&into_second, &|j| j >= h0 + q0),
    }
}

/// Outcome of the constructive check of `sigma` on one tuple.
#[derive(Clone, Debug)]
pub struct SigmaReport {
    pub tuple: SixTuple,
    pub sigma: SixTuple,
    pub case: SigmaCase,
    pub expected: TableRow,
    pub measured: TableRow,
    /// Cancelling `Theta` gives a graph isomorphic to `Gamma(sigma(f))` up
    /// to an exchange of colours inside `{0,1}` or `{2,3}`.
    pub theta_gives_sigma: bool,
    /// As above with colours kept fixed.
    pub theta_gives_sigma_strict: bool,
    /// Cancelling `Theta'` gives the same graph up to isomorphism and an
    /// exchange of colours inside `{0,1}` or `{2,3}`.
    pub theta_prime_agrees: bool,
    /// As above with colours kept fixed.
    pub theta_prime_strict: bool,
    /// Cancelling `Gamma(h1)` gives back `Gamma(f)`.
    pub gamma_restores: bool,
    /// Cancelling `Gamma'(h1)` gives back `Gamma(f)`, up to an exchange of
    /// colours inside `{0,1}` or `{2,3}`.
    pub gamma_prime_restores: bool,
    /// As above with colours kept fixed.
    pub gamma_prime_strict: bool,
    /// `Gamma(h1)` is coherent with the orientations of `C0'` and `C0''`.
    pub gamma_coherent: bool,
    /// Tuples read directly off the graph obtained by cancelling `Theta`.
    pub read_back: Vec<SixTuple>,
}

impl SigmaReport {
    pub fn table_matches(&self) -> bool {
        self.expected == self.measured
    }

    pub fn passed(&self) -> bool {
        self.table_matches()
            && self.theta_gives_sigma
            && self.theta_prime_agrees
            && self.gamma_restores
            && self.gamma_prime_restores
            && self.gamma_coherent
            && self.read_back.contains(&self.sigma)
    }
}

impl fmt::Display for SigmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tuple\t{}", self.tuple)?;
        writeln!(f, "case\t{}", self.case)?;
        writeln!(f, "sigma\t{}", self.sigma)?;
        writeln!(f, "table_expected\t{}", self.expected)?;
        writeln!(f, "table_measured\t{}", self.measured)?;
        writeln!(f, "cancel_theta_is_sigma\t{}", self.theta_gives_sigma)?;
        writeln!(
            f,
            "cancel_theta_is_sigma_strict\t{}",
            self.theta_gives_sigma_strict
        )?;
        writeln!(f, "cancel_theta_prime_agrees\t{}", self.theta_prime_agrees)?;
        writeln!(f, "cancel_theta_prime_strict\t{}", self.theta_prime_strict)?;
        writeln!(f, "cancel_gamma_restores\t{}", self.gamma_restores)?;
        writeln!(
            f,
            "cancel_gamma_prime_restores\t{}",
            self.gamma_prime_restores
        )?;
        writeln!(f, "gamma_coherent\t{}", self.gamma_coherent)?;
        let read: Vec<String> = self.read_back.iter().map(ToString::to_string).collect();
        writeln!(f, "read_back\t{}", read.join(" "))?;
        write!(f, "result\t{}", if self.passed() { "pass" } else { "fail" })
    }
}

impl fmt::Display for SurgeryTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |vs: &[usize]| -> String {
            vs.iter()
                .map(|&v| self.graph.label(v).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "base\t{}", self.base)?;
        writeln!(f, "vertices\t{}", self.graph.vertex_count())?;
        writeln!(f, "C0'\t{}", names(&self.c0_prime))?;
        writeln!(f, "C0''\t{}", names(&self.c0_second))?;
        for (name, b) in [
            ("Gamma(h1)", &self.gamma),
            ("Gamma'(h1)", &self.gamma_prime),
            ("Theta", &self.theta),
            ("Theta'", &self.theta_prime),
        ] {
            writeln!(
                f,
                "{name}\tlength {}\t[{}] | [{}]",
                b.len(),
                names(&b.side_a),
                names(&b.side_b)
            )?;
        }
        write!(f, "measured\t{}", self.measured)
    }
}

/// Builds `G(f)`, cancels `Theta`, and compares with `Gamma(sigma(f))`.
pub fn verify_sigma_constructively(f: &SixTuple) -> Result<SigmaReport, SurgeryError> {
    let trace = build_gf(f)?;
    let case = sigma_case(f).expect("admissible tuples always fall in a case");
    let expected = table_row(f).expect("q0 != 0 here");
    let target = sigma_unchecked(f).expect("admissible tuples always fall in a case");
    let base = build_graph(f);

    let sigma_graph = build_graph(&target);
    let after_theta = cancel_block(&trace.graph, &trace.theta)?;
    let after_theta_prime = cancel_block(&trace.graph, &trace.theta_prime)?;
    let after_gamma = cancel_block(&trace.graph, &trace.gamma)?;
    let after_gamma_prime = cancel_block(&trace.graph, &trace.gamma_prime)?;

    Ok(SigmaReport {
        tuple: *f,
        sigma: target,
        case,
        expected,
        measured: trace.measured,
        theta_gives_sigma: cp_isomorphic_modulo(&after_theta, &sigma_graph, &PAIR_SWAPS).is_some(),
        theta_gives_sigma_strict: cp_isomorphic(&after_theta, &sigma_graph).is_some(),
        theta_prime_agrees: cp_isomorphic_modulo(&after_theta_prime, &after_theta, &PAIR_SWAPS)
            .is_some(),
        theta_prime_strict: cp_isomorphic(&after_theta_prime, &after_theta).is_some(),
        gamma_restores: cp_isomorphic(&after_gamma, &base).is_some(),
        gamma_prime_restores: cp_isomorphic_modulo(&after_gamma_prime, &base, &PAIR_SWAPS)
            .is_some(),
        gamma_prime_strict: cp_isomorphic(&after_gamma_prime, &base).is_some(),
        gamma_coherent: trace.gamma.coherence(&trace.orientation).is_some(),
        read_back: read_tuples(&after_theta),
    })
}
