use super::{weld_out, ColourSet, ColouredGraph, GraphError, PartialGraph, VertexLabel, COLOURS};

/// Two vertices joined by `colours` (1 to 3 of them) that lie in distinct
/// residues of the complementary colours.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dipole {
    pub x: usize,
    pub y: usize,
    pub colours: ColourSet,
}

impl Dipole {
    /// Type of the dipole: the number of joining edges.
    pub fn kind(&self) -> usize {
        self.colours.len()
    }
}

/// Validates the pair `(x, y)` as a dipole of `g`.
pub fn check_dipole(g: &ColouredGraph, x: usize, y: usize) -> Result<Dipole, GraphError> {
    let n = g.vertex_count();
    for v in [x, y] {
        if v >= n {
            return Err(GraphError::OutOfRange { vertex: v, n });
        }
    }
    let colours = g.joining_colours(x, y);
    if colours.is_empty() {
        return Err(GraphError::InvalidDipole(format!(
            "{x} and {y} are not adjacent"
        )));
    }
    if colours.len() == COLOURS {
        return Err(GraphError::InvalidDipole(format!(
            "{x} and {y} are joined by every colour"
        )));
    }
    let rest = g.residues(colours.complement());
    if rest.class_of[x] == rest.class_of[y] {
        return Err(GraphError::InvalidDipole(format!(
            "{x} and {y} share a {} residue",
            colours.complement()
        )));
    }
    Ok(Dipole { x, y, colours })
}

/// All dipoles of `g`, ordered by `(x, y)` with `x < y`.
pub fn find_dipoles(g: &ColouredGraph) -> Vec<Dipole> {
    let mut pairs: Vec<(usize, usize)> = (0..COLOURS).flat_map(|c| g.edges(c)).collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
        .into_iter()
        .filter_map(|(x, y)| check_dipole(g, x, y).ok())
        .collect()
}

/// Deletes the dipole and joins, for every colour not between `x` and `y`,
/// the former partners of `x` and `y`.
pub fn cancel_dipole(g: &ColouredGraph, d: &Dipole) -> Result<ColouredGraph, GraphError> {
    let checked = check_dipole(g, d.x, d.y)?;
    if checked.colours != d.colours {
        return Err(GraphError::InvalidDipole(format!(
            "joining colours are {}, not {}",
            checked.colours, d.colours
        )));
    }
    let mut gone = vec![false; g.vertex_count()];
    gone[d.x] = true;
    gone[d.y] = true;
    let (x, y) = (d.x, d.y);
    weld_out(g, &gone, |v| if v == x { y } else { x })
}

/// Inserts a new dipole on `colours` next to vertex `v`: for every other
/// colour `c`, the `c`-edge at `v` is split so that `v` meets the new vertex
/// `X` and its old partner meets the new vertex `Y`.
///
/// Returns the enlarged graph and the inserted dipole; cancelling it gives
/// back `g`.
pub fn insert_dipole(
    g: &ColouredGraph,
    v: usize,
    colours: ColourSet,
) -> Result<(ColouredGraph, Dipole), GraphError> {
    if colours.is_empty() || colours.len() == COLOURS {
        return Err(GraphError::InvalidDipole(format!(
            "cannot insert a dipole on {colours}"
        )));
    }
    let mut pg = PartialGraph::from(g);
    let x = pg.add_vertex(VertexLabel::Tag(format!("dX{}", g.vertex_count())));
    let y = pg.add_vertex(VertexLabel::Tag(format!("dY{}", g.vertex_count())));
    for c in 0..COLOURS {
        if colours.contains(c) {
            pg.join(c, x, y)?;
        } else {
            let u = pg.detach(c, v)?;
            pg.join(c, v, x)?;
            pg.join(c, u, y)?;
        }
    }
    let h = pg.finish()?;
    Ok((h, Dipole { x, y, colours }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gem::cp_isomorphic;
    use crate::tuple::{build_graph, SixTuple};

    fn gamma(s: &str) -> ColouredGraph {
        build_graph(&s.parse::<SixTuple>().unwrap())
    }

    #[test]
    fn insert_then_cancel_restores_graph() {
        let g = gamma("(1,1,3;2,0,2)");
        for v in [0, 3, 7] {
            for cs in [[0].as_slice(), &[1, 3], &[0, 2, 3]] {
                let colours = ColourSet::of(cs);
                let (h, d) = insert_dipole(&g, v, colours).unwrap();
                assert_eq!(h.vertex_count(), g.vertex_count() + 2);
                assert_eq!(d.kind(), cs.len());
                assert!(find_dipoles(&h).contains(&d));
                let back = cancel_dipole(&h, &d).unwrap();
                assert_eq!(back.vertex_count(), g.vertex_count());
                assert!(cp_isomorphic(&back, &g).is_some());
                assert!(back.is_gem());
            }
        }
    }

    #[test]
    fn contracted_graphs_have_no_type_one_dipoles() {
        for s in ["(1,1,1;0,0,0)", "(1,1,3;2,0,2)", "(2,2,2;1,1,3)"] {
            assert!(find_dipoles(&gamma(s)).iter().all(|d| d.kind() != 1), "{s}");
        }
        // the doubled {0,1} and {2,3} edges of the 6-vertex sphere graph are
        // type-2 dipoles
        let s3 = find_dipoles(&gamma("(1,1,1;0,0,0)"));
        assert_eq!(s3.len(), 6);
        assert!(s3
            .iter()
            .all(|d| d.colours == ColourSet::of(&[0, 1]) || d.colours == ColourSet::of(&[2, 3])));
    }

    #[test]
    fn rejects_invalid_pairs() {
        let g = gamma("(1,1,1;0,0,0)");
        let a = 0;
        // the doubled 2/3 edge at vertex 0 is a genuine type-2 dipole
        let b = g.partner(2, a);
        assert_eq!(
            check_dipole(&g, a, b).unwrap().colours,
            ColourSet::of(&[2, 3])
        );
        let far = (0..g.vertex_count())
            .find(|&v| v != a && g.joining_colours(a, v).is_empty())
            .unwrap();
        assert!(check_dipole(&g, a, far).is_err());
        let sphere = ColouredGraph::from_involutions(std::array::from_fn(|_| vec![1, 0])).unwrap();
        assert!(check_dipole(&sphere, 0, 1).is_err());
    }

    #[test]
    fn cancel_rejects_colour_mismatch() {
        let g = gamma("(1,1,3;2,0,2)");
        let (h, d) = insert_dipole(&g, 2, ColourSet::of(&[1])).unwrap();
        let wrong = Dipole {
            colours: ColourSet::of(&[1, 2]),
            ..d
        };
        assert!(cancel_dipole(&h, &wrong).is_err());
    }
}
