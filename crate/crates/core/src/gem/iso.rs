use super::{ColouredGraph, COLOURS};

/// Colour-preserving isomorphism between two connected graphs.
///
/// Every vertex has exactly one edge per colour, so once the image of one
/// vertex is fixed the rest of the map is forced. Vertex 0 of `g1` is tried
/// against each vertex of `g2` in increasing order; the first consistent
/// extension is returned as `phi` with `phi[v]` the image of `v`.
pub fn cp_isomorphic(g1: &ColouredGraph, g2: &ColouredGraph) -> Option<Vec<usize>> {
    let n = g1.vertex_count();
    if n != g2.vertex_count() {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut stack = Vec::with_capacity(n);
    'anchor: for target in 0..n {
        phi.fill(usize::MAX);
        used.fill(false);
        stack.clear();
        phi[0] = target;
        used[target] = true;
        stack.push(0);
        let mut mapped = 1;
        while let Some(v) = stack.pop() {
            let fv = phi[v];
            for c in 0..COLOURS {
                let a = g1.partner(c, v);
                let b = g2.partner(c, fv);
                if phi[a] == usize::MAX {
                    if used[b] {
                        continue 'anchor;
                    }
                    phi[a] = b;
                    used[b] = true;
                    mapped += 1;
                    stack.push(a);
                } else if phi[a] != b {
                    continue 'anchor;
                }
            }
        }
        if mapped == n {
            return Some(phi);
        }
        // g1 is disconnected: propagation cannot reach every vertex
        return None;
    }
    None
}

/// Colour permutations fixing the pairs `{0,1}` and `{2,3}`.
pub const PAIR_SWAPS: [[usize; COLOURS]; 4] =
    [[0, 1, 2, 3], [1, 0, 2, 3], [0, 1, 3, 2], [1, 0, 3, 2]];

/// First `perm` in `perms` for which `g1` is colour-preservingly isomorphic
/// to `g2` recoloured by `perm`, together with the vertex map.
pub fn cp_isomorphic_modulo(
    g1: &ColouredGraph,
    g2: &ColouredGraph,
    perms: &[[usize; COLOURS]],
) -> Option<([usize; COLOURS], Vec<usize>)> {
    perms
        .iter()
        .find_map(|&p| cp_isomorphic(g1, &g2.recoloured(p)).map(|phi| (p, phi)))
}
