//! Genus-two 3-manifolds through 2-symmetric crystallizations.
//!
//! An admissible 6-tuple `(h0,h1,h2;q0,q1,q2)` determines a 4-coloured graph
//! [`build_graph`] representing a closed orientable 3-manifold of Heegaard
//! genus at most two. This crate builds those graphs, acts on tuples by the
//! dihedral group `<psi1,psi2,psi3>` and the 2-symmetric move `sigma`, checks
//! `sigma` against an explicit block surgery, classifies traps, minimal
//! tuples and roots, and computes first homology as an invariant oracle.
//!
//! ```
//! use genus2::{build_graph, h1, moves, SixTuple};
//!
//! let f: SixTuple = "(1,3,3;2,2,2)".parse().unwrap();
//! let g = moves::sigma(&f).unwrap();
//! assert_eq!(g.to_string(), "(3,1,5;4,2,2)");
//! assert_eq!(h1(&build_graph(&f)).unwrap(), h1(&build_graph(&g)).unwrap());
//! ```

#![allow(clippy::needless_range_loop)]

pub mod catalogue;
pub mod gem;
pub mod homology;
pub mod moves;
pub mod orbits;
pub mod suites;
pub mod tuple;

pub use gem::{ColourSet, ColouredGraph, VertexLabel};
pub use homology::{h1, AbelianGroupSignature};
pub use tuple::{build_graph, is_admissible, SixTuple, TupleError};
