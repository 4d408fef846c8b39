//! Toolkit for G-graphs: multigraphs built from the right cosets of cyclic
//! subgroups of a finite group.
//!
//! * [`algebra`]: finite groups, permutations, cosets and spec parsing.
//! * [`multigraph`]: labeled multigraphs with loops, isomorphism and export.
//! * [`ggraph`]: construction of `Φ(G,S)` / `Ψ(G,S)`, shifts, structure checks,
//!   components and complete bipartite realizations.
//! * [`recognition`]: characterisation checks and reconstruction of `(H, S)`.
//! * [`incidence`]: incidence (Levi) graphs and the bipartite incidence tests.
//! * [`ikn`]: certificates deciding whether the incidence graph of `K_n` is a G-graph.

pub mod algebra;
pub mod arith;
pub mod multigraph;
pub mod ggraph;
pub mod recognition;
pub mod incidence;
pub mod ikn;
