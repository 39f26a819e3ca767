//! Flag triangulations of the 3-sphere built by edge subdivision.
//!
//! The crate starts from the boundary of the cyclic 4-polytope, embeds a
//! triangle-free graph in its (complete) 1-skeleton and subdivides edges that
//! are not in the graph until the complex is flag. Around that pipeline sit the
//! pieces needed to check the result: minimal nonface enumeration, a
//! combinatorial 3-manifold verifier, exact chromatic and independence solvers,
//! a link-peeling coloring for flag 3-manifolds and a random clique complex
//! experiment.

pub mod cli;
pub mod coloring;
pub mod complex;
pub mod cyclic;
pub mod flagify;
pub mod graph;
pub mod random_clique;

mod util;

pub use complex::{Face, SimplicialComplex, SubdivisionTrace, VertexId, VertexTag};
pub use graph::{Coloring, Graph};
