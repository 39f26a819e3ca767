//! Boundary of the cyclic 4-polytope.
//!
//! In dimension four Gale's evenness condition says the facets are exactly the
//! unions of two disjoint "dominoes" `{x, x+1}`, `{y, y+1}` on the n-cycle.
//! Vertices are 0-indexed here; vertex `i` sits at moment-curve position `i + 1`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::complex::{Face, SimplicialComplex, VertexId, VertexTag};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclicError {
    #[error("TooSmall: the cyclic 4-polytope needs at least 6 vertices, got {0}")]
    TooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSphere {
    n: usize,
    complex: SimplicialComplex,
}

impl CyclicSphere {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn into_complex(self) -> SimplicialComplex {
        self.complex
    }

    /// The independent 3-sets of the n-cycle. These are the empty triangles
    /// of the boundary complex.
    pub fn empty_triangles(&self) -> BTreeSet<Face> {
        let n = self.n as VertexId;
        let adjacent = |a: VertexId, b: VertexId| b - a == 1 || (a == 0 && b == n - 1);
        let mut out = BTreeSet::new();
        for a in 0..n {
            for b in a + 2..n {
                for c in b + 2..n {
                    if !adjacent(a, c) {
                        out.insert(Face::from_sorted(&[a, b, c]));
                    }
                }
            }
        }
        out
    }
}

pub fn cyclic_4_sphere(n: usize) -> Result<CyclicSphere, CyclicError> {
    if n < 6 {
        return Err(CyclicError::TooSmall(n));
    }
    let m = n as VertexId;
    let mut facets = Vec::with_capacity(n * (n - 3) / 2);
    for x in 0..m {
        for y in x + 2..m {
            // domino y = {y, y+1} wraps onto x when y = n-1 and x = 0
            if x == 0 && y == m - 1 {
                continue;
            }
            facets.push(vec![x, x + 1, y, (y + 1) % m]);
        }
    }
    let tags = (0..m)
        .map(|v| (v, VertexTag::Original { position: v + 1 }))
        .collect();
    let complex = SimplicialComplex::from_facets(facets, Some(&tags))
        .expect("domino facets form a pure antichain");
    Ok(CyclicSphere { n, complex })
}

/// Renders a face with 1-based moment-curve positions.
pub fn one_indexed(face: &Face) -> Vec<u32> {
    face.vertices().iter().map(|v| v + 1).collect()
}
