use std::collections::HashMap;

use serde::Serialize;

use super::{ComplexError, Face, SimplicialComplex, VertexId};
use crate::util::UnionFind;

/// Outcome of the combinatorial closed 3-manifold checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// Every triangle lies in exactly two facets.
    pub ridges_in_two_facets: bool,
    pub connected: bool,
    /// Every vertex link is a closed connected surface with Euler characteristic 2.
    pub vertex_links_spheres: bool,
    pub euler_zero: bool,
    pub euler: i64,
    /// First few concrete failures, for diagnostics.
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.ridges_in_two_facets && self.connected && self.vertex_links_spheres && self.euler_zero
    }
}

const MAX_FAILURES: usize = 8;

impl SimplicialComplex {
    pub fn verify_closed_3_manifold(&self) -> Result<VerificationReport, ComplexError> {
        if self.dimension() != 3 {
            return Err(ComplexError::WrongDimension(self.dimension()));
        }
        let mut failures = Vec::new();
        let mut note = |msg: String| {
            if failures.len() < MAX_FAILURES {
                failures.push(msg);
            }
        };

        let ridges_in_two_facets = match ridge_degree_violation(self) {
            None => true,
            Some((ridge, count)) => {
                note(format!("triangle {ridge} lies in {count} facets"));
                false
            }
        };

        let mut uf = UnionFind::new(self.next_vertex_id() as usize);
        for f in self.facets() {
            let vs = f.vertices();
            for &v in &vs[1..] {
                uf.union(vs[0] as usize, v as usize);
            }
        }
        let mut roots = self.vertices().map(|v| uf.find(v as usize));
        let first = roots.next();
        let connected = roots.all(|r| Some(r) == first);
        if !connected {
            note("complex is disconnected".to_string());
        }

        let mut vertex_links_spheres = true;
        for v in self.vertices() {
            let link = self.link(&Face::from_sorted(&[v]))?;
            let ok = link.as_ref().is_some_and(is_combinatorial_2_sphere);
            if !ok {
                vertex_links_spheres = false;
                note(format!("link of vertex {v} is not a 2-sphere"));
            }
        }

        let euler = self.f_vector().euler;
        let euler_zero = euler == 0;
        if !euler_zero {
            note(format!("Euler characteristic is {euler}"));
        }

        Ok(VerificationReport {
            ridges_in_two_facets,
            connected,
            vertex_links_spheres,
            euler_zero,
            euler,
            failures,
        })
    }
}

fn ridge_degree_violation(x: &SimplicialComplex) -> Option<(Face, usize)> {
    let mut counts: HashMap<Face, usize> = HashMap::new();
    for f in x.facets() {
        let vs = f.vertices();
        for skip in 0..vs.len() {
            let ridge: Vec<VertexId> = vs
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            *counts.entry(Face::from_sorted(&ridge)).or_default() += 1;
        }
    }
    counts.into_iter().filter(|&(_, c)| c != 2).min()
}

/// Closed connected surface with Euler characteristic 2: every edge in two
/// triangles, every vertex link a single cycle, connected, V - E + F = 2.
pub(crate) fn is_combinatorial_2_sphere(x: &SimplicialComplex) -> bool {
    if x.dimension() != 2 {
        return false;
    }
    let mut edge_count: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    for f in x.facets() {
        let [a, b, c] = [f.vertices()[0], f.vertices()[1], f.vertices()[2]];
        for e in [(a, b), (a, c), (b, c)] {
            *edge_count.entry(e).or_default() += 1;
        }
    }
    if edge_count.values().any(|&c| c != 2) {
        return false;
    }
    let n = x.next_vertex_id() as usize;
    let mut uf = UnionFind::new(n);
    for &(a, b) in edge_count.keys() {
        uf.union(a as usize, b as usize);
    }
    let mut roots = x.vertices().map(|v| uf.find(v as usize));
    let first = roots.next();
    if !roots.all(|r| Some(r) == first) {
        return false;
    }
    // Each vertex link is a graph where every vertex has degree 2 (from the
    // edge condition); it must also be a single cycle.
    for v in x.vertices() {
        let mut local = UnionFind::new(n);
        let mut components = x.neighbors(v).len();
        for f in x.facets_containing(&[v]) {
            let others: Vec<VertexId> = f.vertices().iter().copied().filter(|&u| u != v).collect();
            if local.union(others[0] as usize, others[1] as usize) {
                components -= 1;
            }
        }
        if components != 1 {
            return false;
        }
    }
    let v = x.vertex_count() as i64;
    let e = edge_count.len() as i64;
    let f = x.facet_count() as i64;
    v - e + f == 2
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn simplex_boundary_is_manifold() {
        let r = simplex_boundary(5).verify_closed_3_manifold().unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn subdivision_keeps_manifold() {
        let (y, _) = simplex_boundary(5).subdivide_edge(2, 4).unwrap();
        assert!(y.verify_closed_3_manifold().unwrap().passed());
    }

    #[test]
    fn disjoint_union_fails_connectivity() {
        let a = simplex_boundary(5);
        let facets: Vec<Vec<VertexId>> = a
            .facets()
            .iter()
            .flat_map(|f| {
                let f1 = f.vertices().to_vec();
                let f2 = f.vertices().iter().map(|v| v + 5).collect();
                [f1, f2]
            })
            .collect();
        let x = SimplicialComplex::from_facets(facets, None).unwrap();
        let r = x.verify_closed_3_manifold().unwrap();
        assert!(!r.connected);
        assert!(r.ridges_in_two_facets);
        assert!(!r.passed());
    }

    #[test]
    fn wrong_dimension() {
        assert_eq!(
            octahedron().verify_closed_3_manifold(),
            Err(ComplexError::WrongDimension(2))
        );
    }

    #[test]
    fn octahedron_is_2_sphere() {
        assert!(is_combinatorial_2_sphere(&octahedron()));
        // A torus-like pinched surface fails: two tetrahedron boundaries sharing a vertex.
        let facets = vec![
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
            vec![0, 4, 5],
            vec![0, 4, 6],
            vec![0, 5, 6],
            vec![4, 5, 6],
        ];
        let pinched = SimplicialComplex::from_facets(facets, None).unwrap();
        assert!(!is_combinatorial_2_sphere(&pinched));
    }
}
