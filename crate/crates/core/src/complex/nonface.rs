//! Minimal nonface enumeration.
//!
//! A minimal nonface of size at least three is a clique of the 1-skeleton that
//! is not a face while all of its facets-of-codimension-one are. The walk below
//! grows faces one vertex at a time along common neighbourhoods, so it only
//! ever touches faces plus one layer of clique nonfaces above them. Size-two
//! minimal nonfaces are exactly the non-adjacent vertex pairs.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use super::{Face, SimplicialComplex, VertexId};

impl SimplicialComplex {
    /// All inclusion-minimal nonfaces with at most `max_size` vertices.
    pub fn minimal_nonfaces(&self, max_size: usize) -> BTreeSet<Face> {
        self.minimal_nonfaces_in_range(2, max_size)
    }

    /// Minimal nonfaces whose cardinality lies in `min_size..=max_size`.
    pub fn minimal_nonfaces_in_range(&self, min_size: usize, max_size: usize) -> BTreeSet<Face> {
        let mut out = BTreeSet::new();
        let _ = self.visit_minimal_nonfaces(min_size, max_size, &mut |mnf| {
            out.insert(Face::from_sorted(mnf));
            ControlFlow::<()>::Continue(())
        });
        out
    }

    /// Empty triangles: minimal nonfaces of size three.
    pub fn empty_triangles(&self) -> BTreeSet<Face> {
        self.minimal_nonfaces_in_range(3, 3)
    }

    /// Empty triangles through the vertex `w`.
    pub fn empty_triangles_containing(&self, w: VertexId) -> BTreeSet<Face> {
        let nbrs = self.neighbors(w);
        let mut out = BTreeSet::new();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if !self.are_adjacent(a, b) {
                    continue;
                }
                let mut tri = [w, a, b];
                tri.sort_unstable();
                if !self.contains_simplex(&tri) {
                    out.insert(Face::from_sorted(&tri));
                }
            }
        }
        out
    }

    /// True iff every clique of the 1-skeleton is a face.
    pub fn is_flag(&self) -> bool {
        let top = self.dimension() + 2;
        self.visit_minimal_nonfaces(3, top, &mut |_| ControlFlow::Break(()))
            .is_continue()
    }

    pub(crate) fn visit_minimal_nonfaces<B>(
        &self,
        min_size: usize,
        max_size: usize,
        visit: &mut impl FnMut(&[VertexId]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let min_size = min_size.max(2);
        if max_size < min_size {
            return ControlFlow::Continue(());
        }
        let vertices: Vec<VertexId> = self.vertices().collect();
        if min_size == 2 {
            for (i, &a) in vertices.iter().enumerate() {
                for &b in &vertices[i + 1..] {
                    if !self.are_adjacent(a, b) {
                        visit(&[a, b])?;
                    }
                }
            }
        }
        if max_size < 3 {
            return ControlFlow::Continue(());
        }
        let mut current = Vec::with_capacity(max_size);
        for &v in &vertices {
            let candidates: Vec<VertexId> = self
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| u > v)
                .collect();
            current.push(v);
            self.extend_face(&mut current, &candidates, min_size, max_size, visit)?;
            current.pop();
        }
        ControlFlow::Continue(())
    }

    /// `current` is a face; try every clique extension by one candidate.
    fn extend_face<B>(
        &self,
        current: &mut Vec<VertexId>,
        candidates: &[VertexId],
        min_size: usize,
        max_size: usize,
        visit: &mut impl FnMut(&[VertexId]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        for (i, &c) in candidates.iter().enumerate() {
            current.push(c);
            if self.contains_simplex(current) {
                if current.len() < max_size {
                    let next: Vec<VertexId> = candidates[i + 1..]
                        .iter()
                        .copied()
                        .filter(|&x| self.are_adjacent(c, x))
                        .collect();
                    if !next.is_empty() {
                        self.extend_face(current, &next, min_size, max_size, visit)?;
                    }
                }
            } else if current.len() >= min_size && self.boundary_present(current) {
                visit(current)?;
            }
            current.pop();
        }
        ControlFlow::Continue(())
    }

    /// Are all codimension-one subsets of `simplex` faces? The subset without
    /// the last vertex is known to be a face already.
    fn boundary_present(&self, simplex: &[VertexId]) -> bool {
        let k = simplex.len();
        let mut sub = Vec::with_capacity(k - 1);
        (0..k - 1).all(|skip| {
            sub.clear();
            sub.extend(
                simplex
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v),
            );
            self.contains_simplex(&sub)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    fn face(vs: &[VertexId]) -> Face {
        Face::new(vs.iter().copied()).unwrap()
    }

    /// Every subset of size 2..=max that is a nonface with all proper subsets faces.
    fn brute_force(x: &SimplicialComplex, max: usize) -> BTreeSet<Face> {
        let vs: Vec<VertexId> = x.vertices().collect();
        let n = vs.len();
        let mut out = BTreeSet::new();
        for mask in 1u64..(1 << n) {
            let k = mask.count_ones() as usize;
            if !(2..=max).contains(&k) {
                continue;
            }
            let sub: Vec<VertexId> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| vs[i])
                .collect();
            let is_face = |s: &[VertexId]| {
                x.facets()
                    .iter()
                    .any(|f| super::super::is_sorted_subset(s, f.vertices()))
            };
            if is_face(&sub) {
                continue;
            }
            let minimal = (0..k).all(|skip| {
                let s: Vec<VertexId> = sub
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                is_face(&s)
            });
            if minimal {
                out.insert(Face::new(sub).unwrap());
            }
        }
        out
    }

    #[test]
    fn simplex_boundary_single_nonface() {
        let x = simplex_boundary(5);
        let mnf = x.minimal_nonfaces(5);
        assert_eq!(
            mnf.into_iter().collect::<Vec<_>>(),
            vec![face(&[0, 1, 2, 3, 4])]
        );
        assert!(x.minimal_nonfaces(4).is_empty());
    }

    #[test]
    fn triangle_is_not_flag_octahedron_is() {
        assert!(!simplex_boundary(3).is_flag());
        assert!(octahedron().is_flag());
        let mnf = octahedron().minimal_nonfaces(4);
        assert_eq!(mnf.len(), 3);
        assert!(mnf.iter().all(|f| f.len() == 2));
    }

    #[test]
    fn subdivided_simplex_boundary_nonfaces() {
        let x = simplex_boundary(5);
        let (y, w) = x.subdivide_edge(0, 1).unwrap();
        let got = y.minimal_nonfaces(4);
        let expected: BTreeSet<Face> = [face(&[0, 1]), face(&[2, 3, 4, w])].into_iter().collect();
        assert_eq!(got, expected);
        assert_eq!(got, brute_force(&y, 4));
    }

    #[test]
    fn agrees_with_brute_force_on_small_complexes() {
        let mut x = simplex_boundary(5);
        for (a, b) in [(0, 1), (2, 5), (3, 4), (0, 6)] {
            x = x.subdivide_edge(a, b).unwrap().0;
            assert_eq!(x.minimal_nonfaces(5), brute_force(&x, 5));
        }
    }

    #[test]
    fn empty_triangles_through_vertex() {
        let x = simplex_boundary(4); // boundary of a tetrahedron: flag-free, no empty triangles
        assert!(x.empty_triangles().is_empty());
        let (y, w) = simplex_boundary(5).subdivide_edge(0, 1).unwrap();
        assert!(y.empty_triangles_containing(w).is_empty());
    }
}
