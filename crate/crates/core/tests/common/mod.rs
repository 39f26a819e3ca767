//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use flagsphere::cyclic::cyclic_4_sphere;
use flagsphere::{Face, Graph, SimplicialComplex, VertexId};
use rand::Rng;

/// Every vertex subset of size `2..=max_size` that is not a face while all of
/// its codimension-one subsets are.
pub fn brute_minimal_nonfaces(x: &SimplicialComplex, max_size: usize) -> BTreeSet<Face> {
    let verts: Vec<VertexId> = x.vertices().collect();
    let mut out = BTreeSet::new();
    for size in 2..=max_size {
        for subset in subsets(&verts, size) {
            if x.contains_simplex(&subset) {
                continue;
            }
            let minimal = (0..size).all(|skip| {
                let rest: Vec<VertexId> = subset
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                x.contains_simplex(&rest)
            });
            if minimal {
                out.insert(Face::new(subset).unwrap());
            }
        }
    }
    out
}

pub fn subsets(items: &[VertexId], size: usize) -> Vec<Vec<VertexId>> {
    fn go(
        items: &[VertexId],
        size: usize,
        start: usize,
        cur: &mut Vec<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Tries all `k^n` assignments.
pub fn brute_k_colorable(g: &Graph, k: usize) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut colors = vec![0usize; n];
    loop {
        if g.edges()
            .all(|(a, b)| colors[a as usize] != colors[b as usize])
        {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            colors[i] += 1;
            if colors[i] < k {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

pub fn brute_chromatic_number(g: &Graph) -> usize {
    (0..=g.vertex_count())
        .find(|&k| brute_k_colorable(g, k))
        .unwrap()
}

/// Independence number by scanning all subsets (n <= 20).
pub fn brute_independence_number(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20);
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        if g.edges()
            .all(|(a, b)| mask >> a & 1 == 0 || mask >> b & 1 == 0)
        {
            best = size;
        }
    }
    best
}

/// All cliques with `size` vertices.
pub fn brute_cliques(g: &Graph, size: usize) -> Vec<Vec<VertexId>> {
    let verts: Vec<VertexId> = (0..g.vertex_count() as VertexId).collect();
    subsets(&verts, size)
        .into_iter()
        .filter(|s| {
            s.iter()
                .enumerate()
                .all(|(i, &a)| s[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        })
        .collect()
}

pub fn induced_cycle_free(g: &Graph, vertices: &[VertexId]) -> bool {
    let h = g.induced_subgraph(vertices);
    // forest iff edges + components == vertices
    let n = h.vertex_count();
    let mut seen = vec![false; n];
    let mut components = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        components += 1;
        seen[s] = true;
        let mut stack = vec![s as VertexId];
        while let Some(v) = stack.pop() {
            for &u in h.neighbors(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    stack.push(u);
                }
            }
        }
    }
    h.edge_count() + components == n
}

/// A cyclic sphere on `n` vertices after `steps` uniformly random edge subdivisions.
pub fn random_subdivided_sphere(rng: &mut impl Rng, n: usize, steps: usize) -> SimplicialComplex {
    let mut x = cyclic_4_sphere(n).unwrap().into_complex();
    for _ in 0..steps {
        let edges: Vec<_> = x.edges().collect();
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        x = x.subdivide_edge(u, v).unwrap().0;
    }
    x
}

/// New minimal nonfaces (other than `{u, v}`) after subdividing `{u, v}`,
/// and how many of them break each clause of the nonface law.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct DeltaCheck {
    pub new_nonfaces: usize,
    pub not_through_w: usize,
    pub too_large: usize,
    /// Both `tau + u` and `tau + v` are faces of the old complex.
    pub both_sides_faces: usize,
    /// `tau + u + v` is a face of the old complex.
    pub union_is_face: usize,
}

impl DeltaCheck {
    pub fn add(&mut self, other: DeltaCheck) {
        self.new_nonfaces += other.new_nonfaces;
        self.not_through_w += other.not_through_w;
        self.too_large += other.too_large;
        self.both_sides_faces += other.both_sides_faces;
        self.union_is_face += other.union_is_face;
    }
}

pub fn check_subdivision_delta(x: &SimplicialComplex, u: VertexId, v: VertexId) -> DeltaCheck {
    let max_size = x.dimension() + 2;
    let before = x.minimal_nonfaces(max_size);
    let k = before.iter().map(Face::len).max().unwrap_or(0);
    let (y, w) = x.subdivide_edge(u, v).unwrap();
    let mut check = DeltaCheck::default();
    for f in y.minimal_nonfaces(max_size).difference(&before) {
        if f.vertices() == [u.min(v), u.max(v)] {
            continue;
        }
        check.new_nonfaces += 1;
        if !f.contains(w) {
            check.not_through_w += 1;
            continue;
        }
        if f.len() > k {
            check.too_large += 1;
        }
        let tau: Vec<VertexId> = f.vertices().iter().copied().filter(|&t| t != w).collect();
        let with = |extra: &[VertexId]| {
            let mut t = tau.clone();
            t.extend_from_slice(extra);
            t.sort_unstable();
            x.contains_simplex(&t)
        };
        if with(&[u]) && with(&[v]) {
            check.both_sides_faces += 1;
        }
        if with(&[u, v]) {
            check.union_is_face += 1;
        }
    }
    check
}
