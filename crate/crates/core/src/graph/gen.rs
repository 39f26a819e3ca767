use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::complex::VertexId;
use crate::util::BitSet;

/// Mycielski's construction: vertices `0..n` copy `g`, `n + i` is a shadow of
/// `i` joined to the neighbours of `i`, and `2n` is joined to every shadow.
pub fn mycielskian(g: &Graph) -> Graph {
    let n = g.vertex_count() as VertexId;
    let mut h = Graph::empty(2 * n as usize + 1);
    for (a, b) in g.edges() {
        h.add_edge(a, b).expect("in range");
        h.add_edge(a, n + b).expect("in range");
        h.add_edge(b, n + a).expect("in range");
    }
    for i in 0..n {
        h.add_edge(n + i, 2 * n).expect("in range");
    }
    h
}

/// The Mycielski graph with chromatic number `k` (`k >= 2`): `K2`, `C5`, the
/// Grötzsch graph, then 23, 47, ... vertices.
pub fn mycielski_graph(k: usize) -> Graph {
    assert!(k >= 2, "Mycielski graphs start at K2");
    let mut g = Graph::complete(2);
    for _ in 2..k {
        g = mycielskian(&g);
    }
    g
}

/// Visits all vertex pairs in a uniformly random order and keeps each one that
/// closes no triangle. The result is a maximal triangle-free graph.
pub fn triangle_free_process(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n32 = n as VertexId;
    let mut pairs: Vec<(VertexId, VertexId)> = (0..n32)
        .flat_map(|a| (a + 1..n32).map(move |b| (a, b)))
        .collect();
    pairs.shuffle(&mut rng);
    let mut rows: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
    let mut g = Graph::empty(n);
    for (a, b) in pairs {
        if rows[a as usize].intersection(&rows[b as usize]).is_empty() {
            rows[a as usize].insert(b as usize);
            rows[b as usize].insert(a as usize);
            g.add_edge(a, b).expect("in range");
        }
    }
    g
}
