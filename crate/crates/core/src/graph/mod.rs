//! Simple undirected graphs, colorings, generators and exact solvers.

mod gen;
mod solve;

pub use gen::{mycielski_graph, mycielskian, triangle_free_process};
pub use solve::{
    chromatic_number_exact, find_k_coloring, greedy_independent_set, max_independent_set_exact,
    ChromaticOutcome, SolverError,
};

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("edge {{{0}, {1}}} listed twice")]
    DuplicateEdge(VertexId, VertexId),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Simple undirected graph on vertices `0..vertex_count()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    /// Sorted neighbour lists.
    adj: Vec<Vec<VertexId>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for (a, b) in edges {
            for v in [a, b] {
                if v as usize >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if !g.add_edge(a, b)? {
                return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)));
            }
        }
        Ok(g)
    }

    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<VertexId>>) -> Self {
        Self { adj }
    }

    /// Returns whether the edge was new.
    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<bool, GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        let n = self.adj.len();
        for v in [a, b] {
            if v as usize >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
        }
        match self.adj[a as usize].binary_search(&b) {
            Ok(_) => Ok(false),
            Err(i) => {
                self.adj[a as usize].insert(i, b);
                let j = self.adj[b as usize].binary_search(&a).unwrap_err();
                self.adj[b as usize].insert(j, a);
                Ok(true)
            }
        }
    }

    pub fn cycle(n: usize) -> Self {
        let n32 = n as VertexId;
        Self::from_edges(n, (0..n32).map(|i| (i, (i + 1) % n32))).expect("cycle needs n >= 3")
    }

    pub fn complete(n: usize) -> Self {
        let n32 = n as VertexId;
        Self::from_edges(n, (0..n32).flat_map(|a| (a + 1..n32).map(move |b| (a, b))))
            .expect("valid edges")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adj
            .get(a as usize)
            .is_some_and(|n| n.binary_search(&b).is_ok())
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, nbrs)| {
            let a = a as VertexId;
            nbrs.iter().filter(move |&&b| b > a).map(move |&b| (a, b))
        })
    }

    /// Subgraph induced on `vertices`, relabelled `0..k` in the given order.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> Graph {
        let mut index = vec![u32::MAX; self.adj.len()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v as usize] = i as u32;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut nbrs: Vec<VertexId> = self.adj[v as usize]
                    .iter()
                    .map(|&u| index[u as usize])
                    .filter(|&i| i != u32::MAX)
                    .collect();
                nbrs.sort_unstable();
                nbrs
            })
            .collect();
        Graph { adj }
    }

    /// Same vertex set with every edge incident to a vertex in `removed` deleted.
    pub fn without_vertices(&self, removed: &BTreeSet<VertexId>) -> Graph {
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, nbrs)| {
                if removed.contains(&(v as VertexId)) {
                    Vec::new()
                } else {
                    nbrs.iter()
                        .copied()
                        .filter(|u| !removed.contains(u))
                        .collect()
                }
            })
            .collect();
        Graph { adj }
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    pub fn find_triangle(&self) -> Option<[VertexId; 3]> {
        for (a, b) in self.edges() {
            let (na, nb) = (&self.adj[a as usize], &self.adj[b as usize]);
            let (mut i, mut j) = (0, 0);
            while i < na.len() && j < nb.len() {
                match na[i].cmp(&nb[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => return Some([a, b, na[i]]),
                }
            }
        }
        None
    }

    /// Is every edge of `self` an edge of `other`?
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.edges().all(|(a, b)| other.has_edge(a, b))
    }

    pub fn is_independent(&self, set: &[VertexId]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| !self.has_edge(a, b)))
    }

    /// Independent and no vertex outside can be added.
    pub fn is_maximal_independent(&self, set: &[VertexId]) -> bool {
        if !self.is_independent(set) {
            return false;
        }
        let mut covered = vec![false; self.adj.len()];
        for &v in set {
            covered[v as usize] = true;
            for &u in &self.adj[v as usize] {
                covered[u as usize] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }

    /// `n m` header followed by one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.vertex_count(), self.edge_count());
        for (a, b) in self.edges() {
            let _ = writeln!(s, "{a} {b}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse_pair = |line: usize, l: &str| -> Result<(u32, u32), GraphError> {
            let err = || GraphError::Parse {
                line,
                message: format!("expected two non-negative integers, got `{l}`"),
            };
            let mut it = l.split_whitespace().map(|t| t.parse::<u32>());
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
                _ => Err(err()),
            }
        };
        let (hl, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        let (n, m) = parse_pair(hl, header)?;
        let mut edges = Vec::with_capacity(m as usize);
        for (line, l) in lines {
            edges.push(parse_pair(line, l)?);
        }
        if edges.len() != m as usize {
            return Err(GraphError::Parse {
                line: hl,
                message: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Self::from_edges(n as usize, edges)
    }
}

/// A proper vertex coloring with colors `0..color_count()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u32>,
    color_count: usize,
}

impl Coloring {
    /// Relabels the used colors to `0..k` preserving their order.
    pub fn new(raw: Vec<u32>) -> Self {
        let used: BTreeSet<u32> = raw.iter().copied().collect();
        let remap: std::collections::HashMap<u32, u32> = used
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as u32))
            .collect();
        let colors = raw.iter().map(|c| remap[c]).collect();
        Self {
            colors,
            color_count: used.len(),
        }
    }

    pub fn color(&self, v: VertexId) -> u32 {
        self.colors[v as usize]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color_count(&self) -> usize {
        self.color_count
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.vertex_count()
            && g.edges()
                .all(|(a, b)| self.colors[a as usize] != self.colors[b as usize])
    }

    /// One `vertexId colorId` line per vertex.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, c) in self.colors.iter().enumerate() {
            let _ = writeln!(s, "{v} {c}");
        }
        s
    }
}
