//! Random clique complexes `X(n, n^-alpha)` and the forest-link experiment.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::VertexId;
use crate::graph::{greedy_independent_set, max_independent_set_exact, Graph};
use crate::util::UnionFind;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RandomCliqueError {
    #[error(
        "InvalidAlpha: alpha = {alpha} must lie strictly between 1/(d-1) and 1/(d-2) for d = {d}"
    )]
    InvalidAlpha { alpha: f64, d: usize },
    #[error("InvalidDimension: d must be at least 3, got {0}")]
    InvalidDimension(usize),
    #[error("invalid experiment config: {0}")]
    Config(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomCliqueParams {
    pub n: usize,
    pub alpha: f64,
    #[serde(default = "default_d")]
    pub d: usize,
    pub seed: u64,
}

fn default_d() -> usize {
    3
}

impl RandomCliqueParams {
    pub fn validate(&self) -> Result<(), RandomCliqueError> {
        if self.d < 3 {
            return Err(RandomCliqueError::InvalidDimension(self.d));
        }
        let lo = 1.0 / (self.d - 1) as f64;
        let hi = 1.0 / (self.d - 2) as f64;
        if !(self.alpha > lo && self.alpha < hi) {
            return Err(RandomCliqueError::InvalidAlpha {
                alpha: self.alpha,
                d: self.d,
            });
        }
        Ok(())
    }

    /// Edge probability `n^-alpha`.
    pub fn p(&self) -> f64 {
        (self.n as f64).powf(-self.alpha)
    }

    pub fn from_json(text: &str) -> Result<Self, RandomCliqueError> {
        serde_json::from_str(text).map_err(|e| RandomCliqueError::Config(e.to_string()))
    }
}

/// Clique complex of a graph truncated to faces of at most `d + 1` vertices,
/// restricted to the vertices still marked active.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueComplex {
    graph: Graph,
    d: usize,
    active: Vec<bool>,
}

impl CliqueComplex {
    pub fn new(graph: Graph, d: usize) -> Self {
        let active = vec![true; graph.vertex_count()];
        Self { graph, d, active }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_active(&self, v: VertexId) -> bool {
        self.active[v as usize]
    }

    pub fn active_vertices(&self) -> Vec<VertexId> {
        (0..self.active.len() as VertexId)
            .filter(|&v| self.active[v as usize])
            .collect()
    }

    /// Graph induced on the active vertices, relabelled in increasing order.
    pub fn active_graph(&self) -> Graph {
        self.graph.induced_subgraph(&self.active_vertices())
    }

    /// All faces with exactly `size` vertices (sorted, in lexicographic order).
    pub fn faces_of_size(&self, size: usize) -> Vec<Vec<VertexId>> {
        let mut out = Vec::new();
        if size == 0 || size > self.d + 1 {
            return out;
        }
        let mut current = Vec::with_capacity(size);
        for v in self.active_vertices() {
            current.push(v);
            let cands: Vec<VertexId> = self
                .graph
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| u > v && self.active[u as usize])
                .collect();
            self.extend_cliques(&mut current, &cands, size, &mut out);
            current.pop();
        }
        out
    }

    fn extend_cliques(
        &self,
        current: &mut Vec<VertexId>,
        cands: &[VertexId],
        size: usize,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for (i, &u) in cands.iter().enumerate() {
            let next: Vec<VertexId> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&w| self.graph.has_edge(u, w))
                .collect();
            current.push(u);
            self.extend_cliques(current, &next, size, out);
            current.pop();
        }
    }

    /// Faces of `d - 2` vertices, whose links are graphs.
    pub fn link_centers(&self) -> Vec<Vec<VertexId>> {
        self.faces_of_size(self.d - 2)
    }

    /// Is the 1-skeleton of the link of `face` a forest? The link's vertices
    /// are the common active neighbours of `face`, its edges all edges among
    /// them.
    pub fn link_is_forest(&self, face: &[VertexId]) -> bool {
        let common: Vec<VertexId> = self
            .graph
            .neighbors(face[0])
            .iter()
            .copied()
            .filter(|&u| {
                self.active[u as usize] && face[1..].iter().all(|&f| self.graph.has_edge(f, u))
            })
            .collect();
        let mut uf = UnionFind::new(common.len());
        for (i, &a) in common.iter().enumerate() {
            for (j, &b) in common.iter().enumerate().skip(i + 1) {
                if self.graph.has_edge(a, b) && !uf.union(i, j) {
                    return false;
                }
            }
        }
        true
    }
}

pub fn sample_clique_complex(
    params: &RandomCliqueParams,
) -> Result<CliqueComplex, RandomCliqueError> {
    params.validate()?;
    Ok(sample_clique_complex_unchecked(params))
}

/// Samples without checking the exponent range, for probing degenerate cases.
pub fn sample_clique_complex_unchecked(params: &RandomCliqueParams) -> CliqueComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let p = params.p();
    let n = params.n as VertexId;
    let mut g = Graph::empty(params.n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(a, b).expect("in range");
            }
        }
    }
    CliqueComplex::new(g, params.d.max(3))
}

/// Fraction of `(d - 3)`-dimensional faces whose link is a forest; 1 when
/// there are none.
pub fn forest_link_fraction(x: &CliqueComplex) -> f64 {
    let centers = x.link_centers();
    if centers.is_empty() {
        return 1.0;
    }
    let good = centers.iter().filter(|f| x.link_is_forest(f)).count();
    good as f64 / centers.len() as f64
}

/// Deactivates every vertex of every face with a cyclic link, repeating until
/// all links are forests. Returns the number of vertices removed.
pub fn prune_bad_links(x: &mut CliqueComplex) -> usize {
    let mut removed = 0;
    loop {
        let bad: Vec<Vec<VertexId>> = x
            .link_centers()
            .into_iter()
            .filter(|f| !x.link_is_forest(f))
            .collect();
        if bad.is_empty() {
            return removed;
        }
        for face in bad {
            for v in face {
                if x.active[v as usize] {
                    x.active[v as usize] = false;
                    removed += 1;
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndependenceReport {
    pub greedy: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<usize>,
    /// `n^alpha * ln n`.
    pub reference: f64,
    /// Best known independent set size over the reference; absent when degenerate.
    pub ratio: Option<f64>,
    /// Edgeless graphs, where the ratio says nothing.
    pub degenerate: bool,
}

pub const EXACT_LIMIT: usize = 60;

pub fn independence_bound_report(
    g: &Graph,
    alpha: f64,
    seed: u64,
    budget: u64,
) -> IndependenceReport {
    let n = g.vertex_count();
    let greedy = greedy_independent_set(g, seed).len();
    let exact = (n <= EXACT_LIMIT)
        .then(|| max_independent_set_exact(g, budget).ok().map(|s| s.len()))
        .flatten();
    let reference = (n as f64).powf(alpha) * (n as f64).ln();
    let degenerate = g.edge_count() == 0;
    let best = exact.unwrap_or(greedy) as f64;
    let ratio = (!degenerate && reference > 0.0).then(|| best / reference);
    IndependenceReport {
        greedy,
        exact,
        reference,
        ratio,
        degenerate,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub n: usize,
    pub alpha: f64,
    pub d: usize,
    pub seed: u64,
    pub edges: usize,
    pub forest_fraction: f64,
    pub removed: usize,
    pub greedy_alpha: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_alpha: Option<usize>,
    pub reference_curve: f64,
    pub ratio: Option<f64>,
}

/// Samples, measures the forest fraction, prunes, and measures the
/// independence number of what survives.
pub fn run_experiment(
    params: &RandomCliqueParams,
    budget: u64,
) -> Result<ExperimentReport, RandomCliqueError> {
    let mut x = sample_clique_complex(params)?;
    let forest_fraction = forest_link_fraction(&x);
    let removed = prune_bad_links(&mut x);
    let survivors = x.active_graph();
    let ind = independence_bound_report(&survivors, params.alpha, params.seed, budget);
    Ok(ExperimentReport {
        n: params.n,
        alpha: params.alpha,
        d: params.d,
        seed: params.seed,
        edges: x.graph().edge_count(),
        forest_fraction,
        removed,
        greedy_alpha: ind.greedy,
        exact_alpha: ind.exact,
        reference_curve: ind.reference,
        ratio: ind.ratio,
    })
}
