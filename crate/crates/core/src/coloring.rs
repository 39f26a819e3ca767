//! Upper-bound coloring of flag 3-manifolds by link peeling, planar
//! subroutines, lower-bound certification and independence measurements.

use serde::Serialize;
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex, VertexId};
use crate::graph::{
    chromatic_number_exact, find_k_coloring, greedy_independent_set, max_independent_set_exact,
    ChromaticOutcome, Coloring, Graph, SolverError,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ColoringError {
    #[error("BadDimension: C_d is defined for d >= 3, got {0}")]
    BadDimension(usize),
    #[error("NotFlag: the complex has a minimal nonface of size >= 3")]
    NotFlag,
    #[error("NotManifold: {0}")]
    NotManifold(String),
    #[error("NotPlanar: graph on {vertices} vertices and {edges} edges admits no planar 5-coloring step")]
    NotPlanar { vertices: usize, edges: usize },
    #[error("PlanarStrategyFailure: exact 4-coloring failed on a link of {vertices} vertices and fallback is disabled")]
    PlanarStrategyFailure { vertices: usize },
    #[error("SubgraphMissing: edge {{{0}, {1}}} is not an edge between original vertices of the complex")]
    SubgraphMissing(VertexId, VertexId),
    #[error("CertificationFailed: {0}")]
    CertificationFailed(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlanarStrategy {
    /// Backtracking 4-coloring for links up to the size cap.
    Exact4,
    Five,
    Greedy,
}

impl PlanarStrategy {
    /// Colors a single peeled neighbourhood can use under this strategy.
    pub fn palette(self) -> usize {
        match self {
            Self::Exact4 => 4,
            Self::Five => 5,
            // planar graphs are 5-degenerate
            Self::Greedy => 6,
        }
    }
}

impl std::str::FromStr for PlanarStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact4" => Ok(Self::Exact4),
            "five" => Ok(Self::Five),
            "greedy" => Ok(Self::Greedy),
            other => Err(format!(
                "unknown strategy `{other}` (expected exact4, five or greedy)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeelParams {
    /// Peeling continues while the maximum degree exceeds `x * sqrt(f0)`.
    pub x: f64,
    pub strategy: PlanarStrategy,
    /// Largest neighbourhood handed to the exact 4-coloring search.
    pub exact4_cap: usize,
    /// Search nodes per exact 4-coloring attempt.
    pub exact4_budget: u64,
    /// Fall back to the 5-coloring when the exact search gives up.
    pub allow_fallback: bool,
}

impl Default for PeelParams {
    fn default() -> Self {
        Self {
            x: 5f64.sqrt(),
            strategy: PlanarStrategy::Exact4,
            exact4_cap: 64,
            exact4_budget: 200_000,
            allow_fallback: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelRound {
    pub center: VertexId,
    pub removed: usize,
    pub colors: usize,
    pub strategy: PlanarStrategy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeelOutcome {
    pub coloring: Coloring,
    pub rounds: Vec<PeelRound>,
    pub residual_max_degree: usize,
    pub residual_colors: usize,
    /// Rounds where the exact 4-coloring gave up and the 5-coloring ran.
    pub fallbacks: usize,
}

impl PeelOutcome {
    /// Did every peeled neighbourhood get at most 4 colors?
    pub fn all_four_colored(&self) -> bool {
        self.rounds.iter().all(|r| r.colors <= 4)
    }
}

/// `ceil((p / x + x) * sqrt(n)) + 1`.
pub fn peel_color_bound(p: usize, x: f64, n: usize) -> usize {
    ((p as f64 / x + x) * (n as f64).sqrt()).ceil() as usize + 1
}

pub fn cd_constant(d: usize) -> Result<f64, ColoringError> {
    if d < 3 {
        return Err(ColoringError::BadDimension(d));
    }
    let mut c = 4.0_f64;
    for k in 4..=d {
        let a = (k - 2) as f64;
        let b = (k - 1) as f64;
        c = (c / a).powf(a / b) + c * (a / c).powf(1.0 / b);
    }
    Ok(c)
}

/// Colors the 1-skeleton of a flag 3-manifold by repeatedly coloring the
/// neighbourhood of a maximum-degree vertex with fresh colors and deleting it,
/// then coloring what is left in degeneracy order.
pub fn peel_color_3(
    x: &SimplicialComplex,
    params: &PeelParams,
) -> Result<PeelOutcome, ColoringError> {
    assert!(params.x > 0.0, "threshold multiplier must be positive");
    let report = x
        .verify_closed_3_manifold()
        .map_err(|e| ColoringError::NotManifold(e.to_string()))?;
    if !report.passed() {
        return Err(ColoringError::NotManifold(report.failures.join("; ")));
    }
    if !x.is_flag() {
        return Err(ColoringError::NotFlag);
    }

    let g = x.skeleton();
    let n = g.vertex_count();
    let threshold = params.x * (x.vertex_count() as f64).sqrt();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n as VertexId).map(|v| g.degree(v)).collect();
    let mut colors = vec![u32::MAX; n];
    let mut next_color = 0u32;
    let mut rounds = Vec::new();
    let mut fallbacks = 0;

    loop {
        let center = (0..n)
            .filter(|&v| alive[v])
            .max_by_key(|&v| (degree[v], std::cmp::Reverse(v)));
        let Some(center) = center else { break };
        if degree[center] as f64 <= threshold {
            break;
        }
        let nbrs: Vec<VertexId> = g
            .neighbors(center as VertexId)
            .iter()
            .copied()
            .filter(|&u| alive[u as usize])
            .collect();
        let h = g.induced_subgraph(&nbrs);
        if cfg!(debug_assertions) {
            check_planar_edge_bound(&h)?;
        }
        let (local, used) = color_neighbourhood(&h, params)?;
        if used != params.strategy {
            fallbacks += 1;
        }
        for (i, &u) in nbrs.iter().enumerate() {
            colors[u as usize] = next_color + local.color(i as VertexId);
        }
        next_color += local.color_count() as u32;
        rounds.push(PeelRound {
            center: center as VertexId,
            removed: nbrs.len(),
            colors: local.color_count(),
            strategy: used,
        });
        for &u in &nbrs {
            alive[u as usize] = false;
            for &w in g.neighbors(u) {
                degree[w as usize] -= 1;
            }
        }
    }

    let residual: Vec<VertexId> = (0..n as VertexId).filter(|&v| alive[v as usize]).collect();
    let rest = g.induced_subgraph(&residual);
    let rest_coloring = greedy_degeneracy_color(&rest);
    for (i, &v) in residual.iter().enumerate() {
        colors[v as usize] = next_color + rest_coloring.color(i as VertexId);
    }
    let coloring = Coloring::new(colors);
    debug_assert!(coloring.is_proper(&g));
    Ok(PeelOutcome {
        coloring,
        rounds,
        residual_max_degree: rest.max_degree(),
        residual_colors: rest_coloring.color_count(),
        fallbacks,
    })
}

fn check_planar_edge_bound(h: &Graph) -> Result<(), ColoringError> {
    let (v, e) = (h.vertex_count(), h.edge_count());
    if v >= 3 && e > 3 * v - 6 {
        return Err(ColoringError::NotPlanar {
            vertices: v,
            edges: e,
        });
    }
    Ok(())
}

fn color_neighbourhood(
    h: &Graph,
    params: &PeelParams,
) -> Result<(Coloring, PlanarStrategy), ColoringError> {
    match params.strategy {
        PlanarStrategy::Exact4 => {
            let found = if h.vertex_count() <= params.exact4_cap {
                // a timeout counts as failure
                find_k_coloring(h, 4, params.exact4_budget).unwrap_or_default()
            } else {
                None
            };
            match found {
                Some(c) => Ok((c, PlanarStrategy::Exact4)),
                None if params.allow_fallback => Ok((five_color_planar(h)?, PlanarStrategy::Five)),
                None => Err(ColoringError::PlanarStrategyFailure {
                    vertices: h.vertex_count(),
                }),
            }
        }
        PlanarStrategy::Five => Ok((five_color_planar(h)?, PlanarStrategy::Five)),
        PlanarStrategy::Greedy => Ok((greedy_degeneracy_color(h), PlanarStrategy::Greedy)),
    }
}

/// Order in which vertices are deleted when a minimum-degree vertex is
/// removed each step, together with the degree it had when removed.
fn degeneracy_order(g: &Graph) -> Vec<(VertexId, usize)> {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n as VertexId).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut queue: std::collections::BTreeSet<(usize, VertexId)> = (0..n as VertexId)
        .map(|v| (degree[v as usize], v))
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some((d, v)) = queue.pop_first() {
        removed[v as usize] = true;
        order.push((v, d));
        for &u in g.neighbors(v) {
            let u_idx = u as usize;
            if !removed[u_idx] {
                queue.remove(&(degree[u_idx], u));
                degree[u_idx] -= 1;
                queue.insert((degree[u_idx], u));
            }
        }
    }
    order
}

/// Smallest-available-color greedy in reverse degeneracy order, so every
/// vertex sees at most `degeneracy` colored neighbours.
pub fn greedy_degeneracy_color(g: &Graph) -> Coloring {
    let n = g.vertex_count();
    let mut colors = vec![u32::MAX; n];
    for &(v, _) in degeneracy_order(g).iter().rev() {
        let mut taken: Vec<u32> = g
            .neighbors(v)
            .iter()
            .map(|&u| colors[u as usize])
            .filter(|&c| c != u32::MAX)
            .collect();
        taken.sort_unstable();
        taken.dedup();
        let c = taken
            .iter()
            .enumerate()
            .find(|&(i, &c)| c != i as u32)
            .map_or(taken.len() as u32, |(i, _)| i as u32);
        colors[v as usize] = c;
    }
    Coloring::new(colors)
}

/// Classical 5-coloring: delete vertices of degree at most 5, then re-insert
/// them in reverse, resolving a fully saturated neighbourhood by a Kempe chain
/// swap. Graphs for which either step is impossible are reported as
/// `NotPlanar`; some non-planar graphs still get a valid coloring.
pub fn five_color_planar(g: &Graph) -> Result<Coloring, ColoringError> {
    let n = g.vertex_count();
    let not_planar = || ColoringError::NotPlanar {
        vertices: n,
        edges: g.edge_count(),
    };
    check_planar_edge_bound(g)?;
    let order = degeneracy_order(g);
    if order.iter().any(|&(_, d)| d > 5) {
        return Err(not_planar());
    }
    const NONE: u32 = u32::MAX;
    let mut colors = vec![NONE; n];
    for &(v, _) in order.iter().rev() {
        let colored: Vec<VertexId> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| colors[u as usize] != NONE)
            .collect();
        let mut taken = [false; 5];
        for &u in &colored {
            taken[colors[u as usize] as usize] = true;
        }
        if let Some(c) = (0..5).find(|&c| !taken[c]) {
            colors[v as usize] = c as u32;
            continue;
        }
        // five neighbours with five distinct colors
        let mut placed = false;
        'pairs: for (i, &a) in colored.iter().enumerate() {
            for &b in &colored[i + 1..] {
                let (ca, cb) = (colors[a as usize], colors[b as usize]);
                let chain = kempe_chain(g, &colors, a, ca, cb);
                if !chain[b as usize] {
                    for (u, inside) in chain.iter().enumerate() {
                        if *inside {
                            colors[u] = if colors[u] == ca { cb } else { ca };
                        }
                    }
                    colors[v as usize] = ca;
                    placed = true;
                    break 'pairs;
                }
            }
        }
        if !placed {
            return Err(not_planar());
        }
    }
    Ok(Coloring::new(colors))
}

/// Vertices reachable from `start` through vertices colored `ca` or `cb`.
fn kempe_chain(g: &Graph, colors: &[u32], start: VertexId, ca: u32, cb: u32) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    seen[start as usize] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            let c = colors[u as usize];
            if !seen[u as usize] && (c == ca || c == cb) {
                seen[u as usize] = true;
                stack.push(u);
            }
        }
    }
    seen
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub graph: String,
    pub k: usize,
    pub solver_nodes: u64,
    pub witness_type: String,
    pub checker_nodes: u64,
}

/// Certifies `chi(skeleton(x)) >= k` from `g` being a subgraph on original
/// vertices with `chi(g) >= k`. For `k >= 3` the exact solver must prove that
/// `g` has no `(k - 1)`-coloring and a separate plain backtracking search must
/// agree.
pub fn certify_lower_bound(
    x: &SimplicialComplex,
    g: &Graph,
    k: usize,
    budget: u64,
) -> Result<CertificateReport, ColoringError> {
    for v in 0..g.vertex_count() as VertexId {
        if !x.has_vertex(v) || !x.is_original(v) {
            return Err(ColoringError::CertificationFailed(format!(
                "vertex {v} is not an original vertex of the complex"
            )));
        }
    }
    for (a, b) in g.edges() {
        if !x.are_adjacent(a, b) {
            return Err(ColoringError::SubgraphMissing(a, b));
        }
    }
    let graph = format!("{} vertices, {} edges", g.vertex_count(), g.edge_count());
    let report = |witness: &str, solver_nodes, checker_nodes| CertificateReport {
        graph: graph.clone(),
        k,
        solver_nodes,
        witness_type: witness.to_string(),
        checker_nodes,
    };
    match k {
        0 => Ok(report("trivial", 0, 0)),
        1 if g.vertex_count() > 0 => Ok(report("vertex", 0, 0)),
        2 if g.edge_count() > 0 => Ok(report("edge", 0, 0)),
        1 | 2 => Err(ColoringError::CertificationFailed(format!(
            "a graph with {} vertices and {} edges has chromatic number below {k}",
            g.vertex_count(),
            g.edge_count()
        ))),
        _ => {
            let solver_nodes = match chromatic_number_exact(g, Some(k - 1), budget)? {
                ChromaticOutcome::ExceedsLimit { nodes, .. } => nodes,
                ChromaticOutcome::Exact {
                    chromatic_number, ..
                } => {
                    return Err(ColoringError::CertificationFailed(format!(
                        "the graph has chromatic number {chromatic_number} < {k}"
                    )))
                }
            };
            let (found, checker_nodes) = plain_colorable(g, k - 1, budget)?;
            if found.is_some() {
                return Err(ColoringError::CertificationFailed(format!(
                    "independent check found a {}-coloring",
                    k - 1
                )));
            }
            Ok(report("exhaustive_search", solver_nodes, checker_nodes))
        }
    }
}

/// Backtracking over a fixed breadth-first vertex order, with a new color
/// opened only as the next unused one.
fn plain_colorable(
    g: &Graph,
    k: usize,
    budget: u64,
) -> Result<(Option<Vec<u32>>, u64), SolverError> {
    let n = g.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root as VertexId]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in g.neighbors(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut search = PlainSearch {
        g,
        order,
        k: k as u32,
        colors: vec![u32::MAX; n],
        nodes: 0,
        budget,
    };
    let ok = search.go(0, 0)?;
    Ok((ok.then_some(search.colors), search.nodes))
}

struct PlainSearch<'a> {
    g: &'a Graph,
    order: Vec<VertexId>,
    k: u32,
    colors: Vec<u32>,
    nodes: u64,
    budget: u64,
}

impl PlainSearch<'_> {
    fn go(&mut self, i: usize, used: u32) -> Result<bool, SolverError> {
        if i == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SolverError::Timeout {
                budget: self.budget,
            });
        }
        let v = self.order[i];
        for c in 0..self.k.min(used + 1) {
            if self
                .g
                .neighbors(v)
                .iter()
                .all(|&u| self.colors[u as usize] != c)
            {
                self.colors[v as usize] = c;
                if self.go(i + 1, used.max(c + 1))? {
                    return Ok(true);
                }
                self.colors[v as usize] = u32::MAX;
            }
        }
        Ok(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlphaReport {
    pub vertices: usize,
    pub greedy: usize,
    /// Present when the skeleton has at most `EXACT_ALPHA_LIMIT` vertices.
    pub exact: Option<usize>,
    /// `ceil((f0 + 1) / 6)`.
    pub conjecture: usize,
}

pub const EXACT_ALPHA_LIMIT: usize = 60;

/// Independence number of the 1-skeleton: a seeded greedy lower bound, and
/// the exact value for small complexes.
pub fn measure_alpha(x: &SimplicialComplex, seed: u64, budget: u64) -> AlphaReport {
    let present: Vec<VertexId> = x.vertices().collect();
    let g = x.skeleton().induced_subgraph(&present);
    let f0 = present.len();
    let greedy = greedy_independent_set(&g, seed).len();
    let exact = (f0 <= EXACT_ALPHA_LIMIT)
        .then(|| max_independent_set_exact(&g, budget).ok().map(|s| s.len()))
        .flatten();
    AlphaReport {
        vertices: f0,
        greedy,
        exact,
        conjecture: (f0 + 1).div_ceil(6),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::simplex_boundary;
    use crate::graph::mycielski_graph;

    const BUDGET: u64 = 5_000_000;

    /// Join of the 4-cycles on `0..4` and `4..8`.
    fn sixteen_cell() -> SimplicialComplex {
        let mut facets = Vec::new();
        for i in 0..4u32 {
            for j in 0..4u32 {
                facets.push(vec![i, (i + 1) % 4, 4 + j, 4 + (j + 1) % 4]);
            }
        }
        SimplicialComplex::from_facets(facets, None).unwrap()
    }

    fn icosahedron() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5u32 {
            let (up, up_next) = (1 + i, 1 + (i + 1) % 5);
            let (lo, lo_next) = (6 + i, 6 + (i + 1) % 5);
            edges.extend([(0, up), (up, up_next), (lo, lo_next), (lo, 11)]);
            edges.extend([(up, lo), (up, lo_next)]);
        }
        Graph::from_edges(12, edges).unwrap()
    }

    #[test]
    fn cd_values() {
        assert_eq!(cd_constant(3).unwrap(), 4.0);
        let c4 = 2f64.powf(2.0 / 3.0) + 4.0 * 2f64.powf(-1.0 / 3.0);
        assert!((cd_constant(4).unwrap() - c4).abs() / c4 < 1e-12);
        let seq: Vec<f64> = (3..=10).map(|d| cd_constant(d).unwrap()).collect();
        assert!(seq.windows(2).all(|w| w[0] < w[1]), "{seq:?}");
        assert_eq!(cd_constant(2), Err(ColoringError::BadDimension(2)));
    }

    #[test]
    fn bound_argmin_is_sqrt_p() {
        let f = |p: f64, x: f64| p / x + x;
        for p in [4.0, 5.0, 6.0_f64] {
            let best = p.sqrt();
            for step in 1..200 {
                let x = step as f64 * 0.05;
                assert!(f(p, x) >= f(p, best) - 1e-12);
            }
        }
        assert_eq!(f(4.0, 2.0), 4.0);
    }

    #[test]
    fn sixteen_cell_peels() {
        let x = sixteen_cell();
        let out = peel_color_3(&x, &PeelParams::default()).unwrap();
        assert!(out.coloring.is_proper(&x.skeleton()));
        assert!(out.coloring.color_count() <= 4);
        assert!(out.coloring.color_count() <= peel_color_bound(5, 5f64.sqrt(), 8));
        let a = measure_alpha(&x, 0, BUDGET);
        assert_eq!((a.exact, a.conjecture), (Some(2), 2));
    }

    #[test]
    fn rejects_non_flag() {
        let x = simplex_boundary(5);
        assert_eq!(
            peel_color_3(&x, &PeelParams::default()),
            Err(ColoringError::NotFlag)
        );
        assert_eq!(measure_alpha(&x, 0, BUDGET).exact, Some(1));
    }

    #[test]
    fn strict_exact4_without_fallback() {
        let x = sixteen_cell();
        let params = PeelParams {
            x: 0.5,
            exact4_cap: 0,
            allow_fallback: false,
            ..PeelParams::default()
        };
        assert!(matches!(
            peel_color_3(&x, &params),
            Err(ColoringError::PlanarStrategyFailure { .. })
        ));
    }

    #[test]
    fn planar_five_coloring() {
        for g in [
            Graph::complete(4),
            icosahedron(),
            Graph::empty(0),
            Graph::cycle(7),
        ] {
            let c = five_color_planar(&g).unwrap();
            assert!(c.is_proper(&g) && c.color_count() <= 5);
        }
        assert!(matches!(
            five_color_planar(&Graph::complete(6)),
            Err(ColoringError::NotPlanar { .. })
        ));
    }

    #[test]
    fn degeneracy_greedy() {
        assert!(greedy_degeneracy_color(&Graph::cycle(5)).color_count() <= 3);
        assert_eq!(
            greedy_degeneracy_color(&Graph::complete(5)).color_count(),
            5
        );
        let star = Graph::from_edges(10, (1..10).map(|i| (0, i))).unwrap();
        assert_eq!(greedy_degeneracy_color(&star).color_count(), 2);
    }

    #[test]
    fn certificates() {
        let g = mycielski_graph(4);
        let x = crate::flagify::flagify(&g, 11).unwrap().complex;
        let r = certify_lower_bound(&x, &g, 4, BUDGET).unwrap();
        assert_eq!(r.witness_type, "exhaustive_search");
        assert!(matches!(
            certify_lower_bound(&x, &g, 5, BUDGET),
            Err(ColoringError::CertificationFailed(_))
        ));
        assert_eq!(
            certify_lower_bound(&x, &g, 2, BUDGET).unwrap().witness_type,
            "edge"
        );
        let (split, _) = crate::cyclic::cyclic_4_sphere(6)
            .unwrap()
            .into_complex()
            .subdivide_edge(0, 1)
            .unwrap();
        let edge = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(
            certify_lower_bound(&split, &edge, 2, BUDGET),
            Err(ColoringError::SubgraphMissing(0, 1))
        );
    }
}
