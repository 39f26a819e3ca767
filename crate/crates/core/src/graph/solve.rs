//! Exact chromatic number and independence number by branch and bound.
//!
//! Budgets count search nodes, not wall time, so a run either finishes or
//! times out identically on every machine.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Coloring, Graph};
use crate::complex::VertexId;
use crate::util::BitSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("Timeout: search exceeded its budget of {budget} nodes")]
    Timeout { budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChromaticOutcome {
    Exact {
        chromatic_number: usize,
        coloring: Coloring,
        nodes: u64,
    },
    /// The search space of colorings with at most `limit` colors was
    /// exhausted without success, so the chromatic number exceeds `limit`.
    ExceedsLimit { limit: usize, nodes: u64 },
}

impl ChromaticOutcome {
    pub fn nodes(&self) -> u64 {
        match self {
            Self::Exact { nodes, .. } | Self::ExceedsLimit { nodes, .. } => *nodes,
        }
    }
}

const UNCOLORED: u32 = u32::MAX;

/// DSATUR branch and bound with a greedy clique lower bound.
///
/// With `limit = Some(k)` only colorings with at most `k` colors are searched:
/// the result is either the exact chromatic number (when it is `<= k`) or a
/// proof that it exceeds `k`.
pub fn chromatic_number_exact(
    g: &Graph,
    limit: Option<usize>,
    budget: u64,
) -> Result<ChromaticOutcome, SolverError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(ChromaticOutcome::Exact {
            chromatic_number: 0,
            coloring: Coloring::new(Vec::new()),
            nodes: 0,
        });
    }
    let lower = greedy_clique(g).len();
    if let Some(k) = limit {
        if lower > k {
            return Ok(ChromaticOutcome::ExceedsLimit { limit: k, nodes: 0 });
        }
    }
    let greedy = dsatur_greedy(g);
    let greedy_count = greedy.iter().max().map_or(0, |&c| c as usize + 1);

    let mut search = Dsatur::new(g, greedy_count, lower, budget);
    match limit {
        Some(k) if greedy_count > k => search.best = k + 1,
        _ => {
            search.best = greedy_count;
            search.best_coloring = Some(greedy);
        }
    }
    if search.best > lower {
        search.run(0, 0)?;
    }
    let nodes = search.nodes;
    Ok(match (search.best_coloring, limit) {
        (Some(colors), _) => ChromaticOutcome::Exact {
            chromatic_number: search.best,
            coloring: Coloring::new(colors),
            nodes,
        },
        (None, Some(k)) => ChromaticOutcome::ExceedsLimit { limit: k, nodes },
        (None, None) => unreachable!("the greedy coloring seeds the unbounded search"),
    })
}

/// Any proper coloring with at most `k` colors, stopping at the first one found.
pub fn find_k_coloring(g: &Graph, k: usize, budget: u64) -> Result<Option<Coloring>, SolverError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Some(Coloring::new(Vec::new())));
    }
    let greedy = dsatur_greedy(g);
    let greedy_count = greedy.iter().max().map_or(0, |&c| c as usize + 1);
    if greedy_count <= k {
        return Ok(Some(Coloring::new(greedy)));
    }
    if k == 0 {
        return Ok(None);
    }
    let mut search = Dsatur::new(g, greedy_count, k, budget);
    search.best = k + 1;
    search.run(0, 0)?;
    Ok(search.best_coloring.map(Coloring::new))
}

struct Dsatur<'a> {
    g: &'a Graph,
    color: Vec<u32>,
    /// `counts[v * width + c]`: neighbours of `v` with color `c`.
    counts: Vec<u32>,
    width: usize,
    saturation: Vec<u32>,
    uncolored_degree: Vec<u32>,
    best: usize,
    best_coloring: Option<Vec<u32>>,
    lower: usize,
    nodes: u64,
    budget: u64,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, width: usize, lower: usize, budget: u64) -> Self {
        let n = g.vertex_count();
        Self {
            g,
            color: vec![UNCOLORED; n],
            counts: vec![0; n * width],
            width,
            saturation: vec![0; n],
            uncolored_degree: (0..n).map(|v| g.degree(v as VertexId) as u32).collect(),
            best: width,
            best_coloring: None,
            lower,
            nodes: 0,
            budget,
        }
    }

    fn pick(&self) -> usize {
        let mut best = usize::MAX;
        for v in 0..self.color.len() {
            if self.color[v] != UNCOLORED {
                continue;
            }
            if best == usize::MAX
                || (self.saturation[v], self.uncolored_degree[v])
                    > (self.saturation[best], self.uncolored_degree[best])
            {
                best = v;
            }
        }
        best
    }

    fn assign(&mut self, v: usize, c: u32) {
        self.color[v] = c;
        for &u in self.g.neighbors(v as VertexId) {
            let u = u as usize;
            let slot = &mut self.counts[u * self.width + c as usize];
            if *slot == 0 {
                self.saturation[u] += 1;
            }
            *slot += 1;
            self.uncolored_degree[u] -= 1;
        }
    }

    fn unassign(&mut self, v: usize, c: u32) {
        self.color[v] = UNCOLORED;
        for &u in self.g.neighbors(v as VertexId) {
            let u = u as usize;
            let slot = &mut self.counts[u * self.width + c as usize];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[u] -= 1;
            }
            self.uncolored_degree[u] += 1;
        }
    }

    /// Returns `Ok(true)` once an optimal coloring (matching the lower bound) is found.
    fn run(&mut self, colored: usize, used: usize) -> Result<bool, SolverError> {
        if colored == self.color.len() {
            self.best = used;
            self.best_coloring = Some(self.color.clone());
            return Ok(used <= self.lower);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SolverError::Timeout {
                budget: self.budget,
            });
        }
        let v = self.pick();
        let mut c = 0;
        // `best` can shrink while we iterate.
        while c <= used && c + 1 < self.best {
            if self.counts[v * self.width + c] == 0 {
                self.assign(v, c as u32);
                let stop = self.run(colored + 1, used.max(c + 1))?;
                self.unassign(v, c as u32);
                if stop {
                    return Ok(true);
                }
            }
            c += 1;
        }
        Ok(false)
    }
}

/// Plain DSATUR greedy coloring.
fn dsatur_greedy(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut search = Dsatur::new(g, n.max(1), 0, u64::MAX);
    for _ in 0..n {
        let v = search.pick();
        let c = (0..search.width)
            .find(|&c| search.counts[v * search.width + c] == 0)
            .expect("n colors always suffice");
        search.assign(v, c as u32);
    }
    search.color
}

/// Grows a clique greedily from every vertex, keeping the largest.
fn greedy_clique(g: &Graph) -> Vec<VertexId> {
    let n = g.vertex_count();
    let mut best = Vec::new();
    for start in 0..n as VertexId {
        let mut clique = vec![start];
        let mut cands: Vec<VertexId> = g.neighbors(start).to_vec();
        cands.sort_by_key(|&u| std::cmp::Reverse(g.degree(u)));
        for u in cands {
            if clique.iter().all(|&c| g.has_edge(c, u)) {
                clique.push(u);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// A maximum independent set, found as a maximum clique of the complement
/// with greedy-coloring bounds.
pub fn max_independent_set_exact(g: &Graph, budget: u64) -> Result<Vec<VertexId>, SolverError> {
    let n = g.vertex_count();
    let mut comp: Vec<BitSet> = Vec::with_capacity(n);
    for v in 0..n {
        let mut row = BitSet::new(n);
        for u in 0..n {
            if u != v && !g.has_edge(v as VertexId, u as VertexId) {
                row.insert(u);
            }
        }
        comp.push(row);
    }
    let mut all = BitSet::new(n);
    for v in 0..n {
        all.insert(v);
    }
    let mut mc = MaxClique {
        adj: &comp,
        best: Vec::new(),
        nodes: 0,
        budget,
    };
    mc.expand(&mut Vec::new(), all)?;
    let mut set: Vec<VertexId> = mc.best.into_iter().map(|v| v as VertexId).collect();
    set.sort_unstable();
    Ok(set)
}

struct MaxClique<'a> {
    adj: &'a [BitSet],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl MaxClique<'_> {
    fn expand(&mut self, clique: &mut Vec<usize>, mut cands: BitSet) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SolverError::Timeout {
                budget: self.budget,
            });
        }
        let (order, bounds) = self.color_sort(&cands);
        for i in (0..order.len()).rev() {
            if clique.len() + bounds[i] <= self.best.len() {
                return Ok(());
            }
            let v = order[i];
            clique.push(v);
            let next = cands.intersection(&self.adj[v]);
            if next.is_empty() {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, next)?;
            }
            clique.pop();
            cands.remove(v);
        }
        Ok(())
    }

    /// Greedy sequential coloring of the candidates; `bounds[i]` is the color
    /// number of `order[i]`, an upper bound on any clique within `order[..=i]`.
    fn color_sort(&self, cands: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cands.count());
        let mut bounds = Vec::with_capacity(order.capacity());
        let mut uncolored = cands.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                avail.difference_with(&self.adj[v]);
                uncolored.remove(v);
                order.push(v);
                bounds.push(color);
            }
        }
        (order, bounds)
    }
}

/// Min-degree greedy maximal independent set; ties broken by a seeded random priority.
pub fn greedy_independent_set(g: &Graph, seed: u64) -> Vec<VertexId> {
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut prio: Vec<u32> = (0..n as u32).collect();
    prio.shuffle(&mut rng);
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v as VertexId)).collect();
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(usize, u32, VertexId)> = (0..n)
        .map(|v| (degree[v], prio[v], v as VertexId))
        .collect();
    let mut set = Vec::new();
    while let Some((_, _, v)) = queue.pop_first() {
        set.push(v);
        alive[v as usize] = false;
        for &u in g.neighbors(v) {
            if !alive[u as usize] {
                continue;
            }
            alive[u as usize] = false;
            queue.remove(&(degree[u as usize], prio[u as usize], u));
            for &x in g.neighbors(u) {
                if alive[x as usize] {
                    queue.remove(&(degree[x as usize], prio[x as usize], x));
                    degree[x as usize] -= 1;
                    queue.insert((degree[x as usize], prio[x as usize], x));
                }
            }
        }
    }
    set.sort_unstable();
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::mycielski_graph;

    const BUDGET: u64 = 10_000_000;

    fn chi(g: &Graph) -> usize {
        match chromatic_number_exact(g, None, BUDGET).unwrap() {
            ChromaticOutcome::Exact {
                chromatic_number,
                coloring,
                ..
            } => {
                assert!(coloring.is_proper(g));
                assert_eq!(coloring.color_count(), chromatic_number);
                chromatic_number
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn small_chromatic_numbers() {
        assert_eq!(chi(&Graph::cycle(5)), 3);
        assert_eq!(chi(&Graph::cycle(6)), 2);
        assert_eq!(chi(&Graph::complete(4)), 4);
        assert_eq!(chi(&Graph::empty(3)), 1);
        assert_eq!(chi(&Graph::empty(0)), 0);
        assert_eq!(chi(&mycielski_graph(4)), 4);
    }

    #[test]
    fn limit_gives_exceedance() {
        let g = mycielski_graph(4);
        assert!(matches!(
            chromatic_number_exact(&g, Some(3), BUDGET).unwrap(),
            ChromaticOutcome::ExceedsLimit { limit: 3, .. }
        ));
        assert!(matches!(
            chromatic_number_exact(&g, Some(5), BUDGET).unwrap(),
            ChromaticOutcome::Exact {
                chromatic_number: 4,
                ..
            }
        ));
        assert!(matches!(
            chromatic_number_exact(&Graph::complete(5), Some(3), BUDGET).unwrap(),
            ChromaticOutcome::ExceedsLimit { nodes: 0, .. }
        ));
    }

    #[test]
    fn first_success_coloring() {
        let g = mycielski_graph(4);
        assert_eq!(find_k_coloring(&g, 3, BUDGET).unwrap(), None);
        let c = find_k_coloring(&g, 4, BUDGET).unwrap().unwrap();
        assert!(c.is_proper(&g) && c.color_count() <= 4);
        assert_eq!(find_k_coloring(&Graph::cycle(4), 1, BUDGET).unwrap(), None);
    }

    #[test]
    fn budget_is_enforced() {
        let g = mycielski_graph(5);
        assert_eq!(
            chromatic_number_exact(&g, Some(4), 10),
            Err(SolverError::Timeout { budget: 10 })
        );
    }

    #[test]
    fn independence_numbers() {
        let mis = |g: &Graph| {
            let s = max_independent_set_exact(g, BUDGET).unwrap();
            assert!(g.is_independent(&s));
            s.len()
        };
        assert_eq!(mis(&Graph::cycle(5)), 2);
        assert_eq!(mis(&Graph::complete(5)), 1);
        for n in 3..12 {
            assert_eq!(mis(&Graph::cycle(n)), n / 2);
        }
        assert_eq!(mis(&Graph::empty(4)), 4);
    }

    #[test]
    fn greedy_independent_sets() {
        assert_eq!(greedy_independent_set(&Graph::complete(5), 1).len(), 1);
        assert_eq!(greedy_independent_set(&Graph::empty(7), 1).len(), 7);
        let c6 = Graph::cycle(6);
        for seed in 0..5 {
            let s = greedy_independent_set(&c6, seed);
            assert!(s.len() >= 2);
            assert!(c6.is_maximal_independent(&s));
        }
    }
}
