//! Subdividing the cyclic 4-sphere into a flag sphere around an embedded
//! triangle-free graph.
//!
//! The graph `G` sits on the original vertices of the cyclic polytope, whose
//! 1-skeleton is complete. Each round picks the lexicographically smallest
//! empty triangle (all empty triangles are on original vertices between
//! rounds), subdivides its smallest edge outside `G`, and then repairs the at
//! most two new empty triangles through the fresh vertex with at most three
//! further subdivisions. Every round destroys an original edge for good, so
//! there are at most `C(n, 2)` rounds and at most `4 C(n, 2)` subdivisions.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{ComplexError, Face, SimplicialComplex, SubdivisionTrace, VertexId};
use crate::cyclic::cyclic_4_sphere;
use crate::graph::Graph;

/// Subdivisions allowed in one round, the primary one included.
const ROUND_BUDGET: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlagifyError {
    #[error("NotTriangleFree: the graph contains the triangle {0:?}")]
    NotTriangleFree([VertexId; 3]),
    #[error("TooFewPolytopeVertices: a graph on {graph} vertices needs a cyclic polytope on at least max({graph}, 6) vertices, got {n}")]
    TooFewPolytopeVertices { graph: usize, n: usize },
    #[error("no empty triangle left to eliminate")]
    NoEmptyTriangle,
    #[error("InvariantViolation: {message}")]
    InvariantViolation { message: String, trace: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FlagifyReport {
    pub final_vertex_count: usize,
    pub subdivision_count: usize,
    pub round_count: usize,
    /// `4 C(n, 2) + n`.
    pub bound: usize,
}

#[derive(Debug, Clone)]
pub struct FlagifyOutcome {
    pub complex: SimplicialComplex,
    pub report: FlagifyReport,
    pub trace: SubdivisionTrace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagifyState {
    n: usize,
    complex: SimplicialComplex,
    embedded: Graph,
    trace: SubdivisionTrace,
    /// Empty triangles on three original vertices.
    original_triangles: BTreeSet<Face>,
    /// Empty triangles through at least one subdivision vertex.
    subdivision_triangles: BTreeSet<Face>,
    rounds: usize,
}

pub fn binomial2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `4 C(n, 2) + n`: the vertex bound for the flagified sphere.
pub fn vertex_bound(n: usize) -> usize {
    4 * binomial2(n) + n
}

impl FlagifyState {
    /// Places `g` identity-wise on the vertices of the cyclic 4-sphere on `n` vertices.
    pub fn embed(g: &Graph, n: usize) -> Result<Self, FlagifyError> {
        if let Some(t) = g.find_triangle() {
            return Err(FlagifyError::NotTriangleFree(t));
        }
        if n < 6 || g.vertex_count() > n {
            return Err(FlagifyError::TooFewPolytopeVertices {
                graph: g.vertex_count(),
                n,
            });
        }
        let sphere = cyclic_4_sphere(n).expect("n >= 6 checked above");
        let original_triangles = sphere.empty_triangles();
        Ok(Self {
            n,
            complex: sphere.into_complex(),
            embedded: g.clone(),
            trace: SubdivisionTrace::new(),
            original_triangles,
            subdivision_triangles: BTreeSet::new(),
            rounds: 0,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn embedded(&self) -> &Graph {
        &self.embedded
    }

    pub fn trace(&self) -> &SubdivisionTrace {
        &self.trace
    }

    pub fn original_triangles(&self) -> &BTreeSet<Face> {
        &self.original_triangles
    }

    pub fn subdivision_triangles(&self) -> &BTreeSet<Face> {
        &self.subdivision_triangles
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn polytope_vertices(&self) -> usize {
        self.n
    }

    pub fn is_done(&self) -> bool {
        self.original_triangles.is_empty() && self.subdivision_triangles.is_empty()
    }

    /// Recomputes the empty triangles from scratch and compares them with the
    /// index; also checks that every edge of the embedded graph survives.
    pub fn audit(&self) -> bool {
        let partition_ok = self
            .original_triangles
            .iter()
            .all(|t| t.vertices().iter().all(|&v| self.complex.is_original(v)))
            && self
                .subdivision_triangles
                .iter()
                .all(|t| t.vertices().iter().any(|&v| !self.complex.is_original(v)));
        let mut indexed: BTreeSet<Face> = self.original_triangles.clone();
        indexed.extend(self.subdivision_triangles.iter().cloned());
        partition_ok
            && self.complex.empty_triangles() == indexed
            && self
                .embedded
                .edges()
                .all(|(a, b)| self.complex.are_adjacent(a, b))
    }

    fn violation(&self, message: impl Into<String>) -> FlagifyError {
        FlagifyError::InvariantViolation {
            message: message.into(),
            trace: self.trace.to_text(),
        }
    }

    /// One subdivision with the incremental index update: triangles through
    /// the destroyed edge disappear and the only new ones pass through `w`.
    fn subdivide(&self, u: VertexId, v: VertexId) -> Result<(Self, usize), FlagifyError> {
        let (complex, w) = self.complex.subdivide_edge(u, v)?;
        let through_edge = |t: &Face| t.contains(u) && t.contains(v);
        let mut original_triangles = self.original_triangles.clone();
        original_triangles.retain(|t| !through_edge(t));
        let mut subdivision_triangles = self.subdivision_triangles.clone();
        subdivision_triangles.retain(|t| !through_edge(t));
        let fresh = complex.empty_triangles_containing(w);
        let count = fresh.len();
        subdivision_triangles.extend(fresh);
        let mut trace = self.trace.clone();
        trace.push((u.min(v), u.max(v)), w);
        Ok((
            Self {
                n: self.n,
                complex,
                embedded: self.embedded.clone(),
                trace,
                original_triangles,
                subdivision_triangles,
                rounds: self.rounds,
            },
            count,
        ))
    }

    /// Edges of the triangles through subdivision vertices that meet a
    /// subdivision vertex, in triangle order. Original edges are never used
    /// for repairs.
    fn repair_candidates(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for t in &self.subdivision_triangles {
            let vs = t.vertices();
            for edge in [(vs[0], vs[1]), (vs[0], vs[2]), (vs[1], vs[2])] {
                let touches_new =
                    !self.complex.is_original(edge.0) || !self.complex.is_original(edge.1);
                if touches_new && !out.contains(&edge) {
                    out.push(edge);
                }
            }
        }
        out
    }

    fn repair(&self, remaining: usize) -> Result<Option<Self>, FlagifyError> {
        if self.subdivision_triangles.is_empty() {
            return Ok(Some(self.clone()));
        }
        if remaining == 0 {
            return Ok(None);
        }
        for (a, b) in self.repair_candidates() {
            let (next, _) = self.subdivide(a, b)?;
            if let Some(done) = next.repair(remaining - 1)? {
                return Ok(Some(done));
            }
        }
        Ok(None)
    }

    /// Eliminates the smallest original empty triangle with 1 to 4 subdivisions,
    /// returning to a state whose empty triangles are all on original vertices.
    pub fn eliminate_round(&self) -> Result<Self, FlagifyError> {
        if !self.subdivision_triangles.is_empty() {
            return Err(
                self.violation("round entered with empty triangles through subdivision vertices")
            );
        }
        let tau = self
            .original_triangles
            .first()
            .ok_or(FlagifyError::NoEmptyTriangle)?
            .clone();
        let vs = tau.vertices();
        let (u, v) = [(vs[0], vs[1]), (vs[0], vs[2]), (vs[1], vs[2])]
            .into_iter()
            .find(|&(a, b)| !self.embedded.has_edge(a, b))
            .ok_or_else(|| {
                self.violation(format!("every edge of {tau} lies in the embedded graph"))
            })?;

        let (primary, fresh) = self.subdivide(u, v)?;
        if fresh > 2 {
            return Err(primary.violation(format!(
                "subdividing {{{u}, {v}}} created {fresh} empty triangles through the new vertex"
            )));
        }
        let mut done = primary
            .repair(ROUND_BUDGET - 1)?
            .ok_or_else(|| {
                primary.violation(format!(
                    "no repair of at most {} subdivisions clears the triangles after subdividing {{{u}, {v}}}",
                    ROUND_BUDGET - 1
                ))
            })?;
        if !done.original_triangles.is_subset(&self.original_triangles)
            || done.original_triangles.contains(&tau)
        {
            return Err(done.violation("original empty triangles did not strictly shrink"));
        }
        done.rounds += 1;
        Ok(done)
    }

    /// Runs rounds until the complex is flag. `audit_rounds` recomputes the
    /// empty-triangle index from scratch after every round.
    pub fn run(self, audit_rounds: bool) -> Result<FlagifyOutcome, FlagifyError> {
        let guard = 4 * binomial2(self.n) + binomial2(self.n);
        let mut state = self;
        if audit_rounds && !state.audit() {
            return Err(state.violation("initial index failed its audit"));
        }
        while !state.is_done() {
            state = state.eliminate_round()?;
            if state.trace.len() > guard {
                return Err(state.violation(format!("more than {guard} subdivisions")));
            }
            if audit_rounds && !state.audit() {
                return Err(state.violation(format!("audit failed after round {}", state.rounds)));
            }
        }
        let report = FlagifyReport {
            final_vertex_count: state.complex.vertex_count(),
            subdivision_count: state.trace.len(),
            round_count: state.rounds,
            bound: vertex_bound(state.n),
        };
        Ok(FlagifyOutcome {
            complex: state.complex,
            report,
            trace: state.trace,
        })
    }
}

/// A flag 3-sphere containing `g` as a subgraph, built from the cyclic
/// 4-sphere on `n` vertices. Debug builds audit the index after every round.
pub fn flagify(g: &Graph, n: usize) -> Result<FlagifyOutcome, FlagifyError> {
    FlagifyState::embed(g, n)?.run(cfg!(debug_assertions))
}
