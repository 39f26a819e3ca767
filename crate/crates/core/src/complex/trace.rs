use std::fmt::Write as _;

use thiserror::Error;

use super::{ComplexError, SimplicialComplex, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubdivisionEvent {
    pub edge: (VertexId, VertexId),
    pub new_vertex: VertexId,
}

/// Ordered log of edge subdivisions, replayable against the starting complex.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubdivisionTrace {
    pub events: Vec<SubdivisionEvent>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraceError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("event {index}: expected new vertex {expected}, subdivision produced {got}")]
    VertexMismatch {
        index: usize,
        expected: VertexId,
        got: VertexId,
    },
    #[error("trace line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl SubdivisionTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn push(&mut self, edge: (VertexId, VertexId), new_vertex: VertexId) {
        self.events.push(SubdivisionEvent { edge, new_vertex });
    }

    pub fn replay(&self, base: &SimplicialComplex) -> Result<SimplicialComplex, TraceError> {
        let mut x = base.clone();
        for (index, ev) in self.events.iter().enumerate() {
            let (next, w) = x.subdivide_edge(ev.edge.0, ev.edge.1)?;
            if w != ev.new_vertex {
                return Err(TraceError::VertexMismatch {
                    index,
                    expected: ev.new_vertex,
                    got: w,
                });
            }
            x = next;
        }
        Ok(x)
    }

    /// One `subdiv u v -> w` line per event.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for ev in &self.events {
            let _ = writeln!(s, "subdiv {} {} -> {}", ev.edge.0, ev.edge.1, ev.new_vertex);
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, TraceError> {
        let mut trace = Self::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: &str| TraceError::Parse {
                line: i + 1,
                message: message.to_string(),
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let [kw, u, v, arrow, w] = tokens.as_slice() else {
                return Err(parse_err("expected `subdiv u v -> w`"));
            };
            if *kw != "subdiv" || *arrow != "->" {
                return Err(parse_err("expected `subdiv u v -> w`"));
            }
            let num = |t: &str| {
                t.parse::<VertexId>()
                    .map_err(|_| parse_err("bad vertex id"))
            };
            trace.push((num(u)?, num(v)?), num(w)?);
        }
        Ok(trace)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::simplex_boundary;
    use super::*;

    #[test]
    fn text_round_trip_and_replay() {
        let base = simplex_boundary(5);
        let (x1, w1) = base.subdivide_edge(0, 1).unwrap();
        let (x2, w2) = x1.subdivide_edge(0, w1).unwrap();
        let mut t = SubdivisionTrace::new();
        t.push((0, 1), w1);
        t.push((0, w1), w2);
        let text = t.to_text();
        assert_eq!(text, "subdiv 0 1 -> 5\nsubdiv 0 5 -> 6\n");
        let parsed = SubdivisionTrace::from_text(&text).unwrap();
        assert_eq!(parsed, t);
        assert_eq!(parsed.replay(&base).unwrap(), x2);
    }

    #[test]
    fn replay_errors() {
        let base = simplex_boundary(5);
        let mut t = SubdivisionTrace::new();
        t.push((0, 1), 5);
        t.push((0, 1), 6);
        assert_eq!(
            t.replay(&base),
            Err(TraceError::Complex(ComplexError::NotAnEdge(0, 1)))
        );
        let mut t = SubdivisionTrace::new();
        t.push((0, 1), 9);
        assert!(matches!(
            t.replay(&base),
            Err(TraceError::VertexMismatch { .. })
        ));
        assert_eq!(SubdivisionTrace::new().replay(&base).unwrap(), base);
        assert!(SubdivisionTrace::from_text("subdiv 0 1 5").is_err());
    }
}
