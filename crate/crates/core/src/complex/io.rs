//! Plain-text complex format.
//!
//! ```text
//! # comment
//! 0 1 2 3
//! 0 1 2 4
//! tags:
//! 0 original 1
//! 5 subdiv 0 1 0
//! ```
//!
//! Facet lines hold space-separated vertex ids. The optional `tags:` line
//! switches to one `id original <position>` or `id subdiv <u> <v> <step>` line
//! per vertex; when present, every vertex must be tagged.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{ComplexError, SimplicialComplex, VertexId, VertexTag};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("tags section is missing vertex {0}")]
    IncompleteTags(VertexId),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

impl SimplicialComplex {
    /// Serializes facets in lexicographic order followed by a complete tag section.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# {} vertices, {} facets",
            self.vertex_count(),
            self.facet_count()
        );
        for f in self.facets() {
            let line: Vec<String> = f.vertices().iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s.push_str("tags:\n");
        for v in self.vertices() {
            match self.tag(v) {
                Some(VertexTag::Original { position }) => {
                    let _ = writeln!(s, "{v} original {position}");
                }
                Some(VertexTag::Subdivision {
                    parent: (a, b),
                    step,
                }) => {
                    let _ = writeln!(s, "{v} subdiv {a} {b} {step}");
                }
                None => unreachable!("present vertices are tagged"),
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, ComplexParseError> {
        let mut facets: Vec<Vec<VertexId>> = Vec::new();
        let mut tags: Option<BTreeMap<VertexId, VertexTag>> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |message: String| ComplexParseError::Syntax {
                line: i + 1,
                message,
            };
            if line == "tags:" {
                if tags.is_some() {
                    return Err(syntax("duplicate tags header".into()));
                }
                tags = Some(BTreeMap::new());
                continue;
            }
            let num = |t: &str| {
                t.parse::<u32>()
                    .map_err(|_| syntax(format!("expected a non-negative integer, got `{t}`")))
            };
            match tags.as_mut() {
                None => {
                    let facet = line
                        .split_whitespace()
                        .map(num)
                        .collect::<Result<Vec<_>, _>>()?;
                    facets.push(facet);
                }
                Some(tags) => {
                    let tokens: Vec<&str> = line.split_whitespace().collect();
                    let (id, tag) = match tokens.as_slice() {
                        [id, "original", pos] => (
                            num(id)?,
                            VertexTag::Original {
                                position: num(pos)?,
                            },
                        ),
                        [id, "subdiv", a, b, step] => (
                            num(id)?,
                            VertexTag::Subdivision {
                                parent: (num(a)?, num(b)?),
                                step: num(step)?,
                            },
                        ),
                        _ => return Err(syntax(format!("malformed tag line `{line}`"))),
                    };
                    if tags.insert(id, tag).is_some() {
                        return Err(syntax(format!("vertex {id} tagged twice")));
                    }
                }
            }
        }
        let x = SimplicialComplex::from_facets(facets, tags.as_ref())?;
        if let Some(tags) = &tags {
            if let Some(v) = x.vertices().find(|v| !tags.contains_key(v)) {
                return Err(ComplexParseError::IncompleteTags(v));
            }
        }
        Ok(x)
    }
}
