//! Pure simplicial complexes stored by their facets.
//!
//! A [`SimplicialComplex`] is an antichain of equal-cardinality facets plus
//! per-vertex provenance tags. The vertex adjacency relation and the star of
//! every vertex (the facets containing it) are derived once at construction
//! and never mutated: every operation that changes the complex returns a new
//! value.

mod io;
mod manifold;
mod nonface;
mod trace;

pub use io::ComplexParseError;
pub use manifold::VerificationReport;
pub use trace::{SubdivisionEvent, SubdivisionTrace, TraceError};

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Serialize, Serializer};
use smallvec::SmallVec;
use thiserror::Error;

use crate::graph::Graph;

pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("no facets given")]
    EmptyInput,
    #[error("facets of mixed cardinality ({0} and {1})")]
    NonPure(usize, usize),
    #[error("facet {0} is contained in facet {1}")]
    DominatedFacet(Face, Face),
    #[error("a face must have at least one vertex")]
    EmptyFace,
    #[error("vertex {0} repeated within a face")]
    RepeatedVertex(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("{0} is not a face")]
    NotAFace(Face),
    #[error("NotAnEdge: {{{0}, {1}}} is not an edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("WrongDimension: expected a pure 3-dimensional complex, found dimension {0}")]
    WrongDimension(usize),
    #[error("invalid tag for vertex {vertex}: {reason}")]
    InvalidTag { vertex: VertexId, reason: String },
}

/// A nonempty, sorted set of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(SmallVec<[VertexId; 5]>);

impl Face {
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self, ComplexError> {
        let mut vs: SmallVec<[VertexId; 5]> = vertices.into_iter().collect();
        if vs.is_empty() {
            return Err(ComplexError::EmptyFace);
        }
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::RepeatedVertex(w[0]));
        }
        Ok(Face(vs))
    }

    /// Caller guarantees `vertices` is strictly increasing and nonempty.
    pub(crate) fn from_sorted(vertices: &[VertexId]) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(SmallVec::from_slice(vertices))
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        is_sorted_subset(&self.0, &other.0)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(serializer)
    }
}

/// Is the sorted slice `small` contained in the sorted slice `big`?
pub(crate) fn is_sorted_subset(small: &[VertexId], big: &[VertexId]) -> bool {
    if small.len() > big.len() {
        return false;
    }
    let mut it = big.iter();
    'outer: for s in small {
        for b in it.by_ref() {
            match b.cmp(s) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// Where a vertex came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VertexTag {
    /// A vertex of the starting complex, at `position` along the moment curve.
    Original { position: u32 },
    /// The vertex added when `parent` was subdivided, as the `step`-th
    /// subdivision vertex (0-based) of the complex.
    Subdivision {
        parent: (VertexId, VertexId),
        step: u32,
    },
}

impl VertexTag {
    pub fn is_original(&self) -> bool {
        matches!(self, VertexTag::Original { .. })
    }
}

/// Face counts per dimension and their alternating sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FVector {
    pub counts: Vec<u64>,
    pub euler: i64,
}

impl FVector {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        let euler = counts
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum();
        Self { counts, euler }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    /// Sorted lexicographically.
    facets: Vec<Face>,
    /// Indexed by vertex id; `None` for ids not present in the complex.
    tags: Vec<Option<VertexTag>>,
    adjacency: Vec<Vec<VertexId>>,
    /// Indices into `facets`, ascending.
    star: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// Builds a complex from its facets. Vertices without an explicit tag are
    /// tagged `Original` with `position = id`.
    pub fn from_facets<I, F>(
        facets: I,
        tags: Option<&BTreeMap<VertexId, VertexTag>>,
    ) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = VertexId>,
    {
        let mut faces = facets
            .into_iter()
            .map(Face::new)
            .collect::<Result<Vec<_>, _>>()?;
        if faces.is_empty() {
            return Err(ComplexError::EmptyInput);
        }
        faces.sort();
        if let Some(w) = faces.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DominatedFacet(w[0].clone(), w[1].clone()));
        }
        let min_len = faces.iter().map(Face::len).min().unwrap_or(0);
        let max_len = faces.iter().map(Face::len).max().unwrap_or(0);
        if min_len != max_len {
            check_antichain(&faces)?;
            return Err(ComplexError::NonPure(min_len, max_len));
        }

        let max_id = faces
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .max()
            .unwrap_or(0) as usize;
        let mut present = vec![false; max_id + 1];
        for f in &faces {
            for &v in f.vertices() {
                present[v as usize] = true;
            }
        }
        let mut tag_vec: Vec<Option<VertexTag>> = present
            .iter()
            .enumerate()
            .map(|(v, &p)| p.then_some(VertexTag::Original { position: v as u32 }))
            .collect();
        if let Some(tags) = tags {
            for (&v, &tag) in tags {
                match tag_vec.get_mut(v as usize) {
                    Some(slot @ Some(_)) => *slot = Some(tag),
                    _ => return Err(ComplexError::UnknownVertex(v)),
                }
            }
        }
        validate_tags(&tag_vec)?;
        Ok(Self::from_canonical(faces, tag_vec))
    }

    /// `facets` must already be sorted, duplicate-free, pure, and every
    /// present vertex must carry a tag.
    pub(crate) fn from_canonical(facets: Vec<Face>, tags: Vec<Option<VertexTag>>) -> Self {
        let n = tags.len();
        let mut star = vec![Vec::new(); n];
        for (i, f) in facets.iter().enumerate() {
            for &v in f.vertices() {
                star[v as usize].push(i as u32);
            }
        }
        let adjacency = star
            .iter()
            .enumerate()
            .map(|(v, st)| {
                let mut nbrs: Vec<VertexId> = st
                    .iter()
                    .flat_map(|&i| facets[i as usize].vertices().iter().copied())
                    .filter(|&u| u as usize != v)
                    .collect();
                nbrs.sort_unstable();
                nbrs.dedup();
                nbrs
            })
            .collect();
        Self {
            facets,
            tags,
            adjacency,
            star,
        }
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Dimension of the (pure) complex, i.e. facet cardinality minus one.
    pub fn dimension(&self) -> usize {
        self.facets[0].len() - 1
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.tags
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_some())
            .map(|(v, _)| v as VertexId)
    }

    pub fn vertex_count(&self) -> usize {
        self.tags.iter().filter(|t| t.is_some()).count()
    }

    /// One more than the largest vertex id; the id the next subdivision gets.
    pub fn next_vertex_id(&self) -> VertexId {
        self.tags.len() as VertexId
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        matches!(self.tags.get(v as usize), Some(Some(_)))
    }

    pub fn tag(&self, v: VertexId) -> Option<VertexTag> {
        self.tags.get(v as usize).copied().flatten()
    }

    pub fn is_original(&self, v: VertexId) -> bool {
        self.tag(v).is_some_and(|t| t.is_original())
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.adjacency.get(v as usize).map_or(&[], Vec::as_slice)
    }

    pub fn are_adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(a, nbrs)| {
            let a = a as VertexId;
            nbrs.iter().filter(move |&&b| b > a).map(move |&b| (a, b))
        })
    }

    /// The 1-skeleton on vertex ids `0..next_vertex_id()`.
    pub fn skeleton(&self) -> Graph {
        Graph::from_sorted_adjacency(self.adjacency.clone())
    }

    /// Facets containing every vertex of the sorted slice `vertices`.
    pub fn facets_containing<'a>(
        &'a self,
        vertices: &'a [VertexId],
    ) -> impl Iterator<Item = &'a Face> + 'a {
        let pivot = vertices
            .iter()
            .min_by_key(|&&v| self.star.get(v as usize).map_or(0, Vec::len))
            .copied();
        let star: &[u32] = match pivot {
            Some(v) => self.star.get(v as usize).map_or(&[], Vec::as_slice),
            None => &[],
        };
        star.iter()
            .map(move |&i| &self.facets[i as usize])
            .filter(move |f| is_sorted_subset(vertices, f.vertices()))
    }

    /// Is the strictly increasing slice `vertices` a face? Unknown vertices
    /// make it a nonface.
    pub fn contains_simplex(&self, vertices: &[VertexId]) -> bool {
        match vertices {
            [] => true,
            [v] => self.has_vertex(*v),
            [a, b] => self.are_adjacent(*a, *b),
            _ => self.facets_containing(vertices).next().is_some(),
        }
    }

    fn check_known(&self, face: &Face) -> Result<(), ComplexError> {
        match face.vertices().iter().find(|&&v| !self.has_vertex(v)) {
            Some(&v) => Err(ComplexError::UnknownVertex(v)),
            None => Ok(()),
        }
    }

    pub fn is_face(&self, face: &Face) -> Result<bool, ComplexError> {
        self.check_known(face)?;
        Ok(self.contains_simplex(face.vertices()))
    }

    /// The link of `face`, keeping the parent complex's vertex ids and tags.
    /// `Ok(None)` means the link is empty, i.e. `face` is a facet.
    pub fn link(&self, face: &Face) -> Result<Option<SimplicialComplex>, ComplexError> {
        self.check_known(face)?;
        let mut rest: Vec<Face> = self
            .facets_containing(face.vertices())
            .map(|f| {
                let vs: SmallVec<[VertexId; 5]> = f
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|&v| !face.contains(v))
                    .collect();
                vs
            })
            .filter(|vs| !vs.is_empty())
            .map(Face)
            .collect();
        if rest.is_empty() {
            return if self.contains_simplex(face.vertices()) {
                Ok(None)
            } else {
                Err(ComplexError::NotAFace(face.clone()))
            };
        }
        rest.sort();
        let mut tags = vec![None; self.tags.len()];
        for f in &rest {
            for &v in f.vertices() {
                tags[v as usize] = self.tags[v as usize];
            }
        }
        while tags.last() == Some(&None) {
            tags.pop();
        }
        Ok(Some(Self::from_canonical(rest, tags)))
    }

    /// Subdivides the edge `{u, v}` with a fresh vertex `w`: each facet
    /// `{u, v} ∪ σ` becomes `{u, w} ∪ σ` and `{v, w} ∪ σ`.
    pub fn subdivide_edge(
        &self,
        u: VertexId,
        v: VertexId,
    ) -> Result<(SimplicialComplex, VertexId), ComplexError> {
        for x in [u, v] {
            if !self.has_vertex(x) {
                return Err(ComplexError::UnknownVertex(x));
            }
        }
        if u == v || !self.are_adjacent(u, v) {
            return Err(ComplexError::NotAnEdge(u, v));
        }
        let (u, v) = (u.min(v), u.max(v));
        let w = self.next_vertex_id();
        let step = self
            .tags
            .iter()
            .filter(|t| matches!(t, Some(VertexTag::Subdivision { .. })))
            .count() as u32;

        let hit: HashSet<u32> = self.star[u as usize]
            .iter()
            .copied()
            .filter(|&i| self.facets[i as usize].contains(v))
            .collect();
        let mut facets = Vec::with_capacity(self.facets.len() + hit.len());
        for (i, f) in self.facets.iter().enumerate() {
            if !hit.contains(&(i as u32)) {
                facets.push(f.clone());
                continue;
            }
            for drop in [u, v] {
                // w is larger than every existing id, so it goes last.
                let mut vs: SmallVec<[VertexId; 5]> = f
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|&x| x != drop)
                    .collect();
                vs.push(w);
                facets.push(Face(vs));
            }
        }
        facets.sort();
        let mut tags = self.tags.clone();
        tags.push(Some(VertexTag::Subdivision {
            parent: (u, v),
            step,
        }));
        Ok((Self::from_canonical(facets, tags), w))
    }

    /// Exact face counts `f_0, ..., f_dim`.
    pub fn f_vector(&self) -> FVector {
        let k = self.facets[0].len();
        let mut seen: Vec<HashSet<SmallVec<[VertexId; 5]>>> = vec![HashSet::new(); k];
        for f in &self.facets {
            let vs = f.vertices();
            for mask in 1u32..(1 << k) {
                let sub: SmallVec<[VertexId; 5]> = (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| vs[i])
                    .collect();
                seen[sub.len() - 1].insert(sub);
            }
        }
        FVector::from_counts(seen.iter().map(|s| s.len() as u64).collect())
    }
}

fn check_antichain(faces: &[Face]) -> Result<(), ComplexError> {
    // faces sorted; compare every face against the larger ones.
    for small in faces {
        for big in faces {
            if big.len() > small.len() && small.is_subset_of(big) {
                return Err(ComplexError::DominatedFacet(small.clone(), big.clone()));
            }
        }
    }
    Ok(())
}

fn validate_tags(tags: &[Option<VertexTag>]) -> Result<(), ComplexError> {
    let mut positions = HashSet::new();
    for (v, tag) in tags.iter().enumerate() {
        let vertex = v as VertexId;
        match tag {
            Some(VertexTag::Original { position }) => {
                if !positions.insert(*position) {
                    return Err(ComplexError::InvalidTag {
                        vertex,
                        reason: format!("original position {position} used twice"),
                    });
                }
            }
            Some(VertexTag::Subdivision { parent: (a, b), .. }) => {
                let existed =
                    |x: VertexId| x < vertex && matches!(tags.get(x as usize), Some(Some(_)));
                if a == b || !existed(*a) || !existed(*b) {
                    return Err(ComplexError::InvalidTag {
                        vertex,
                        reason: format!("parent edge {{{a}, {b}}} does not predate the vertex"),
                    });
                }
            }
            None => {}
        }
    }
    Ok(())
}
