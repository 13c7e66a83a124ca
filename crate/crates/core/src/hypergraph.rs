//! Simple hypergraphs over a fixed, ordered ambient vertex list.
//!
//! Vertex indices never change once a hypergraph is built: restricting to a
//! subcollection of edges or deleting vertices only changes which vertices are
//! *active* (lie in some edge). The same indices are used as variable indices
//! of the polynomial ring, so a hypergraph and its edge ideal always agree.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex index {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("empty edge")]
    EmptyEdge,
    #[error("duplicate edge {{{0}}}")]
    DuplicateEdge(String),
    #[error("edge {{{inner}}} is contained in edge {{{outer}}}")]
    EdgeContainment { inner: String, outer: String },
    #[error("edge {{{0}}} is not an edge of the hypergraph")]
    UnknownEdge(String),
}

/// A named vertex together with its position in the ambient vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub name: String,
    pub index: usize,
}

/// An edge: a nonempty, strictly increasing list of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge(Vec<usize>);

impl Edge {
    /// Builds an edge from arbitrary indices, sorting and deduplicating them.
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        Edge(set.into_iter().collect())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Edge) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.by_ref().any(|w| w == v))
    }

    pub fn intersection(&self, other: &Edge) -> Edge {
        Edge(
            self.0
                .iter()
                .copied()
                .filter(|&v| other.contains(v))
                .collect(),
        )
    }

    pub fn difference(&self, other: &Edge) -> Edge {
        Edge(
            self.0
                .iter()
                .copied()
                .filter(|&v| !other.contains(v))
                .collect(),
        )
    }

    pub fn is_disjoint(&self, other: &Edge) -> bool {
        self.0.iter().all(|&v| !other.contains(v))
    }
}

impl std::cmp::Ord for Edge {
    /// Size first, then the lexicographic index sequence.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl std::cmp::PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<usize>> for Edge {
    fn from(v: Vec<usize>) -> Self {
        Edge::new(v)
    }
}

impl<const N: usize> From<[usize; N]> for Edge {
    fn from(v: [usize; N]) -> Self {
        Edge::new(v)
    }
}

/// A simple hypergraph: no empty edges, no duplicates, no edge inside another.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

/// Result of [`Hypergraph::connected_components`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// One subcollection per edge-connected component, ordered by least edge.
    pub components: Vec<Hypergraph>,
    /// Declared vertices that lie in no edge.
    pub isolated: Vec<usize>,
}

impl Hypergraph {
    /// Validating constructor from vertex names and edges given by names.
    pub fn from_names<S, E, V>(vertex_names: &[S], edges: E) -> Result<Self, HypergraphError>
    where
        S: AsRef<str>,
        E: IntoIterator<Item = V>,
        V: IntoIterator,
        V::Item: AsRef<str>,
    {
        let mut lookup = HashMap::new();
        let mut vertices = Vec::with_capacity(vertex_names.len());
        for (index, name) in vertex_names.iter().enumerate() {
            let name = name.as_ref().to_string();
            if lookup.insert(name.clone(), index).is_some() {
                return Err(HypergraphError::DuplicateVertex(name));
            }
            vertices.push(Vertex { name, index });
        }
        let mut idx_edges = Vec::new();
        for edge in edges {
            let mut idx = Vec::new();
            for name in edge {
                let name = name.as_ref();
                match lookup.get(name) {
                    Some(&i) => idx.push(i),
                    None => return Err(HypergraphError::UnknownVertex(name.to_string())),
                }
            }
            idx_edges.push(idx);
        }
        Self::build(vertices, idx_edges)
    }

    /// Validating constructor from vertex names and index edges.
    pub fn new<S: AsRef<str>>(
        vertex_names: &[S],
        edges: impl IntoIterator<Item = impl Into<Edge>>,
    ) -> Result<Self, HypergraphError> {
        let mut seen = BTreeSet::new();
        let mut vertices = Vec::with_capacity(vertex_names.len());
        for (index, name) in vertex_names.iter().enumerate() {
            let name = name.as_ref().to_string();
            if !seen.insert(name.clone()) {
                return Err(HypergraphError::DuplicateVertex(name));
            }
            vertices.push(Vertex { name, index });
        }
        let edges: Vec<Vec<usize>> = edges.into_iter().map(|e| e.into().0).collect();
        Self::build(vertices, edges)
    }

    /// Vertices named `x1..xn`.
    pub fn with_numbered_vertices(
        n: usize,
        edges: impl IntoIterator<Item = impl Into<Edge>>,
    ) -> Result<Self, HypergraphError> {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        Self::new(&names, edges)
    }

    fn build(vertices: Vec<Vertex>, raw: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        let n = vertices.len();
        let mut edges = Vec::with_capacity(raw.len());
        for e in raw {
            if let Some(&bad) = e.iter().find(|&&v| v >= n) {
                return Err(HypergraphError::VertexOutOfRange(bad));
            }
            let e = Edge::new(e);
            if e.is_empty() {
                return Err(HypergraphError::EmptyEdge);
            }
            edges.push(e);
        }
        edges.sort();
        let g = Hypergraph { vertices, edges };
        for w in g.edges.windows(2) {
            if w[0] == w[1] {
                return Err(HypergraphError::DuplicateEdge(g.edge_label(&w[0])));
            }
        }
        // Sorted by size, so only later edges can contain earlier ones.
        for (i, a) in g.edges.iter().enumerate() {
            for b in &g.edges[i + 1..] {
                if a.is_subset(b) {
                    return Err(HypergraphError::EdgeContainment {
                        inner: g.edge_label(a),
                        outer: g.edge_label(b),
                    });
                }
            }
        }
        Ok(g)
    }

    /// Keeps only the inclusion-minimal edges of `edges` (dropping empties and
    /// duplicates). Used for derived hypergraphs such as colon results, where
    /// containments arise naturally.
    pub fn minimalized(vertices: Vec<Vertex>, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut cand: Vec<Edge> = edges.into_iter().filter(|e| !e.is_empty()).collect();
        cand.sort();
        cand.dedup();
        let mut kept: Vec<Edge> = Vec::new();
        for e in cand {
            if !kept.iter().any(|k| k.is_subset(&e)) {
                kept.push(e);
            }
        }
        kept.sort();
        Hypergraph {
            vertices,
            edges: kept,
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v].name
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn vertex_names(&self) -> Vec<String> {
        self.vertices.iter().map(|v| v.name.clone()).collect()
    }

    /// Resolves a list of names to an edge (not necessarily an edge of `self`).
    pub fn edge_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Edge, HypergraphError> {
        let mut idx = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            idx.push(
                self.vertex_index(n)
                    .ok_or_else(|| HypergraphError::UnknownVertex(n.to_string()))?,
            );
        }
        Ok(Edge::new(idx))
    }

    pub fn edge_names(&self, e: &Edge) -> Vec<String> {
        e.vertices()
            .iter()
            .map(|&v| self.vertex_name(v).to_string())
            .collect()
    }

    pub fn edge_label(&self, e: &Edge) -> String {
        self.edge_names(e).join(",")
    }

    pub fn has_edge(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub(crate) fn require_edge(&self, e: &Edge) -> Result<(), HypergraphError> {
        if self.has_edge(e) {
            Ok(())
        } else {
            Err(HypergraphError::UnknownEdge(self.edge_label_lossy(e)))
        }
    }

    fn edge_label_lossy(&self, e: &Edge) -> String {
        e.vertices()
            .iter()
            .map(|&v| {
                self.vertices
                    .get(v)
                    .map_or_else(|| format!("#{v}"), |x| x.name.clone())
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    fn require_vertex(&self, v: usize) -> Result<(), HypergraphError> {
        if v < self.vertices.len() {
            Ok(())
        } else {
            Err(HypergraphError::VertexOutOfRange(v))
        }
    }

    /// True when every edge has exactly two vertices.
    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    /// Vertices lying in at least one edge, ascending.
    pub fn active_vertices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .edges
            .iter()
            .flat_map(|e| e.0.iter().copied())
            .collect();
        set.into_iter().collect()
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.edges.iter().any(|e| e.contains(v))
    }

    /// Open neighborhood `N(v)`: vertices other than `v` sharing an edge with it.
    pub fn neighborhood(&self, v: usize) -> Result<BTreeSet<usize>, HypergraphError> {
        self.require_vertex(v)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| e.contains(v))
            .flat_map(|e| e.0.iter().copied())
            .filter(|&w| w != v)
            .collect())
    }

    /// Closed neighborhood `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<BTreeSet<usize>, HypergraphError> {
        let mut n = self.neighborhood(v)?;
        n.insert(v);
        Ok(n)
    }

    pub fn connected_components(&self) -> Components {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        for e in &self.edges {
            let first = e.0[0];
            for &v in &e.0[1..] {
                let (a, b) = (find(&mut parent, first), find(&mut parent, v));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
        for e in &self.edges {
            let root = find(&mut parent, e.0[0]);
            groups.entry(root).or_default().push(e.clone());
        }
        let mut components: Vec<Hypergraph> = groups
            .into_values()
            .map(|edges| Hypergraph {
                vertices: self.vertices.clone(),
                edges,
            })
            .collect();
        components.sort_by(|a, b| a.edges[0].cmp(&b.edges[0]));
        let isolated = (0..n).filter(|&v| !self.is_active(v)).collect();
        Components {
            components,
            isolated,
        }
    }

    /// Same ambient vertices, only the selected edges.
    pub fn subcollection<'a>(
        &self,
        edge_subset: impl IntoIterator<Item = &'a Edge>,
    ) -> Result<Hypergraph, HypergraphError> {
        let mut edges = Vec::new();
        for e in edge_subset {
            self.require_edge(e)?;
            edges.push(e.clone());
        }
        edges.sort();
        edges.dedup();
        Ok(Hypergraph {
            vertices: self.vertices.clone(),
            edges,
        })
    }

    /// `self` with one edge removed (no-op when absent).
    pub fn without_edge(&self, e: &Edge) -> Hypergraph {
        Hypergraph {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().filter(|f| *f != e).cloned().collect(),
        }
    }

    /// Hypergraph-level counterpart of the monomial colon `I(H) : x^e`.
    ///
    /// Returns `(H', Z)` where `Z` collects the vertices `z` with `h \ e = {z}`
    /// for some edge `h`, and `H'` is the minimalized family `{h \ e}` with
    /// every edge meeting `Z` removed. Then `I(H) : x^e = I(H') + (Z)`.
    pub fn colon(&self, e: &Edge) -> (Hypergraph, BTreeSet<usize>) {
        let diffs: Vec<Edge> = self.edges.iter().map(|h| h.difference(e)).collect();
        let z: BTreeSet<usize> = diffs
            .iter()
            .filter(|d| d.len() == 1)
            .map(|d| d.0[0])
            .collect();
        let rest = diffs
            .into_iter()
            .filter(|d| d.len() >= 2 && d.0.iter().all(|v| !z.contains(v)));
        (Hypergraph::minimalized(self.vertices.clone(), rest), z)
    }

    /// Disjoint union with fresh vertices; used for sanity properties.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Hypergraph {
        let offset = self.vertices.len();
        let mut vertices = self.vertices.clone();
        for v in &other.vertices {
            vertices.push(Vertex {
                name: format!("{}'", v.name),
                index: offset + v.index,
            });
        }
        let mut edges = self.edges.clone();
        edges.extend(
            other
                .edges
                .iter()
                .map(|e| Edge(e.0.iter().map(|&v| v + offset).collect())),
        );
        Hypergraph::minimalized(vertices, edges)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .edges
            .iter()
            .map(|e| format!("{{{}}}", self.edge_label(e)))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Bitmask of a vertex collection; callers guarantee indices below 128.
pub(crate) fn mask_of(vs: impl IntoIterator<Item = usize>) -> u128 {
    vs.into_iter().fold(0u128, |m, v| m | (1u128 << v))
}

pub(crate) fn mask_members(mut m: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        out.push(v);
        m &= m - 1;
    }
    out
}
