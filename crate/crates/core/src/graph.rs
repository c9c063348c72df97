//! Colored simple graphs, paths, and the JSON graph document.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::multiset::Multiset;

/// The two disjoint color namespaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Namespace {
    Vertex,
    Edge,
}

/// A color: namespace plus label. Vertex and edge colors never compare equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ColorId {
    pub namespace: Namespace,
    pub label: String,
}

impl ColorId {
    pub fn vertex(label: impl Into<String>) -> Self {
        Self {
            namespace: Namespace::Vertex,
            label: label.into(),
        }
    }

    pub fn edge(label: impl Into<String>) -> Self {
        Self {
            namespace: Namespace::Edge,
            label: label.into(),
        }
    }

    pub fn is_vertex(&self) -> bool {
        self.namespace == Namespace::Vertex
    }
}

impl fmt::Debug for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.namespace {
            Namespace::Vertex => write!(f, "v:{}", self.label),
            Namespace::Edge => write!(f, "e:{}", self.label),
        }
    }
}

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("malformed graph document: {0}")]
    Malformed(String),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("edge refers to unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
    #[error("loop at vertex {0:?}")]
    Loop(String),
    #[error("color label {0:?} is used both as a vertex color and as an edge color")]
    NamespaceCollision(String),
    #[error("not a path of the graph: {0}")]
    NotAPath(String),
}

const NO_EDGE: u32 = u32::MAX;

/// A simple undirected graph with colored vertices and edges.
///
/// Vertices are dense indices `0..n` in input order; the user's string ids
/// are kept for reporting. Edges are stored as `(u, v)` with `u < v`, sorted.
#[derive(Clone)]
pub struct ColoredGraph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    edge_at: Vec<u32>,
    edges: Vec<(usize, usize)>,
    palette: Vec<ColorId>,
    vcolor: Vec<u32>,
    ecolor: Vec<u32>,
}

impl PartialEq for ColoredGraph {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids
            && self.edges == other.edges
            && (0..self.n()).all(|v| self.vertex_color(v) == other.vertex_color(v))
            && (0..self.edges.len()).all(|e| self.edge_color(e) == other.edge_color(e))
    }
}

impl Eq for ColoredGraph {}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColoredGraph")
            .field("vertices", &self.ids)
            .field("edges", &self.edges.len())
            .finish()
    }
}

/// Incremental construction of a [`ColoredGraph`] from user ids and labels.
#[derive(Default, Clone, Debug)]
pub struct GraphBuilder {
    vertices: Vec<(String, String)>,
    edges: Vec<(String, String, String)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: impl Into<String>, color: impl Into<String>) -> Self {
        self.vertices.push((id.into(), color.into()));
        self
    }

    pub fn edge(
        mut self,
        u: impl Into<String>,
        v: impl Into<String>,
        color: impl Into<String>,
    ) -> Self {
        self.edges.push((u.into(), v.into(), color.into()));
        self
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, color: impl Into<String>) {
        self.vertices.push((id.into(), color.into()));
    }

    pub fn add_edge(&mut self, u: impl Into<String>, v: impl Into<String>, color: impl Into<String>) {
        self.edges.push((u.into(), v.into(), color.into()));
    }

    pub fn build(self) -> Result<ColoredGraph, GraphError> {
        let vlabels: BTreeSet<&str> = self.vertices.iter().map(|(_, c)| c.as_str()).collect();
        for (_, _, c) in &self.edges {
            if vlabels.contains(c.as_str()) {
                return Err(GraphError::NamespaceCollision(c.clone()));
            }
        }
        let vertices = self
            .vertices
            .into_iter()
            .map(|(id, c)| (id, ColorId::vertex(c)))
            .collect();
        let edges = self
            .edges
            .into_iter()
            .map(|(u, v, c)| (u, v, ColorId::edge(c)))
            .collect();
        ColoredGraph::from_parts(vertices, edges)
    }
}

impl ColoredGraph {
    /// Builds a graph from colored vertices and colored edges given by user id.
    pub fn from_parts(
        vertices: Vec<(String, ColorId)>,
        edges: Vec<(String, String, ColorId)>,
    ) -> Result<Self, GraphError> {
        let mut index = HashMap::with_capacity(vertices.len());
        let mut ids = Vec::with_capacity(vertices.len());
        for (i, (id, _)) in vertices.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(id.clone()));
            }
            ids.push(id.clone());
        }
        let mut seen_v = BTreeSet::new();
        let mut seen_e = BTreeSet::new();
        for (_, c) in &vertices {
            if c.namespace != Namespace::Vertex {
                return Err(GraphError::Malformed(format!(
                    "vertex color {:?} is not in the vertex namespace",
                    c.label
                )));
            }
            seen_v.insert(c.label.clone());
        }
        for (_, _, c) in &edges {
            if c.namespace != Namespace::Edge {
                return Err(GraphError::Malformed(format!(
                    "edge color {:?} is not in the edge namespace",
                    c.label
                )));
            }
            seen_e.insert(c.label.clone());
        }
        if let Some(l) = seen_v.intersection(&seen_e).next() {
            return Err(GraphError::NamespaceCollision(l.clone()));
        }

        let n = ids.len();
        let mut raw = Vec::with_capacity(edges.len());
        let mut edge_set = BTreeSet::new();
        for (u, v, c) in edges {
            let iu = *index.get(&u).ok_or_else(|| GraphError::UnknownVertex(u.clone()))?;
            let iv = *index.get(&v).ok_or_else(|| GraphError::UnknownVertex(v.clone()))?;
            if iu == iv {
                return Err(GraphError::Loop(u));
            }
            let key = (iu.min(iv), iu.max(iv));
            if !edge_set.insert(key) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            raw.push((key, c));
        }
        raw.sort_by(|a, b| a.0.cmp(&b.0));

        let mut palette: Vec<ColorId> = vertices.iter().map(|(_, c)| c.clone()).collect();
        palette.extend(raw.iter().map(|(_, c)| c.clone()));
        palette.sort();
        palette.dedup();
        let lookup = |c: &ColorId| palette.binary_search(c).expect("color in palette") as u32;

        let vcolor: Vec<u32> = vertices.iter().map(|(_, c)| lookup(c)).collect();
        let ecolor: Vec<u32> = raw.iter().map(|(_, c)| lookup(c)).collect();
        let edges: Vec<(usize, usize)> = raw.iter().map(|(k, _)| *k).collect();

        let mut adj = vec![Vec::new(); n];
        let mut edge_at = vec![NO_EDGE; n * n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            adj[u].push(v);
            adj[v].push(u);
            edge_at[u * n + v] = e as u32;
            edge_at[v * n + u] = e as u32;
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Self {
            ids,
            index,
            adj,
            edge_at,
            edges,
            palette,
            vcolor,
            ecolor,
        })
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edge_at[u * self.n() + v] != NO_EDGE
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let e = self.edge_at[u * self.n() + v];
        (e != NO_EDGE).then_some(e as usize)
    }

    /// Edge endpoints `(u, v)` with `u < v`, in sorted order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_color(&self, v: usize) -> &ColorId {
        &self.palette[self.vcolor[v] as usize]
    }

    pub fn edge_color(&self, e: usize) -> &ColorId {
        &self.palette[self.ecolor[e] as usize]
    }

    pub fn edge_color_between(&self, u: usize, v: usize) -> Option<&ColorId> {
        self.edge_index(u, v).map(|e| self.edge_color(e))
    }

    /// Every color in use, sorted (vertex colors first).
    pub fn palette(&self) -> &[ColorId] {
        &self.palette
    }

    pub fn vertex_colors(&self) -> Vec<ColorId> {
        let mut out: Vec<ColorId> = (0..self.n()).map(|v| self.vertex_color(v).clone()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn edge_colors(&self) -> Vec<ColorId> {
        let mut out: Vec<ColorId> = (0..self.num_edges())
            .map(|e| self.edge_color(e).clone())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub(crate) fn vc(&self, v: usize) -> u32 {
        self.vcolor[v]
    }

    pub(crate) fn ec(&self, e: usize) -> u32 {
        self.ecolor[e]
    }

    pub(crate) fn ec_between(&self, u: usize, v: usize) -> Option<u32> {
        self.edge_index(u, v).map(|e| self.ecolor[e])
    }

    pub(crate) fn color_of_index(&self, c: u32) -> &ColorId {
        &self.palette[c as usize]
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Vertex sets of the connected components, ordered by least vertex.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![s];
            comp[s] = c;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<ColoredGraph> {
        self.component_vertex_sets()
            .iter()
            .map(|vs| self.induced_subgraph(vs))
            .collect()
    }

    /// Induced subgraph on `vertices`; vertex order follows the original graph.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> ColoredGraph {
        let mut vs: Vec<usize> = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let keep: BTreeSet<usize> = vs.iter().copied().collect();
        let verts = vs
            .iter()
            .map(|&v| (self.ids[v].clone(), self.vertex_color(v).clone()))
            .collect();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, (u, v))| keep.contains(u) && keep.contains(v))
            .map(|(e, &(u, v))| (self.ids[u].clone(), self.ids[v].clone(), self.edge_color(e).clone()))
            .collect();
        ColoredGraph::from_parts(verts, edges).expect("induced subgraph of a valid graph is valid")
    }

    /// All inclusion-maximal cliques, each sorted, listed lexicographically.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let p: Vec<usize> = (0..self.n()).collect();
        self.bron_kerbosch(&mut Vec::new(), p, Vec::new(), &mut out);
        for c in &mut out {
            c.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&w| self.adjacent(u, w)).count())
            .expect("nonempty");
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&v| !self.adjacent(pivot, v))
            .collect();
        let mut p = p;
        let mut x = x;
        for v in candidates {
            let np = p.iter().copied().filter(|&w| self.adjacent(v, w)).collect();
            let nx = x.iter().copied().filter(|&w| self.adjacent(v, w)).collect();
            r.push(v);
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }

    /// Color multiset of a set of vertices and the edges among them.
    pub fn clique_colors(&self, vertices: &[usize]) -> (Multiset<ColorId>, Multiset<ColorId>) {
        let mut vc = Multiset::new();
        let mut ec = Multiset::new();
        for (i, &u) in vertices.iter().enumerate() {
            vc.insert(self.vertex_color(u).clone());
            for &w in &vertices[i + 1..] {
                if let Some(c) = self.edge_color_between(u, w) {
                    ec.insert(c.clone());
                }
            }
        }
        (vc, ec)
    }

    pub fn to_document(&self) -> GraphDoc {
        GraphDoc {
            vertices: (0..self.n())
                .map(|v| VertexDoc {
                    id: self.ids[v].clone(),
                    color: self.vertex_color(v).label.clone(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(e, &(u, v))| EdgeDoc {
                    u: self.ids[u].clone(),
                    v: self.ids[v].clone(),
                    color: self.edge_color(e).label.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("graph serializes")
    }

    /// Looks up a vertex by user id.
    pub fn require(&self, id: &str) -> Result<usize, GraphError> {
        self.index_of(id)
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: String,
    pub color: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub u: String,
    pub v: String,
    pub color: String,
}

/// The JSON graph document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
}

impl GraphDoc {
    pub fn into_graph(self) -> Result<ColoredGraph, GraphError> {
        let mut b = GraphBuilder::new();
        for v in self.vertices {
            b.add_vertex(v.id, v.color);
        }
        for e in self.edges {
            b.add_edge(e.u, e.v, e.color);
        }
        b.build()
    }
}

pub fn parse_graph(text: &str) -> Result<ColoredGraph, GraphError> {
    let doc: GraphDoc =
        serde_json::from_str(text).map_err(|e| GraphError::Malformed(e.to_string()))?;
    doc.into_graph()
}

/// A path `v0 .. vk` stored by vertex sequence.
///
/// Equality, ordering and hashing use the canonical orientation (the lesser
/// of the sequence and its reversal), so a path equals its reversal.
#[derive(Clone)]
pub struct Path {
    vertices: Vec<usize>,
}

impl Path {
    pub fn new(vertices: Vec<usize>) -> Self {
        assert!(!vertices.is_empty(), "a path has at least one vertex");
        Self { vertices }
    }

    pub fn trivial(v: usize) -> Self {
        Self { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("nonempty")
    }

    /// Unordered endpoint pair `(min, max)`.
    pub fn endpoints(&self) -> (usize, usize) {
        let (a, b) = (self.start(), self.end());
        (a.min(b), a.max(b))
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.vertices.clone();
        v.reverse();
        Path { vertices: v }
    }

    pub fn canonical(&self) -> Vec<usize> {
        let rev: Vec<usize> = self.vertices.iter().rev().copied().collect();
        if rev < self.vertices {
            rev
        } else {
            self.vertices.clone()
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Edge indices along the path. Panics if consecutive vertices are not adjacent.
    pub fn edge_indices(&self, g: &ColoredGraph) -> Vec<usize> {
        self.vertices
            .windows(2)
            .map(|w| g.edge_index(w[0], w[1]).expect("consecutive path vertices are adjacent"))
            .collect()
    }

    /// Checks that this is a path of `g`: distinct vertices, consecutive ones
    /// adjacent, and no chords (the induced subgraph is itself a path).
    pub fn validate(&self, g: &ColoredGraph) -> Result<(), GraphError> {
        let k = self.vertices.len();
        for &v in &self.vertices {
            if v >= g.n() {
                return Err(GraphError::NotAPath(format!("vertex index {v} out of range")));
            }
        }
        let distinct: BTreeSet<usize> = self.vertices.iter().copied().collect();
        if distinct.len() != k {
            return Err(GraphError::NotAPath("repeated vertex".into()));
        }
        for i in 0..k {
            for j in i + 1..k {
                let adj = g.adjacent(self.vertices[i], self.vertices[j]);
                if adj != (j == i + 1) {
                    let msg = if adj { "chord" } else { "missing edge" };
                    return Err(GraphError::NotAPath(format!(
                        "{msg} between {} and {}",
                        g.id(self.vertices[i]),
                        g.id(self.vertices[j])
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn display(&self, g: &ColoredGraph) -> String {
        self.vertices
            .iter()
            .map(|&v| g.id(v))
            .collect::<Vec<_>>()
            .join("-")
    }

    pub fn user_ids(&self, g: &ColoredGraph) -> Vec<String> {
        self.vertices.iter().map(|&v| g.id(v).to_string()).collect()
    }

    /// Alternating vertex/edge color sequence.
    pub fn color_sequence(&self, g: &ColoredGraph) -> Vec<ColorId> {
        let mut out = Vec::with_capacity(2 * self.vertices.len());
        for (i, &v) in self.vertices.iter().enumerate() {
            if i > 0 {
                let u = self.vertices[i - 1];
                out.push(g.edge_color_between(u, v).expect("adjacent").clone());
            }
            out.push(g.vertex_color(v).clone());
        }
        out
    }
}

impl PartialEq for Path {
    fn eq(&self, other: &Self) -> bool {
        self.vertices.len() == other.vertices.len() && self.canonical() == other.canonical()
    }
}

impl Eq for Path {}

impl Hash for Path {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical().cmp(&other.canonical())
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Path{:?}", self.vertices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aba() -> ColoredGraph {
        GraphBuilder::new()
            .vertex("1", "a")
            .vertex("2", "b")
            .vertex("3", "a")
            .edge("1", "2", "x")
            .edge("2", "3", "x")
            .build()
            .unwrap()
    }

    #[test]
    fn parses_small_path() {
        let text = r#"{"vertices":[{"id":"1","color":"a"},{"id":"2","color":"b"},{"id":"3","color":"a"}],
            "edges":[{"u":"1","v":"2","color":"x"},{"u":"3","v":"2","color":"x"}]}"#;
        let g = parse_graph(text).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g, aba());
    }

    #[test]
    fn rejects_bad_documents() {
        let collide = r#"{"vertices":[{"id":"1","color":"a"},{"id":"2","color":"b"}],
            "edges":[{"u":"1","v":"2","color":"a"}]}"#;
        assert!(matches!(parse_graph(collide), Err(GraphError::NamespaceCollision(l)) if l == "a"));
        let dup = r#"{"vertices":[{"id":"1","color":"a"},{"id":"2","color":"b"}],
            "edges":[{"u":"1","v":"2","color":"x"},{"u":"2","v":"1","color":"y"}]}"#;
        assert!(matches!(parse_graph(dup), Err(GraphError::DuplicateEdge(..))));
        let lp = r#"{"vertices":[{"id":"1","color":"a"}],"edges":[{"u":"1","v":"1","color":"x"}]}"#;
        assert!(matches!(parse_graph(lp), Err(GraphError::Loop(_))));
        assert!(matches!(parse_graph("{"), Err(GraphError::Malformed(_))));
        let unknown = r#"{"vertices":[{"id":"1","color":"a"}],"edges":[{"u":"1","v":"9","color":"x"}]}"#;
        assert!(matches!(parse_graph(unknown), Err(GraphError::UnknownVertex(_))));
    }

    #[test]
    fn vertex_and_edge_colors_differ() {
        assert_ne!(ColorId::vertex("a"), ColorId::edge("a"));
    }

    #[test]
    fn round_trip() {
        let g = aba();
        assert_eq!(parse_graph(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn components() {
        let g = GraphBuilder::new()
            .vertex("a", "c")
            .vertex("b", "c")
            .vertex("c", "c")
            .vertex("d", "c")
            .edge("a", "b", "x")
            .edge("c", "d", "x")
            .build()
            .unwrap();
        let comps = g.connected_components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.n() == 2 && c.is_connected()));
        assert!(GraphBuilder::new().build().unwrap().connected_components().is_empty());
        assert_eq!(aba().connected_components(), vec![aba()]);
    }

    #[test]
    fn cliques() {
        assert_eq!(aba().maximal_cliques(), vec![vec![0, 1], vec![1, 2]]);
        let mut b = GraphBuilder::new();
        for i in 0..4 {
            b.add_vertex(i.to_string(), "a");
        }
        for i in 0..4 {
            for j in i + 1..4 {
                b.add_edge(i.to_string(), j.to_string(), "x");
            }
        }
        assert_eq!(b.build().unwrap().maximal_cliques(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn path_identity_is_undirected() {
        let p = Path::new(vec![0, 1, 2]);
        assert_eq!(p, p.reversed());
        assert!(p.validate(&aba()).is_ok());
        assert!(Path::new(vec![0, 2]).validate(&aba()).is_err());
    }
}
