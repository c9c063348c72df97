//! Block graphs: recognition, unique geodesics, and explicit violations.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{ColorId, ColoredGraph, Path};
use crate::multiset::Multiset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a block graph")]
    NotBlockGraph,
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("paths do not share an endpoint or an end edge")]
    NotGlueable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Two internally disjoint geodesics between the same endpoints.
    EqualLength,
    /// A geodesic of length at least two and an internally disjoint path one longer.
    OffByOne,
}

/// Explicit evidence that a connected graph is not a block graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockViolation {
    pub kind: ViolationKind,
    pub u: usize,
    pub v: usize,
    pub path_p: Path,
    pub path_q: Path,
}

impl BlockViolation {
    /// Re-checks the defining properties of the violation against `g`.
    pub fn check(&self, g: &ColoredGraph) -> Result<(), String> {
        let dist = distances(g);
        let n = g.n();
        let d = dist[self.u * n + self.v] as usize;
        for p in [&self.path_p, &self.path_q] {
            let ends = p.endpoints();
            if ends != (self.u.min(self.v), self.u.max(self.v)) {
                return Err("path endpoints differ from (u, v)".into());
            }
            p.validate(g).map_err(|e| e.to_string())?;
        }
        let inner_p = &self.path_p.vertices()[1..self.path_p.len()];
        if self.path_q.vertices()[1..self.path_q.len()]
            .iter()
            .any(|x| inner_p.contains(x))
        {
            return Err("paths share an interior vertex".into());
        }
        match self.kind {
            ViolationKind::EqualLength => {
                if self.path_p.len() != d || self.path_q.len() != d || self.path_p == self.path_q {
                    return Err("equal-length violation with wrong lengths".into());
                }
            }
            ViolationKind::OffByOne => {
                if d < 2 || self.path_p.len() != d || self.path_q.len() != d + 1 {
                    return Err("off-by-one violation with wrong lengths".into());
                }
            }
        }
        Ok(())
    }
}

/// All-pairs BFS distances, row-major; `u32::MAX` marks unreachable pairs.
pub fn distances(g: &ColoredGraph) -> Vec<u32> {
    let n = g.n();
    let mut dist = vec![u32::MAX; n * n];
    let mut queue = Vec::with_capacity(n);
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        queue.clear();
        queue.push(s);
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for &w in g.neighbors(x) {
                if row[w] == u32::MAX {
                    row[w] = row[x] + 1;
                    queue.push(w);
                }
            }
        }
    }
    dist
}

/// Vertex sets of the biconnected components together with their edge counts.
pub fn biconnected_components(g: &ColoredGraph) -> Vec<(Vec<usize>, usize)> {
    struct St<'a> {
        g: &'a ColoredGraph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<(Vec<usize>, usize)>,
    }
    fn dfs(st: &mut St<'_>, u: usize, parent: usize) {
        st.time += 1;
        st.disc[u] = st.time;
        st.low[u] = st.time;
        for &w in st.g.neighbors(u) {
            if st.disc[w] == 0 {
                st.stack.push((u, w));
                dfs(st, w, u);
                st.low[u] = st.low[u].min(st.low[w]);
                if st.low[w] >= st.disc[u] {
                    let mut verts = Vec::new();
                    let mut count = 0;
                    while let Some((a, b)) = st.stack.pop() {
                        count += 1;
                        verts.push(a);
                        verts.push(b);
                        if (a, b) == (u, w) {
                            break;
                        }
                    }
                    verts.sort_unstable();
                    verts.dedup();
                    st.out.push((verts, count));
                }
            } else if w != parent && st.disc[w] < st.disc[u] {
                st.stack.push((u, w));
                st.low[u] = st.low[u].min(st.disc[w]);
            }
        }
    }
    let n = g.n();
    let mut st = St {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for s in 0..n {
        if st.disc[s] == 0 {
            dfs(&mut st, s, usize::MAX);
        }
    }
    st.out.sort();
    st.out
}

/// True iff every biconnected component of the connected graph `g` is a clique.
pub fn is_block_graph(g: &ColoredGraph) -> Result<bool, BlockError> {
    if !g.is_connected() {
        return Err(BlockError::Disconnected);
    }
    Ok(is_block_forest(g))
}

/// True iff every biconnected component is a clique, without requiring connectivity.
pub fn is_block_forest(g: &ColoredGraph) -> bool {
    biconnected_components(g)
        .iter()
        .all(|(vs, m)| *m == vs.len() * (vs.len() - 1) / 2)
}

struct Search<'a> {
    g: &'a ColoredGraph,
    dist: Vec<u32>,
}

impl Search<'_> {
    fn d(&self, a: usize, b: usize) -> u32 {
        self.dist[a * self.g.n() + b]
    }

    /// Visits geodesics `u -> v` avoiding `blocked` in lexicographic order
    /// until `f` returns true. Returns whether it stopped early.
    fn geodesics(
        &self,
        u: usize,
        v: usize,
        blocked: &[usize],
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let mut path = vec![u];
        self.geo_rec(v, blocked, &mut path, f)
    }

    fn geo_rec(
        &self,
        v: usize,
        blocked: &[usize],
        path: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let x = *path.last().expect("nonempty");
        if x == v {
            return f(path);
        }
        let dx = self.d(x, v);
        for &w in self.g.neighbors(x) {
            if self.d(w, v) + 1 == dx && !blocked.contains(&w) {
                path.push(w);
                if self.geo_rec(v, blocked, path, f) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }

    /// Lexicographically first simple path `u -> v` of exactly `len` edges avoiding `blocked`.
    fn path_of_length(&self, u: usize, v: usize, len: usize, blocked: &[usize]) -> Option<Vec<usize>> {
        let mut path = vec![u];
        self.len_rec(v, len, blocked, &mut path).then_some(path)
    }

    fn len_rec(&self, v: usize, remaining: usize, blocked: &[usize], path: &mut Vec<usize>) -> bool {
        let x = *path.last().expect("nonempty");
        if remaining == 0 {
            return x == v;
        }
        for &w in self.g.neighbors(x) {
            if path.contains(&w) || blocked.contains(&w) {
                continue;
            }
            if (w == v) != (remaining == 1) || self.d(w, v) as usize > remaining - 1 {
                continue;
            }
            path.push(w);
            if self.len_rec(v, remaining - 1, blocked, path) {
                return true;
            }
            path.pop();
        }
        false
    }
}

/// Finds a violation of the block-graph property, or `None` for block graphs.
///
/// Pairs are scanned by increasing distance, then by vertex order. The
/// equal-length kind is preferred whenever any pair admits it; among
/// candidates the lexicographically smallest `(u, v, P, Q)` is returned.
pub fn find_block_violation(g: &ColoredGraph) -> Result<Option<BlockViolation>, BlockError> {
    if is_block_graph(g)? {
        return Ok(None);
    }
    let n = g.n();
    let s = Search { g, dist: distances(g) };
    let mut pairs: Vec<(u32, usize, usize)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let d = s.d(u, v);
            if d >= 2 {
                pairs.push((d, u, v));
            }
        }
    }
    pairs.sort_unstable();

    for &(_, u, v) in &pairs {
        let mut found = None;
        s.geodesics(u, v, &[], &mut |p| {
            let interior = &p[1..p.len() - 1];
            let mut q_found = None;
            s.geodesics(u, v, interior, &mut |q| {
                q_found = Some(q.to_vec());
                true
            });
            match q_found {
                Some(q) => {
                    found = Some((p.to_vec(), q));
                    true
                }
                None => false,
            }
        });
        if let Some((p, q)) = found {
            return Ok(Some(BlockViolation {
                kind: ViolationKind::EqualLength,
                u,
                v,
                path_p: Path::new(p),
                path_q: Path::new(q),
            }));
        }
    }

    for &(d, u, v) in &pairs {
        let mut found = None;
        s.geodesics(u, v, &[], &mut |p| {
            let interior = &p[1..p.len() - 1];
            match s.path_of_length(u, v, d as usize + 1, interior) {
                Some(q) => {
                    found = Some((p.to_vec(), q));
                    true
                }
                None => false,
            }
        });
        if let Some((p, q)) = found {
            return Ok(Some(BlockViolation {
                kind: ViolationKind::OffByOne,
                u,
                v,
                path_p: Path::new(p),
                path_q: Path::new(q),
            }));
        }
    }
    unreachable!("a connected non-block graph always admits one of the two violations")
}

/// A validated connected block graph with precomputed distances.
#[derive(Clone)]
pub struct BlockGraph<'g> {
    g: &'g ColoredGraph,
    dist: Vec<u32>,
}

impl<'g> BlockGraph<'g> {
    pub fn new(g: &'g ColoredGraph) -> Result<Self, BlockError> {
        if !is_block_graph(g)? {
            return Err(BlockError::NotBlockGraph);
        }
        Ok(Self { g, dist: distances(g) })
    }

    /// Like [`BlockGraph::new`] but allows several components, each of
    /// which must be a block graph. Paths exist only within a component.
    pub fn new_forest(g: &'g ColoredGraph) -> Result<Self, BlockError> {
        if !is_block_forest(g) {
            return Err(BlockError::NotBlockGraph);
        }
        Ok(Self { g, dist: distances(g) })
    }

    pub fn same_component(&self, u: usize, v: usize) -> bool {
        self.dist[u * self.g.n() + v] != u32::MAX
    }

    pub fn graph(&self) -> &'g ColoredGraph {
        self.g
    }

    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.g.n() + v] as usize
    }

    /// The unique shortest path from `u` to `v`, oriented `u -> v`.
    pub fn path(&self, u: usize, v: usize) -> Path {
        let mut seq = vec![u];
        let mut x = u;
        while x != v {
            let dx = self.dist(x, v);
            x = *self
                .g
                .neighbors(x)
                .iter()
                .find(|&&w| self.dist(w, v) + 1 == dx)
                .expect("connected");
            seq.push(x);
        }
        Path::new(seq)
    }

    pub fn is_shortest(&self, p: &Path) -> bool {
        p.vertices().iter().all(|&v| v < self.g.n())
            && p.validate(self.g).is_ok()
            && p.len() == self.dist(p.start(), p.end())
    }

    /// Glues two shortest paths; see [`glue_paths`].
    pub fn glue(&self, p: &Path, q: &Path) -> Result<Option<Path>, BlockError> {
        for x in [p, q] {
            if x.is_trivial() {
                return Err(BlockError::InvalidPath("glued paths need length at least one".into()));
            }
            if !self.is_shortest(x) {
                return Err(BlockError::InvalidPath(format!("{x:?} is not a shortest path")));
            }
        }
        let orient = |a: &Path, b: &Path| -> [(Path, Path); 4] {
            [
                (a.clone(), b.clone()),
                (a.clone(), b.reversed()),
                (a.reversed(), b.clone()),
                (a.reversed(), b.reversed()),
            ]
        };
        for (a, b) in orient(p, q) {
            let va = a.vertices();
            let vb = b.vertices();
            if va.len() >= 2
                && vb.len() >= 2
                && va[va.len() - 2] == vb[0]
                && va[va.len() - 1] == vb[1]
            {
                let mut seq = va.to_vec();
                seq.extend_from_slice(&vb[2..]);
                let out = Path::new(seq);
                let distinct = {
                    let mut s = out.vertices().to_vec();
                    s.sort_unstable();
                    s.dedup();
                    s.len() == out.vertices().len()
                };
                return Ok((distinct && self.is_shortest(&out)).then_some(out));
            }
        }
        for (a, b) in orient(p, q) {
            if a.end() == b.start() {
                let va = a.vertices();
                let vb = b.vertices();
                let before = va[va.len() - 2];
                let after = vb[1];
                if before == after || self.g.adjacent(before, after) {
                    return Ok(None);
                }
                let mut seq = va.to_vec();
                seq.extend_from_slice(&vb[1..]);
                let out = Path::new(seq);
                return Ok(self.is_shortest(&out).then_some(out));
            }
        }
        Err(BlockError::NotGlueable)
    }
}

/// The unique shortest path between `u` and `v` in a connected block graph.
pub fn shortest_path(g: &ColoredGraph, u: usize, v: usize) -> Result<Path, BlockError> {
    for x in [u, v] {
        if x >= g.n() {
            return Err(BlockError::UnknownVertex(x));
        }
    }
    Ok(BlockGraph::new(g)?.path(u, v))
}

/// Multiset of vertex and edge colors along `p`.
pub fn path_lambda(g: &ColoredGraph, p: &Path) -> Result<Multiset<ColorId>, BlockError> {
    p.validate(g).map_err(|e| BlockError::InvalidPath(e.to_string()))?;
    Ok(path_lambda_unchecked(g, p))
}

pub(crate) fn path_lambda_unchecked(g: &ColoredGraph, p: &Path) -> Multiset<ColorId> {
    let mut m = Multiset::new();
    for &v in p.vertices() {
        m.insert(g.vertex_color(v).clone());
    }
    for e in p.edge_indices(g) {
        m.insert(g.edge_color(e).clone());
    }
    m
}

/// Concatenates two shortest paths of a block graph.
///
/// When they share an endpoint the result is their union, provided the two
/// edges at the shared vertex lie in different maximal cliques (otherwise
/// `None`). When the last edge of one is the first edge of the other the
/// result is the union along that edge.
pub fn glue_paths(g: &ColoredGraph, p: &Path, q: &Path) -> Result<Option<Path>, BlockError> {
    BlockGraph::new(g)?.glue(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    pub(crate) fn cycle(n: usize) -> ColoredGraph {
        let mut b = GraphBuilder::new();
        for i in 1..=n {
            b.add_vertex(i.to_string(), "a");
        }
        for i in 1..=n {
            b.add_edge(i.to_string(), (i % n + 1).to_string(), "x");
        }
        b.build().unwrap()
    }

    fn glued_triangles() -> ColoredGraph {
        let mut b = GraphBuilder::new();
        for i in 1..=5 {
            b.add_vertex(i.to_string(), "a");
        }
        for (u, v) in [(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)] {
            b.add_edge(u.to_string(), v.to_string(), "x");
        }
        b.build().unwrap()
    }

    #[test]
    fn c4_violation() {
        let g = cycle(4);
        assert!(!is_block_graph(&g).unwrap());
        let v = find_block_violation(&g).unwrap().unwrap();
        assert_eq!(v.kind, ViolationKind::EqualLength);
        assert_eq!((v.u, v.v), (0, 2));
        assert_eq!(v.path_p.vertices(), &[0, 1, 2]);
        assert_eq!(v.path_q.vertices(), &[0, 3, 2]);
        v.check(&g).unwrap();
    }

    #[test]
    fn c5_violation() {
        let g = cycle(5);
        let v = find_block_violation(&g).unwrap().unwrap();
        assert_eq!(v.kind, ViolationKind::OffByOne);
        assert_eq!((v.u, v.v), (0, 2));
        assert_eq!(v.path_p.vertices(), &[0, 1, 2]);
        assert_eq!(v.path_q.vertices(), &[0, 4, 3, 2]);
        v.check(&g).unwrap();
    }

    #[test]
    fn glued_triangles_are_block() {
        let g = glued_triangles();
        assert!(is_block_graph(&g).unwrap());
        assert!(find_block_violation(&g).unwrap().is_none());
        let p = shortest_path(&g, 0, 4).unwrap();
        assert_eq!(p.vertices(), &[0, 2, 4]);
        assert_eq!(shortest_path(&g, 4, 0).unwrap(), p.reversed());
        assert_eq!(shortest_path(&g, 1, 1).unwrap().len(), 0);
    }

    #[test]
    fn gluing() {
        let g = glued_triangles();
        let glued = glue_paths(&g, &Path::new(vec![0, 2]), &Path::new(vec![2, 4])).unwrap();
        assert_eq!(glued.unwrap().vertices(), &[0, 2, 4]);
        let same_clique = glue_paths(&g, &Path::new(vec![0, 1]), &Path::new(vec![1, 2])).unwrap();
        assert!(same_clique.is_none());
        let nested = glue_paths(&g, &Path::new(vec![0, 2, 3]), &Path::new(vec![2, 3])).unwrap();
        assert_eq!(nested.unwrap().vertices(), &[0, 2, 3]);
        let overlap = glue_paths(&g, &Path::new(vec![0, 2]), &Path::new(vec![0, 2, 4])).unwrap();
        assert_eq!(overlap.unwrap().vertices(), &[0, 2, 4]);
        assert_eq!(
            glue_paths(&g, &Path::new(vec![0, 1]), &Path::new(vec![3, 4])).unwrap_err(),
            BlockError::NotGlueable
        );
    }

    #[test]
    fn lambda_of_paths() {
        let g = GraphBuilder::new()
            .vertex("1", "a")
            .vertex("2", "b")
            .vertex("3", "a")
            .edge("1", "2", "x")
            .edge("2", "3", "x")
            .build()
            .unwrap();
        let m = path_lambda(&g, &Path::new(vec![0, 1, 2])).unwrap();
        assert_eq!(m.count(&ColorId::vertex("a")), 2);
        assert_eq!(m.count(&ColorId::vertex("b")), 1);
        assert_eq!(m.count(&ColorId::edge("x")), 2);
        assert_eq!(path_lambda(&g, &Path::trivial(1)).unwrap().len(), 1);
        assert!(path_lambda(&g, &Path::new(vec![0, 2])).is_err());
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = GraphBuilder::new().vertex("1", "a").vertex("2", "a").build().unwrap();
        assert_eq!(is_block_graph(&g), Err(BlockError::Disconnected));
    }
}
