//! Backtracking search for structure-preserving vertex permutations.

use crate::graph::ColoredGraph;

/// Searches for a bijection `f` on `0..n` with `allowed(v, f(v))` for every
/// `v` and `compatible(a, b, f(a), f(b))` for every pair, extending `fixed`.
///
/// Vertices are assigned most-constrained first, so the seeded searches used
/// for orbit tests stay small on the graphs handled here.
pub(crate) fn backtrack(
    n: usize,
    allowed: &dyn Fn(usize, usize) -> bool,
    compatible: &dyn Fn(usize, usize, usize, usize) -> bool,
    fixed: &[(usize, usize)],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut mapped = Vec::with_capacity(n);
    for &(a, b) in fixed {
        if map[a] != usize::MAX {
            if map[a] != b {
                return None;
            }
            continue;
        }
        if used[b] || !allowed(a, b) {
            return None;
        }
        if mapped.iter().any(|&x: &usize| !compatible(a, x, b, map[x])) {
            return None;
        }
        map[a] = b;
        used[b] = true;
        mapped.push(a);
    }
    let mut st = State {
        n,
        allowed,
        compatible,
        map,
        used,
        mapped,
    };
    st.extend().then_some(st.map)
}

struct State<'a> {
    n: usize,
    allowed: &'a dyn Fn(usize, usize) -> bool,
    compatible: &'a dyn Fn(usize, usize, usize, usize) -> bool,
    map: Vec<usize>,
    used: Vec<bool>,
    mapped: Vec<usize>,
}

impl State<'_> {
    fn candidates(&self, v: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&t| {
                !self.used[t]
                    && (self.allowed)(v, t)
                    && self
                        .mapped
                        .iter()
                        .all(|&a| (self.compatible)(v, a, t, self.map[a]))
            })
            .collect()
    }

    fn extend(&mut self) -> bool {
        if self.mapped.len() == self.n {
            return true;
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        for v in 0..self.n {
            if self.map[v] != usize::MAX {
                continue;
            }
            let c = self.candidates(v);
            if c.is_empty() {
                return false;
            }
            if best.as_ref().is_none_or(|(_, bc)| c.len() < bc.len()) {
                let single = c.len() == 1;
                best = Some((v, c));
                if single {
                    break;
                }
            }
        }
        let (v, cands) = best.expect("an unmapped vertex exists");
        for t in cands {
            self.map[v] = t;
            self.used[t] = true;
            self.mapped.push(v);
            if self.extend() {
                return true;
            }
            self.mapped.pop();
            self.used[t] = false;
            self.map[v] = usize::MAX;
        }
        false
    }
}

fn neighborhood_signature(g: &ColoredGraph, v: usize) -> Vec<(u32, u32)> {
    let mut s: Vec<(u32, u32)> = g
        .neighbors(v)
        .iter()
        .map(|&w| (g.ec_between(v, w).expect("adjacent"), g.vc(w)))
        .collect();
    s.sort_unstable();
    s
}

/// A color-preserving automorphism (vertex and edge colors) extending `fixed`.
pub fn find_automorphism(g: &ColoredGraph, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    let sig: Vec<(u32, Vec<(u32, u32)>)> = (0..g.n())
        .map(|v| (g.vc(v), neighborhood_signature(g, v)))
        .collect();
    let allowed = |a: usize, b: usize| sig[a] == sig[b];
    let compatible = |a: usize, x: usize, b: usize, y: usize| g.ec_between(a, x) == g.ec_between(b, y);
    backtrack(g.n(), &allowed, &compatible, fixed)
}

/// Orbits of the color-preserving automorphism group on vertices and edges,
/// given as orbit labels (the least member of each orbit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    pub vertex: Vec<usize>,
    pub edge: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Incrementally discovered orbit structure of the automorphism group.
pub(crate) struct OrbitTracker<'g> {
    g: &'g ColoredGraph,
    vertices: UnionFind,
    edges: UnionFind,
}

impl<'g> OrbitTracker<'g> {
    pub(crate) fn new(g: &'g ColoredGraph) -> Self {
        Self {
            g,
            vertices: UnionFind::new(g.n()),
            edges: UnionFind::new(g.num_edges()),
        }
    }

    fn absorb(&mut self, gamma: &[usize]) {
        for v in 0..self.g.n() {
            self.vertices.union(v, gamma[v]);
        }
        for (e, &(a, b)) in self.g.edges().iter().enumerate() {
            let f = self.g.edge_index(gamma[a], gamma[b]).expect("automorphism maps edges to edges");
            self.edges.union(e, f);
        }
    }

    /// Whether some automorphism maps vertex `a` to `b`.
    pub(crate) fn vertices_related(&mut self, a: usize, b: usize) -> bool {
        if self.vertices.find(a) == self.vertices.find(b) {
            return true;
        }
        match find_automorphism(self.g, &[(a, b)]) {
            Some(gamma) => {
                self.absorb(&gamma);
                true
            }
            None => false,
        }
    }

    /// Whether some automorphism maps edge `e` to edge `f`.
    pub(crate) fn edges_related(&mut self, e: usize, f: usize) -> bool {
        if self.edges.find(e) == self.edges.find(f) {
            return true;
        }
        let (a, b) = self.g.edges()[e];
        let (c, d) = self.g.edges()[f];
        for fixed in [[(a, c), (b, d)], [(a, d), (b, c)]] {
            if let Some(gamma) = find_automorphism(self.g, &fixed) {
                self.absorb(&gamma);
                return true;
            }
        }
        false
    }
}

pub fn orbits(g: &ColoredGraph) -> Orbits {
    let mut t = OrbitTracker::new(g);
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            if g.vc(a) == g.vc(b) {
                t.vertices_related(a, b);
            }
        }
    }
    for e in 0..g.num_edges() {
        for f in e + 1..g.num_edges() {
            if g.ec(e) == g.ec(f) {
                t.edges_related(e, f);
            }
        }
    }
    Orbits {
        vertex: (0..g.n()).map(|v| t.vertices.find(v)).collect(),
        edge: (0..g.num_edges()).map(|e| t.edges.find(e)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    #[test]
    fn path_flip() {
        let g = GraphBuilder::new()
            .vertex("1", "a")
            .vertex("2", "b")
            .vertex("3", "a")
            .edge("1", "2", "x")
            .edge("2", "3", "x")
            .build()
            .unwrap();
        assert_eq!(find_automorphism(&g, &[(0, 2)]), Some(vec![2, 1, 0]));
        assert_eq!(find_automorphism(&g, &[(0, 1)]), None);
        let o = orbits(&g);
        assert_eq!(o.vertex, vec![0, 1, 0]);
        assert_eq!(o.edge, vec![0, 0]);
    }

    #[test]
    fn edge_colors_break_symmetry() {
        let g = GraphBuilder::new()
            .vertex("1", "a")
            .vertex("2", "b")
            .vertex("3", "a")
            .edge("1", "2", "x")
            .edge("2", "3", "y")
            .build()
            .unwrap();
        assert_eq!(find_automorphism(&g, &[(0, 2)]), None);
    }
}
