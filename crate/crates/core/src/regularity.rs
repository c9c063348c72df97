//! Vertex, edge, and triangle regularity of colored graphs.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{ColorId, ColoredGraph};
use crate::multiset::Multiset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegularityError {
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("no edge between {0} and {1}")]
    UnknownEdge(usize, usize),
}

/// A colored triangle seen from one of its edges: the color of the opposite
/// vertex and the two other edge colors (sorted).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TriangleType {
    pub apex: ColorId,
    pub sides: (ColorId, ColorId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularityKind {
    VertexRegular,
    EdgeRegular,
    EdgeTriangleRegular,
    VertexTriangleRegular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "items", rename_all = "snake_case")]
pub enum Witness {
    Vertices { a: usize, b: usize },
    Edges { a: (usize, usize), b: (usize, usize) },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub kind: RegularityKind,
    pub witness: Witness,
}

impl Counterexample {
    pub fn describe(&self, g: &ColoredGraph) -> String {
        let kind = match self.kind {
            RegularityKind::VertexRegular => "vertex regularity",
            RegularityKind::EdgeRegular => "edge regularity",
            RegularityKind::EdgeTriangleRegular => "edge triangle regularity",
            RegularityKind::VertexTriangleRegular => "vertex triangle regularity",
        };
        match self.witness {
            Witness::Vertices { a, b } => format!("{kind} fails at vertices {} and {}", g.id(a), g.id(b)),
            Witness::Edges { a, b } => format!(
                "{kind} fails at edges {{{}, {}}} and {{{}, {}}}",
                g.id(a.0),
                g.id(a.1),
                g.id(b.0),
                g.id(b.1)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub vertex_regular: bool,
    pub edge_regular: bool,
    pub vertex_triangle_regular: bool,
    pub edge_triangle_regular: bool,
    pub triangle_regular: bool,
    /// First failing property in the order vertex, edge, edge-triangle,
    /// vertex-triangle, with the lexicographically first violating pair.
    pub counterexample: Option<Counterexample>,
}

pub fn incident_edge_colors(g: &ColoredGraph, v: usize) -> Result<Multiset<ColorId>, RegularityError> {
    if v >= g.n() {
        return Err(RegularityError::UnknownVertex(v));
    }
    Ok(g.neighbors(v)
        .iter()
        .map(|&w| g.edge_color_between(v, w).expect("adjacent").clone())
        .collect())
}

pub fn incident_triangles_of_edge(
    g: &ColoredGraph,
    u: usize,
    v: usize,
) -> Result<Multiset<TriangleType>, RegularityError> {
    if u >= g.n() || v >= g.n() || !g.adjacent(u, v) {
        return Err(RegularityError::UnknownEdge(u, v));
    }
    Ok(edge_triangle_key(g, u, v)
        .into_iter()
        .map(|(a, s, t)| TriangleType {
            apex: g.color_of_index(a).clone(),
            sides: (g.color_of_index(s).clone(), g.color_of_index(t).clone()),
        })
        .collect())
}

/// Multiset of triangles at `v`, each recorded by its three edge colors.
pub fn vertex_triangle_types(
    g: &ColoredGraph,
    v: usize,
) -> Result<Multiset<[ColorId; 3]>, RegularityError> {
    if v >= g.n() {
        return Err(RegularityError::UnknownVertex(v));
    }
    Ok(vertex_triangle_key(g, v)
        .into_iter()
        .map(|t| t.map(|c| g.color_of_index(c).clone()))
        .collect())
}

fn incident_key(g: &ColoredGraph, v: usize) -> Vec<u32> {
    let mut out: Vec<u32> = g
        .neighbors(v)
        .iter()
        .map(|&w| g.ec_between(v, w).expect("adjacent"))
        .collect();
    out.sort_unstable();
    out
}

fn endpoint_key(g: &ColoredGraph, u: usize, v: usize) -> (u32, u32) {
    let (a, b) = (g.vc(u), g.vc(v));
    (a.min(b), a.max(b))
}

fn common_neighbors(g: &ColoredGraph, u: usize, v: usize) -> impl Iterator<Item = usize> + '_ {
    g.neighbors(u).iter().copied().filter(move |&w| g.adjacent(v, w))
}

fn edge_triangle_key(g: &ColoredGraph, u: usize, v: usize) -> Vec<(u32, u32, u32)> {
    let mut out: Vec<(u32, u32, u32)> = common_neighbors(g, u, v)
        .map(|w| {
            let s = g.ec_between(u, w).expect("adjacent");
            let t = g.ec_between(v, w).expect("adjacent");
            (g.vc(w), s.min(t), s.max(t))
        })
        .collect();
    out.sort_unstable();
    out
}

fn vertex_triangle_key(g: &ColoredGraph, v: usize) -> Vec<[u32; 3]> {
    let nb = g.neighbors(v);
    let mut out = Vec::new();
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if let Some(c) = g.ec_between(a, b) {
                let mut t = [g.ec_between(v, a).expect("adj"), g.ec_between(v, b).expect("adj"), c];
                t.sort_unstable();
                out.push(t);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Compares each class member against the class's first member and returns
/// the lexicographically first violating pair.
fn first_violation<K: PartialEq, T: Copy + Ord>(
    items: &[(u32, T)],
    key: impl Fn(T) -> K,
) -> Option<(T, T)> {
    let mut classes: std::collections::BTreeMap<u32, Vec<T>> = Default::default();
    for &(c, t) in items {
        classes.entry(c).or_default().push(t);
    }
    let mut best: Option<(T, T)> = None;
    for members in classes.values() {
        let rep = members[0];
        let rk = key(rep);
        // A non-uniform class always has a partner differing from its first member.
        if let Some(&m) = members[1..].iter().find(|&&m| key(m) != rk) {
            if best.is_none_or(|b| (rep, m) < b) {
                best = Some((rep, m));
            }
        }
    }
    best
}

pub fn regularity_report(g: &ColoredGraph) -> RegularityReport {
    let vertices: Vec<(u32, usize)> = (0..g.n()).map(|v| (g.vc(v), v)).collect();
    let edges: Vec<(u32, (usize, usize))> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &uv)| (g.ec(e), uv))
        .collect();

    let v_bad = first_violation(&vertices, |v| incident_key(g, v));
    let e_bad = first_violation(&edges, |(u, v)| endpoint_key(g, u, v));
    let et_bad = first_violation(&edges, |(u, v)| edge_triangle_key(g, u, v));
    let vt_bad = first_violation(&vertices, |v| vertex_triangle_key(g, v));

    let counterexample = if let Some((a, b)) = v_bad {
        Some(Counterexample {
            kind: RegularityKind::VertexRegular,
            witness: Witness::Vertices { a, b },
        })
    } else if let Some((a, b)) = e_bad {
        Some(Counterexample {
            kind: RegularityKind::EdgeRegular,
            witness: Witness::Edges { a, b },
        })
    } else if let Some((a, b)) = et_bad {
        Some(Counterexample {
            kind: RegularityKind::EdgeTriangleRegular,
            witness: Witness::Edges { a, b },
        })
    } else {
        vt_bad.map(|(a, b)| Counterexample {
            kind: RegularityKind::VertexTriangleRegular,
            witness: Witness::Vertices { a, b },
        })
    };

    let (vr, er, etr) = (v_bad.is_none(), e_bad.is_none(), et_bad.is_none());
    RegularityReport {
        vertex_regular: vr,
        edge_regular: er,
        vertex_triangle_regular: vt_bad.is_none(),
        edge_triangle_regular: etr,
        triangle_regular: vr && er && etr,
        counterexample,
    }
}

/// Number of triangles at `u` whose edge colors are exactly `{a, b, c}`,
/// obtained from edge counts and per-edge triangle counts instead of
/// direct enumeration. Requires pairwise distinct `a, b, c`.
pub fn triangle_count_from_edges(
    g: &ColoredGraph,
    u: usize,
    colors: [&ColorId; 3],
) -> Option<usize> {
    let [a, b, c] = colors;
    if a == b || b == c || a == c {
        return None;
    }
    let mut total = 0;
    for (own, others) in [(a, (b, c)), (b, (a, c)), (c, (a, b))] {
        let incident: Vec<usize> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| g.edge_color_between(u, w) == Some(own))
            .collect();
        let k = incident.len();
        let t = match incident.first() {
            None => 0,
            Some(&w) => common_neighbors(g, u, w)
                .filter(|&z| {
                    let s = g.edge_color_between(u, z).expect("adj");
                    let r = g.edge_color_between(w, z).expect("adj");
                    (s == others.0 && r == others.1) || (s == others.1 && r == others.0)
                })
                .count(),
        };
        total += k * t;
    }
    Some(total / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    fn distinct_colors_triangle_with_tail() -> ColoredGraph {
        GraphBuilder::new()
            .vertex("1", "v1")
            .vertex("2", "v2")
            .vertex("3", "v3")
            .vertex("4", "v4")
            .edge("1", "2", "e1")
            .edge("2", "3", "e2")
            .edge("1", "3", "e3")
            .edge("3", "4", "e4")
            .build()
            .unwrap()
    }

    #[test]
    fn all_distinct_colors_are_regular() {
        let r = regularity_report(&distinct_colors_triangle_with_tail());
        assert!(r.triangle_regular && r.vertex_triangle_regular);
        assert!(r.counterexample.is_none());
    }

    #[test]
    fn path_center_sees_two_x_edges() {
        let g = GraphBuilder::new()
            .vertex("1", "a")
            .vertex("2", "b")
            .vertex("3", "a")
            .edge("1", "2", "x")
            .edge("2", "3", "x")
            .build()
            .unwrap();
        assert_eq!(incident_edge_colors(&g, 1).unwrap().count(&ColorId::edge("x")), 2);
        assert!(incident_edge_colors(&g, 7).is_err());
        assert!(incident_triangles_of_edge(&g, 0, 1).unwrap().is_empty());
        assert!(regularity_report(&g).triangle_regular);
    }

    #[test]
    fn monochrome_triangle() {
        let g = GraphBuilder::new()
            .vertex("1", "a")
            .vertex("2", "a")
            .vertex("3", "a")
            .edge("1", "2", "x")
            .edge("2", "3", "x")
            .edge("1", "3", "x")
            .build()
            .unwrap();
        let t = incident_triangles_of_edge(&g, 0, 1).unwrap();
        assert_eq!(t.len(), 1);
        let only = t.iter().next().unwrap().0;
        assert_eq!(only.apex, ColorId::vertex("a"));
        assert_eq!(only.sides, (ColorId::edge("x"), ColorId::edge("x")));
    }

    #[test]
    fn irregular_path_reports_first_pair() {
        let g = GraphBuilder::new()
            .vertex("1", "a")
            .vertex("2", "b")
            .vertex("3", "a")
            .edge("1", "2", "x")
            .edge("2", "3", "y")
            .build()
            .unwrap();
        let r = regularity_report(&g);
        assert!(!r.vertex_regular && r.edge_regular && !r.triangle_regular);
        assert_eq!(
            r.counterexample.unwrap(),
            Counterexample {
                kind: RegularityKind::VertexRegular,
                witness: Witness::Vertices { a: 0, b: 2 }
            }
        );
    }

    #[test]
    fn triangle_count_identity() {
        let g = distinct_colors_triangle_with_tail();
        let c = [&ColorId::edge("e1"), &ColorId::edge("e2"), &ColorId::edge("e3")];
        assert_eq!(triangle_count_from_edges(&g, 0, c), Some(1));
        assert_eq!(triangle_count_from_edges(&g, 3, c), Some(0));
    }
}
