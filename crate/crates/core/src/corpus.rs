//! Built-in example graphs and random block-graph generators.

use rand::Rng;

use crate::automorphism::orbits;
use crate::graph::{ColoredGraph, GraphBuilder};
use crate::schemes::{j15, shrikhande_colored};

/// A named example together with its expected classification.
pub struct CorpusEntry {
    pub name: &'static str,
    pub graph: ColoredGraph,
    pub binomial: bool,
    pub note: &'static str,
}

fn build(vertices: &[(&str, &str)], edges: &[(&str, &str, &str)]) -> ColoredGraph {
    let mut b = GraphBuilder::new();
    for &(id, c) in vertices {
        b.add_vertex(id, c);
    }
    for &(u, v, c) in edges {
        b.add_edge(u, v, c);
    }
    b.build().expect("corpus graphs are valid")
}

pub fn cycle(n: usize, vertex_color: &str, edge_color: &str) -> ColoredGraph {
    let mut b = GraphBuilder::new();
    for i in 1..=n {
        b.add_vertex(i.to_string(), vertex_color);
    }
    for i in 1..=n {
        b.add_edge(i.to_string(), (i % n + 1).to_string(), edge_color);
    }
    b.build().expect("valid cycle")
}

pub fn aba_path() -> ColoredGraph {
    build(&[("1", "a"), ("2", "b"), ("3", "a")], &[("1", "2", "x"), ("2", "3", "x")])
}

pub fn glued_triangles() -> ColoredGraph {
    build(
        &[("1", "c"), ("2", "a"), ("3", "a"), ("4", "a"), ("5", "a")],
        &[
            ("1", "2", "x"),
            ("1", "3", "x"),
            ("2", "3", "y"),
            ("1", "4", "x"),
            ("1", "5", "x"),
            ("4", "5", "y"),
        ],
    )
}

pub fn star() -> ColoredGraph {
    build(
        &[("1", "c"), ("2", "a"), ("3", "a"), ("4", "a")],
        &[("1", "2", "x"), ("1", "3", "x"), ("1", "4", "x")],
    )
}

pub fn chain_abba() -> ColoredGraph {
    build(
        &[("1", "a"), ("2", "b"), ("3", "b"), ("4", "a")],
        &[("1", "2", "x"), ("2", "3", "y"), ("3", "4", "x")],
    )
}

pub fn monochrome_k4() -> ColoredGraph {
    let mut b = GraphBuilder::new();
    for i in 1..=4 {
        b.add_vertex(i.to_string(), "a");
    }
    for i in 1..=4 {
        for j in i + 1..=4 {
            b.add_edge(i.to_string(), j.to_string(), "x");
        }
    }
    b.build().expect("valid")
}

pub fn path_abcba() -> ColoredGraph {
    build(
        &[("1", "a"), ("2", "b"), ("3", "c"), ("4", "b"), ("5", "a")],
        &[("1", "2", "x"), ("2", "3", "y"), ("3", "4", "y"), ("4", "5", "x")],
    )
}

/// Two end vertices of one color with different incident edge colors.
pub fn vertex_irregular_path() -> ColoredGraph {
    build(&[("1", "a"), ("2", "b"), ("3", "a")], &[("1", "2", "x"), ("2", "3", "y")])
}

/// Vertex-regular `K4` in which the color `x` joins two `a` vertices and
/// two `b` vertices, so the two `x` edges see different triangles.
pub fn k4_edge_irregular() -> ColoredGraph {
    build(
        &[("1", "a"), ("2", "a"), ("3", "b"), ("4", "b")],
        &[
            ("1", "2", "x"),
            ("3", "4", "x"),
            ("1", "3", "z"),
            ("1", "4", "z"),
            ("2", "3", "z"),
            ("2", "4", "z"),
        ],
    )
}

/// A triangle-regular block graph with three clique levels and seven
/// vertex colors. Reconstructed from a verbal description; not source data.
pub fn three_level() -> ColoredGraph {
    build(
        &[
            ("A", "1"),
            ("B1", "2"),
            ("B2", "2"),
            ("C1", "3"),
            ("C2", "3"),
            ("D1", "4"),
            ("D2", "4"),
            ("E1", "5"),
            ("E2", "5"),
            ("F1", "6"),
            ("F2", "6"),
            ("G1", "7"),
            ("G2", "7"),
            ("G3", "7"),
            ("G4", "7"),
        ],
        &[
            ("A", "B1", "p"),
            ("A", "B2", "p"),
            ("B1", "B2", "q"),
            ("B1", "C1", "r"),
            ("B1", "D1", "s"),
            ("C1", "D1", "t"),
            ("B2", "C2", "r"),
            ("B2", "D2", "s"),
            ("C2", "D2", "t"),
            ("A", "E1", "u"),
            ("A", "E2", "u"),
            ("C1", "F1", "v"),
            ("C2", "F2", "v"),
            ("D1", "G1", "w"),
            ("D1", "G2", "w"),
            ("D2", "G3", "w"),
            ("D2", "G4", "w"),
        ],
    )
}

/// The bundled examples, in a fixed order.
pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry {
            name: "shrikhande",
            graph: shrikhande_colored(),
            binomial: true,
            note: "K16 colored by the Shrikhande graph; triangle-regular but not RCOP",
        },
        CorpusEntry {
            name: "j15",
            graph: j15(),
            binomial: true,
            note: "complete graph from a proper Jordan scheme on 15 points",
        },
        CorpusEntry {
            name: "c4",
            graph: cycle(4, "a", "x"),
            binomial: false,
            note: "4-cycle; two geodesics of equal length",
        },
        CorpusEntry {
            name: "c5",
            graph: cycle(5, "a", "x"),
            binomial: false,
            note: "5-cycle; geodesic plus a path one longer",
        },
        CorpusEntry {
            name: "aba-path",
            graph: aba_path(),
            binomial: true,
            note: "path with symmetric coloring",
        },
        CorpusEntry {
            name: "glued-triangles",
            graph: glued_triangles(),
            binomial: true,
            note: "two triangles sharing a vertex",
        },
        CorpusEntry {
            name: "star",
            graph: star(),
            binomial: true,
            note: "K1,3 with uniform leaves",
        },
        CorpusEntry {
            name: "chain-abba",
            graph: chain_abba(),
            binomial: true,
            note: "palindromic 4-chain",
        },
        CorpusEntry {
            name: "monochrome-k4",
            graph: monochrome_k4(),
            binomial: true,
            note: "one vertex color, one edge color",
        },
        CorpusEntry {
            name: "path-abcba",
            graph: path_abcba(),
            binomial: true,
            note: "palindromic 5-path",
        },
        CorpusEntry {
            name: "vertex-irregular-path",
            graph: vertex_irregular_path(),
            binomial: false,
            note: "same-colored ends with different incident edge colors",
        },
        CorpusEntry {
            name: "k4-edge-irregular",
            graph: k4_edge_irregular(),
            binomial: false,
            note: "vertex-regular K4 whose x edges see different triangles",
        },
        CorpusEntry {
            name: "three-level",
            graph: three_level(),
            binomial: true,
            note: "reconstructed three-level block graph",
        },
    ]
}

pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

/// Random connected block graph: a root clique, then `extra` cliques each
/// glued at a uniformly chosen existing vertex. Clique sizes lie in
/// `2..=max_clique`. All vertices share one color and all edges another.
pub fn random_block_graph<R: Rng>(rng: &mut R, extra: usize, max_clique: usize) -> ColoredGraph {
    let max_clique = max_clique.max(2);
    let mut n = 0usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let add_clique = |n: &mut usize, edges: &mut Vec<(usize, usize)>, at: Option<usize>, size: usize| {
        let mut members: Vec<usize> = at.into_iter().collect();
        while members.len() < size {
            members.push(*n);
            *n += 1;
        }
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                edges.push((a, b));
            }
        }
    };
    let root = rng.gen_range(1..=max_clique);
    add_clique(&mut n, &mut edges, None, root);
    for _ in 0..extra {
        let at = rng.gen_range(0..n);
        let size = rng.gen_range(2..=max_clique);
        add_clique(&mut n, &mut edges, Some(at), size);
    }
    let mut b = GraphBuilder::new();
    for v in 0..n {
        b.add_vertex((v + 1).to_string(), "v");
    }
    for (a, c) in edges {
        b.add_edge((a + 1).to_string(), (c + 1).to_string(), "e");
    }
    b.build().expect("valid block graph")
}

/// Recolors `g` by the orbits of its color-preserving automorphism group,
/// which yields a triangle-regular coloring.
pub fn orbit_coloring(g: &ColoredGraph) -> ColoredGraph {
    let o = orbits(g);
    let mut b = GraphBuilder::new();
    for v in 0..g.n() {
        b.add_vertex(g.id(v), format!("o{}", o.vertex[v]));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        b.add_edge(g.id(u), g.id(v), format!("f{}", o.edge[e]));
    }
    b.build().expect("orbit labels are disjoint")
}

/// Random coloring with at most `vc` vertex colors and `ec` edge colors.
pub fn random_coloring<R: Rng>(rng: &mut R, g: &ColoredGraph, vc: usize, ec: usize) -> ColoredGraph {
    let mut b = GraphBuilder::new();
    for v in 0..g.n() {
        b.add_vertex(g.id(v), format!("c{}", rng.gen_range(0..vc.max(1))));
    }
    for &(u, v) in g.edges() {
        b.add_edge(g.id(u), g.id(v), format!("x{}", rng.gen_range(0..ec.max(1))));
    }
    b.build().expect("label prefixes differ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::decide_binomial;
    use crate::regularity::regularity_report;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn classifications() {
        for e in corpus() {
            assert_eq!(decide_binomial(&e.graph).binomial, e.binomial, "{}", e.name);
        }
    }

    #[test]
    fn orbit_colorings_are_regular() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = random_block_graph(&mut rng, 4, 4);
            let h = orbit_coloring(&g);
            assert!(regularity_report(&h).triangle_regular);
            assert!(decide_binomial(&h).binomial);
        }
    }
}
