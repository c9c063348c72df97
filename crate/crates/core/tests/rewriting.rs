use std::collections::BTreeMap;

use cgm_core::block::BlockGraph;
use cgm_core::corpus::{corpus, orbit_coloring, random_block_graph};
use cgm_core::graph::{ColorId, ColoredGraph, Path};
use cgm_core::multiset::Multiset;
use cgm_core::rewrite::{collection_colors, replay, rewrite_paths};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Key = (Multiset<ColorId>, Multiset<ColorId>);

fn multisets(k: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        cur.push(i);
        multisets(k, n, i, cur, out);
        cur.pop();
    }
}

/// Returns the number of (A, B) pairs checked.
fn check_all(g: &ColoredGraph, max_size: usize) -> usize {
    let bg = BlockGraph::new(g).unwrap();
    let mut geodesics = Vec::new();
    for i in 0..g.n() {
        for j in i..g.n() {
            geodesics.push(bg.path(i, j));
        }
    }
    let mut checked = 0;
    for k in 1..=max_size {
        let mut combos = Vec::new();
        multisets(k, geodesics.len(), 0, &mut Vec::new(), &mut combos);
        let mut groups: BTreeMap<Key, Vec<Vec<Path>>> = BTreeMap::new();
        for c in combos {
            let paths: Vec<Path> = c.iter().map(|&i| geodesics[i].clone()).collect();
            groups.entry(collection_colors(g, &paths)).or_default().push(paths);
        }
        for members in groups.values() {
            for a in members {
                for b in members {
                    let trace = rewrite_paths(g, a, b)
                        .unwrap_or_else(|e| panic!("{:?} -> {:?}: {e}", a, b));
                    let end = replay(g, a, &trace.moves).unwrap();
                    let mut x = end.clone();
                    let mut y = b.clone();
                    x.sort();
                    y.sort();
                    assert_eq!(x, y);
                    checked += 1;
                }
            }
        }
    }
    checked
}

#[test]
fn corpus_graphs_rewrite_completely() {
    for e in corpus() {
        if e.binomial && e.graph.n() <= 8 && e.graph.is_connected() {
            let n = check_all(&e.graph, 3);
            assert!(n > 0, "{}", e.name);
        }
    }
}

#[test]
fn random_orbit_colored_block_graphs_rewrite_completely() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 12 {
        let g = orbit_coloring(&random_block_graph(&mut rng, 3, 3));
        if g.n() > 7 {
            continue;
        }
        check_all(&g, 2);
        done += 1;
    }
}
