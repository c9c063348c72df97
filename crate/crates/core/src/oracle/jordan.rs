//! Symbolic check that `L_G` is closed under squaring for a complete
//! colored graph.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::ColoredGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JordanError {
    #[error("vertices {0} and {1} are not adjacent; the graph is not complete")]
    NotComplete(String, String),
}

/// A quadratic form in the color indeterminates, keyed by sorted pairs of
/// palette indices.
pub type Quadratic = BTreeMap<(u32, u32), i64>;

/// Entry `(i, j)` of `K²` for the generic `K ∈ L_G`.
pub fn square_entry(g: &ColoredGraph, i: usize, j: usize) -> Quadratic {
    let color = |a: usize, b: usize| if a == b { Some(g.vc(a)) } else { g.ec_between(a, b) };
    let mut q = Quadratic::new();
    for l in 0..g.n() {
        if let (Some(x), Some(y)) = (color(i, l), color(l, j)) {
            *q.entry((x.min(y), x.max(y))).or_insert(0) += 1;
        }
    }
    q
}

/// First pair of same-colored positions whose `K²` entries differ.
pub fn jordan_violation(g: &ColoredGraph) -> Result<Option<((usize, usize), (usize, usize))>, JordanError> {
    let n = g.n();
    for u in 0..n {
        for v in u + 1..n {
            if !g.adjacent(u, v) {
                return Err(JordanError::NotComplete(g.id(u).into(), g.id(v).into()));
            }
        }
    }
    let mut first: BTreeMap<u32, ((usize, usize), Quadratic)> = BTreeMap::new();
    let positions = (0..n).map(|v| (v, v)).chain(g.edges().iter().copied());
    for (i, j) in positions {
        let c = if i == j { g.vc(i) } else { g.ec_between(i, j).expect("complete") };
        let q = square_entry(g, i, j);
        match first.get(&c) {
            None => {
                first.insert(c, ((i, j), q));
            }
            Some((pos, q0)) if *q0 != q => return Ok(Some((*pos, (i, j)))),
            Some(_) => {}
        }
    }
    Ok(None)
}

pub fn jordan_closure(g: &ColoredGraph) -> Result<bool, JordanError> {
    Ok(jordan_violation(g)?.is_none())
}
