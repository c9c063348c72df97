//! Rewriting one multiset of shortest paths into another by isomorphic
//! replacements and swaps, following the induction on maximal depth.

use serde::Serialize;
use thiserror::Error;

use crate::block::BlockGraph;
use crate::graph::{ColorId, ColoredGraph, Path};
use crate::multiset::Multiset;
use crate::structure::{
    depth_function, find_quasi_automorphism, paths_isomorphic, DepthFunction, StructureError,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RewriteError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("path {0} is not a shortest path")]
    NotShortest(String),
    #[error("vertex or edge color multisets of the two collections differ")]
    ColorMismatch,
    #[error("no rewriting found: {0}")]
    Stuck(String),
    #[error("move {index} is invalid: {detail}")]
    InvalidMove { index: usize, detail: String },
}

/// A single rewriting step acting on numbered slots of a path collection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Replaces the path in `slot` by an isomorphic shortest path.
    Replace { slot: usize, from: Path, to: Path },
    /// Cuts both paths at the shared vertex `at` and exchanges the tails;
    /// `slots[i]` receives `to[i]`.
    Swap {
        slots: [usize; 2],
        at: usize,
        from: [Path; 2],
        to: [Path; 2],
    },
}

impl Move {
    fn relabel_slots(&self, map: &[usize]) -> Move {
        match self {
            Move::Replace { slot, from, to } => Move::Replace {
                slot: map[*slot],
                from: from.clone(),
                to: to.clone(),
            },
            Move::Swap { slots, at, from, to } => Move::Swap {
                slots: [map[slots[0]], map[slots[1]]],
                at: *at,
                from: from.clone(),
                to: to.clone(),
            },
        }
    }

    pub fn is_swap(&self) -> bool {
        matches!(self, Move::Swap { .. })
    }
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum MoveDoc {
    Replace {
        slot: usize,
        from: Vec<String>,
        to: Vec<String>,
    },
    Swap {
        slots: [usize; 2],
        at: String,
        from: [Vec<String>; 2],
        to: [Vec<String>; 2],
    },
}

/// A move sequence turning the initial collection into the target.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RewriteTrace {
    pub moves: Vec<Move>,
}

impl RewriteTrace {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn to_json(&self, g: &ColoredGraph) -> serde_json::Value {
        let docs: Vec<MoveDoc> = self
            .moves
            .iter()
            .map(|m| match m {
                Move::Replace { slot, from, to } => MoveDoc::Replace {
                    slot: *slot,
                    from: from.user_ids(g),
                    to: to.user_ids(g),
                },
                Move::Swap { slots, at, from, to } => MoveDoc::Swap {
                    slots: *slots,
                    at: g.id(*at).to_string(),
                    from: [from[0].user_ids(g), from[1].user_ids(g)],
                    to: [to[0].user_ids(g), to[1].user_ids(g)],
                },
            })
            .collect();
        serde_json::to_value(docs).expect("serializable")
    }
}

/// Total vertex colors and edge colors over a path collection.
pub fn collection_colors(g: &ColoredGraph, paths: &[Path]) -> (Multiset<ColorId>, Multiset<ColorId>) {
    let mut vs = Multiset::new();
    let mut es = Multiset::new();
    for p in paths {
        for &v in p.vertices() {
            vs.insert(g.vertex_color(v).clone());
        }
        for e in p.edge_indices(g) {
            es.insert(g.edge_color(e).clone());
        }
    }
    (vs, es)
}

fn concat(a: &[usize], b: &[usize]) -> Path {
    debug_assert_eq!(a.last(), b.first());
    let mut seq = a.to_vec();
    seq.extend_from_slice(&b[1..]);
    Path::new(seq)
}

/// The two recombinations of `p` and `q` at a shared vertex `x`, for both
/// relative orientations. Empty if `x` is not on both paths.
pub fn swap_results(p: &Path, q: &Path, x: usize) -> Vec<[Path; 2]> {
    let (Some(i), Some(j)) = (
        p.vertices().iter().position(|&v| v == x),
        q.vertices().iter().position(|&v| v == x),
    ) else {
        return Vec::new();
    };
    let (pv, qv) = (p.vertices(), q.vertices());
    let (p1, p2) = (&pv[..=i], &pv[i..]);
    let qr: Vec<usize> = qv.iter().rev().copied().collect();
    let jr = qv.len() - 1 - j;
    let mut out = Vec::with_capacity(2);
    for (q1, q2) in [(&qv[..=j], &qv[j..]), (&qr[..=jr], &qr[jr..])] {
        let first = concat(p1, q2);
        let second = concat(q1, p2);
        out.push([first, second]);
    }
    out
}

fn distinct_vertices(p: &Path) -> bool {
    let mut s = p.vertices().to_vec();
    s.sort_unstable();
    s.dedup();
    s.len() == p.vertices().len()
}

fn shortest(bg: &BlockGraph<'_>, p: &Path) -> bool {
    distinct_vertices(p) && bg.is_shortest(p)
}

fn check_move(bg: &BlockGraph<'_>, state: &[Path], m: &Move) -> Result<(), String> {
    let g = bg.graph();
    match m {
        Move::Replace { slot, from, to } => {
            if state.get(*slot) != Some(from) {
                return Err(format!("slot {slot} does not hold {}", from.display(g)));
            }
            if !shortest(bg, to) {
                return Err(format!("{} is not a shortest path", to.display(g)));
            }
            if !paths_isomorphic(g, from, to) {
                return Err(format!("{} and {} are not isomorphic", from.display(g), to.display(g)));
            }
            Ok(())
        }
        Move::Swap { slots, at, from, to } => {
            if slots[0] == slots[1] {
                return Err("a swap needs two distinct slots".into());
            }
            for k in 0..2 {
                if state.get(slots[k]) != Some(&from[k]) {
                    return Err(format!("slot {} does not hold {}", slots[k], from[k].display(g)));
                }
                if !shortest(bg, &to[k]) {
                    return Err(format!("{} is not a shortest path", to[k].display(g)));
                }
            }
            let ok = swap_results(&from[0], &from[1], *at)
                .iter()
                .any(|r| (r[0] == to[0] && r[1] == to[1]) || (r[0] == to[1] && r[1] == to[0]));
            if ok {
                Ok(())
            } else {
                Err(format!("not a recombination at {}", g.id(*at)))
            }
        }
    }
}

fn apply(state: &mut [Path], m: &Move) {
    match m {
        Move::Replace { slot, to, .. } => state[*slot] = to.clone(),
        Move::Swap { slots, to, .. } => {
            state[slots[0]] = to[0].clone();
            state[slots[1]] = to[1].clone();
        }
    }
}

fn same_multiset(a: &[Path], b: &[Path]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort();
    y.sort();
    x == y
}

/// Applies `moves` to `start`, validating each one, and returns the final
/// collection.
pub fn replay(g: &ColoredGraph, start: &[Path], moves: &[Move]) -> Result<Vec<Path>, RewriteError> {
    let bg = BlockGraph::new_forest(g).map_err(|e| RewriteError::Stuck(e.to_string()))?;
    let mut state = start.to_vec();
    for (index, m) in moves.iter().enumerate() {
        check_move(&bg, &state, m).map_err(|detail| RewriteError::InvalidMove { index, detail })?;
        apply(&mut state, m);
    }
    Ok(state)
}

/// Checks that `moves` transforms `a` into `b` (as multisets).
pub fn verify_trace(g: &ColoredGraph, a: &[Path], b: &[Path], moves: &[Move]) -> Result<(), RewriteError> {
    let end = replay(g, a, moves)?;
    if same_multiset(&end, b) {
        Ok(())
    } else {
        Err(RewriteError::Stuck("trace does not end at the target".into()))
    }
}

struct Rewriter<'g> {
    bg: BlockGraph<'g>,
    kappa: DepthFunction,
}

/// A collection with one path of maximal depth cut short by its last edge.
struct Truncation {
    slot: usize,
    /// The path without its last vertex, oriented towards `u`.
    head: Path,
    u: usize,
    v: usize,
}

impl<'g> Rewriter<'g> {
    fn g(&self) -> &'g ColoredGraph {
        self.bg.graph()
    }

    fn edge_depth(&self, a: usize, b: usize) -> u32 {
        self.kappa.edge[self.g().edge_index(a, b).expect("adjacent")]
    }

    fn max_edge_depth(&self, paths: &[Path]) -> u32 {
        paths
            .iter()
            .flat_map(|p| p.edge_indices(self.g()))
            .map(|e| self.kappa.edge[e])
            .max()
            .unwrap_or(0)
    }

    /// Orientations of `p` whose last edge has depth `k`.
    fn truncations(&self, slot: usize, p: &Path, k: u32) -> Vec<Truncation> {
        let mut out = Vec::new();
        if p.is_trivial() {
            return out;
        }
        for q in [p.clone(), p.reversed()] {
            let vs = q.vertices();
            let (u, v) = (vs[vs.len() - 2], vs[vs.len() - 1]);
            if self.edge_depth(u, v) == k {
                let t = Truncation {
                    slot,
                    head: Path::new(vs[..vs.len() - 1].to_vec()),
                    u,
                    v,
                };
                if !out.iter().any(|o: &Truncation| o.head == t.head && o.v == t.v) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Moves turning `a` into `b`, with slots indexed into `a`.
    fn solve(&self, a: &[Path], b: &[Path]) -> Result<Vec<Move>, String> {
        // Paths present on both sides stay put.
        let mut used = vec![false; b.len()];
        let mut keep = Vec::new();
        for (i, p) in a.iter().enumerate() {
            if let Some(j) = (0..b.len()).find(|&j| !used[j] && b[j] == *p) {
                used[j] = true;
            } else {
                keep.push(i);
            }
        }
        if keep.is_empty() {
            return Ok(Vec::new());
        }
        if keep.len() < a.len() {
            let a2: Vec<Path> = keep.iter().map(|&i| a[i].clone()).collect();
            let b2: Vec<Path> = (0..b.len()).filter(|&j| !used[j]).map(|j| b[j].clone()).collect();
            let moves = self.solve(&a2, &b2)?;
            return Ok(moves.iter().map(|m| m.relabel_slots(&keep)).collect());
        }
        if let Some(moves) = self.direct(a, b) {
            return Ok(moves);
        }
        let g = self.g();
        let k = self.max_edge_depth(a);

        if k == 0 {
            return self.match_vertices(a, b);
        }

        // A single vertex at depth at least k goes to a single vertex of its color.
        for (i, p) in a.iter().enumerate() {
            if !p.is_trivial() || self.kappa.vertex[p.start()] < k {
                continue;
            }
            if let Some(j) = b
                .iter()
                .position(|q| q.is_trivial() && g.vc(q.start()) == g.vc(p.start()))
            {
                let mv = Move::Replace {
                    slot: i,
                    from: p.clone(),
                    to: b[j].clone(),
                };
                return self.then_rest(a, b, i, j, mv);
            }
        }

        // An edge of depth k whose ends both have depth k is a whole path.
        for (i, p) in a.iter().enumerate() {
            if p.len() != 1 {
                continue;
            }
            let (x, y) = (p.start(), p.end());
            if self.kappa.vertex[x] == k && self.kappa.vertex[y] == k && self.edge_depth(x, y) == k {
                if let Some(j) = b.iter().position(|q| q.len() == 1 && paths_isomorphic(g, p, q)) {
                    let mv = Move::Replace {
                        slot: i,
                        from: p.clone(),
                        to: b[j].clone(),
                    };
                    return self.then_rest(a, b, i, j, mv);
                }
            }
        }

        let slot = a
            .iter()
            .position(|p| p.edge_indices(g).iter().any(|&e| self.kappa.edge[e] == k))
            .expect("some path carries a depth-k edge");
        let mut last_err = String::from("no matching target path");
        for t in self.truncations(slot, &a[slot], k) {
            for (j, q) in b.iter().enumerate() {
                for t2 in self.truncations(j, q, k) {
                    if g.vc(t.v) != g.vc(t2.v)
                        || g.vc(t.u) != g.vc(t2.u)
                        || g.ec_between(t.u, t.v) != g.ec_between(t2.u, t2.v)
                    {
                        continue;
                    }
                    match self.peel_and_lift(a, b, &t, &t2) {
                        Ok(moves) => return Ok(moves),
                        Err(e) => last_err = e,
                    }
                }
            }
        }
        Err(last_err)
    }

    /// Applies `mv` to slot `i`, which then equals `b[j]`, and solves the rest.
    fn then_rest(&self, a: &[Path], b: &[Path], i: usize, j: usize, mv: Move) -> Result<Vec<Move>, String> {
        let rest: Vec<usize> = (0..a.len()).filter(|&x| x != i).collect();
        let a2: Vec<Path> = rest.iter().map(|&x| a[x].clone()).collect();
        let b2: Vec<Path> = (0..b.len()).filter(|&x| x != j).map(|x| b[x].clone()).collect();
        let mut moves = vec![mv];
        moves.extend(self.solve(&a2, &b2)?.iter().map(|m| m.relabel_slots(&rest)));
        Ok(moves)
    }

    /// One-move solutions, so that every generator is certified by itself.
    fn direct(&self, a: &[Path], b: &[Path]) -> Option<Vec<Move>> {
        let g = self.g();
        match a.len() {
            1 if paths_isomorphic(g, &a[0], &b[0]) => Some(vec![Move::Replace {
                slot: 0,
                from: a[0].clone(),
                to: b[0].clone(),
            }]),
            2 => {
                for &x in a[0].vertices() {
                    for r in swap_results(&a[0], &a[1], x) {
                        if same_multiset(&r, b) && r.iter().all(|p| shortest(&self.bg, p)) {
                            return Some(vec![Move::Swap {
                                slots: [0, 1],
                                at: x,
                                from: [a[0].clone(), a[1].clone()],
                                to: r,
                            }]);
                        }
                    }
                }
                None
            }
            _ => None,
        }
    }

    fn match_vertices(&self, a: &[Path], b: &[Path]) -> Result<Vec<Move>, String> {
        let g = self.g();
        let mut used = vec![false; b.len()];
        let mut moves = Vec::new();
        for (i, p) in a.iter().enumerate() {
            let j = (0..b.len())
                .find(|&j| !used[j] && g.vc(b[j].start()) == g.vc(p.start()))
                .ok_or_else(|| format!("no target vertex colored like {}", g.id(p.start())))?;
            used[j] = true;
            if b[j] != *p {
                moves.push(Move::Replace {
                    slot: i,
                    from: p.clone(),
                    to: b[j].clone(),
                });
            }
        }
        Ok(moves)
    }

    /// Truncates both sides, solves the smaller problem, lifts its moves,
    /// then moves the removed edge into place.
    fn peel_and_lift(&self, a: &[Path], b: &[Path], t: &Truncation, t2: &Truncation) -> Result<Vec<Move>, String> {
        let g = self.g();
        let mut a_in = a.to_vec();
        a_in[t.slot] = t.head.clone();
        let mut b_in = b.to_vec();
        b_in[t2.slot] = t2.head.clone();
        let inner = self.solve(&a_in, &b_in)?;

        let mut state = a.to_vec();
        let mut inner_state = a_in;
        let mut slot = t.slot;
        // The head of the tracked path, oriented towards its end `tip`.
        let mut head = t.head.clone();
        let mut moves = Vec::new();
        for m in &inner {
            let lifted = match m {
                Move::Replace { slot: s, to, .. } if *s == slot => {
                    let cur_v = last_other(&state[slot], &head);
                    let (new_head, tip_next) = self.lift_replace(&head, to, cur_v)?;
                    head = new_head;
                    Move::Replace {
                        slot,
                        from: state[slot].clone(),
                        to: concat_tail(&head, tip_next),
                    }
                }
                Move::Swap { slots, at, to, .. } if slots.contains(&slot) => {
                    let (mv, new_slot, new_head) = self.lift_swap(&state, slot, &head, *slots, *at, to)?;
                    slot = new_slot;
                    head = new_head;
                    mv
                }
                other => other.clone(),
            };
            check_move(&self.bg, &state, &lifted).map_err(|e| format!("lifted move invalid: {e}"))?;
            apply(&mut state, &lifted);
            apply(&mut inner_state, m);
            moves.push(lifted);
        }
        let target = Path::new({
            let mut s = t2.head.vertices().to_vec();
            s.push(t2.v);
            s
        });
        if head == t2.head {
            if state[slot] != target {
                let mv = Move::Replace {
                    slot,
                    from: state[slot].clone(),
                    to: target,
                };
                check_move(&self.bg, &state, &mv).map_err(|e| format!("final replace invalid: {e}"))?;
                apply(&mut state, &mv);
                moves.push(mv);
            }
            return if same_multiset(&state, b) {
                Ok(moves)
            } else {
                Err("lifted collection misses the target".into())
            };
        }

        // Another slot holds the target's head; carry the removed edge over to it.
        let q = (0..state.len())
            .find(|&s| s != slot && state[s] == t2.head)
            .ok_or_else(|| "target head is not present after lifting".to_string())?;
        let full = state[slot].clone();
        let (fu, fv) = (head.end(), last_other(&full, &head));
        let edges: Vec<(usize, usize)> = full.vertices().windows(2).map(|w| (w[0], w[1])).collect();
        let alpha = find_quasi_automorphism(g, &[(fu, t2.u), (fv, t2.v)], &edges)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| "no quasi-automorphism moves the removed edge into place".to_string())?;
        let image = alpha.apply(&full);
        if image != full {
            let mv = Move::Replace {
                slot,
                from: full.clone(),
                to: image.clone(),
            };
            check_move(&self.bg, &state, &mv).map_err(|e| format!("transport invalid: {e}"))?;
            apply(&mut state, &mv);
            moves.push(mv);
        }
        let image_head = alpha.apply(&head);
        let mv = Move::Swap {
            slots: [slot, q],
            at: t2.u,
            from: [image.clone(), state[q].clone()],
            to: [image_head, target.clone()],
        };
        check_move(&self.bg, &state, &mv).map_err(|e| format!("closing swap invalid: {e}"))?;
        apply(&mut state, &mv);
        moves.push(mv);

        let rest: Vec<usize> = (0..state.len()).filter(|&s| s != q).collect();
        let a2: Vec<Path> = rest.iter().map(|&s| state[s].clone()).collect();
        let j = b.iter().position(|p| *p == target).expect("target is in b");
        let b2: Vec<Path> = (0..b.len()).filter(|&x| x != j).map(|x| b[x].clone()).collect();
        moves.extend(self.solve(&a2, &b2)?.iter().map(|m| m.relabel_slots(&rest)));
        Ok(moves)
    }

    /// New head oriented towards the image of its tip, and a new last vertex.
    fn lift_replace(&self, head: &Path, to: &Path, v: usize) -> Result<(Path, usize), String> {
        let g = self.g();
        let seq = head.color_sequence(g);
        let mut last = String::from("no orientation matches");
        for r in [to.clone(), to.reversed()] {
            if r.color_sequence(g) != seq {
                continue;
            }
            let w = r.end();
            for &x in g.neighbors(w) {
                if g.vc(x) != g.vc(v) || g.ec_between(w, x) != g.ec_between(head.end(), v) {
                    continue;
                }
                let ext = concat_tail(&r, x);
                if shortest(&self.bg, &ext) {
                    return Ok((r, x));
                }
            }
            last = format!("no extension of {} at {}", r.display(g), g.id(w));
        }
        Err(last)
    }

    fn lift_swap(
        &self,
        state: &[Path],
        slot: usize,
        head: &Path,
        slots: [usize; 2],
        at: usize,
        to: &[Path; 2],
    ) -> Result<(Move, usize, Path), String> {
        let full = &state[slot];
        let tip = head.end();
        let v = last_other(full, head);
        let k = if slots[0] == slot { 0 } else { 1 };
        let other = slots[1 - k];
        let from = if k == 0 {
            [full.clone(), state[other].clone()]
        } else {
            [state[other].clone(), full.clone()]
        };
        for c in 0..2 {
            let r = &to[c];
            let oriented = if r.end() == tip {
                r.clone()
            } else if r.start() == tip {
                r.reversed()
            } else {
                continue;
            };
            let ext = concat_tail(&oriented, v);
            let mut new_to = to.clone();
            new_to[c] = ext;
            let mv = Move::Swap {
                slots,
                at,
                from: from.clone(),
                to: new_to,
            };
            if check_move(&self.bg, state, &mv).is_ok() {
                return Ok((mv, slots[c], oriented));
            }
        }
        Err(format!("swap at {} cannot carry the removed edge", self.g().id(at)))
    }
}

fn concat_tail(p: &Path, x: usize) -> Path {
    let mut s = p.vertices().to_vec();
    s.push(x);
    Path::new(s)
}

/// The vertex of `full` not on `head`, where `full` is `head` plus one vertex.
fn last_other(full: &Path, head: &Path) -> usize {
    *full
        .vertices()
        .iter()
        .find(|v| !head.contains(**v))
        .expect("full path extends its head")
}

/// Rewrites the collection `a` into `b` with isomorphic replacements and swaps.
///
/// `g` must be a connected triangle-regular block graph, and every path a
/// shortest path. Fails with [`RewriteError::ColorMismatch`] when the total
/// color multisets differ, which certifies that the corresponding monomials
/// have different images.
pub fn rewrite_paths(g: &ColoredGraph, a: &[Path], b: &[Path]) -> Result<RewriteTrace, RewriteError> {
    let kappa = depth_function(g)?;
    let bg = BlockGraph::new(g).map_err(|e| RewriteError::Structure(e.into()))?;
    for p in a.iter().chain(b) {
        if p.vertices().iter().any(|&v| v >= g.n()) || !shortest(&bg, p) {
            return Err(RewriteError::NotShortest(format!("{:?}", p.vertices())));
        }
    }
    if a.len() != b.len() || collection_colors(g, a) != collection_colors(g, b) {
        return Err(RewriteError::ColorMismatch);
    }
    let rw = Rewriter { bg, kappa };
    let moves = rw.solve(a, b).map_err(RewriteError::Stuck)?;
    verify_trace(g, a, b, &moves)?;
    Ok(RewriteTrace { moves })
}
