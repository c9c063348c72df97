//! Clique peeling, depth functions, and quasi-automorphisms of connected
//! triangle-regular block graphs.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::automorphism::backtrack;
use crate::block::{distances, is_block_graph, BlockError, BlockGraph};
use crate::graph::{ColoredGraph, Path};
use crate::regularity::{regularity_report, RegularityReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StructureError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not a block graph")]
    NotBlockGraph,
    #[error("graph is not triangle-regular")]
    NotTriangleRegular(Box<RegularityReport>),
    #[error("graph consists of a single maximal clique")]
    SingleClique,
    #[error("peel step violates property ({item}): {detail}")]
    PeelInvariant { item: u8, detail: String },
    #[error("depths along {path} do not go down then up: {depths:?}")]
    NotUpDown { path: String, depths: Vec<u32> },
    #[error("not a shortest path: {0}")]
    NotShortest(String),
    #[error("inconsistent constraints: {0}")]
    InconsistentConstraints(String),
    #[error("extension failed: {0}")]
    Extension(String),
}

impl From<BlockError> for StructureError {
    fn from(e: BlockError) -> Self {
        match e {
            BlockError::Disconnected => StructureError::NotConnected,
            _ => StructureError::NotBlockGraph,
        }
    }
}

/// One removal of a family of leaf cliques.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeelStep {
    /// The removed cliques, each sorted; listed lexicographically.
    pub cliques: Vec<Vec<usize>>,
    /// `attach[i]` is the unique vertex of `cliques[i]` lying in another maximal clique.
    pub attach: Vec<usize>,
    /// Non-attachment vertices of the removed cliques, sorted.
    pub removed: Vec<usize>,
}

impl PeelStep {
    fn relabel(&self, map: &[usize]) -> PeelStep {
        let mut cliques: Vec<(Vec<usize>, usize)> = self
            .cliques
            .iter()
            .zip(&self.attach)
            .map(|(c, &a)| {
                let mut c: Vec<usize> = c.iter().map(|&v| map[v]).collect();
                c.sort_unstable();
                (c, map[a])
            })
            .collect();
        cliques.sort();
        let mut removed: Vec<usize> = self.removed.iter().map(|&v| map[v]).collect();
        removed.sort_unstable();
        PeelStep {
            cliques: cliques.iter().map(|(c, _)| c.clone()).collect(),
            attach: cliques.iter().map(|(_, a)| *a).collect(),
            removed,
        }
    }
}

fn check_preconditions(g: &ColoredGraph) -> Result<(), StructureError> {
    if !is_block_graph(g)? {
        return Err(StructureError::NotBlockGraph);
    }
    let report = regularity_report(g);
    if !report.triangle_regular {
        return Err(StructureError::NotTriangleRegular(Box::new(report)));
    }
    Ok(())
}

fn invariant(item: u8, detail: impl Into<String>) -> StructureError {
    StructureError::PeelInvariant {
        item,
        detail: detail.into(),
    }
}

/// Removes the family of cliques sharing colors with a leaf clique.
///
/// The leaf clique is the lexicographically first maximal clique with exactly
/// one vertex in several maximal cliques. The family consists of every maximal
/// clique containing a vertex colored like the leaf clique's least other
/// vertex. All six peel properties are checked before returning; the residual
/// graph keeps the user ids of `g`.
pub fn peel_cliques(g: &ColoredGraph) -> Result<(PeelStep, ColoredGraph), StructureError> {
    check_preconditions(g)?;
    peel_unchecked(g)
}

fn peel_unchecked(g: &ColoredGraph) -> Result<(PeelStep, ColoredGraph), StructureError> {
    let cliques = g.maximal_cliques();
    if cliques.len() < 2 {
        return Err(StructureError::SingleClique);
    }
    let mut membership = vec![0usize; g.n()];
    for c in &cliques {
        for &v in c {
            membership[v] += 1;
        }
    }
    let shared = |c: &Vec<usize>| -> Vec<usize> { c.iter().copied().filter(|&v| membership[v] >= 2).collect() };
    let c0 = cliques
        .iter()
        .find(|c| shared(c).len() == 1)
        .ok_or_else(|| invariant(4, "no leaf clique"))?;
    let v0 = shared(c0)[0];
    let u0 = *c0.iter().find(|&&v| v != v0).ok_or_else(|| invariant(4, "leaf clique has one vertex"))?;
    let color = g.vc(u0);

    let family: Vec<Vec<usize>> = cliques
        .iter()
        .filter(|c| c.iter().any(|&v| g.vc(v) == color))
        .cloned()
        .collect();
    let mut attach = Vec::with_capacity(family.len());
    for c in &family {
        let s = shared(c);
        if s.len() != 1 {
            return Err(invariant(
                4,
                format!("clique {:?} has {} shared vertices", ids(g, c), s.len()),
            ));
        }
        attach.push(s[0]);
    }
    let attach_set: BTreeSet<usize> = attach.iter().copied().collect();
    let removed: Vec<usize> = family
        .iter()
        .flatten()
        .copied()
        .filter(|v| !attach_set.contains(v))
        .collect::<BTreeSet<usize>>()
        .into_iter()
        .collect();
    let keep: Vec<usize> = (0..g.n()).filter(|v| !removed.contains(v)).collect();
    let residual = g.induced_subgraph(&keep);
    let step = PeelStep {
        cliques: family,
        attach,
        removed,
    };
    check_peel(g, &step, &residual)?;
    Ok((step, residual))
}

fn ids(g: &ColoredGraph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.id(v).to_string()).collect()
}

/// Checks the six properties a peel step must satisfy.
pub fn check_peel(g: &ColoredGraph, step: &PeelStep, residual: &ColoredGraph) -> Result<(), StructureError> {
    // (1) residual is a connected triangle-regular block graph
    match is_block_graph(residual) {
        Ok(true) => {}
        Ok(false) => return Err(invariant(1, "residual is not a block graph")),
        Err(_) => return Err(invariant(1, "residual is not connected")),
    }
    if !regularity_report(residual).triangle_regular {
        return Err(invariant(1, "residual is not triangle-regular"));
    }

    // (2) equal color multisets on all removed cliques
    let colors0 = g.clique_colors(&step.cliques[0]);
    for c in &step.cliques[1..] {
        if g.clique_colors(c) != colors0 {
            return Err(invariant(2, format!("clique {:?} has different colors", ids(g, c))));
        }
    }

    // (3) every vertex or edge colored like a family member lies in the family
    let vcolors: BTreeSet<u32> = step.cliques.iter().flatten().map(|&v| g.vc(v)).collect();
    let mut in_family = vec![false; g.n()];
    for &v in step.cliques.iter().flatten() {
        in_family[v] = true;
    }
    for v in 0..g.n() {
        if vcolors.contains(&g.vc(v)) && !in_family[v] {
            return Err(invariant(3, format!("vertex {} is outside the family", g.id(v))));
        }
    }
    let mut family_edges = BTreeSet::new();
    for c in &step.cliques {
        for (i, &a) in c.iter().enumerate() {
            for &b in &c[i + 1..] {
                family_edges.insert(g.edge_index(a, b).expect("clique"));
            }
        }
    }
    let ecolors: BTreeSet<u32> = family_edges.iter().map(|&e| g.ec(e)).collect();
    for e in 0..g.num_edges() {
        if ecolors.contains(&g.ec(e)) && !family_edges.contains(&e) {
            let (a, b) = g.edges()[e];
            return Err(invariant(3, format!("edge {{{}, {}}} is outside the family", g.id(a), g.id(b))));
        }
    }

    // (4) one attach vertex per clique, one shared color, owned only by attach vertices
    let attach_color = g.vc(step.attach[0]);
    let attach_set: BTreeSet<usize> = step.attach.iter().copied().collect();
    if step.attach.iter().any(|&a| g.vc(a) != attach_color) {
        return Err(invariant(4, "attach vertices differ in color"));
    }
    for v in 0..g.n() {
        if g.vc(v) == attach_color && !attach_set.contains(&v) {
            return Err(invariant(4, format!("vertex {} shares the attach color", g.id(v))));
        }
    }

    // (5) the edge color towards the attach vertex depends only on the vertex color
    let mut towards: BTreeMap<u32, u32> = BTreeMap::new();
    for (c, &a) in step.cliques.iter().zip(&step.attach) {
        for &v in c.iter().filter(|&&v| v != a) {
            let ec = g.ec_between(v, a).expect("clique");
            if *towards.entry(g.vc(v)).or_insert(ec) != ec {
                return Err(invariant(5, format!("edge {{{}, {}}} has an unexpected color", g.id(v), g.id(a))));
            }
        }
    }

    // (6) every attach vertex carries the same number of family cliques
    let mut per_attach: BTreeMap<usize, usize> = BTreeMap::new();
    for &a in &step.attach {
        *per_attach.entry(a).or_insert(0) += 1;
    }
    let counts: BTreeSet<usize> = per_attach.values().copied().collect();
    if counts.len() > 1 {
        return Err(invariant(6, format!("attach vertices carry {counts:?} cliques")));
    }
    Ok(())
}

/// A depth function together with the peel steps that produced it.
/// All indices refer to the graph it was computed on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthFunction {
    pub vertex: Vec<u32>,
    pub edge: Vec<u32>,
    pub peel_sequence: Vec<PeelStep>,
}

#[derive(Serialize)]
struct DepthDoc {
    vertices: BTreeMap<String, u32>,
    edges: Vec<(String, String, u32)>,
    peel_sequence: Vec<PeelDoc>,
}

#[derive(Serialize)]
struct PeelDoc {
    cliques: Vec<Vec<String>>,
    attach: Vec<String>,
    removed: Vec<String>,
}

impl DepthFunction {
    pub fn of_edge(&self, g: &ColoredGraph, u: usize, v: usize) -> Option<u32> {
        g.edge_index(u, v).map(|e| self.edge[e])
    }

    pub fn max_depth(&self) -> u32 {
        self.vertex.iter().chain(&self.edge).copied().max().unwrap_or(0)
    }

    pub fn to_json(&self, g: &ColoredGraph) -> serde_json::Value {
        let doc = DepthDoc {
            vertices: (0..g.n()).map(|v| (g.id(v).to_string(), self.vertex[v])).collect(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &(a, b))| (g.id(a).to_string(), g.id(b).to_string(), self.edge[e]))
                .collect(),
            peel_sequence: self
                .peel_sequence
                .iter()
                .map(|s| PeelDoc {
                    cliques: s.cliques.iter().map(|c| ids(g, c)).collect(),
                    attach: ids(g, &s.attach),
                    removed: ids(g, &s.removed),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("serializable")
    }
}

/// The canonical depth function obtained by repeated peeling.
pub fn depth_function(g: &ColoredGraph) -> Result<DepthFunction, StructureError> {
    check_preconditions(g)?;
    depth_unchecked(g)
}

fn depth_unchecked(g: &ColoredGraph) -> Result<DepthFunction, StructureError> {
    if g.maximal_cliques().len() < 2 {
        return Ok(DepthFunction {
            vertex: vec![1; g.n()],
            edge: vec![1; g.num_edges()],
            peel_sequence: Vec::new(),
        });
    }
    let (step, residual) = peel_unchecked(g)?;
    let inner = depth_unchecked(&residual)?;
    let to_outer: Vec<usize> = (0..residual.n())
        .map(|v| g.index_of(residual.id(v)).expect("residual ids come from g"))
        .collect();
    let mut vertex = vec![0u32; g.n()];
    let mut edge = vec![0u32; g.num_edges()];
    for v in 0..residual.n() {
        vertex[to_outer[v]] = inner.vertex[v];
    }
    for (e, &(a, b)) in residual.edges().iter().enumerate() {
        let outer = g.edge_index(to_outer[a], to_outer[b]).expect("induced");
        edge[outer] = inner.edge[e];
    }
    for (c, &a) in step.cliques.iter().zip(&step.attach) {
        let d = vertex[a] + 1;
        for (i, &x) in c.iter().enumerate() {
            if x != a {
                vertex[x] = d;
            }
            for &y in &c[i + 1..] {
                edge[g.edge_index(x, y).expect("clique")] = d;
            }
        }
    }
    let mut peel_sequence = vec![step];
    peel_sequence.extend(inner.peel_sequence.iter().map(|s| s.relabel(&to_outer)));
    Ok(DepthFunction {
        vertex,
        edge,
        peel_sequence,
    })
}

/// Index `m` such that depths strictly decrease along the first `m` steps of
/// the shortest path `p`, step `m` is flat or up, and later steps go up.
pub fn check_up_down(g: &ColoredGraph, kappa: &DepthFunction, p: &Path) -> Result<usize, StructureError> {
    p.validate(g)
        .map_err(|e| StructureError::NotShortest(e.to_string()))?;
    let n = g.n();
    let dist = distances(g);
    if dist[p.start() * n + p.end()] as usize != p.len() {
        return Err(StructureError::NotShortest(p.display(g)));
    }
    let depths: Vec<u32> = p.vertices().iter().map(|&v| kappa.vertex[v]).collect();
    let step = |i: usize| depths[i + 1] as i64 - depths[i] as i64;
    let m = (0..p.len()).take_while(|&i| step(i) == -1).count();
    let ok = m == p.len()
        || ((step(m) == 0 || step(m) == 1) && (m + 1..p.len()).all(|i| step(i) == 1));
    if ok {
        Ok(m)
    } else {
        Err(StructureError::NotUpDown {
            path: p.display(g),
            depths,
        })
    }
}

/// Whether the color sequence of `p` reads the same in both directions.
pub fn is_palindromic(g: &ColoredGraph, p: &Path) -> bool {
    let s = p.color_sequence(g);
    s.iter().eq(s.iter().rev())
}

/// Whether `p` and `q` are isomorphic as colored paths.
pub fn paths_isomorphic(g: &ColoredGraph, p: &Path, q: &Path) -> bool {
    let a = p.color_sequence(g);
    let b = q.color_sequence(g);
    a == b || a.iter().eq(b.iter().rev())
}

/// An automorphism of the uncolored graph that preserves vertex colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiAutomorphism {
    pub map: Vec<usize>,
}

impl QuasiAutomorphism {
    pub fn identity(n: usize) -> Self {
        Self { map: (0..n).collect() }
    }

    pub fn apply(&self, p: &Path) -> Path {
        Path::new(p.vertices().iter().map(|&v| self.map[v]).collect())
    }

    pub fn is_valid(&self, g: &ColoredGraph) -> bool {
        let n = g.n();
        if self.map.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &t in &self.map {
            if t >= n || std::mem::replace(&mut seen[t], true) {
                return false;
            }
        }
        (0..n).all(|v| g.vc(v) == g.vc(self.map[v]))
            && (0..n).all(|a| (0..n).all(|b| g.adjacent(a, b) == g.adjacent(self.map[a], self.map[b])))
    }
}

/// Searches for a quasi-automorphism extending the vertex `constraints` and
/// preserving the colors of the listed edges. The search is exhaustive.
pub fn find_quasi_automorphism(
    g: &ColoredGraph,
    constraints: &[(usize, usize)],
    edge_constraints: &[(usize, usize)],
) -> Result<Option<QuasiAutomorphism>, StructureError> {
    let n = g.n();
    let mut seen_src: BTreeMap<usize, usize> = BTreeMap::new();
    let mut seen_dst: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, b) in constraints {
        if a >= n || b >= n {
            return Err(StructureError::InconsistentConstraints(format!("vertex index out of range in ({a}, {b})")));
        }
        if g.vc(a) != g.vc(b) {
            return Err(StructureError::InconsistentConstraints(format!(
                "{} and {} have different colors",
                g.id(a),
                g.id(b)
            )));
        }
        if *seen_src.entry(a).or_insert(b) != b || *seen_dst.entry(b).or_insert(a) != a {
            return Err(StructureError::InconsistentConstraints(format!(
                "conflicting images for {}",
                g.id(a)
            )));
        }
    }
    let mut guarded = vec![false; g.num_edges()];
    for &(a, b) in edge_constraints {
        match (a < n && b < n).then(|| g.edge_index(a, b)).flatten() {
            Some(e) => guarded[e] = true,
            None => {
                return Err(StructureError::InconsistentConstraints(format!(
                    "({a}, {b}) is not an edge"
                )))
            }
        }
    }
    let allowed = |a: usize, b: usize| g.vc(a) == g.vc(b) && g.degree(a) == g.degree(b);
    let compatible = |a: usize, x: usize, b: usize, y: usize| match g.edge_index(a, x) {
        None => !g.adjacent(b, y),
        Some(e) => match g.edge_index(b, y) {
            None => false,
            Some(f) => !guarded[e] || g.ec(e) == g.ec(f),
        },
    };
    let fixed: Vec<(usize, usize)> = seen_src.into_iter().collect();
    Ok(backtrack(n, &allowed, &compatible, &fixed).map(|map| QuasiAutomorphism { map }))
}

/// Extends a quasi-automorphism of the residual graph of `step` to `g` by
/// matching the removed cliques at each attach vertex with those at its
/// image, vertex colors aligned.
pub fn extend_quasi_automorphism(
    g: &ColoredGraph,
    step: &PeelStep,
    residual: &ColoredGraph,
    inner: &QuasiAutomorphism,
) -> Result<QuasiAutomorphism, StructureError> {
    let to_outer: Vec<usize> = (0..residual.n())
        .map(|v| {
            g.index_of(residual.id(v))
                .ok_or_else(|| StructureError::Extension(format!("{} is not a vertex of g", residual.id(v))))
        })
        .collect::<Result<_, _>>()?;
    let mut map = vec![usize::MAX; g.n()];
    for v in 0..residual.n() {
        map[to_outer[v]] = to_outer[inner.map[v]];
    }
    let mut at: BTreeMap<usize, Vec<&Vec<usize>>> = BTreeMap::new();
    for (c, &a) in step.cliques.iter().zip(&step.attach) {
        at.entry(a).or_default().push(c);
    }
    let sorted_star = |c: &Vec<usize>, a: usize| -> Vec<usize> {
        let mut s: Vec<usize> = c.iter().copied().filter(|&v| v != a).collect();
        s.sort_by_key(|&v| (g.vc(v), v));
        s
    };
    for (&a, cs) in &at {
        let b = map[a];
        let targets = at
            .get(&b)
            .ok_or_else(|| StructureError::Extension(format!("{} carries no removed clique", g.id(b))))?;
        if targets.len() != cs.len() {
            return Err(StructureError::Extension("clique counts differ".into()));
        }
        for (c, d) in cs.iter().zip(targets) {
            let (sc, sd) = (sorted_star(c, a), sorted_star(d, b));
            if sc.len() != sd.len() {
                return Err(StructureError::Extension("clique sizes differ".into()));
            }
            for (&x, &y) in sc.iter().zip(&sd) {
                map[x] = y;
            }
        }
    }
    let alpha = QuasiAutomorphism { map };
    if alpha.is_valid(g) {
        Ok(alpha)
    } else {
        Err(StructureError::Extension("constructed map is not a quasi-automorphism".into()))
    }
}

/// One structural property checked over every applicable item.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

fn lemma(name: &'static str, checked: usize, failure: Option<String>) -> LemmaCheck {
    LemmaCheck {
        name,
        passed: failure.is_none(),
        checked,
        failure,
    }
}

/// Runs the structural checks on a connected triangle-regular block graph:
/// peel properties at every step, color-determined depths, the edge-step
/// rule, down-then-up depths on every geodesic, palindromic geodesics
/// between same-colored vertices, isomorphism of geodesics with equal color
/// multisets, and extension of residual quasi-automorphisms.
pub fn lemma_suite(g: &ColoredGraph) -> Result<Vec<LemmaCheck>, StructureError> {
    if !g.is_connected() {
        return Err(StructureError::NotConnected);
    }
    let kappa = depth_function(g)?;
    let bg = BlockGraph::new(g)?;
    let n = g.n();
    let mut out = Vec::new();

    let mut steps = 0;
    let mut current = g.clone();
    let mut peel_failure = None;
    let mut ext_checked = 0;
    let mut ext_failure = None;
    while current.maximal_cliques().len() >= 2 {
        match peel_cliques(&current) {
            Ok((step, residual)) => {
                steps += 1;
                for a in 0..residual.n() {
                    for b in a..residual.n() {
                        if residual.vc(a) != residual.vc(b) {
                            continue;
                        }
                        if let Some(alpha) = find_quasi_automorphism(&residual, &[(a, b)], &[])? {
                            ext_checked += 1;
                            if let Err(e) = extend_quasi_automorphism(&current, &step, &residual, &alpha) {
                                ext_failure.get_or_insert(format!("{} -> {}: {e}", residual.id(a), residual.id(b)));
                            }
                        }
                    }
                }
                current = residual;
            }
            Err(e) => {
                peel_failure = Some(e.to_string());
                break;
            }
        }
    }
    out.push(lemma("peel_properties", steps, peel_failure));

    let mut fail = None;
    let mut checked = 0;
    for a in 0..n {
        for b in a + 1..n {
            if g.vc(a) == g.vc(b) {
                checked += 1;
                if kappa.vertex[a] != kappa.vertex[b] {
                    fail.get_or_insert(format!("vertices {} and {}", g.id(a), g.id(b)));
                }
            }
        }
    }
    for e in 0..g.num_edges() {
        for f in e + 1..g.num_edges() {
            if g.ec(e) == g.ec(f) {
                checked += 1;
                if kappa.edge[e] != kappa.edge[f] {
                    let (x, y) = g.edges()[e];
                    fail.get_or_insert(format!("edge {}-{} and another of its color", g.id(x), g.id(y)));
                }
            }
        }
    }
    out.push(lemma("depth_by_color", checked, fail));

    let fail = g.edges().iter().enumerate().find_map(|(e, &(u, v))| {
        let k = kappa.edge[e];
        let (a, b) = (kappa.vertex[u].min(kappa.vertex[v]), kappa.vertex[u].max(kappa.vertex[v]));
        let ok = (a == k && b == k) || (a + 1 == k && b == k);
        (!ok).then(|| format!("edge {}-{}", g.id(u), g.id(v)))
    });
    out.push(lemma("edge_step", g.num_edges(), fail));

    let mut fail = None;
    let mut pal_fail = None;
    let mut pal_checked = 0;
    let mut by_lambda: BTreeMap<Vec<(u32, usize)>, Vec<Path>> = BTreeMap::new();
    for u in 0..n {
        for v in u..n {
            let p = bg.path(u, v);
            if let Err(e) = check_up_down(g, &kappa, &p) {
                fail.get_or_insert(e.to_string());
            }
            if u != v && g.vc(u) == g.vc(v) {
                pal_checked += 1;
                if !is_palindromic(g, &p) {
                    pal_fail.get_or_insert(p.display(g));
                }
            }
            let mut key: BTreeMap<u32, usize> = BTreeMap::new();
            for &x in p.vertices() {
                *key.entry(g.vc(x)).or_default() += 1;
            }
            for e in p.edge_indices(g) {
                *key.entry(g.ec(e)).or_default() += 1;
            }
            by_lambda.entry(key.into_iter().collect()).or_default().push(p);
        }
    }
    out.push(lemma("up_down", n * (n + 1) / 2, fail));
    out.push(lemma("palindromes", pal_checked, pal_fail));

    let mut fail = None;
    let mut checked = 0;
    for paths in by_lambda.values() {
        for (i, p) in paths.iter().enumerate() {
            for q in &paths[i + 1..] {
                checked += 1;
                if !paths_isomorphic(g, p, q) {
                    fail.get_or_insert(format!("{} and {}", p.display(g), q.display(g)));
                }
            }
        }
    }
    out.push(lemma("equivalent_paths_isomorphic", checked, fail));
    out.push(lemma("quasi_automorphism_extension", ext_checked, ext_failure));
    Ok(out)
}
