//! Partitions of `X × X`: coherent configurations, association schemes,
//! Jordan schemes, and the two complete colored graphs used as examples.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automorphism::OrbitTracker;
use crate::graph::{ColorId, ColoredGraph, GraphBuilder};
use crate::multiset::Multiset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("malformed partition: {0}")]
    Malformed(String),
    #[error("class {0} is not closed under taking converses")]
    NotConverseClosed(usize),
    #[error("partition is not symmetric")]
    NotSymmetric,
    #[error("the diagonal is not a single class")]
    DiagonalSplit,
    #[error("graph is not complete")]
    NotComplete,
    #[error("graph has more than one vertex color")]
    SeveralVertexColors,
    #[error("ordered pair needs two distinct points")]
    SamePoint,
    #[error("unknown point {0}")]
    UnknownPoint(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ClassInfo {
    size: usize,
    diagonal_pairs: usize,
    converse: usize,
}

/// A partition of `X × X` into classes, closed under converses.
///
/// Classes are numbered by first appearance in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationPartition {
    n: usize,
    class_of: Vec<usize>,
    classes: Vec<ClassInfo>,
}

/// JSON form: `{"size": n, "classes": [[[x, y], ...], ...]}` with 0-based points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionDoc {
    pub size: usize,
    pub classes: Vec<Vec<[usize; 2]>>,
}

impl RelationPartition {
    /// Builds a partition from an arbitrary labelling of the pairs
    /// (`labels[x * n + y]`); equal labels mean equal classes.
    pub fn from_labels<L: Ord + Clone>(n: usize, labels: &[L]) -> Result<Self, SchemeError> {
        if labels.len() != n * n {
            return Err(SchemeError::Malformed(format!(
                "expected {} labels, got {}",
                n * n,
                labels.len()
            )));
        }
        let mut ids: BTreeMap<L, usize> = BTreeMap::new();
        let mut class_of = Vec::with_capacity(n * n);
        for l in labels {
            let next = ids.len();
            class_of.push(*ids.entry(l.clone()).or_insert(next));
        }
        let r = ids.len();
        let mut classes = vec![
            ClassInfo {
                size: 0,
                diagonal_pairs: 0,
                converse: usize::MAX,
            };
            r
        ];
        for x in 0..n {
            for y in 0..n {
                let c = class_of[x * n + y];
                let conv = class_of[y * n + x];
                let info = &mut classes[c];
                info.size += 1;
                if x == y {
                    info.diagonal_pairs += 1;
                }
                if info.converse == usize::MAX {
                    info.converse = conv;
                } else if info.converse != conv {
                    return Err(SchemeError::NotConverseClosed(c));
                }
            }
        }
        for (c, info) in classes.iter().enumerate() {
            if classes[info.converse].size != info.size || classes[info.converse].converse != c {
                return Err(SchemeError::NotConverseClosed(c));
            }
        }
        Ok(Self { n, class_of, classes })
    }

    pub fn from_classes(n: usize, classes: &[Vec<(usize, usize)>]) -> Result<Self, SchemeError> {
        let mut labels = vec![usize::MAX; n * n];
        for (c, pairs) in classes.iter().enumerate() {
            if pairs.is_empty() {
                return Err(SchemeError::Malformed(format!("class {c} is empty")));
            }
            for &(x, y) in pairs {
                if x >= n || y >= n {
                    return Err(SchemeError::Malformed(format!("pair ({x}, {y}) out of range")));
                }
                if labels[x * n + y] != usize::MAX {
                    return Err(SchemeError::Malformed(format!("pair ({x}, {y}) listed twice")));
                }
                labels[x * n + y] = c;
            }
        }
        if let Some(i) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(SchemeError::Malformed(format!(
                "pair ({}, {}) is not covered",
                i / n,
                i % n
            )));
        }
        Self::from_labels(n, &labels)
    }

    pub fn from_document(doc: &PartitionDoc) -> Result<Self, SchemeError> {
        let classes: Vec<Vec<(usize, usize)>> = doc
            .classes
            .iter()
            .map(|c| c.iter().map(|p| (p[0], p[1])).collect())
            .collect();
        Self::from_classes(doc.size, &classes)
    }

    pub fn parse(text: &str) -> Result<Self, SchemeError> {
        let doc: PartitionDoc =
            serde_json::from_str(text).map_err(|e| SchemeError::Malformed(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> PartitionDoc {
        let mut classes = vec![Vec::new(); self.num_classes()];
        for x in 0..self.n {
            for y in 0..self.n {
                classes[self.class(x, y)].push([x, y]);
            }
        }
        PartitionDoc {
            size: self.n,
            classes,
        }
    }

    /// `{diagonal, off-diagonal}` on `n` points.
    pub fn trivial(n: usize) -> Self {
        let labels: Vec<bool> = (0..n * n).map(|i| i / n != i % n).collect();
        Self::from_labels(n, &labels).expect("trivial partition is valid")
    }

    /// Orbits on `X × X` of the group generated by the given permutations.
    pub fn from_group_orbits(n: usize, generators: &[Vec<usize>]) -> Result<Self, SchemeError> {
        for g in generators {
            let mut seen = vec![false; n];
            if g.len() != n || g.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(SchemeError::Malformed("generator is not a permutation".into()));
            }
        }
        let mut label: Vec<usize> = (0..n * n).collect();
        let find = |label: &mut Vec<usize>, mut x: usize| {
            while label[x] != x {
                label[x] = label[label[x]];
                x = label[x];
            }
            x
        };
        for g in generators {
            for x in 0..n {
                for y in 0..n {
                    let a = find(&mut label, x * n + y);
                    let b = find(&mut label, g[x] * n + g[y]);
                    if a != b {
                        label[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..n * n).map(|i| find(&mut label, i)).collect();
        Self::from_labels(n, &roots)
    }

    /// Partition induced by a complete colored graph: the diagonal is split by
    /// vertex colors, off-diagonal pairs by edge colors.
    pub fn from_complete_graph(g: &ColoredGraph) -> Result<Self, SchemeError> {
        let n = g.n();
        let mut labels = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    labels.push(g.vc(x));
                } else {
                    labels.push(g.ec_between(x, y).ok_or(SchemeError::NotComplete)?);
                }
            }
        }
        Self::from_labels(n, &labels)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, x: usize, y: usize) -> usize {
        self.class_of[x * self.n + y]
    }

    pub fn converse(&self, c: usize) -> usize {
        self.classes[c].converse
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].size
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.num_classes()).all(|c| self.converse(c) == c)
    }

    /// Whether the diagonal is exactly one class.
    pub fn has_single_diagonal_class(&self) -> bool {
        self.n > 0 && {
            let c = self.class(0, 0);
            self.classes[c].size == self.n && self.classes[c].diagonal_pairs == self.n
        }
    }

    fn pair_counts(&self, x: usize, y: usize, cnt: &mut [u64]) {
        let r = self.num_classes();
        cnt.iter_mut().for_each(|c| *c = 0);
        for z in 0..self.n {
            cnt[self.class(x, z) * r + self.class(z, y)] += 1;
        }
    }
}

/// `p[i][j][k]`: for `(x, y)` in class `k`, the number of `z` with
/// `(x, z)` in class `i` and `(z, y)` in class `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionTable {
    pub classes: usize,
    values: Vec<i64>,
}

impl IntersectionTable {
    fn new(r: usize) -> Self {
        Self {
            classes: r,
            values: vec![0; r * r * r],
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.values[(i * self.classes + j) * self.classes + k]
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: i64) {
        let r = self.classes;
        self.values[(i * r + j) * r + k] = v;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    /// A class mixes diagonal and off-diagonal pairs.
    DiagonalNotUnion { class: usize },
    /// The structure constant for `(i, j)` differs on two pairs of class `k`.
    NotConstant {
        i: usize,
        j: usize,
        k: usize,
        first: (usize, usize),
        second: (usize, usize),
        values: (i64, i64),
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Holds(T),
    Fails(AxiomViolation),
}

impl<T> Outcome<T> {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds(_))
    }

    pub fn value(self) -> Option<T> {
        match self {
            Outcome::Holds(t) => Some(t),
            Outcome::Fails(_) => None,
        }
    }
}

/// Checks the coherent-configuration axioms and returns the intersection numbers.
pub fn is_coherent_configuration(p: &RelationPartition) -> Outcome<IntersectionTable> {
    for (c, info) in p.classes.iter().enumerate() {
        if info.diagonal_pairs != 0 && info.diagonal_pairs != info.size {
            return Outcome::Fails(AxiomViolation::DiagonalNotUnion { class: c });
        }
    }
    structure_constants(p, |cnt, r, i, j| cnt[i * r + j] as i64, false)
}

/// Shared constancy check: `value(cnt, r, i, j)` must depend only on the class of `(x, y)`.
fn structure_constants(
    p: &RelationPartition,
    value: impl Fn(&[u64], usize, usize, usize) -> i64,
    ordered_pairs_only: bool,
) -> Outcome<IntersectionTable> {
    let n = p.size();
    let r = p.num_classes();
    let mut table = IntersectionTable::new(r);
    let mut rep: Vec<Option<(usize, usize)>> = vec![None; r];
    let mut cnt = vec![0u64; r * r];
    for x in 0..n {
        for y in 0..n {
            let k = p.class(x, y);
            p.pair_counts(x, y, &mut cnt);
            for i in 0..r {
                for j in 0..r {
                    if ordered_pairs_only && j < i {
                        continue;
                    }
                    let v = value(&cnt, r, i, j);
                    match rep[k] {
                        None => table.set(i, j, k, v),
                        Some(first) => {
                            let expected = table.get(i, j, k);
                            if expected != v {
                                return Outcome::Fails(AxiomViolation::NotConstant {
                                    i,
                                    j,
                                    k,
                                    first,
                                    second: (x, y),
                                    values: (expected, v),
                                });
                            }
                        }
                    }
                }
            }
            if rep[k].is_none() {
                rep[k] = Some((x, y));
            }
        }
    }
    Outcome::Holds(table)
}

/// Coherent, single diagonal class, every class its own converse.
pub fn is_association_scheme(p: &RelationPartition) -> bool {
    p.has_single_diagonal_class() && p.is_symmetric() && is_coherent_configuration(p).holds()
}

/// Checks that `A_i A_j + A_j A_i` is a constant combination of the class
/// matrices for all `i <= j`, returning the coefficients `q[i][j][k]`.
pub fn is_jordan_scheme(p: &RelationPartition) -> Result<Outcome<IntersectionTable>, SchemeError> {
    if !p.is_symmetric() {
        return Err(SchemeError::NotSymmetric);
    }
    if !p.has_single_diagonal_class() {
        return Err(SchemeError::DiagonalSplit);
    }
    let out = structure_constants(p, |cnt, r, i, j| (cnt[i * r + j] + cnt[j * r + i]) as i64, true);
    Ok(match out {
        Outcome::Holds(mut t) => {
            let r = t.classes;
            for i in 0..r {
                for j in 0..i {
                    for k in 0..r {
                        let v = t.get(j, i, k);
                        t.set(i, j, k, v);
                    }
                }
            }
            Outcome::Holds(t)
        }
        fails => fails,
    })
}

/// Merges every class with its converse.
pub fn symmetrize(p: &RelationPartition) -> RelationPartition {
    let labels: Vec<usize> = p
        .class_of
        .iter()
        .map(|&c| c.min(p.converse(c)))
        .collect();
    RelationPartition::from_labels(p.size(), &labels).expect("symmetrization is converse closed")
}

fn require_single_vertex_color_complete(g: &ColoredGraph) -> Result<(), SchemeError> {
    if g.vertex_colors().len() > 1 {
        return Err(SchemeError::SeveralVertexColors);
    }
    if g.num_edges() != g.n() * g.n().saturating_sub(1) / 2 {
        return Err(SchemeError::NotComplete);
    }
    Ok(())
}

/// Multiset of `(λ{x,z}, λ{z,y})` over all `z` other than `x` and `y`.
pub fn ordered_pair_signature(
    g: &ColoredGraph,
    x: usize,
    y: usize,
) -> Result<Multiset<(ColorId, ColorId)>, SchemeError> {
    require_single_vertex_color_complete(g)?;
    for p in [x, y] {
        if p >= g.n() {
            return Err(SchemeError::UnknownPoint(p));
        }
    }
    if x == y {
        return Err(SchemeError::SamePoint);
    }
    Ok((0..g.n())
        .filter(|&z| z != x && z != y)
        .map(|z| {
            (
                g.edge_color_between(x, z).expect("complete").clone(),
                g.edge_color_between(z, y).expect("complete").clone(),
            )
        })
        .collect())
}

/// Two same-class pairs whose ordered-pair signatures differ even after
/// swapping one of them; such a pair rules out the partition being the
/// symmetrization of a coherent configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetrizationObstruction {
    pub class: usize,
    pub first: (usize, usize),
    pub second: (usize, usize),
}

pub fn symmetrization_obstruction(
    p: &RelationPartition,
) -> Result<Option<SymmetrizationObstruction>, SchemeError> {
    if !p.is_symmetric() {
        return Err(SchemeError::NotSymmetric);
    }
    let n = p.size();
    let signature = |x: usize, y: usize| -> Vec<(usize, usize)> {
        let mut s: Vec<(usize, usize)> = (0..n)
            .filter(|&z| z != x && z != y)
            .map(|z| (p.class(x, z), p.class(z, y)))
            .collect();
        s.sort_unstable();
        let mut swapped: Vec<(usize, usize)> = s.iter().map(|&(a, b)| (b, a)).collect();
        swapped.sort_unstable();
        s.min(swapped)
    };
    let mut reps: BTreeMap<usize, ((usize, usize), Vec<(usize, usize)>)> = BTreeMap::new();
    for x in 0..n {
        for y in x + 1..n {
            let c = p.class(x, y);
            let s = signature(x, y);
            match reps.get(&c) {
                None => {
                    reps.insert(c, ((x, y), s));
                }
                Some((first, rs)) => {
                    if *rs != s {
                        return Ok(Some(SymmetrizationObstruction {
                            class: c,
                            first: *first,
                            second: (x, y),
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Parameters `(k, a, b)` when the underlying uncolored graph is strongly
/// regular. Returns `None` when it is not, and also when it is disconnected,
/// complete, or edgeless.
pub fn is_strongly_regular(h: &ColoredGraph) -> Option<(usize, usize, usize)> {
    let n = h.n();
    if !h.is_connected() || h.num_edges() == 0 || h.num_edges() == n * (n - 1) / 2 {
        return None;
    }
    let k = h.degree(0);
    if (0..n).any(|v| h.degree(v) != k) {
        return None;
    }
    let mut a = None;
    let mut b = None;
    for x in 0..n {
        for y in x + 1..n {
            let common = h.neighbors(x).iter().filter(|&&z| h.adjacent(y, z)).count();
            let slot = if h.adjacent(x, y) { &mut a } else { &mut b };
            match *slot {
                None => *slot = Some(common),
                Some(c) if c != common => return None,
                _ => {}
            }
        }
    }
    Some((k, a?, b?))
}

fn shrikhande_adjacent(a: (usize, usize), b: (usize, usize)) -> bool {
    let d = ((a.0 + 4 - b.0) % 4, (a.1 + 4 - b.1) % 4);
    matches!(d, (1, 0) | (3, 0) | (0, 1) | (0, 3) | (1, 1) | (3, 3))
}

fn z4_points() -> Vec<(usize, usize)> {
    (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).collect()
}

fn z4_id(p: (usize, usize)) -> String {
    format!("{},{}", p.0, p.1)
}

/// The Shrikhande graph on `Z4 × Z4` (uncolored: one vertex and one edge color).
pub fn shrikhande_graph() -> ColoredGraph {
    let pts = z4_points();
    let mut b = GraphBuilder::new();
    for &p in &pts {
        b.add_vertex(z4_id(p), "0");
    }
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            if shrikhande_adjacent(p, q) {
                b.add_edge(z4_id(p), z4_id(q), "1");
            }
        }
    }
    b.build().expect("valid construction")
}

/// Complete graph on `Z4 × Z4`: vertices color 0, Shrikhande edges color 1,
/// all other pairs color 2.
pub fn shrikhande_colored() -> ColoredGraph {
    let pts = z4_points();
    let mut b = GraphBuilder::new();
    for &p in &pts {
        b.add_vertex(z4_id(p), "0");
    }
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            let c = if shrikhande_adjacent(p, q) { "1" } else { "2" };
            b.add_edge(z4_id(p), z4_id(q), c);
        }
    }
    b.build().expect("valid construction")
}

/// Edge colors of the complete graph on 15 points; row `l`, column `m`
/// colors the edge `{l+1, m+1}`.
pub const J15_MATRIX: &str = "\
0 1 1 2 3 4 2 3 4 2 3 4 2 3 4
1 0 1 3 4 2 3 4 2 3 4 2 3 4 2
1 1 0 4 2 3 4 2 3 4 2 3 4 2 3
2 3 4 0 1 1 3 2 4 2 4 3 4 3 2
3 4 2 1 0 1 2 4 3 4 3 2 3 2 4
4 2 3 1 1 0 4 3 2 3 2 4 2 4 3
2 3 4 3 2 4 0 1 1 4 3 2 2 4 3
3 4 2 2 4 3 1 0 1 3 2 4 4 3 2
4 2 3 4 3 2 1 1 0 2 4 3 3 2 4
2 3 4 2 4 3 4 3 2 0 1 1 3 2 4
3 4 2 4 3 2 3 2 4 1 0 1 2 4 3
4 2 3 3 2 4 2 4 3 1 1 0 4 3 2
2 3 4 4 3 2 2 4 3 3 2 4 0 1 1
3 4 2 3 2 4 4 3 2 2 4 3 1 0 1
4 2 3 2 4 3 3 2 4 4 3 2 1 1 0
";

/// FNV-1a digest of [`J15_MATRIX`], guarding the embedded data.
pub const J15_CHECKSUM: u64 = 4793640419434450303;

pub fn fnv1a(text: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn j15_entries() -> Vec<Vec<u8>> {
    J15_MATRIX
        .lines()
        .map(|l| l.split_whitespace().map(|t| t.parse().expect("digit")).collect())
        .collect()
}

/// The complete graph on `1..=15` with edge colors from [`J15_MATRIX`] and
/// a single vertex color `0`.
pub fn j15() -> ColoredGraph {
    let m = j15_entries();
    let mut b = GraphBuilder::new();
    for i in 1..=15 {
        b.add_vertex(i.to_string(), "0");
    }
    for l in 0..15 {
        for k in l + 1..15 {
            b.add_edge((l + 1).to_string(), (k + 1).to_string(), m[l][k].to_string());
        }
    }
    b.build().expect("valid construction")
}

/// Whether color-preserving automorphisms act transitively on every vertex
/// color class and every edge color class.
pub fn is_rcop(g: &ColoredGraph) -> bool {
    let mut t = OrbitTracker::new(g);
    let mut first_vertex: BTreeMap<u32, usize> = BTreeMap::new();
    for v in 0..g.n() {
        match first_vertex.get(&g.vc(v)) {
            None => {
                first_vertex.insert(g.vc(v), v);
            }
            Some(&r) => {
                if !t.vertices_related(r, v) {
                    return false;
                }
            }
        }
    }
    let mut first_edge: BTreeMap<u32, usize> = BTreeMap::new();
    for e in 0..g.num_edges() {
        match first_edge.get(&g.ec(e)) {
            None => {
                first_edge.insert(g.ec(e), e);
            }
            Some(&r) => {
                if !t.edges_related(r, e) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regularity::regularity_report;

    #[test]
    fn j15_data_is_intact() {
        assert_eq!(fnv1a(J15_MATRIX), J15_CHECKSUM);
        let m = j15_entries();
        assert_eq!(m.len(), 15);
        for l in 0..15 {
            assert_eq!(m[l].len(), 15);
            assert_eq!(m[l][l], 0);
            for k in 0..15 {
                assert_eq!(m[l][k], m[k][l]);
            }
        }
    }

    #[test]
    fn j15_first_row_colors() {
        let g = j15();
        let c = |a: &str, b: &str| {
            g.edge_color_between(g.index_of(a).unwrap(), g.index_of(b).unwrap())
                .unwrap()
                .label
                .clone()
        };
        assert_eq!(c("1", "2"), "1");
        assert_eq!(c("1", "4"), "2");
        assert_eq!(c("1", "5"), "3");
    }

    #[test]
    fn j15_signatures() {
        let g = j15();
        let pair = |a: &str, b: &str| (ColorId::edge(a), ColorId::edge(b));
        let s12 = ordered_pair_signature(&g, 0, 1).unwrap();
        let mut want = Multiset::new();
        want.insert(pair("1", "1"));
        want.insert_n(pair("2", "3"), 4);
        want.insert_n(pair("3", "4"), 4);
        want.insert_n(pair("4", "2"), 4);
        assert_eq!(s12, want);
        let s45 = ordered_pair_signature(&g, 3, 4).unwrap();
        let mut want = Multiset::new();
        want.insert(pair("1", "1"));
        want.insert(pair("2", "3"));
        want.insert_n(pair("2", "4"), 3);
        want.insert_n(pair("3", "2"), 3);
        want.insert(pair("3", "4"));
        want.insert(pair("4", "2"));
        want.insert_n(pair("4", "3"), 3);
        assert_eq!(s45, want);
        let swapped = s45.map(|(a, b)| (b.clone(), a.clone()));
        assert_ne!(s12, swapped);
    }

    #[test]
    fn j15_is_jordan_not_symmetrized_coherent() {
        let g = j15();
        assert!(regularity_report(&g).triangle_regular);
        let p = RelationPartition::from_complete_graph(&g).unwrap();
        assert_eq!(p.num_classes(), 5);
        assert!(is_jordan_scheme(&p).unwrap().holds());
        assert!(symmetrization_obstruction(&p).unwrap().is_some());
        assert!(!is_coherent_configuration(&p).holds());
    }

    #[test]
    fn trivial_partition() {
        for n in 2..6 {
            let p = RelationPartition::trivial(n);
            assert!(is_association_scheme(&p));
            let q = is_jordan_scheme(&p).unwrap().value().unwrap();
            assert_eq!(q.get(1, 1, 0), 2 * (n as i64 - 1));
            assert_eq!(q.get(1, 1, 1), 2 * (n as i64 - 2));
        }
    }

    #[test]
    fn cyclic_orbits_are_coherent() {
        let rot: Vec<usize> = (0..5).map(|i| (i + 1) % 5).collect();
        let p = RelationPartition::from_group_orbits(5, &[rot]).unwrap();
        assert_eq!(p.num_classes(), 5);
        let t = is_coherent_configuration(&p).value().unwrap();
        for k in 0..p.num_classes() {
            let (x, y) = (0..5)
                .flat_map(|x| (0..5).map(move |y| (x, y)))
                .find(|&(x, y)| p.class(x, y) == k)
                .unwrap();
            for i in 0..p.num_classes() {
                let valency = (0..5).filter(|&z| p.class(x, z) == i).count() as i64;
                let sum: i64 = (0..p.num_classes()).map(|j| t.get(i, j, k)).sum();
                assert_eq!(sum, valency, "row sum for class {i} at ({x},{y})");
            }
        }
        assert!(!is_association_scheme(&p));
        let s = symmetrize(&p);
        assert!(s.is_symmetric());
        assert_eq!(symmetrize(&s), s);
        assert!(is_jordan_scheme(&s).unwrap().holds());
    }

    #[test]
    fn directed_three_cycle() {
        let p = RelationPartition::from_group_orbits(3, &[vec![1, 2, 0]]).unwrap();
        assert_eq!(p.num_classes(), 3);
        assert!(!is_association_scheme(&p));
        assert!(matches!(is_jordan_scheme(&p), Err(SchemeError::NotSymmetric)));
        let s = symmetrize(&p);
        assert_eq!(s.num_classes(), 2);
        assert_eq!(s, RelationPartition::trivial(3));
    }

    #[test]
    fn asymmetric_four_point_coloring_fails_jordan() {
        let mut b = GraphBuilder::new();
        for i in 0..4 {
            b.add_vertex(i.to_string(), "v");
        }
        b.add_edge("0", "1", "x");
        b.add_edge("2", "3", "x");
        b.add_edge("0", "2", "y");
        b.add_edge("0", "3", "y");
        b.add_edge("1", "2", "y");
        b.add_edge("1", "3", "x");
        let g = b.build().unwrap();
        assert!(!regularity_report(&g).triangle_regular);
        let p = RelationPartition::from_complete_graph(&g).unwrap();
        assert!(!is_jordan_scheme(&p).unwrap().holds());
    }

    #[test]
    fn shrikhande_properties() {
        let h = shrikhande_graph();
        assert_eq!(h.num_edges(), 48);
        assert_eq!(is_strongly_regular(&h), Some((6, 2, 2)));
        let g = shrikhande_colored();
        assert_eq!(g.num_edges(), 120);
        let ones = (0..g.num_edges()).filter(|&e| g.edge_color(e).label == "1").count();
        assert_eq!(ones, 48);
        assert!(regularity_report(&g).triangle_regular);
        let p = RelationPartition::from_complete_graph(&g).unwrap();
        assert!(is_association_scheme(&p));
        assert!(!is_rcop(&g));
    }

    #[test]
    fn small_rcop_cases() {
        let aba = GraphBuilder::new()
            .vertex("1", "a")
            .vertex("2", "b")
            .vertex("3", "a")
            .edge("1", "2", "x")
            .edge("2", "3", "x")
            .build()
            .unwrap();
        assert!(is_rcop(&aba));
        let k4 = RelationPartition::trivial(4);
        assert!(is_association_scheme(&k4));
    }

    #[test]
    fn strongly_regular_small() {
        let mut b = GraphBuilder::new();
        for i in 0..5 {
            b.add_vertex(i.to_string(), "a");
        }
        for i in 0..5 {
            b.add_edge(i.to_string(), ((i + 1) % 5).to_string(), "x");
        }
        assert_eq!(is_strongly_regular(&b.build().unwrap()), Some((2, 0, 1)));
        let p3 = GraphBuilder::new()
            .vertex("1", "a")
            .vertex("2", "a")
            .vertex("3", "a")
            .edge("1", "2", "x")
            .edge("2", "3", "x")
            .build()
            .unwrap();
        assert_eq!(is_strongly_regular(&p3), None);
    }

    #[test]
    fn partition_document_round_trip() {
        let p = RelationPartition::trivial(3);
        let doc = p.to_document();
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(RelationPartition::parse(&text).unwrap(), p);
        assert!(RelationPartition::parse(r#"{"size":2,"classes":[[[0,0],[1,1]]]}"#).is_err());
    }
}
