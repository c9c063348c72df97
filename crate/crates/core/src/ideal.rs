//! Binomiality decision, generator sets, the completion, the monomial map
//! on σ-variables, and kernel membership certificates.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::block::{find_block_violation, is_block_graph, path_lambda_unchecked, BlockGraph, BlockViolation};
use crate::graph::{ColorId, ColoredGraph, GraphBuilder, Path};
use crate::multiset::Multiset;
use crate::regularity::{regularity_report, Counterexample, Witness};
use crate::rewrite::{rewrite_paths, RewriteError, RewriteTrace};
use crate::structure::StructureError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IdealError {
    #[error("graph is not binomial: {0}")]
    NotBinomial(String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("vertices {0} and {1} lie in different components")]
    CrossComponent(String, String),
    #[error("vertex index {0} out of range")]
    UnknownVertex(usize),
    #[error("completion is not triangle-regular: {0}")]
    CompletionIrregular(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// A monomial in the variables `σ_ij = σ_ji`, as a sorted list of pairs `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SigmaMonomial {
    factors: Vec<(usize, usize)>,
}

impl SigmaMonomial {
    pub fn new(factors: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut factors: Vec<(usize, usize)> = factors.into_iter().map(|(i, j)| (i.min(j), i.max(j))).collect();
        factors.sort_unstable();
        Self { factors }
    }

    pub fn factors(&self) -> &[(usize, usize)] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn display(&self, g: &ColoredGraph) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|&(i, j)| format!("s[{},{}]", g.id(i), g.id(j)))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// `lhs - rhs`, normalized so that `lhs < rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binomial {
    pub lhs: SigmaMonomial,
    pub rhs: SigmaMonomial,
}

impl Binomial {
    /// `None` when both sides coincide.
    pub fn new(a: SigmaMonomial, b: SigmaMonomial) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Self { lhs: a, rhs: b }),
            std::cmp::Ordering::Greater => Some(Self { lhs: b, rhs: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn display(&self, g: &ColoredGraph) -> String {
        format!("{} - {}", self.lhs.display(g), self.rhs.display(g))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    None,
    BlockViolation { component: usize, violation: BlockViolation },
    Regularity { component: usize, counterexample: Counterexample },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub binomial: bool,
    pub reason: Reason,
    /// Distinct components carry a common vertex or edge color. The
    /// componentwise decision treats them independently.
    pub components_share_colors: bool,
}

impl Decision {
    pub fn to_json(&self, g: &ColoredGraph) -> serde_json::Value {
        let reason = match &self.reason {
            Reason::None => serde_json::Value::Null,
            Reason::BlockViolation { component, violation } => serde_json::json!({
                "type": "block_violation",
                "component": component,
                "kind": violation.kind,
                "u": g.id(violation.u),
                "v": g.id(violation.v),
                "path_p": violation.path_p.user_ids(g),
                "path_q": violation.path_q.user_ids(g),
            }),
            Reason::Regularity { component, counterexample } => serde_json::json!({
                "type": "regularity",
                "component": component,
                "kind": counterexample.kind,
                "witness": witness_ids(g, &counterexample.witness),
                "description": counterexample.describe(g),
            }),
        };
        serde_json::json!({
            "binomial": self.binomial,
            "reason": reason,
            "components_share_colors": self.components_share_colors,
        })
    }
}

fn witness_ids(g: &ColoredGraph, w: &Witness) -> serde_json::Value {
    match *w {
        Witness::Vertices { a, b } => serde_json::json!({"vertices": [g.id(a), g.id(b)]}),
        Witness::Edges { a, b } => serde_json::json!({
            "edges": [[g.id(a.0), g.id(a.1)], [g.id(b.0), g.id(b.1)]]
        }),
    }
}

fn lift_path(p: &Path, map: &[usize]) -> Path {
    Path::new(p.vertices().iter().map(|&v| map[v]).collect())
}

fn lift_witness(w: &Witness, map: &[usize]) -> Witness {
    match *w {
        Witness::Vertices { a, b } => Witness::Vertices { a: map[a], b: map[b] },
        Witness::Edges { a, b } => {
            let f = |(x, y): (usize, usize)| (map[x].min(map[y]), map[x].max(map[y]));
            Witness::Edges { a: f(a), b: f(b) }
        }
    }
}

/// Decides binomiality componentwise: every component must be a
/// triangle-regular block graph. The empty graph is binomial.
pub fn decide_binomial(g: &ColoredGraph) -> Decision {
    let sets = g.component_vertex_sets();
    let mut share = false;
    let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
    for (c, vs) in sets.iter().enumerate() {
        let mut colors: BTreeSet<u32> = vs.iter().map(|&v| g.vc(v)).collect();
        for e in 0..g.num_edges() {
            if vs.binary_search(&g.edges()[e].0).is_ok() {
                colors.insert(g.ec(e));
            }
        }
        for col in colors {
            if *seen.entry(col).or_insert(c) != c {
                share = true;
            }
        }
    }
    for (c, vs) in sets.iter().enumerate() {
        let h = g.induced_subgraph(vs);
        if let Some(v) = find_block_violation(&h).expect("components are connected") {
            return Decision {
                binomial: false,
                reason: Reason::BlockViolation {
                    component: c,
                    violation: BlockViolation {
                        kind: v.kind,
                        u: vs[v.u],
                        v: vs[v.v],
                        path_p: lift_path(&v.path_p, vs),
                        path_q: lift_path(&v.path_q, vs),
                    },
                },
                components_share_colors: share,
            };
        }
        let report = regularity_report(&h);
        if !report.triangle_regular {
            let ce = report.counterexample.expect("a failing property has a counterexample");
            return Decision {
                binomial: false,
                reason: Reason::Regularity {
                    component: c,
                    counterexample: Counterexample {
                        kind: ce.kind,
                        witness: lift_witness(&ce.witness, vs),
                    },
                },
                components_share_colors: share,
            };
        }
    }
    Decision {
        binomial: true,
        reason: Reason::None,
        components_share_colors: share,
    }
}

fn require_binomial(g: &ColoredGraph) -> Result<BlockGraph<'_>, IdealError> {
    let d = decide_binomial(g);
    if !d.binomial {
        let detail = match &d.reason {
            Reason::BlockViolation { violation, .. } => format!(
                "not a block graph between {} and {}",
                g.id(violation.u),
                g.id(violation.v)
            ),
            Reason::Regularity { counterexample, .. } => counterexample.describe(g),
            Reason::None => String::new(),
        };
        return Err(IdealError::NotBinomial(detail));
    }
    Ok(BlockGraph::new_forest(g).expect("binomial graphs are block graphs componentwise"))
}

/// `σ_ab - σ_cd` for two vertex pairs with the same geodesic color multiset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinearGenerator {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

impl LinearGenerator {
    pub fn binomial(&self) -> Binomial {
        Binomial::new(SigmaMonomial::new([self.first]), SigmaMonomial::new([self.second]))
            .expect("distinct pairs")
    }
}

/// `σ_ij σ_kl - σ_ik σ_jl` for the tuple `(i, j, k, l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticGenerator {
    pub tuple: [usize; 4],
    pub binomial: Binomial,
}

/// Pairs `(i, j)`, `i <= j`, in a common component, grouped by the color
/// multiset of their geodesic. Classes are ordered by least member.
pub fn lambda_classes(g: &ColoredGraph) -> Result<Vec<Vec<(usize, usize)>>, IdealError> {
    let bg = BlockGraph::new_forest(g).map_err(|_| IdealError::NotBinomial("not a block graph".into()))?;
    let mut classes: BTreeMap<Multiset<ColorId>, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..g.n() {
        for j in i..g.n() {
            if bg.same_component(i, j) {
                classes
                    .entry(path_lambda_unchecked(g, &bg.path(i, j)))
                    .or_default()
                    .push((i, j));
            }
        }
    }
    let mut out: Vec<Vec<(usize, usize)>> = classes.into_values().collect();
    out.sort();
    Ok(out)
}

/// Linear generators. In spanning mode each class of size `m` yields `m - 1`
/// generators against its least pair; otherwise every pair of members.
///
/// Classes are formed over all pairs within components, so equal color
/// multisets in different components are also identified.
pub fn linear_generators(g: &ColoredGraph, all_pairs: bool) -> Result<Vec<LinearGenerator>, IdealError> {
    require_binomial(g)?;
    let mut out = Vec::new();
    for class in lambda_classes(g)? {
        if all_pairs {
            for (x, &a) in class.iter().enumerate() {
                for &b in &class[x + 1..] {
                    out.push(LinearGenerator { first: a, second: b });
                }
            }
        } else {
            for &b in &class[1..] {
                out.push(LinearGenerator { first: class[0], second: b });
            }
        }
    }
    Ok(out)
}

/// Quadratic generators from 4-tuples (with repetition) inside one component
/// whose geodesic edge multisets satisfy `E(i,j) + E(k,l) = E(i,k) + E(j,l)`.
/// Each distinct nontrivial binomial is listed once, with its first tuple.
pub fn quadratic_generators(g: &ColoredGraph) -> Result<Vec<QuadraticGenerator>, IdealError> {
    let bg = require_binomial(g)?;
    let n = g.n();
    let mut edges: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            if bg.same_component(i, j) {
                let mut e = bg.path(i, j).edge_indices(g);
                e.sort_unstable();
                edges[i * n + j] = e;
            }
        }
    }
    let merged = |a: &[usize], b: &[usize]| -> Vec<usize> {
        let mut m = Vec::with_capacity(a.len() + b.len());
        m.extend_from_slice(a);
        m.extend_from_slice(b);
        m.sort_unstable();
        m
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for vs in g.component_vertex_sets() {
        for &i in &vs {
            for &j in &vs {
                for &k in &vs {
                    for &l in &vs {
                        let left = merged(&edges[i * n + j], &edges[k * n + l]);
                        let right = merged(&edges[i * n + k], &edges[j * n + l]);
                        if left != right {
                            continue;
                        }
                        if let Some(b) =
                            Binomial::new(SigmaMonomial::new([(i, j), (k, l)]), SigmaMonomial::new([(i, k), (j, l)]))
                        {
                            if seen.insert(b.clone()) {
                                out.push(QuadraticGenerator {
                                    tuple: [i, j, k, l],
                                    binomial: b,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Both generator lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    pub linear: Vec<LinearGenerator>,
    pub quadratic: Vec<QuadraticGenerator>,
}

#[derive(Serialize)]
struct GeneratorsDoc {
    linear: Vec<[String; 4]>,
    quadratic: Vec<[String; 4]>,
}

impl Generators {
    pub fn compute(g: &ColoredGraph, all_pairs: bool) -> Result<Self, IdealError> {
        Ok(Self {
            linear: linear_generators(g, all_pairs)?,
            quadratic: quadratic_generators(g)?,
        })
    }

    pub fn binomials(&self) -> Vec<Binomial> {
        self.linear
            .iter()
            .map(LinearGenerator::binomial)
            .chain(self.quadratic.iter().map(|q| q.binomial.clone()))
            .collect()
    }

    pub fn to_json(&self, g: &ColoredGraph) -> serde_json::Value {
        let id = |v: usize| g.id(v).to_string();
        let doc = GeneratorsDoc {
            linear: self
                .linear
                .iter()
                .map(|l| [id(l.first.0), id(l.first.1), id(l.second.0), id(l.second.1)])
                .collect(),
            quadratic: self.quadratic.iter().map(|q| q.tuple.map(id)).collect(),
        };
        serde_json::to_value(doc).expect("serializable")
    }
}

/// Image of a σ-monomial: the sum of the color multisets of the geodesics
/// of its factors.
pub fn psi_image(g: &ColoredGraph, m: &SigmaMonomial) -> Result<Multiset<ColorId>, IdealError> {
    let bg = BlockGraph::new_forest(g).map_err(|_| IdealError::NotBinomial("not a block graph".into()))?;
    psi_with(&bg, m)
}

fn psi_with(bg: &BlockGraph<'_>, m: &SigmaMonomial) -> Result<Multiset<ColorId>, IdealError> {
    let g = bg.graph();
    let mut out = Multiset::new();
    for &(i, j) in m.factors() {
        if i >= g.n() || j >= g.n() {
            return Err(IdealError::UnknownVertex(i.max(j)));
        }
        if !bg.same_component(i, j) {
            return Err(IdealError::CrossComponent(g.id(i).into(), g.id(j).into()));
        }
        out.extend(path_lambda_unchecked(g, &bg.path(i, j)).to_sorted_vec());
    }
    Ok(out)
}

/// The complete graph whose non-edges carry a new color per geodesic color
/// multiset.
#[derive(Clone, Debug)]
pub struct Completion {
    pub graph: ColoredGraph,
    pub new_color_of: BTreeMap<(usize, usize), ColorId>,
}

fn lambda_label(m: &Multiset<ColorId>) -> String {
    let parts: Vec<String> = m
        .iter()
        .map(|(c, k)| {
            let tag = if c.is_vertex() { "v" } else { "e" };
            if k == 1 {
                format!("{tag}:{c}")
            } else {
                format!("{tag}:{c}^{k}")
            }
        })
        .collect();
    format!("<{}>", parts.join(","))
}

pub fn completion(g: &ColoredGraph) -> Result<Completion, IdealError> {
    if !g.is_connected() {
        return Err(IdealError::NotConnected);
    }
    require_binomial(g)?;
    let bg = BlockGraph::new(g).expect("checked");
    let taken: BTreeSet<String> = g.palette().iter().map(|c| c.label.clone()).collect();
    let mut labels: BTreeMap<Multiset<ColorId>, String> = BTreeMap::new();
    let mut used = taken.clone();
    let mut b = GraphBuilder::new();
    for v in 0..g.n() {
        b.add_vertex(g.id(v), g.vertex_color(v).label.clone());
    }
    let mut new_color_of = BTreeMap::new();
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            let label = match g.edge_color_between(i, j) {
                Some(c) => c.label.clone(),
                None => {
                    let lam = path_lambda_unchecked(g, &bg.path(i, j));
                    let label = labels
                        .entry(lam.clone())
                        .or_insert_with(|| {
                            let mut l = lambda_label(&lam);
                            while used.contains(&l) {
                                l.push('\'');
                            }
                            used.insert(l.clone());
                            l
                        })
                        .clone();
                    new_color_of.insert((i, j), ColorId::edge(label.clone()));
                    label
                }
            };
            b.add_edge(g.id(i), g.id(j), label);
        }
    }
    let graph = b.build().expect("labels are fresh");
    let report = regularity_report(&graph);
    if !report.triangle_regular {
        let detail = report.counterexample.map(|ce| ce.describe(&graph)).unwrap_or_default();
        return Err(IdealError::CompletionIrregular(detail));
    }
    Ok(Completion { graph, new_color_of })
}

/// Result of a kernel membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub in_kernel: bool,
    pub trace: Option<RewriteTrace>,
}

/// Geodesics of the factors of `m`.
pub fn monomial_paths(g: &ColoredGraph, m: &SigmaMonomial) -> Result<Vec<Path>, IdealError> {
    let bg = BlockGraph::new_forest(g).map_err(|_| IdealError::NotBinomial("not a block graph".into()))?;
    m.factors()
        .iter()
        .map(|&(i, j)| {
            if i >= g.n() || j >= g.n() {
                Err(IdealError::UnknownVertex(i.max(j)))
            } else if !bg.same_component(i, j) {
                Err(IdealError::CrossComponent(g.id(i).into(), g.id(j).into()))
            } else {
                Ok(bg.path(i, j))
            }
        })
        .collect()
}

/// Decides whether both sides of `b` have the same image and, if so,
/// rewrites the geodesics of the left side into those of the right side.
pub fn kernel_membership(g: &ColoredGraph, b: &Binomial) -> Result<Certificate, IdealError> {
    if !g.is_connected() {
        return Err(IdealError::NotConnected);
    }
    if !is_block_graph(g).unwrap_or(false) {
        return Err(IdealError::NotBinomial("not a block graph".into()));
    }
    let bg = BlockGraph::new(g).expect("checked");
    let in_kernel = b.lhs.degree() == b.rhs.degree() && psi_with(&bg, &b.lhs)? == psi_with(&bg, &b.rhs)?;
    if !in_kernel {
        return Ok(Certificate {
            in_kernel,
            trace: None,
        });
    }
    let a = monomial_paths(g, &b.lhs)?;
    let target = monomial_paths(g, &b.rhs)?;
    let trace = rewrite_paths(g, &a, &target)?;
    Ok(Certificate {
        in_kernel,
        trace: Some(trace),
    })
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

    fn chain4() -> ColoredGraph {
        GraphBuilder::new()
            .vertex("1", "a")
            .vertex("2", "b")
            .vertex("3", "c")
            .vertex("4", "d")
            .edge("1", "2", "x")
            .edge("2", "3", "y")
            .edge("3", "4", "z")
            .build()
            .unwrap()
    }

    fn sm(f: &[(usize, usize)]) -> SigmaMonomial {
        SigmaMonomial::new(f.iter().copied())
    }

    #[test]
    fn aba_generators() {
        let g = aba();
        let gens = Generators::compute(&g, false).unwrap();
        let lin: Vec<Binomial> = gens.linear.iter().map(|l| l.binomial()).collect();
        assert_eq!(lin.len(), 2);
        assert!(lin.contains(&Binomial::new(sm(&[(0, 0)]), sm(&[(2, 2)])).unwrap()));
        assert!(lin.contains(&Binomial::new(sm(&[(0, 1)]), sm(&[(1, 2)])).unwrap()));
        assert_eq!(gens.quadratic.len(), 1);
        assert_eq!(
            gens.quadratic[0].binomial,
            Binomial::new(sm(&[(0, 2), (1, 1)]), sm(&[(0, 1), (1, 2)])).unwrap()
        );
    }

    #[test]
    fn chain_quadratics() {
        let g = chain4();
        let q: Vec<Binomial> = quadratic_generators(&g).unwrap().into_iter().map(|q| q.binomial).collect();
        assert!(q.contains(&Binomial::new(sm(&[(0, 3), (1, 2)]), sm(&[(0, 2), (1, 3)])).unwrap()));
        assert!(!q.contains(&Binomial::new(sm(&[(0, 3), (1, 2)]), sm(&[(0, 1), (2, 3)])).unwrap()));
        assert!(linear_generators(&g, false).unwrap().is_empty());
    }

    #[test]
    fn psi_examples() {
        let g = aba();
        let img = psi_image(&g, &sm(&[(0, 2)])).unwrap();
        assert_eq!(img.count(&ColorId::vertex("a")), 2);
        assert_eq!(img.count(&ColorId::edge("x")), 2);
        assert_eq!(img.len(), 5);
        assert_eq!(
            psi_image(&g, &sm(&[(0, 1), (1, 2)])).unwrap(),
            psi_image(&g, &sm(&[(0, 2), (1, 1)])).unwrap()
        );
    }

    #[test]
    fn membership_examples() {
        let g = aba();
        let b = Binomial::new(sm(&[(0, 0), (1, 2)]), sm(&[(2, 2), (0, 1)])).unwrap();
        let c = kernel_membership(&g, &b).unwrap();
        assert!(c.in_kernel);
        assert_eq!(c.trace.unwrap().len(), 2);
        let b = Binomial::new(sm(&[(0, 1)]), sm(&[(0, 2)])).unwrap();
        assert!(!kernel_membership(&g, &b).unwrap().in_kernel);
    }

    #[test]
    fn completion_of_path() {
        let g = aba();
        let c = completion(&g).unwrap();
        assert_eq!(c.graph.num_edges(), 3);
        assert_eq!(c.new_color_of.len(), 1);
    }

    #[test]
    fn non_binomial_rejected() {
        let g = GraphBuilder::new()
            .vertex("1", "a")
            .vertex("2", "a")
            .vertex("3", "a")
            .vertex("4", "a")
            .edge("1", "2", "x")
            .edge("2", "3", "x")
            .edge("3", "4", "x")
            .edge("4", "1", "x")
            .build()
            .unwrap();
        let d = decide_binomial(&g);
        assert!(!d.binomial);
        assert!(matches!(d.reason, Reason::BlockViolation { .. }));
        assert!(matches!(linear_generators(&g, false), Err(IdealError::NotBinomial(_))));
    }

    #[test]
    fn shared_colors_flagged() {
        let g = GraphBuilder::new()
            .vertex("1", "a")
            .vertex("2", "a")
            .vertex("3", "a")
            .edge("1", "2", "x")
            .build()
            .unwrap();
        let d = decide_binomial(&g);
        assert!(d.binomial);
        assert!(d.components_share_colors);
        assert!(decide_binomial(&GraphBuilder::new().build().unwrap()).binomial);
    }
}
