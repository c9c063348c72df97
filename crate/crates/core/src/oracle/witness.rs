//! Explicit polynomials in `I_G` that certify non-binomiality: a
//! combination of σ-minors that vanishes on the model, together with a
//! distinguished monomial that no other monomial of it can pair with.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use super::series::{det_sigma, SeriesEvaluator, SigmaPolynomial};
use crate::block::{distances, find_block_violation, ViolationKind};
use crate::graph::ColoredGraph;
use crate::ideal::SigmaMonomial;
use crate::regularity::{regularity_report, RegularityKind, Witness};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("the graph is binomial; no witness exists")]
    Binomial,
    #[error("the graph is not connected")]
    NotConnected,
    #[error("minor of size {0} exceeds the limit of 8")]
    TooLarge(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessCase {
    #[serde(rename = "block-1")]
    Block1,
    #[serde(rename = "block-2")]
    Block2,
    #[serde(rename = "vertex")]
    Vertex,
    #[serde(rename = "edge")]
    Edge,
}

/// `Σ ± det Σ[rows, cols]` with a distinguished monomial.
#[derive(Clone, Debug)]
pub struct NonbinomialWitness {
    pub case: WitnessCase,
    /// Signed minors making up the polynomial, rows and columns in order.
    pub minors: Vec<(i8, Vec<usize>, Vec<usize>)>,
    pub polynomial: SigmaPolynomial,
    pub monomial: SigmaMonomial,
    /// The vertices or edge endpoints the construction is built around.
    pub anchors: Vec<usize>,
    /// Edge degree through which partners are compared.
    pub edge_degree: u32,
}

/// Result of comparing the distinguished monomial with every other
/// monomial of the polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartnerCheck {
    pub edge_degree: u32,
    pub degree_bound: u32,
    pub partners: usize,
    /// Monomials whose series agree with the distinguished one through
    /// `edge_degree`. Empty for a valid witness.
    pub matching: Vec<SigmaMonomial>,
}

impl PartnerCheck {
    pub fn passed(&self) -> bool {
        self.matching.is_empty()
    }
}

fn closed_nbhd(g: &ColoredGraph, vs: &[usize]) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = vs.iter().copied().collect();
    for &v in vs {
        s.extend(g.neighbors(v).iter().copied());
    }
    s
}

fn check_size(k: usize) -> Result<(), WitnessError> {
    if k > 8 {
        Err(WitnessError::TooLarge(k))
    } else {
        Ok(())
    }
}

fn diag_product(vs: impl IntoIterator<Item = usize>) -> Vec<(usize, usize)> {
    vs.into_iter().map(|v| (v, v)).collect()
}

fn block_witness(g: &ColoredGraph, kind: ViolationKind, u: usize, v: usize) -> Result<NonbinomialWitness, WitnessError> {
    let nbrs: Vec<usize> = g.neighbors(u).to_vec();
    let mut rows: Vec<usize> = vec![u];
    rows.extend(&nbrs);
    let mut cols: Vec<usize> = vec![v];
    cols.extend(&nbrs);
    check_size(rows.len())?;
    let mut factors = diag_product(nbrs);
    factors.push((u, v));
    let d = distances(g)[u * g.n() + v];
    Ok(NonbinomialWitness {
        case: match kind {
            ViolationKind::EqualLength => WitnessCase::Block1,
            ViolationKind::OffByOne => WitnessCase::Block2,
        },
        polynomial: det_sigma(&rows, &cols),
        minors: vec![(1, rows, cols)],
        monomial: SigmaMonomial::new(factors),
        anchors: vec![u, v],
        edge_degree: (d + 1).min(3),
    })
}

fn vertex_witness(g: &ColoredGraph, u: usize, v: usize) -> Result<NonbinomialWitness, WitnessError> {
    let d = distances(g)[u * g.n() + v];
    let mut around: BTreeSet<usize> = g.neighbors(u).iter().copied().collect();
    around.extend(g.neighbors(v).iter().copied());
    let (a, b): (Vec<usize>, Vec<usize>) = if d == 1 {
        (
            around.iter().copied().filter(|&w| w != v).collect(),
            around.iter().copied().filter(|&w| w != u).collect(),
        )
    } else {
        let mut a = around.clone();
        a.insert(u);
        let mut b = around;
        b.insert(v);
        (a.into_iter().collect(), b.into_iter().collect())
    };
    check_size(a.len())?;
    let polynomial = det_sigma(&a, &a).sub(&det_sigma(&b, &b));
    Ok(NonbinomialWitness {
        case: WitnessCase::Vertex,
        monomial: SigmaMonomial::new(diag_product(a.iter().copied())),
        minors: vec![(1, a.clone(), a), (-1, b.clone(), b)],
        polynomial,
        anchors: vec![u, v],
        edge_degree: (d + 1).min(3),
    })
}

fn edge_witness(g: &ColoredGraph, (u1, v1): (usize, usize), (u2, v2): (usize, usize)) -> Result<NonbinomialWitness, WitnessError> {
    let a = closed_nbhd(g, &[u1, v1, u2, v2]);
    check_size(a.len() - 1)?;
    let minor = |u: usize, v: usize| {
        let rest: Vec<usize> = a.iter().copied().filter(|&w| w != u && w != v).collect();
        let mut rows = vec![v];
        rows.extend(&rest);
        let mut cols = vec![u];
        cols.extend(&rest);
        (rows, cols, rest)
    };
    let (r1, c1, rest1) = minor(u1, v1);
    let (r2, c2, _) = minor(u2, v2);
    let polynomial = det_sigma(&r1, &c1).sub(&det_sigma(&r2, &c2));
    let mut factors = diag_product(rest1);
    factors.push((v1, u1));
    Ok(NonbinomialWitness {
        case: WitnessCase::Edge,
        polynomial,
        monomial: SigmaMonomial::new(factors),
        minors: vec![(1, r1, c1), (-1, r2, c2)],
        anchors: vec![u1, v1, u2, v2],
        edge_degree: 3,
    })
}

/// Builds the witness matching the first failure found by the decision
/// procedure. For an edge failure both orientations of the second edge
/// are tried and the first one passing the partner check is kept.
pub fn witness_nonbinomial(g: &ColoredGraph) -> Result<NonbinomialWitness, WitnessError> {
    if !g.is_connected() {
        return Err(WitnessError::NotConnected);
    }
    if let Some(v) = find_block_violation(g).map_err(|_| WitnessError::NotConnected)? {
        return block_witness(g, v.kind, v.u, v.v);
    }
    let report = regularity_report(g);
    if report.triangle_regular {
        return Err(WitnessError::Binomial);
    }
    let ce = report.counterexample.expect("failing report has a counterexample");
    match (ce.kind, ce.witness) {
        (RegularityKind::VertexRegular, Witness::Vertices { a, b }) => vertex_witness(g, a, b),
        (_, Witness::Edges { a, b }) => {
            let first = edge_witness(g, a, b)?;
            if check_partners(g, &first).passed() {
                return Ok(first);
            }
            let second = edge_witness(g, a, (b.1, b.0))?;
            if check_partners(g, &second).passed() {
                Ok(second)
            } else {
                Ok(first)
            }
        }
        _ => unreachable!("vertex-triangle failures do not decide the outcome"),
    }
}

/// Compares truncated series of the distinguished monomial with every
/// other monomial of the witness polynomial, restricted to edge degree at
/// most `edge_degree`. The total degree bound leaves two extra degrees for
/// vertex variables.
pub fn check_partners(g: &ColoredGraph, w: &NonbinomialWitness) -> PartnerCheck {
    let degree_bound = w.edge_degree + 2;
    let mut ev = SeriesEvaluator::new(g, degree_bound);
    let target = ev.monomial(&w.monomial).edge_degree_at_most(g, w.edge_degree);
    let mut matching = Vec::new();
    let mut partners = 0;
    for (m, _) in w.polynomial.terms() {
        if *m == w.monomial {
            continue;
        }
        partners += 1;
        let s = ev.monomial(m).edge_degree_at_most(g, w.edge_degree);
        if s.sub(&target).is_zero() {
            matching.push(m.clone());
        }
    }
    PartnerCheck {
        edge_degree: w.edge_degree,
        degree_bound,
        partners,
        matching,
    }
}

impl NonbinomialWitness {
    pub fn to_json(&self, g: &ColoredGraph) -> serde_json::Value {
        let ids = |vs: &[usize]| vs.iter().map(|&v| g.id(v).to_string()).collect::<Vec<_>>();
        serde_json::json!({
            "case": self.case,
            "anchors": ids(&self.anchors),
            "minors": self.minors.iter().map(|(s, r, c)| serde_json::json!({
                "sign": s, "rows": ids(r), "cols": ids(c),
            })).collect::<Vec<_>>(),
            "monomial": self.monomial.display(g),
            "terms": self.polynomial.num_terms(),
            "edge_degree": self.edge_degree,
        })
    }
}
