//! Exact truncated power series in color variables and their use to expand
//! σ-polynomials through the walk sum.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::graph::ColoredGraph;
use crate::ideal::{Binomial, SigmaMonomial};

/// A polynomial in one variable per palette color, truncated at total degree
/// `bound`. Exponent vectors are indexed like `ColoredGraph::palette`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    nvars: usize,
    bound: u32,
    terms: BTreeMap<Vec<u8>, BigRational>,
}

fn degree(e: &[u8]) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, bound: u32) -> Self {
        Self {
            nvars,
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, bound: u32) -> Self {
        let mut s = Self::zero(nvars, bound);
        s.terms.insert(vec![0; nvars], BigRational::one());
        s
    }

    /// `coeff * y^exps`, or zero when the degree exceeds the bound.
    pub fn monomial(nvars: usize, bound: u32, exps: Vec<u8>, coeff: BigRational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut s = Self::zero(nvars, bound);
        if degree(&exps) <= bound && !coeff.is_zero() {
            s.terms.insert(exps, coeff);
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u8]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, e: Vec<u8>, c: BigRational) {
        if c.is_zero() || degree(&e) > self.bound {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, k: &BigRational) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c * k);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.add_scaled(other, &-BigRational::one());
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let bound = self.bound.min(other.bound);
        let mut out = Self::zero(self.nvars, bound);
        for (e1, c1) in &self.terms {
            let d1 = degree(e1);
            for (e2, c2) in &other.terms {
                if d1 + degree(e2) > bound {
                    continue;
                }
                let e: Vec<u8> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Multiplies by the variable `var`.
    pub fn shift(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.bound);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e[var] += 1;
            out.add_term(e, c.clone());
        }
        out
    }

    /// Multiplies by `1 / (1 - y_var)`, expanded geometrically.
    pub fn geometric(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.bound);
        for (e, c) in &self.terms {
            let room = self.bound - degree(e);
            let mut e = e.clone();
            for k in 0..=room {
                if k > 0 {
                    e[var] += 1;
                }
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Terms whose exponent vector satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&[u8]) -> bool) -> Self {
        Self {
            nvars: self.nvars,
            bound: self.bound,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms whose degree in the edge-color variables of `g` is at most `k`.
    pub fn edge_degree_at_most(&self, g: &ColoredGraph, k: u32) -> Self {
        let is_edge: Vec<bool> = g.palette().iter().map(|c| !c.is_vertex()).collect();
        self.filter(|e| e.iter().zip(&is_edge).filter(|(_, &b)| b).map(|(&x, _)| x as u32).sum::<u32>() <= k)
    }

    /// Human-readable form with color labels, for reports.
    pub fn display(&self, g: &ColoredGraph) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names: Vec<String> = g
            .palette()
            .iter()
            .map(|c| format!("y[{}{}]", if c.is_vertex() { "v:" } else { "e:" }, c.label))
            .collect();
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut factors: Vec<String> = Vec::new();
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{x}", names[i])),
                }
            }
            let mono = factors.join("*");
            let coeff = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match (mono.is_empty(), coeff.is_one()) {
                (true, _) => coeff.to_string(),
                (false, true) => mono,
                (false, false) => format!("{coeff}*{mono}"),
            };
            parts.push(format!("{sign} {body}"));
        }
        let s = parts.join(" ");
        s.strip_prefix("+ ").map(str::to_string).unwrap_or(s)
    }
}

/// Walk-sum series `σ_ij` for every `i`, for the fixed column `j`.
///
/// Iterates `s_i = z_i (δ_ij + Σ_{k ~ i} y_ik s_k)`, where `z_i` is the
/// geometric series in the vertex color of `i`. Each round fixes one more
/// degree, so `bound + 1` rounds suffice.
pub fn sigma_column(g: &ColoredGraph, j: usize, bound: u32) -> Vec<TruncatedSeries> {
    let n = g.n();
    let nv = g.palette().len();
    let mut s = vec![TruncatedSeries::zero(nv, bound); n];
    for _ in 0..=bound {
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = if i == j {
                TruncatedSeries::one(nv, bound)
            } else {
                TruncatedSeries::zero(nv, bound)
            };
            for &k in g.neighbors(i) {
                let e = g.ec_between(i, k).expect("adjacent") as usize;
                acc.add_assign(&s[k].shift(e));
            }
            next.push(acc.geometric(g.vc(i) as usize));
        }
        s = next;
    }
    s
}

pub fn sigma_series(g: &ColoredGraph, i: usize, j: usize, bound: u32) -> TruncatedSeries {
    sigma_column(g, j, bound).swap_remove(i)
}

/// A polynomial in the σ-variables with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SigmaPolynomial {
    terms: BTreeMap<SigmaMonomial, BigRational>,
}

impl SigmaPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_monomial(m: SigmaMonomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, BigRational::one());
        p
    }

    pub fn from_binomial(b: &Binomial) -> Self {
        let mut p = Self::from_monomial(b.lhs.clone());
        p.add_term(b.rhs.clone(), -BigRational::one());
        p
    }

    pub fn add_term(&mut self, m: SigmaMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, k: &BigRational) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * k);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = self.clone();
        p.add_scaled(other, &-BigRational::one());
        p
    }

    /// Product with a single variable `σ_ij`.
    pub fn times_sigma(&self, i: usize, j: usize) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            let mut f = m.factors().to_vec();
            f.push((i, j));
            p.add_term(SigmaMonomial::new(f), c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SigmaMonomial, &BigRational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &SigmaMonomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn display(&self, g: &ColoredGraph) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{}{}", if c.is_negative() { "- " } else { "+ " }, {
                let a = c.abs();
                if a.is_one() {
                    m.display(g)
                } else {
                    format!("{a}*{}", m.display(g))
                }
            }))
            .collect();
        let s = parts.join(" ");
        s.strip_prefix("+ ").map(str::to_string).unwrap_or(s)
    }
}

/// Caches σ-series columns for repeated evaluation on one graph.
pub struct SeriesEvaluator<'g> {
    g: &'g ColoredGraph,
    bound: u32,
    columns: BTreeMap<usize, Vec<TruncatedSeries>>,
}

impl<'g> SeriesEvaluator<'g> {
    pub fn new(g: &'g ColoredGraph, bound: u32) -> Self {
        Self {
            g,
            bound,
            columns: BTreeMap::new(),
        }
    }

    pub fn sigma(&mut self, i: usize, j: usize) -> &TruncatedSeries {
        let (g, bound) = (self.g, self.bound);
        &self.columns.entry(j).or_insert_with(|| sigma_column(g, j, bound))[i]
    }

    pub fn monomial(&mut self, m: &SigmaMonomial) -> TruncatedSeries {
        let nv = self.g.palette().len();
        let mut acc = TruncatedSeries::one(nv, self.bound);
        for &(i, j) in m.factors() {
            let s = self.sigma(i, j).clone();
            acc = acc.mul(&s);
        }
        acc
    }

    pub fn polynomial(&mut self, p: &SigmaPolynomial) -> TruncatedSeries {
        let nv = self.g.palette().len();
        let mut acc = TruncatedSeries::zero(nv, self.bound);
        for (m, c) in p.terms() {
            acc.add_scaled(&self.monomial(m), c);
        }
        acc
    }
}

/// `ρ(p)` truncated at total degree `bound`.
pub fn evaluate_sigma_poly(g: &ColoredGraph, p: &SigmaPolynomial, bound: u32) -> TruncatedSeries {
    SeriesEvaluator::new(g, bound).polynomial(p)
}

/// Symbolic `det Σ_{A,B}` by cofactor expansion along rows, memoized over
/// the set of columns still available. At most eight rows.
pub fn det_sigma(rows: &[usize], cols: &[usize]) -> SigmaPolynomial {
    assert_eq!(rows.len(), cols.len(), "square minor");
    assert!(rows.len() <= 8, "minor too large");
    let mut memo: HashMap<u32, SigmaPolynomial> = HashMap::new();
    det_rec(rows, cols, 0, (1u32 << cols.len()) - 1, &mut memo)
}

fn det_rec(
    rows: &[usize],
    cols: &[usize],
    r: usize,
    mask: u32,
    memo: &mut HashMap<u32, SigmaPolynomial>,
) -> SigmaPolynomial {
    if r == rows.len() {
        return SigmaPolynomial::from_monomial(SigmaMonomial::new([]));
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let mut out = SigmaPolynomial::zero();
    let mut sign = BigRational::one();
    for (c, &col) in cols.iter().enumerate() {
        if mask & (1 << c) == 0 {
            continue;
        }
        let minor = det_rec(rows, cols, r + 1, mask & !(1 << c), memo);
        out.add_scaled(&minor.times_sigma(rows[r], col), &sign);
        sign = -sign;
    }
    memo.insert(mask, out.clone());
    out
}
