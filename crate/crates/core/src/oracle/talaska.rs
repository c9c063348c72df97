//! Minors of the weighted path matrix of a directed graph, computed twice:
//! by signed self-avoiding flows over disjoint cycle collections, and by
//! inverting `I - W`.

use nalgebra::DMatrix;
use rand::Rng;
use thiserror::Error;

use crate::graph::ColoredGraph;

#[derive(Debug, Error, PartialEq)]
pub enum TalaskaError {
    #[error("weights diverge: spectral radius {0} is not below 1")]
    Divergent(f64),
    #[error("source and target sets differ in size ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("vertex {0} out of range")]
    UnknownVertex(usize),
    #[error("repeated vertex in source or target set")]
    Repeated,
    #[error("{0} vertices exceed the enumeration limit")]
    TooLarge(usize),
}

const MAX_VERTICES: usize = 18;

/// Arc weights `w[(u, v)]` for arcs `u → v`; zero means no arc.
#[derive(Clone, Debug)]
pub struct WeightedDigraph {
    pub w: DMatrix<f64>,
}

impl WeightedDigraph {
    pub fn new(w: DMatrix<f64>) -> Self {
        assert!(w.is_square());
        Self { w }
    }

    pub fn n(&self) -> usize {
        self.w.nrows()
    }

    pub fn spectral_radius(&self) -> f64 {
        if self.n() == 0 {
            return 0.0;
        }
        match nalgebra::linalg::Schur::try_new(self.w.clone(), f64::EPSILON, 10_000) {
            Some(schur) => schur
                .complex_eigenvalues()
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max),
            None => self.gelfand_radius(),
        }
    }

    /// `lim ||W^k||^(1/k)` by repeated squaring with renormalization.
    fn gelfand_radius(&self) -> f64 {
        let mut m = self.w.clone();
        let mut log_scale = 0.0f64;
        let mut k = 1.0f64;
        for _ in 0..40 {
            let norm = m.norm();
            if norm == 0.0 {
                return 0.0;
            }
            m /= norm;
            log_scale += norm.ln() / k;
            m = &m * &m;
            k *= 2.0;
        }
        (log_scale + m.norm().ln() / k).exp()
    }

    /// `M = Σ_k W^k = (I - W)^{-1}`.
    pub fn path_matrix(&self) -> Result<DMatrix<f64>, TalaskaError> {
        let r = self.spectral_radius();
        if r >= 1.0 {
            return Err(TalaskaError::Divergent(r));
        }
        let n = self.n();
        (DMatrix::identity(n, n) - &self.w)
            .try_inverse()
            .ok_or(TalaskaError::Divergent(r))
    }

    /// Random digraph on `n` vertices with arc density `p`, scaled so the
    /// spectral radius is at most `radius`.
    pub fn random<R: Rng>(rng: &mut R, n: usize, p: f64, radius: f64) -> Self {
        let mut w = DMatrix::zeros(n, n);
        for u in 0..n {
            for v in 0..n {
                if rng.gen_bool(p) {
                    w[(u, v)] = rng.gen_range(-1.0..1.0);
                }
            }
        }
        let mut g = Self::new(w);
        let r = g.spectral_radius();
        if r > radius {
            g.w *= radius / r;
        }
        g
    }

    /// The two-arc lift of an undirected colored graph with
    /// `x(u→v) = z(λ(u)) · y(λ(uv))`, `z = 1 / (1 - y)`.
    pub fn lift(g: &ColoredGraph, y: &[f64]) -> Self {
        let n = g.n();
        let mut w = DMatrix::zeros(n, n);
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let ye = y[g.ec(e) as usize];
            w[(u, v)] = ye / (1.0 - y[g.vc(u) as usize]);
            w[(v, u)] = ye / (1.0 - y[g.vc(v) as usize]);
        }
        Self::new(w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TalaskaValue {
    pub flow_ratio: f64,
    pub minor_value: f64,
}

impl TalaskaValue {
    /// `|flow - minor| / max(1, |minor|)`.
    pub fn relative_error(&self) -> f64 {
        (self.flow_ratio - self.minor_value).abs() / self.minor_value.abs().max(1.0)
    }
}

/// Signed weight of all disjoint cycle collections inside each vertex set.
///
/// `cycle[S]` sums the simple cycles with vertex set exactly `S`;
/// `cover[S]` sums signed collections covering `S`; the result is the
/// subset sum of `cover`.
pub struct CycleTable {
    collections: Vec<f64>,
}

impl CycleTable {
    pub fn new(dg: &WeightedDigraph) -> Self {
        let n = dg.n();
        let full = 1usize << n;
        let mut cycle = vec![0.0f64; full];
        for s in 0..n {
            cycle[1 << s] += dg.w[(s, s)];
            // walk[mask][end]: simple paths from s through vertices > s.
            let mut walk = vec![0.0f64; full * n];
            walk[(1 << s) * n + s] = 1.0;
            for mask in (1usize << s)..full {
                if mask & (1 << s) == 0 || mask & ((1 << s) - 1) != 0 {
                    continue;
                }
                for end in 0..n {
                    let x = walk[mask * n + end];
                    if x == 0.0 {
                        continue;
                    }
                    if end != s && dg.w[(end, s)] != 0.0 {
                        cycle[mask] += x * dg.w[(end, s)];
                    }
                    for next in (s + 1)..n {
                        if mask & (1 << next) == 0 && dg.w[(end, next)] != 0.0 {
                            walk[(mask | 1 << next) * n + next] += x * dg.w[(end, next)];
                        }
                    }
                }
            }
        }
        let mut cover = vec![0.0f64; full];
        cover[0] = 1.0;
        for s in 1..full {
            let low = s & s.wrapping_neg();
            let rest = s ^ low;
            let mut t = rest;
            let mut acc = 0.0;
            loop {
                let c = t | low;
                if cycle[c] != 0.0 {
                    acc -= cycle[c] * cover[s ^ c];
                }
                if t == 0 {
                    break;
                }
                t = (t - 1) & rest;
            }
            cover[s] = acc;
        }
        for bit in 0..n {
            for s in 0..full {
                if s & (1 << bit) != 0 {
                    cover[s] += cover[s ^ (1 << bit)];
                }
            }
        }
        Self { collections: cover }
    }

    /// Signed weight of cycle collections avoiding the vertices in `used`.
    pub fn avoiding(&self, used: usize) -> f64 {
        let full = self.collections.len() - 1;
        self.collections[full & !used]
    }

    pub fn total(&self) -> f64 {
        self.avoiding(0)
    }
}

/// `paths[mask * n + end]`: total weight of simple paths from `source`
/// with vertex set `mask` ending at `end`.
fn path_table(dg: &WeightedDigraph, source: usize) -> Vec<f64> {
    let n = dg.n();
    let full = 1usize << n;
    let mut t = vec![0.0f64; full * n];
    t[(1 << source) * n + source] = 1.0;
    for mask in 1..full {
        if mask & (1 << source) == 0 {
            continue;
        }
        for end in 0..n {
            let x = t[mask * n + end];
            if x == 0.0 {
                continue;
            }
            for next in 0..n {
                if mask & (1 << next) == 0 && dg.w[(end, next)] != 0.0 {
                    t[(mask | 1 << next) * n + next] += x * dg.w[(end, next)];
                }
            }
        }
    }
    t
}

fn permutations(k: usize) -> Vec<(Vec<usize>, f64)> {
    fn rec(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<(Vec<usize>, f64)>) {
        if prefix.len() == k {
            let mut inv = 0;
            for i in 0..k {
                for j in i + 1..k {
                    if prefix[i] > prefix[j] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inv % 2 == 0 { 1.0 } else { -1.0 }));
            return;
        }
        for x in 0..k {
            if !prefix.contains(&x) {
                prefix.push(x);
                rec(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), k, &mut out);
    out
}

fn check_sets(n: usize, a: &[usize], b: &[usize]) -> Result<(), TalaskaError> {
    if a.len() != b.len() {
        return Err(TalaskaError::SizeMismatch(a.len(), b.len()));
    }
    for set in [a, b] {
        if let Some(&v) = set.iter().find(|&&v| v >= n) {
            return Err(TalaskaError::UnknownVertex(v));
        }
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != set.len() {
            return Err(TalaskaError::Repeated);
        }
    }
    Ok(())
}

/// Signed sum over self-avoiding flows from `a` to `b`.
pub fn flow_numerator(dg: &WeightedDigraph, cycles: &CycleTable, a: &[usize], b: &[usize]) -> f64 {
    let n = dg.n();
    let full = 1usize << n;
    let tables: Vec<Vec<f64>> = a.iter().map(|&s| path_table(dg, s)).collect();
    let mut total = 0.0;
    for (perm, sign) in permutations(a.len()) {
        // reach[U]: weight of routing the first i sources, using vertices U.
        let mut reach = vec![0.0f64; full];
        reach[0] = 1.0;
        for (i, table) in tables.iter().enumerate() {
            let target = b[perm[i]];
            let mut next = vec![0.0f64; full];
            for (used, &x) in reach.iter().enumerate() {
                if x == 0.0 {
                    continue;
                }
                let free = (full - 1) & !used;
                let mut m = free;
                while m != 0 {
                    let p = table[m * n + target];
                    if p != 0.0 {
                        next[used | m] += x * p;
                    }
                    m = (m - 1) & free;
                }
            }
            reach = next;
        }
        for (used, &x) in reach.iter().enumerate() {
            if x != 0.0 {
                total += sign * x * cycles.avoiding(used);
            }
        }
    }
    total
}

/// Determinant of `M[a, b]` (rows `a`, columns `b`).
pub fn minor(m: &DMatrix<f64>, a: &[usize], b: &[usize]) -> f64 {
    DMatrix::from_fn(a.len(), b.len(), |i, j| m[(a[i], b[j])]).determinant()
}

/// Flow ratio and direct minor of the weighted path matrix.
pub fn talaska_minor(dg: &WeightedDigraph, a: &[usize], b: &[usize]) -> Result<TalaskaValue, TalaskaError> {
    check_sets(dg.n(), a, b)?;
    if dg.n() > MAX_VERTICES {
        return Err(TalaskaError::TooLarge(dg.n()));
    }
    let m = dg.path_matrix()?;
    let cycles = CycleTable::new(dg);
    Ok(TalaskaValue {
        flow_ratio: flow_numerator(dg, &cycles, a, b) / cycles.total(),
        minor_value: minor(&m, a, b),
    })
}

/// Evaluates several minors on one digraph, sharing the cycle table.
pub struct TalaskaSolver<'d> {
    dg: &'d WeightedDigraph,
    m: DMatrix<f64>,
    cycles: CycleTable,
}

impl<'d> TalaskaSolver<'d> {
    pub fn new(dg: &'d WeightedDigraph) -> Result<Self, TalaskaError> {
        if dg.n() > MAX_VERTICES {
            return Err(TalaskaError::TooLarge(dg.n()));
        }
        let m = dg.path_matrix()?;
        Ok(Self {
            dg,
            m,
            cycles: CycleTable::new(dg),
        })
    }

    pub fn path_matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn minor(&self, a: &[usize], b: &[usize]) -> Result<TalaskaValue, TalaskaError> {
        check_sets(self.dg.n(), a, b)?;
        Ok(TalaskaValue {
            flow_ratio: flow_numerator(self.dg, &self.cycles, a, b) / self.cycles.total(),
            minor_value: minor(&self.m, a, b),
        })
    }
}

/// Random color values for a lift: vertex values in `[0.05, 0.3]`, edge
/// values shrunk until the lift has spectral radius at most `radius`.
pub fn random_lift_values<R: Rng>(rng: &mut R, g: &ColoredGraph, radius: f64) -> Vec<f64> {
    let mut y: Vec<f64> = g
        .palette()
        .iter()
        .map(|c| if c.is_vertex() { rng.gen_range(0.05..0.3) } else { rng.gen_range(-0.5..0.5) })
        .collect();
    for _ in 0..200 {
        let r = WeightedDigraph::lift(g, &y).spectral_radius();
        if r <= radius {
            break;
        }
        for (c, v) in g.palette().iter().zip(y.iter_mut()) {
            if !c.is_vertex() {
                *v *= if r.is_finite() { 0.9 * radius / r } else { 0.5 };
            }
        }
    }
    y
}

/// `det Σ[a, b]` at `Σ = (I - Ψ)^{-1}` against `Δ_{a,b}(M) · Π_{v ∈ b} z(λ(v))`.
pub fn fundamental_identity(g: &ColoredGraph, y: &[f64], a: &[usize], b: &[usize]) -> Result<(f64, f64), TalaskaError> {
    check_sets(g.n(), a, b)?;
    let n = g.n();
    let mut k = DMatrix::<f64>::identity(n, n);
    for v in 0..n {
        k[(v, v)] -= y[g.vc(v) as usize];
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        k[(u, v)] -= y[g.ec(e) as usize];
        k[(v, u)] -= y[g.ec(e) as usize];
    }
    let sigma = k.try_inverse().ok_or(TalaskaError::Divergent(f64::NAN))?;
    let lhs = minor(&sigma, a, b);
    let m = WeightedDigraph::lift(g, y).path_matrix()?;
    let z: f64 = b.iter().map(|&v| 1.0 / (1.0 - y[g.vc(v) as usize])).product();
    Ok((lhs, minor(&m, a, b) * z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::aba_path;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_vertex() {
        let dg = WeightedDigraph::new(DMatrix::zeros(1, 1));
        let v = talaska_minor(&dg, &[0], &[0]).unwrap();
        assert_eq!(v.flow_ratio, 1.0);
        assert_eq!(v.minor_value, 1.0);
    }

    #[test]
    fn two_cycle() {
        let (s, t) = (0.3, 0.7);
        let dg = WeightedDigraph::new(DMatrix::from_row_slice(2, 2, &[0.0, s, t, 0.0]));
        let v = talaska_minor(&dg, &[0], &[1]).unwrap();
        let expect = s / (1.0 - s * t);
        assert!((v.flow_ratio - expect).abs() < 1e-14);
        assert!((v.minor_value - expect).abs() < 1e-14);
    }

    #[test]
    fn divergent_and_mismatch() {
        let dg = WeightedDigraph::new(DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.5, 0.0]));
        assert!(matches!(talaska_minor(&dg, &[0], &[1]), Err(TalaskaError::Divergent(_))));
        let ok = WeightedDigraph::new(DMatrix::zeros(2, 2));
        assert_eq!(talaska_minor(&ok, &[0], &[0, 1]), Err(TalaskaError::SizeMismatch(1, 2)));
    }

    #[test]
    fn random_digraphs_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let n = rng.gen_range(1..=5);
            let dg = WeightedDigraph::random(&mut rng, n, 0.6, 0.5);
            let k = rng.gen_range(1..=n);
            let mut vs: Vec<usize> = (0..n).collect();
            let a: Vec<usize> = rand::seq::SliceRandom::choose_multiple(&vs[..], &mut rng, k).copied().collect();
            rand::seq::SliceRandom::shuffle(&mut vs[..], &mut rng);
            let b = vs[..k].to_vec();
            let v = talaska_minor(&dg, &a, &b).unwrap();
            assert!(v.relative_error() < 1e-10, "{v:?}");
        }
    }

    #[test]
    fn lift_identity() {
        let g = aba_path();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let y = random_lift_values(&mut rng, &g, 0.5);
        let (lhs, rhs) = fundamental_identity(&g, &y, &[0, 1], &[1, 2]).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }
}
