//! Seeded sampling of concentration matrices in `L_G` and numeric vanishing
//! tests for σ-polynomials.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::series::SigmaPolynomial;
use crate::graph::ColoredGraph;

pub type RationalMatrix = Vec<Vec<BigRational>>;

/// Denominator used for sampled color values.
const GRID: i64 = 97;

/// Generator for sample `trial` under `seed`: one stream per trial.
pub fn sample_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// One rational value per palette color. Vertex colors land in `[1, 2]`,
/// edge colors in `(-ε, ε)` with `ε = 1 / (max degree + 1)`.
pub fn sample_color_values<R: Rng>(g: &ColoredGraph, rng: &mut R) -> Vec<BigRational> {
    let maxdeg = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0) as i64;
    g.palette()
        .iter()
        .map(|c| {
            if c.is_vertex() {
                let a = rng.gen_range(0..=GRID);
                BigRational::new(BigInt::from(GRID + a), BigInt::from(GRID))
            } else {
                let b = rng.gen_range(-(GRID - 1)..=(GRID - 1));
                BigRational::new(BigInt::from(b), BigInt::from(GRID * (maxdeg + 1)))
            }
        })
        .collect()
}

/// The matrix of `L_G` with the given per-color values.
pub fn concentration_matrix(g: &ColoredGraph, values: &[BigRational]) -> RationalMatrix {
    let n = g.n();
    let mut k = vec![vec![BigRational::zero(); n]; n];
    for (v, row) in k.iter_mut().enumerate() {
        row[v] = values[g.vc(v) as usize].clone();
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let x = values[g.ec(e) as usize].clone();
        k[u][v] = x.clone();
        k[v][u] = x;
    }
    k
}

/// A positive definite, diagonally dominant `K ∈ L_G`.
pub fn numeric_sample(g: &ColoredGraph, seed: u64, trial: u64) -> RationalMatrix {
    let mut rng = sample_rng(seed, trial);
    concentration_matrix(g, &sample_color_values(g, &mut rng))
}

pub fn to_f64(m: &RationalMatrix) -> DMatrix<f64> {
    let n = m.len();
    DMatrix::from_fn(n, n, |i, j| m[i][j].to_f64().unwrap_or(f64::NAN))
}

pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    m.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Exact inverse by Gauss-Jordan elimination; `None` if singular.
pub fn rational_inverse(m: &RationalMatrix) -> Option<RationalMatrix> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let prow = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&prow).skip(col) {
                *x -= &f * p;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Value of `p` at `Σ`, and the largest absolute monomial value.
pub fn eval_rational(p: &SigmaPolynomial, sigma: &RationalMatrix) -> (BigRational, BigRational) {
    let mut total = BigRational::zero();
    let mut scale = BigRational::zero();
    for (m, c) in p.terms() {
        let mut v = c.clone();
        for &(i, j) in m.factors() {
            v *= &sigma[i][j];
        }
        if v.abs() > scale {
            scale = v.abs();
        }
        total += v;
    }
    (total, scale)
}

pub fn eval_f64(p: &SigmaPolynomial, sigma: &DMatrix<f64>) -> (f64, f64) {
    let mut total = 0.0;
    let mut scale: f64 = 0.0;
    for (m, c) in p.terms() {
        let mut v = c.to_f64().unwrap_or(f64::NAN);
        for &(i, j) in m.factors() {
            v *= sigma[(i, j)];
        }
        scale = scale.max(v.abs());
        total += v;
    }
    (total, scale)
}

/// Outcome of a vanishing test over several samples.
#[derive(Clone, Debug, PartialEq)]
pub struct Vanishing {
    pub vanishes: bool,
    pub trials: u64,
    /// Largest `|p(Σ)| / scale` observed; exactly zero when every rational
    /// evaluation vanished.
    pub max_residual: f64,
    pub rational: bool,
}

/// Inverse samples of `K` for trials `0..trials`, resampling singular draws.
pub struct SampleSet {
    pub rational: Vec<RationalMatrix>,
    pub float: Vec<DMatrix<f64>>,
}

impl SampleSet {
    pub fn new(g: &ColoredGraph, seed: u64, trials: u64, rational: bool) -> Self {
        let mut out = SampleSet {
            rational: Vec::new(),
            float: Vec::new(),
        };
        let mut stream = 0u64;
        while (out.rational.len() + out.float.len()) < trials as usize {
            let k = numeric_sample(g, seed, stream);
            stream += 1;
            if rational {
                if let Some(s) = rational_inverse(&k) {
                    out.rational.push(s);
                }
            } else if let Some(s) = to_f64(&k).try_inverse() {
                out.float.push(s);
            }
        }
        out
    }

    /// Tests `p` on every sample. Rational mode requires exact zero; float
    /// mode requires `|p(Σ)| ≤ tol · scale`.
    pub fn vanish(&self, p: &SigmaPolynomial, tol: f64) -> Vanishing {
        let mut max_residual: f64 = 0.0;
        let mut vanishes = true;
        for s in &self.rational {
            let (v, scale) = eval_rational(p, s);
            if !v.is_zero() {
                vanishes = false;
                let r = if scale.is_zero() { v.abs() } else { v.abs() / scale };
                max_residual = max_residual.max(r.to_f64().unwrap_or(f64::INFINITY));
            }
        }
        for s in &self.float {
            let (v, scale) = eval_f64(p, s);
            let r = if scale > 0.0 { v.abs() / scale } else { v.abs() };
            max_residual = max_residual.max(r);
            if v.abs() > tol * scale {
                vanishes = false;
            }
        }
        Vanishing {
            vanishes,
            trials: (self.rational.len() + self.float.len()) as u64,
            max_residual,
            rational: !self.rational.is_empty(),
        }
    }
}

pub fn numeric_vanish(
    g: &ColoredGraph,
    p: &SigmaPolynomial,
    trials: u64,
    tol: f64,
    seed: u64,
    rational: bool,
) -> Vanishing {
    SampleSet::new(g, seed, trials.max(1), rational).vanish(p, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{aba_path, corpus};
    use crate::ideal::{Binomial, Generators, SigmaMonomial};

    #[test]
    fn samples_respect_pattern() {
        let g = aba_path();
        let k = numeric_sample(&g, 3, 0);
        assert_eq!(k[0][0], k[2][2]);
        assert_eq!(k[0][1], k[1][2]);
        assert!(k[0][2].is_zero());
        for e in corpus() {
            let k = to_f64(&numeric_sample(&e.graph, 11, 0));
            assert!(min_eigenvalue(&k) > 0.0, "{}", e.name);
        }
    }

    #[test]
    fn inverse_is_exact() {
        let g = aba_path();
        let k = numeric_sample(&g, 5, 1);
        let s = rational_inverse(&k).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let v: BigRational = (0..3).map(|l| &k[i][l] * &s[l][j]).sum();
                assert_eq!(v, if i == j { BigRational::one() } else { BigRational::zero() });
            }
        }
    }

    #[test]
    fn vanishing() {
        let g = aba_path();
        for b in Generators::compute(&g, false).unwrap().binomials() {
            let r = numeric_vanish(&g, &SigmaPolynomial::from_binomial(&b), 5, 0.0, 1, true);
            assert!(r.vanishes);
            assert_eq!(r.max_residual, 0.0);
        }
        let bad = Binomial::new(SigmaMonomial::new([(0, 1)]), SigmaMonomial::new([(0, 2)])).unwrap();
        let p = SigmaPolynomial::from_binomial(&bad);
        assert!(!numeric_vanish(&g, &p, 3, 0.0, 1, true).vanishes);
        assert!(!numeric_vanish(&g, &p, 3, 1e-9, 1, false).vanishes);
        assert!(numeric_vanish(&g, &SigmaPolynomial::zero(), 1, 0.0, 1, true).vanishes);
    }
}
