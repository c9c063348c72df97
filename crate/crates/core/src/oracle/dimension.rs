//! Numeric rank of the parametrization from color values to `Σ = K⁻¹`.

use nalgebra::DMatrix;

use super::numeric::{numeric_sample, to_f64};
use crate::graph::ColoredGraph;

/// Relative threshold separating nonzero singular values.
pub const RANK_GAP: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct DimensionProbe {
    pub rank: usize,
    pub colors: usize,
    pub singular_values: Vec<f64>,
    /// Stream index of the sample that was used.
    pub trial: u64,
}

/// Jacobian of `θ ↦ K(θ)⁻¹` at `K`, one column `vec_upper(-Σ E_c Σ)` per
/// palette color.
pub fn jacobian(g: &ColoredGraph, sigma: &DMatrix<f64>) -> DMatrix<f64> {
    let n = g.n();
    let colors = g.palette().len();
    let mut e = vec![DMatrix::<f64>::zeros(n, n); colors];
    for v in 0..n {
        e[g.vc(v) as usize][(v, v)] = 1.0;
    }
    for (k, &(u, v)) in g.edges().iter().enumerate() {
        let c = g.ec(k) as usize;
        e[c][(u, v)] = 1.0;
        e[c][(v, u)] = 1.0;
    }
    let rows = n * (n + 1) / 2;
    let mut jac = DMatrix::zeros(rows, colors);
    for (c, ec) in e.iter().enumerate() {
        let d = -(sigma * ec * sigma);
        let mut r = 0;
        for i in 0..n {
            for j in i..n {
                jac[(r, c)] = d[(i, j)];
                r += 1;
            }
        }
    }
    jac
}

/// Rank of the Jacobian at a seeded sample, resampling singular draws.
pub fn model_dimension(g: &ColoredGraph, seed: u64) -> DimensionProbe {
    let colors = g.palette().len();
    let mut trial = 0u64;
    let sigma = loop {
        if let Some(s) = to_f64(&numeric_sample(g, seed, trial)).try_inverse() {
            break s;
        }
        trial += 1;
    };
    let singular_values: Vec<f64> = if colors == 0 {
        Vec::new()
    } else {
        let mut sv: Vec<f64> = jacobian(g, &sigma).singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    };
    let top = singular_values.first().copied().unwrap_or(0.0);
    let rank = singular_values.iter().filter(|&&s| s > RANK_GAP * top).count();
    DimensionProbe {
        rank,
        colors,
        singular_values,
        trial,
    }
}
