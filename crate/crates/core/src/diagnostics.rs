//! Regularity diagnostics for boundary data: the modulus of continuity, an estimate of the
//! Dini integral, and sup norms.
//!
//! The Dini estimate is a heuristic upper sum on sampled data. It can show that data look
//! Dini-continuous or that the integral keeps growing under refinement, but it decides nothing.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{DualComplex, PointE};
use crate::contour::Contour;
use crate::error::Result;
use crate::expr::Expr;

/// Sampled modulus of continuity: node-pair distances in increasing order with the running
/// maximum of `‖g(τᵢ) − g(τⱼ)‖`.
#[derive(Clone, Debug)]
pub struct Modulus {
    distances: Vec<f64>,
    running_max: Vec<f64>,
}

impl Modulus {
    pub fn from_samples(c: &Contour, samples: &[DualComplex]) -> Modulus {
        assert_eq!(samples.len(), c.len(), "samples must be node-aligned");
        let nodes = c.nodes();
        let mut pairs: Vec<(f64, f64)> = (0..nodes.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                (i + 1..nodes.len()).map(move |j| {
                    let d = (nodes[i].x - nodes[j].x).hypot(nodes[i].y - nodes[j].y);
                    (d, (samples[i] - samples[j]).norm())
                })
            })
            .collect();
        pairs.par_sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let mut running = 0.0f64;
        let (distances, running_max) = pairs
            .into_iter()
            .map(|(d, v)| {
                running = running.max(v);
                (d, running)
            })
            .unzip();
        Modulus { distances, running_max }
    }

    /// `ω(ε) = max ‖g(τᵢ) − g(τⱼ)‖` over node pairs with `|τᵢ − τⱼ| ≤ ε`.
    pub fn omega(&self, eps: f64) -> f64 {
        let idx = self.distances.partition_point(|&d| d <= eps);
        if idx == 0 {
            0.0
        } else {
            self.running_max[idx - 1]
        }
    }

    /// `(d, ω(d))` for the largest sampled pair distance `d ≤ ε`: the corner of the staircase.
    pub fn corner(&self, eps: f64) -> Option<(f64, f64)> {
        let idx = self.distances.partition_point(|&d| d <= eps);
        (idx > 0).then(|| (self.distances[idx - 1], self.running_max[idx - 1]))
    }

    /// Smallest positive pair distance.
    pub fn resolution(&self) -> f64 {
        self.distances.iter().copied().find(|&d| d > 0.0).unwrap_or(0.0)
    }
}

/// `ω_g` on a grid of `ε` values.
pub fn modulus_of_continuity(c: &Contour, g: &Expr, eps: &[f64]) -> Result<Vec<f64>> {
    let m = Modulus::from_samples(c, &c.sample(g)?);
    Ok(eps.iter().map(|&e| m.omega(e)).collect())
}

/// `hi·2^{−j/per_octave}` for `j = 0, 1, …` while the value stays at or above `lo`, ascending.
pub fn dyadic_grid(lo: f64, hi: f64, per_octave: usize) -> Vec<f64> {
    let mut out = Vec::new();
    let mut j = 0;
    loop {
        let v = hi * 2f64.powf(-(j as f64) / per_octave as f64);
        if v < lo {
            break;
        }
        out.push(v);
        j += 1;
    }
    out.reverse();
    out
}

#[derive(Clone, Copy, Debug)]
pub struct DiniOptions {
    /// Number of equispaced anchor nodes over which the sup in `τ` is taken.
    pub anchors: usize,
    pub per_octave: usize,
}

impl Default for DiniOptions {
    fn default() -> Self {
        DiniOptions { anchors: 32, per_octave: 8 }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DiniEstimate {
    /// `sup_τ Σ_j ω(η_{j+1})/η_j · (θ_τ(η_{j+1}) − θ_τ(η_j))`, with the first cell `[0, η_0]`
    /// bounded by `ω(η_0)/η_0 · θ_τ(η_0)`.
    pub value: f64,
    /// Anchor node attaining the sup.
    pub anchor: usize,
    /// Smallest `η` of the grid (half the smallest node distance).
    pub eta_min: f64,
}

/// Upper Darboux-style sum for `∫₀¹ ω(η)/η dθ_τ(η)`.
pub fn dini_from_samples(c: &Contour, samples: &[DualComplex], options: DiniOptions) -> DiniEstimate {
    let m = Modulus::from_samples(c, samples);
    let eta_min = 0.5 * m.resolution();
    let grid = dyadic_grid(eta_min, 1.0, options.per_octave);
    let stride = (c.len() / options.anchors.max(1)).max(1);
    let anchors: Vec<usize> = (0..c.len()).step_by(stride).collect();
    let omega: Vec<f64> = grid.iter().map(|&e| m.omega(e)).collect();
    let sums: Vec<(usize, f64)> = anchors
        .par_iter()
        .map(|&k| {
            let theta: Vec<f64> = grid.iter().map(|&e| c.theta_measure(k, e)).collect();
            let mut sum = if grid.is_empty() { 0.0 } else { omega[0] / grid[0] * theta[0] };
            for j in 0..grid.len().saturating_sub(1) {
                sum += omega[j + 1] / grid[j] * (theta[j + 1] - theta[j]).max(0.0);
            }
            (k, sum)
        })
        .collect();
    let (anchor, value) = sums.into_iter().fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    DiniEstimate { value, anchor, eta_min }
}

pub fn dini_estimate(c: &Contour, g: &Expr) -> Result<DiniEstimate> {
    Ok(dini_from_samples(c, &c.sample(g)?, DiniOptions::default()))
}

/// Dini estimates on successively doubled node sets (the `η`-grid follows the node spacing).
#[derive(Clone, Debug, Serialize)]
pub struct DiniRefinement {
    pub nodes: Vec<usize>,
    pub estimates: Vec<f64>,
    /// The last increment did not shrink relative to the previous one and is a noticeable
    /// fraction of the estimate: the integral appears to grow without bound.
    pub diverging: bool,
}

pub fn dini_refinement<F>(c: &Contour, doublings: usize, sample: F) -> Result<DiniRefinement>
where
    F: Fn(&Contour) -> Result<Vec<DualComplex>>,
{
    let mut nodes = Vec::new();
    let mut estimates = Vec::new();
    for level in 0..=doublings {
        let cc = if level == 0 { c.clone() } else { c.with_nodes(c.len() << level)? };
        estimates.push(dini_from_samples(&cc, &sample(&cc)?, DiniOptions::default()).value);
        nodes.push(cc.len());
    }
    let diverging = match estimates.as_slice() {
        [.., a, b, last] => {
            let (d1, d2) = (b - a, last - b);
            d2 > 0.75 * d1 && d2 > 0.02 * last.abs()
        }
        _ => false,
    };
    Ok(DiniRefinement { nodes, estimates, diverging })
}

/// `‖Φ‖_Ω = sup ‖Φ(ζ)‖` over a sample set.
pub fn sup_norm<F>(f: F, points: &[PointE]) -> Result<f64>
where
    F: Fn(PointE) -> Result<DualComplex> + Sync,
{
    points.par_iter().map(|&p| f(p).map(|v| v.norm())).try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

/// Summary of the regularity of boundary data.
#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub eps: Vec<f64>,
    pub omega: Vec<f64>,
    pub dini: DiniEstimate,
    pub constant: bool,
    /// Least-squares slope of `log ω` against `log ε` for `ε` up to a quarter diameter; `1` for
    /// Lipschitz data, below `1` for Hölder data.
    pub slope: Option<f64>,
}

pub fn regularity_report(c: &Contour, samples: &[DualComplex]) -> RegularityReport {
    let m = Modulus::from_samples(c, samples);
    let eps = dyadic_grid(c.max_spacing(), c.diameter(), 4);
    let omega: Vec<f64> = eps.iter().map(|&e| m.omega(e)).collect();
    let scale = samples.iter().map(DualComplex::norm).fold(1.0, f64::max);
    let constant = omega.last().is_none_or(|&w| w <= 1e-14 * scale);
    let pts: Vec<(f64, f64)> = eps
        .iter()
        .filter(|&&e| e <= 0.25 * c.diameter())
        .filter_map(|&e| m.corner(e))
        .filter(|&(d, w)| d > 0.0 && w > 0.0)
        .map(|(d, w)| (d.ln(), w.ln()))
        .collect();
    let slope = (pts.len() >= 2 && !constant).then(|| {
        let n = pts.len() as f64;
        let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
        let (mx, my) = (sx / n, sy / n);
        let (num, den) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + (p.0 - mx) * (p.1 - my), a.1 + (p.0 - mx).powi(2)));
        num / den
    });
    let dini = dini_from_samples(c, samples, DiniOptions::default());
    RegularityReport { eps, omega, dini, constant, slope }
}
