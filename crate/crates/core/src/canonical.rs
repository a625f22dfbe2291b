//! Index of the coefficient, a continuous logarithm along the curve, and the canonical function
//! `X` with `X⁺ = G·X⁻` on the curve.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{DualComplex, PointE};
use crate::contour::{Contour, Region};
use crate::error::{Error, Result};
use crate::expr::{Env, Expr};
use crate::integral::{boundary_limit_with, CauchyIntegral, Side};

/// Levels of midpoint insertion tried before a large turn counts as a branch ambiguity.
pub const MAX_REFINE_LEVELS: u32 = 4;
pub const DEFAULT_INDEX_TOLERANCE: f64 = 1e-3;
pub const CLOSURE_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct IndexReport {
    pub kappa: i64,
    /// Accumulated argument of `G1` divided by `2π`.
    pub raw: f64,
    /// Steps that needed midpoint insertion.
    pub refined_steps: usize,
}

fn sample_checked(c: &Contour, g: &Expr) -> Result<Vec<DualComplex>> {
    let values = c.sample(g)?;
    let bad: Vec<usize> = values.iter().enumerate().filter(|(_, v)| !v.is_invertible()).map(|(k, _)| k).collect();
    if bad.is_empty() {
        Ok(values)
    } else {
        Err(Error::NotInvertibleOnContour(bad))
    }
}

/// Argument increments of `f` along every step `k → k+1` (cyclically), inserting midpoints
/// where a step turns by `π/2` or more.
fn track_argument<F>(c: &Contour, values: &[Complex64], f: F) -> Result<(Vec<f64>, usize)>
where
    F: Fn(PointE, f64) -> Result<Complex64>,
{
    let n = values.len();
    let mut turns = Vec::with_capacity(n);
    let mut refined = 0;
    for k in 0..n {
        let next = (k + 1) % n;
        let turn = (values[next] / values[k]).arg();
        if turn.abs() < FRAC_PI_2 {
            turns.push(turn);
            continue;
        }
        refined += 1;
        let mut resolved = None;
        let mut worst = turn;
        for level in 1..=MAX_REFINE_LEVELS {
            let m = 1usize << level;
            let mut prev = values[k];
            let mut sum = 0.0;
            let mut ok = true;
            worst = 0.0;
            for j in 1..=m {
                let v = if j == m {
                    values[next]
                } else {
                    let (p, t) = c.interpolate(k, j as f64 / m as f64);
                    f(p, t)?
                };
                if v.norm() == 0.0 {
                    return Err(Error::NotInvertibleOnContour(vec![k]));
                }
                let step = (v / prev).arg();
                worst = if step.abs() > worst.abs() { step } else { worst };
                if step.abs() >= FRAC_PI_2 {
                    ok = false;
                    break;
                }
                sum += step;
                prev = v;
            }
            if ok {
                resolved = Some(sum);
                break;
            }
        }
        match resolved {
            Some(sum) => turns.push(sum),
            None => return Err(Error::BranchAmbiguity { node: k, next, turn: worst }),
        }
    }
    Ok((turns, refined))
}

fn eval_g(g: &Expr, p: PointE, t: f64) -> Result<DualComplex> {
    g.eval(&Env::boundary(p.xi, t))
}

/// `ϰ = (1/2π)·[arg G1]_γ`, the winding of the complex part of `G` about `0`.
pub fn compute_index(c: &Contour, g: &Expr) -> Result<IndexReport> {
    compute_index_with(c, g, DEFAULT_INDEX_TOLERANCE)
}

pub fn compute_index_with(c: &Contour, g: &Expr, tolerance: f64) -> Result<IndexReport> {
    let values = sample_checked(c, g)?;
    let c1: Vec<Complex64> = values.iter().map(|v| v.c1).collect();
    let (turns, refined_steps) = track_argument(c, &c1, |p, t| Ok(eval_g(g, p, t)?.c1))?;
    let raw = turns.iter().sum::<f64>() / (2.0 * PI);
    let kappa = raw.round();
    if (raw - kappa).abs() > tolerance {
        return Err(Error::NonIntegerIndex { raw });
    }
    Ok(IndexReport { kappa: kappa as i64, raw, refined_steps })
}

/// Node samples of a continuous branch of `ln(τ^{−ϰ}G(τ))`.
#[derive(Clone, Debug)]
pub struct LogBranch {
    pub samples: Vec<DualComplex>,
    /// Principal value of the complex part at node 0, where the branch starts.
    pub start: Complex64,
    /// `|Σ turns|` over the closed traversal; zero when the branch closes.
    pub closure_mismatch: f64,
}

fn power_c1(tau1: Complex64, kappa: i64) -> Complex64 {
    tau1.powi(-(kappa as i32))
}

pub fn continuous_log(c: &Contour, g: &Expr, kappa: i64) -> Result<LogBranch> {
    let values = sample_checked(c, g)?;
    let w: Vec<Complex64> =
        values.iter().zip(c.nodes()).map(|(v, n)| power_c1(n.xi.c1, kappa) * v.c1).collect();
    let (turns, _) = track_argument(c, &w, |p, t| Ok(power_c1(p.xi.c1, kappa) * eval_g(g, p, t)?.c1))?;
    let closure_mismatch = turns.iter().sum::<f64>().abs();
    if closure_mismatch > CLOSURE_TOLERANCE {
        return Err(Error::ClosureFailure { mismatch: closure_mismatch });
    }
    let start = w[0].ln();
    let mut arg = start.im;
    let mut samples = Vec::with_capacity(w.len());
    for (k, ((wk, v), node)) in w.iter().zip(&values).zip(c.nodes()).enumerate() {
        if k > 0 {
            arg += turns[k - 1];
        }
        let c1 = Complex64::new(wk.norm().ln(), arg);
        let c2 = v.c2 / v.c1 - node.xi.c2 / node.xi.c1 * kappa as f64;
        samples.push(DualComplex::new(c1, c2));
    }
    Ok(LogBranch { samples, start, closure_mismatch })
}

/// How `X` behaves at infinity on the exterior side.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct InfinityBehaviour {
    /// `X⁻(∞)` when finite: `1` for `ϰ = 0`, `0` for `ϰ > 0`.
    pub limit: Option<[f64; 4]>,
    /// Growth order of `X⁻` (positive for `ϰ < 0`, where `X⁻ ~ ζ^{−ϰ}`).
    pub growth_order: i64,
}

/// The canonical function of a coefficient `G`.
#[derive(Clone, Debug)]
pub struct CanonicalX {
    contour: Contour,
    index: IndexReport,
    branch: LogBranch,
    exponent: CauchyIntegral,
    plus: Vec<DualComplex>,
    minus: Vec<DualComplex>,
}

/// Requires the origin to lie in the interior domain.
pub fn require_origin_inside(c: &Contour) -> Result<()> {
    match c.interior_test(c.basis().point(0.0, 0.0)) {
        Region::Interior => Ok(()),
        _ => Err(Error::OriginNotInterior),
    }
}

pub fn build_canonical_x(c: &Contour, g: &Expr) -> Result<CanonicalX> {
    build_canonical_x_with(c, g, DEFAULT_INDEX_TOLERANCE)
}

pub fn build_canonical_x_with(c: &Contour, g: &Expr, index_tolerance: f64) -> Result<CanonicalX> {
    require_origin_inside(c)?;
    let index = compute_index_with(c, g, index_tolerance)?;
    let branch = continuous_log(c, g, index.kappa)?;
    let exponent = CauchyIntegral::new(c, branch.samples.clone())?;
    exponent.prepare();
    let kappa = index.kappa;
    let tables: Vec<Option<(DualComplex, DualComplex)>> = (0..c.len())
        .into_par_iter()
        .map(|k| {
            if c.node(k).corner {
                return Ok(None);
            }
            let plus = exponent.boundary_limit(k, Side::Plus)?.value.exp()?;
            let minus = exponent.boundary_limit(k, Side::Minus)?.value.exp()?;
            Ok(Some((plus, minus * c.node(k).xi.powi(-(kappa as i32))?)))
        })
        .collect::<Result<_>>()?;
    let (plus, minus) = fill_corners(&tables);
    Ok(CanonicalX { contour: c.clone(), index, branch, exponent, plus, minus })
}

/// Corner nodes carry zero quadrature weight; their table entries average the neighbours.
fn fill_corners(tables: &[Option<(DualComplex, DualComplex)>]) -> (Vec<DualComplex>, Vec<DualComplex>) {
    let n = tables.len();
    let find = |k: usize, step: isize| {
        let mut j = k;
        loop {
            j = (j as isize + step).rem_euclid(n as isize) as usize;
            if let Some(v) = tables[j] {
                return v;
            }
        }
    };
    tables
        .iter()
        .enumerate()
        .map(|(k, t)| match t {
            Some(v) => *v,
            None => {
                let (a, b) = (find(k, -1), find(k, 1));
                ((a.0 + b.0).scale(0.5), (a.1 + b.1).scale(0.5))
            }
        })
        .unzip()
}

impl CanonicalX {
    pub fn kappa(&self) -> i64 {
        self.index.kappa
    }

    pub fn index(&self) -> &IndexReport {
        &self.index
    }

    pub fn branch(&self) -> &LogBranch {
        &self.branch
    }

    pub fn contour(&self) -> &Contour {
        &self.contour
    }

    /// The Cauchy-type integral of the logarithm, `X₀ = exp` of it.
    pub fn exponent(&self) -> &CauchyIntegral {
        &self.exponent
    }

    /// `X⁺(τ_k)`.
    pub fn x_plus(&self) -> &[DualComplex] {
        &self.plus
    }

    /// `X⁻(τ_k)`.
    pub fn x_minus(&self) -> &[DualComplex] {
        &self.minus
    }

    /// `X₀(ζ)` at a point off the curve.
    pub fn x0(&self, z: PointE) -> Result<DualComplex> {
        self.exponent.evaluate_near(z)?.exp()
    }

    fn outer_factor(&self, z: PointE, side: Side) -> Result<DualComplex> {
        match side {
            Side::Plus => Ok(DualComplex::ONE),
            Side::Minus => z.xi.powi(-(self.index.kappa as i32)),
        }
    }

    /// `X(ζ)` on the given side: `X₀(ζ)` in the interior, `ζ^{−ϰ}X₀(ζ)` in the exterior.
    pub fn evaluate_side(&self, z: PointE, side: Side) -> Result<DualComplex> {
        Ok(self.outer_factor(z, side)? * self.x0(z)?)
    }

    /// `X(ζ)` with the side chosen by the winding number of `ζ`.
    pub fn evaluate(&self, z: PointE) -> Result<DualComplex> {
        self.evaluate_side(z, side_of(&self.contour, z))
    }

    /// `X(ζ)` near node `k`, accurate up to the refined guard band.
    pub fn evaluate_anchored(&self, z: PointE, k: usize, side: Side) -> Result<DualComplex> {
        Ok(self.outer_factor(z, side)? * self.exponent.evaluate_anchored(z, k, side)?.exp()?)
    }

    /// Limit of `X` at node `k` from one side, taken directly rather than from the tables.
    pub fn boundary_limit(&self, k: usize, side: Side) -> Result<DualComplex> {
        let opts = self.exponent.options();
        Ok(boundary_limit_with(&self.contour, k, side, &opts, |z| self.evaluate_anchored(z, k, side))?.value)
    }

    pub fn at_infinity(&self) -> InfinityBehaviour {
        let kappa = self.index.kappa;
        match kappa {
            0 => InfinityBehaviour { limit: Some(DualComplex::ONE.to_array()), growth_order: 0 },
            k if k > 0 => InfinityBehaviour { limit: Some(DualComplex::ZERO.to_array()), growth_order: -k },
            k => InfinityBehaviour { limit: None, growth_order: -k },
        }
    }
}

/// Interior or exterior side of a point off the curve.
pub fn side_of(c: &Contour, z: PointE) -> Side {
    if c.winding(z) != 0 {
        Side::Plus
    } else {
        Side::Minus
    }
}

/// `sup_k ‖X⁺(τ_k) − G(τ_k)X⁻(τ_k)‖` over non-corner nodes.
pub fn verify_x_relation(x: &CanonicalX, g: &Expr) -> Result<f64> {
    let values = x.contour.sample(g)?;
    Ok((0..values.len())
        .filter(|&k| !x.contour.node(k).corner)
        .map(|k| (x.plus[k] - values[k] * x.minus[k]).norm())
        .fold(0.0, f64::max))
}
