//! Contour quadrature and Cauchy-type integrals
//! `ψ̃(ζ) = (1/2πi) ∮ ψ(τ)(τ − ζ)⁻¹ dτ` on curves in `E`, with one-sided boundary limits and
//! the numerical checks built on them.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Basis, DualComplex, PointE};
use crate::contour::{Contour, Refined, Region};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::numerics::gauss_legendre;

/// `1/(2πi)`.
pub fn inv_two_pi_i() -> Complex64 {
    Complex64::new(0.0, -1.0 / (2.0 * PI))
}

/// Interior (`+`) or exterior (`−`) side of a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// Controls for one-sided limits taken by normal offsets.
#[derive(Clone, Copy, Debug)]
pub struct LimitOptions {
    /// Refinement factor of the quadrature used close to the curve.
    pub upsample: usize,
    /// Number of offsets `h, h/2, …, h/2^(levels−1)` fed to Richardson extrapolation.
    pub levels: usize,
    /// Relative disagreement between extrapolation orders that counts as non-convergence.
    pub tolerance: f64,
}

impl Default for LimitOptions {
    fn default() -> Self {
        LimitOptions { upsample: 16, levels: 5, tolerance: 1e-3 }
    }
}

impl LimitOptions {
    /// Largest normal offset. The smallest one sits 25% outside the refined guard band.
    pub fn offset(&self, contour: &Contour) -> f64 {
        let smallest = 1.25 * 3.0 * contour.max_spacing() / self.upsample as f64;
        smallest * (1u64 << (self.levels.max(2) - 1)) as f64
    }
}

/// Richardson extrapolation to `s = 0` of values at `h, h/2, h/4, …`, assuming a power series
/// in `s`. Returns the extrapolated value and the change contributed by the last order.
pub fn richardson(values: &[DualComplex]) -> (DualComplex, f64) {
    let mut row = values.to_vec();
    let mut last_change = 0.0;
    for j in 1..values.len() {
        let factor = (1u64 << j) as f64;
        let next: Vec<DualComplex> =
            row.windows(2).map(|w| (w[1].scale(factor) - w[0]).scale(1.0 / (factor - 1.0))).collect();
        last_change = (next[next.len() - 1] - row[row.len() - 1]).norm();
        row = next;
    }
    (row[0], last_change)
}

/// `∮ f(τ) dτ` for node-aligned samples.
pub fn contour_integral(contour: &Contour, samples: &[DualComplex]) -> DualComplex {
    assert_eq!(samples.len(), contour.len(), "samples must be node-aligned");
    samples.iter().zip(contour.nodes()).map(|(f, n)| *f * n.dxi).sum()
}

fn kernel_sum(xi: &[DualComplex], dxi: &[DualComplex], density: &[DualComplex], z: DualComplex) -> Result<DualComplex> {
    let mut acc = DualComplex::ZERO;
    for ((t, dt), psi) in xi.iter().zip(dxi).zip(density) {
        acc += *psi * (*t - z).inv()? * *dt;
    }
    Ok(acc.scale_complex(inv_two_pi_i()))
}

/// The Cauchy-type integral of a node-aligned density.
#[derive(Debug)]
pub struct CauchyIntegral {
    contour: Contour,
    density: Vec<DualComplex>,
    options: LimitOptions,
    refined: OnceLock<(Refined, Vec<DualComplex>)>,
}

impl Clone for CauchyIntegral {
    fn clone(&self) -> Self {
        CauchyIntegral {
            contour: self.contour.clone(),
            density: self.density.clone(),
            options: self.options,
            refined: self.refined.clone(),
        }
    }
}

impl CauchyIntegral {
    pub fn new(contour: &Contour, density: Vec<DualComplex>) -> Result<Self> {
        CauchyIntegral::with_options(contour, density, LimitOptions::default())
    }

    pub fn with_options(contour: &Contour, density: Vec<DualComplex>, options: LimitOptions) -> Result<Self> {
        if density.len() != contour.len() {
            return Err(Error::InvalidInput(format!(
                "density has {} samples for {} nodes",
                density.len(),
                contour.len()
            )));
        }
        if let Some(k) = density.iter().position(|d| !d.is_finite()) {
            return Err(Error::InvalidInput(format!("density is not finite at node {k}")));
        }
        Ok(CauchyIntegral { contour: contour.clone(), density, options, refined: OnceLock::new() })
    }

    pub fn contour(&self) -> &Contour {
        &self.contour
    }

    pub fn density(&self) -> &[DualComplex] {
        &self.density
    }

    pub fn options(&self) -> LimitOptions {
        self.options
    }

    fn refined(&self) -> &(Refined, Vec<DualComplex>) {
        self.refined.get_or_init(|| self.contour.refine(self.options.upsample, &self.density))
    }

    /// Builds the refined quadrature eagerly (it is otherwise built on first near-curve use).
    pub fn prepare(&self) {
        self.refined();
    }

    /// Value at a point outside the guard band.
    pub fn evaluate(&self, z: PointE) -> Result<DualComplex> {
        let distance = self.contour.distance_to(z);
        let guard = self.contour.guard_band();
        if distance < guard {
            return Err(Error::TooCloseToBoundary { distance, guard });
        }
        let xi: Vec<DualComplex> = self.contour.nodes().iter().map(|n| n.xi).collect();
        let dxi: Vec<DualComplex> = self.contour.nodes().iter().map(|n| n.dxi).collect();
        kernel_sum(&xi, &dxi, &self.density, z.xi)
    }

    /// Value at a point that may lie inside the guard band, using the refined quadrature there.
    pub fn evaluate_near(&self, z: PointE) -> Result<DualComplex> {
        let distance = self.contour.distance_to(z);
        if distance >= self.contour.guard_band() {
            return self.evaluate(z);
        }
        let (refined, psi) = self.refined();
        let guard = 3.0 * refined.max_spacing;
        if distance < guard {
            return Err(Error::TooCloseToBoundary { distance, guard });
        }
        kernel_sum(&refined.xi, &refined.dxi, psi, z.xi)
    }

    /// Value at a point on the given side near node `k`, with `ψ(τ_k)` subtracted from the
    /// density and restored through `(1/2πi)∮(τ − ζ)⁻¹dτ = 1` inside, `0` outside. Much more
    /// accurate than [`Self::evaluate_near`] close to `τ_k`.
    pub fn evaluate_anchored(&self, z: PointE, k: usize, side: Side) -> Result<DualComplex> {
        if self.contour.distance_to(z) >= self.contour.guard_band() {
            return self.evaluate(z);
        }
        let (refined, psi) = self.refined();
        let guard = 3.0 * refined.max_spacing;
        let distance = self.contour.distance_to(z);
        if distance < guard {
            return Err(Error::TooCloseToBoundary { distance, guard });
        }
        let base = self.density[k];
        let mut acc = DualComplex::ZERO;
        for ((t, dt), p) in refined.xi.iter().zip(&refined.dxi).zip(psi) {
            acc += (*p - base) * (*t - z.xi).inv()? * *dt;
        }
        let inner = acc.scale_complex(inv_two_pi_i());
        Ok(match side {
            Side::Plus => inner + base,
            Side::Minus => inner,
        })
    }

    /// One-sided limit at node `k`.
    pub fn boundary_limit(&self, k: usize, side: Side) -> Result<BoundaryValue> {
        self.prepare();
        boundary_limit_with(&self.contour, k, side, &self.options, |z| self.evaluate_anchored(z, k, side))
    }
}

/// A one-sided boundary value with its extrapolation error estimate.
#[derive(Clone, Copy, Debug)]
pub struct BoundaryValue {
    pub value: DualComplex,
    pub error_estimate: f64,
}

/// Limit of `f(τ_k ± s·n)` as `s → 0⁺` along the inward normal `n` (`+`) or outward (`−`),
/// by Richardson extrapolation over halved offsets.
///
/// `f` must be accurate down to the smallest offset from the curve (see [`CauchyIntegral::evaluate_near`]).
pub fn boundary_limit_with<F>(contour: &Contour, k: usize, side: Side, options: &LimitOptions, f: F) -> Result<BoundaryValue>
where
    F: Fn(PointE) -> Result<DualComplex>,
{
    let normal = contour.inward_normal(k)?;
    match limit_along(contour, k, side, options, normal, 1.0, &f) {
        Err(Error::TooCloseToBoundary { .. }) => {
            // next to a corner the normal path runs into the adjacent edge; approach
            // non-tangentially at 45° away from the corner instead
            let node = contour.node(k);
            let len = node.dx.hypot(node.dy);
            let tangent = [node.dx / len, node.dy / len];
            let corner = contour
                .nodes()
                .iter()
                .filter(|n| n.corner)
                .min_by(|a, b| {
                    let da = (a.x - node.x).hypot(a.y - node.y);
                    let db = (b.x - node.x).hypot(b.y - node.y);
                    da.total_cmp(&db)
                })
                .ok_or(Error::TooCloseToBoundary { distance: 0.0, guard: 0.0 })?;
            let ahead = (corner.x - node.x) * tangent[0] + (corner.y - node.y) * tangent[1];
            let away = if ahead > 0.0 { -1.0 } else { 1.0 };
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let sign = match side {
                Side::Plus => 1.0,
                Side::Minus => -1.0,
            };
            // direction is applied with the side sign, so pre-multiply the tangential part
            let dir = [r * (normal[0] + sign * away * tangent[0]), r * (normal[1] + sign * away * tangent[1])];
            limit_along(contour, k, side, options, dir, std::f64::consts::SQRT_2, &f)
        }
        other => other,
    }
}

fn limit_along<F>(
    contour: &Contour,
    k: usize,
    side: Side,
    options: &LimitOptions,
    direction: [f64; 2],
    stretch: f64,
    f: &F,
) -> Result<BoundaryValue>
where
    F: Fn(PointE) -> Result<DualComplex>,
{
    let sign = match side {
        Side::Plus => 1.0,
        Side::Minus => -1.0,
    };
    let node = contour.node(k);
    let basis = contour.basis();
    let h = stretch * options.offset(contour);
    let at = |s: f64| f(basis.point(node.x + sign * s * direction[0], node.y + sign * s * direction[1]));
    let levels = options.levels.max(2);
    let samples: Vec<DualComplex> =
        (0..levels).map(|i| at(h / (1u64 << i) as f64)).collect::<Result<_>>()?;
    let (value, error_estimate) = richardson(&samples);
    if !value.is_finite() || error_estimate > options.tolerance * value.norm().max(1.0) {
        return Err(Error::NoConvergence { node: k, estimate: error_estimate });
    }
    Ok(BoundaryValue { value, error_estimate })
}

/// Cauchy-type integral of `density` at a single point outside the guard band.
pub fn cauchy_integral(contour: &Contour, density: &[DualComplex], z: PointE) -> Result<DualComplex> {
    CauchyIntegral::new(contour, density.to_vec())?.evaluate(z)
}

/// Nodes where one-sided limits are taken: every node except polygon corners.
pub fn smooth_nodes(contour: &Contour) -> Vec<usize> {
    (0..contour.len()).filter(|&k| !contour.node(k).corner).collect()
}

/// Result of checking `ψ = ψ̃⁺ − ψ̃⁻` on the curve.
#[derive(Clone, Debug, Serialize)]
pub struct JumpReport {
    pub sup_residual: f64,
    pub worst_node: usize,
    pub checked: usize,
    pub skipped: usize,
    pub max_error_estimate: f64,
}

/// Sup over smooth nodes of `‖ψ̃⁺(τ) − ψ̃⁻(τ) − ψ(τ)‖`.
pub fn jump_check(contour: &Contour, density: &[DualComplex]) -> Result<JumpReport> {
    let f = CauchyIntegral::new(contour, density.to_vec())?;
    jump_check_integral(&f)
}

pub fn jump_check_integral(f: &CauchyIntegral) -> Result<JumpReport> {
    f.prepare();
    let nodes = smooth_nodes(&f.contour);
    let per_node: Vec<(usize, f64, f64)> = nodes
        .par_iter()
        .map(|&k| {
            let plus = f.boundary_limit(k, Side::Plus)?;
            let minus = f.boundary_limit(k, Side::Minus)?;
            let r = (plus.value - minus.value - f.density[k]).norm();
            Ok((k, r, plus.error_estimate.max(minus.error_estimate)))
        })
        .collect::<Result<_>>()?;
    let (worst_node, sup_residual) =
        per_node.iter().fold((0, 0.0), |acc, &(k, r, _)| if r > acc.1 { (k, r) } else { acc });
    Ok(JumpReport {
        sup_residual,
        worst_node,
        checked: per_node.len(),
        skipped: f.contour.len() - per_node.len(),
        max_error_estimate: per_node.iter().map(|p| p.2).fold(0.0, f64::max),
    })
}

/// Taylor coefficients `c_n = (1/2πi) ∮ Φ(τ)(τ − ζ0)^{−n−1} dτ`, `n = 0..=n_max`, from boundary samples.
pub fn taylor_coeffs(contour: &Contour, samples: &[DualComplex], z0: PointE, n_max: usize) -> Result<Vec<DualComplex>> {
    if samples.len() != contour.len() {
        return Err(Error::InvalidInput("samples must be node-aligned".into()));
    }
    match contour.interior_test(z0) {
        Region::Interior => {}
        Region::NearBoundary => {
            return Err(Error::TooCloseToBoundary { distance: contour.distance_to(z0), guard: contour.guard_band() })
        }
        Region::Exterior => return Err(Error::InvalidInput("expansion point must lie inside the contour".into())),
    }
    let mut out = vec![DualComplex::ZERO; n_max + 1];
    for (phi, node) in samples.iter().zip(contour.nodes()) {
        let r = (node.xi - z0.xi).inv()?;
        let mut term = *phi * r * node.dxi;
        for c in out.iter_mut() {
            *c += term;
            term *= r;
        }
    }
    Ok(out.into_iter().map(|c| c.scale_complex(inv_two_pi_i())).collect())
}

/// [`taylor_coeffs`] for a field expression sampled on the curve.
pub fn taylor_coeffs_expr(contour: &Contour, phi: &Expr, z0: PointE, n_max: usize) -> Result<Vec<DualComplex>> {
    taylor_coeffs(contour, &contour.sample_field(phi)?, z0, n_max)
}

/// Outcome of the logarithmic residue count.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LogResidue {
    /// The integral rounded to an integer: `+N` for the interior, `−N` for the exterior.
    pub value: i64,
    /// Number of zeros of the complex part in the chosen region.
    pub zeros: u64,
    pub raw_re: f64,
    pub raw_im: f64,
    /// Norm of the ρ-component of the integral (zero in exact arithmetic).
    pub raw_rho: f64,
    pub distance: f64,
}

pub const LOG_RESIDUE_TOLERANCE: f64 = 1e-6;

/// `(1/2πi) ∮ Φ'(ζ) Φ(ζ)⁻¹ dζ`, with `Φ'` from symbolic differentiation.
pub fn log_residue(contour: &Contour, phi: &Expr, region: Side) -> Result<LogResidue> {
    let dphi = phi.differentiate()?;
    let values = contour.sample_field(phi)?;
    let bad: Vec<usize> = values.iter().enumerate().filter(|(_, v)| !v.is_invertible()).map(|(k, _)| k).collect();
    if !bad.is_empty() {
        return Err(Error::NotInvertibleOnContour(bad));
    }
    let derivs = contour.sample_field(&dphi)?;
    let integrand: Vec<DualComplex> =
        derivs.iter().zip(&values).map(|(d, v)| v.inv().map(|iv| *d * iv)).collect::<Result<_>>()?;
    let raw = contour_integral(contour, &integrand).scale_complex(inv_two_pi_i());
    let value = raw.c1.re.round();
    let distance = (raw.c1 - Complex64::new(value, 0.0)).norm();
    if distance > LOG_RESIDUE_TOLERANCE {
        return Err(Error::NonIntegerResidue { raw: raw.c1.re });
    }
    let value = value as i64;
    let zeros = match region {
        Side::Plus if value >= 0 => value as u64,
        Side::Minus if value <= 0 => (-value) as u64,
        _ => {
            return Err(Error::InvalidInput(format!(
                "logarithmic residue {value} has the wrong sign for the chosen region"
            )))
        }
    };
    Ok(LogResidue { value, zeros, raw_re: raw.c1.re, raw_im: raw.c1.im, raw_rho: raw.c2.norm(), distance })
}

/// `‖∮_{∂T} Φ dζ‖` over a triangle with vertices in `E`, by composite Gauss–Legendre per edge.
pub fn morera_triangle_check<F>(f: F, vertices: [PointE; 3]) -> Result<f64>
where
    F: Fn(DualComplex) -> Result<DualComplex>,
{
    let [a, b, c] = vertices;
    let area2 = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    let scale = [a, b, c].iter().flat_map(|p| [p.x.abs(), p.y.abs()]).fold(1.0, f64::max);
    if area2.abs() <= 1e-12 * scale * scale {
        return Err(Error::DegenerateTriangle);
    }
    let (gx, gw) = gauss_legendre(16);
    const PANELS: usize = 4;
    let mut total = DualComplex::ZERO;
    for (p, q) in [(a, b), (b, c), (c, a)] {
        let d = q.xi - p.xi;
        for panel in 0..PANELS {
            let lo = panel as f64 / PANELS as f64;
            let hi = (panel + 1) as f64 / PANELS as f64;
            for (&u, &w) in gx.iter().zip(&gw) {
                let s = lo + 0.5 * (hi - lo) * (u + 1.0);
                total += f(p.xi + d.scale(s))? * d.scale(0.5 * (hi - lo) * w);
            }
        }
    }
    Ok(total.norm())
}

/// [`morera_triangle_check`] for a field expression.
pub fn morera_triangle_check_expr(phi: &Expr, vertices: [PointE; 3]) -> Result<f64> {
    if !phi.is_field() {
        return Err(Error::NotAFieldExpression);
    }
    morera_triangle_check(|z| phi.eval_at(z), vertices)
}

/// Difference quotients along one direction of `E`.
#[derive(Clone, Debug)]
pub struct DirectionalQuotient {
    /// Unit direction in `(x, y)` coordinates.
    pub direction: [f64; 2],
    pub quotients: [DualComplex; 3],
    pub limit: DualComplex,
}

#[derive(Clone, Debug)]
pub struct MonogenicityReport {
    pub directions: Vec<DirectionalQuotient>,
    /// Largest pairwise distance between the extrapolated directional limits.
    pub max_deviation: f64,
    /// Mean of the directional limits.
    pub limit: DualComplex,
}

pub const MONOGENICITY_STEPS: [f64; 3] = [1e-3, 5e-4, 2.5e-4];

/// Direction-independence of `(Φ(ζ + h) − Φ(ζ)) h⁻¹` for `h` along `e1`, `e2` and `(e1 + e2)/√2`.
pub fn monogenicity_check<F>(f: F, basis: &Basis, z: PointE) -> Result<MonogenicityReport>
where
    F: Fn(DualComplex) -> Result<DualComplex>,
{
    let f0 = f(z.xi)?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut directions = Vec::new();
    for dir in [[1.0, 0.0], [0.0, 1.0], [r, r]] {
        let mut q = [DualComplex::ZERO; 3];
        for (slot, &delta) in q.iter_mut().zip(&MONOGENICITY_STEPS) {
            let h = basis.combine(delta * dir[0], delta * dir[1]);
            *slot = (f(z.xi + h)? - f0) * h.inv()?;
        }
        let limit = (q[2].scale(8.0) - q[1].scale(6.0) + q[0]).scale(1.0 / 3.0);
        directions.push(DirectionalQuotient { direction: dir, quotients: q, limit });
    }
    let mut max_deviation: f64 = 0.0;
    for i in 0..directions.len() {
        for j in i + 1..directions.len() {
            max_deviation = max_deviation.max((directions[i].limit - directions[j].limit).norm());
        }
    }
    let limit = directions.iter().map(|d| d.limit).sum::<DualComplex>().scale(1.0 / directions.len() as f64);
    Ok(MonogenicityReport { directions, max_deviation, limit })
}

pub fn monogenicity_check_expr(phi: &Expr, basis: &Basis, z: PointE) -> Result<MonogenicityReport> {
    if !phi.is_field() {
        return Err(Error::NotAFieldExpression);
    }
    monogenicity_check(|w| phi.eval_at(w), basis, z)
}

/// Complex part `F(ξ1)` of a monogenic function: its `c1`-component, which depends on `ξ1` only.
pub fn holomorphic_part<F>(f: &F, xi1: Complex64) -> Result<Complex64>
where
    F: Fn(DualComplex) -> Result<DualComplex>,
{
    Ok(f(DualComplex::scalar(xi1))?.c1)
}

/// ρ-component of `Φ(ζ)`.
pub fn rho_part<F>(f: &F, z: PointE) -> Result<Complex64>
where
    F: Fn(DualComplex) -> Result<DualComplex>,
{
    Ok(f(z.xi)?.c2)
}

/// One grid point of a [`Decomposition`].
#[derive(Clone, Copy, Debug)]
pub struct ComponentSample {
    pub point: PointE,
    /// `F(ξ1)`.
    pub holomorphic: Complex64,
    /// `c2`-component of `Φ(ζ)`.
    pub rho_part: Complex64,
    /// `Φ0(ζ)` in `Φ(ζ) = (1/2πi)∮(t − ζ)⁻¹F(t)dt + Φ0(ζ)ρ`.
    pub phi0: Complex64,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub samples: Vec<ComponentSample>,
    /// Largest change of the complex part when `ξ2` varies with `ξ1` fixed.
    pub fiber_deviation: f64,
    /// Largest `|∂F/∂ξ̄1|` by centered differences.
    pub cauchy_riemann_residual: f64,
    /// Largest `|c1|` of `Φ(ζ) − (1/2πi)∮(t − ζ)⁻¹F(t)dt`.
    pub representation_residual: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct DecomposeOptions {
    pub fiber_tolerance: f64,
    /// Radius of the circle `Γ` about `ξ1` in the complex plane.
    pub circle_radius: f64,
    pub circle_nodes: usize,
    pub cr_step: f64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { fiber_tolerance: 1e-8, circle_radius: 0.1, circle_nodes: 64, cr_step: 1e-4 }
    }
}

/// Splits `Φ` into its holomorphic complex part `F` and the ρ-part on a grid of points, checking
/// that `F` is constant along fibers `ξ1 = const`, satisfies Cauchy–Riemann, and reproduces
/// `Φ` up to a ρ-multiple through the Cauchy integral over a small circle in `ℂ`.
pub fn component_decompose<F>(f: F, grid: &[PointE], options: DecomposeOptions) -> Result<Decomposition>
where
    F: Fn(DualComplex) -> Result<DualComplex>,
{
    let mut samples = Vec::with_capacity(grid.len());
    let (mut fiber, mut cr, mut rep) = (0.0f64, 0.0f64, 0.0f64);
    let m = options.circle_nodes;
    for &p in grid {
        let value = f(p.xi)?;
        let big_f = holomorphic_part(&f, p.xi.c1)?;
        let scale = 1.0 + p.xi.c2.norm();
        for shift in [0.5, -0.5, 1.0] {
            let moved = DualComplex::new(p.xi.c1, p.xi.c2 + Complex64::new(shift * scale, 0.25 * shift * scale));
            fiber = fiber.max((f(moved)?.c1 - value.c1).norm());
        }
        let h = options.cr_step;
        let fx = (holomorphic_part(&f, p.xi.c1 + h)? - holomorphic_part(&f, p.xi.c1 - h)?) / (2.0 * h);
        let ih = Complex64::new(0.0, h);
        let fy = (holomorphic_part(&f, p.xi.c1 + ih)? - holomorphic_part(&f, p.xi.c1 - ih)?) / (2.0 * h);
        cr = cr.max(0.5 * (fx + Complex64::i() * fy).norm());

        // (1/2πi) ∮_Γ (t − ζ)⁻¹ F(t) dt over |t − ξ1| = r
        let mut acc = DualComplex::ZERO;
        for k in 0..m {
            let th = 2.0 * PI * k as f64 / m as f64;
            let e = Complex64::from_polar(1.0, th);
            let t = p.xi.c1 + e * options.circle_radius;
            let dt = Complex64::i() * e * options.circle_radius * (2.0 * PI / m as f64);
            let ft = holomorphic_part(&f, t)?;
            acc += (DualComplex::scalar(t) - p.xi).inv()?.scale_complex(ft * dt);
        }
        let integral = acc.scale_complex(inv_two_pi_i());
        let rest = value - integral;
        rep = rep.max(rest.c1.norm());
        samples.push(ComponentSample { point: p, holomorphic: big_f, rho_part: value.c2, phi0: rest.c2 });
    }
    if fiber > options.fiber_tolerance * samples.iter().map(|s| s.holomorphic.norm()).fold(1.0, f64::max) {
        return Err(Error::FiberInconsistency { deviation: fiber });
    }
    Ok(Decomposition { samples, fiber_deviation: fiber, cauchy_riemann_residual: cr, representation_residual: rep })
}
