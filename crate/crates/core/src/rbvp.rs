//! Solvers for the Riemann problem `Φ⁺(τ) = G(τ)Φ⁻(τ) + g(τ)` on a closed curve in `E`:
//! jump (`G ≡ 1`), homogeneous (`g ≡ 0`) and the general case.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{DualComplex, PointE};
use crate::canonical::{build_canonical_x_with, side_of, CanonicalX};
use crate::contour::Contour;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::integral::{boundary_limit_with, contour_integral, smooth_nodes, CauchyIntegral, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolutionKind {
    Jump,
    Homogeneous,
    Nonhomogeneous,
}

/// Which hypothesis the caller asserts for the general problem. Both lead to the same formulas;
/// neither is decidable from samples, so the tag is only carried into reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// `G` satisfies a Dini condition on the curve.
    #[default]
    DiniCoefficient,
    /// `ln(τ^{−ϰ}G(τ))` is a sum of boundary traces of monogenic functions.
    DecomposableLog,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub quadrature: f64,
    pub residual: f64,
    pub index_integrality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { quadrature: 1e-10, residual: 1e-6, index_integrality: 1e-3 }
    }
}

/// Problem data: curve (with its basis), coefficient `G`, free term `g`, and the coefficients of
/// the free polynomial `P_ϰ` (lowest degree first).
#[derive(Clone, Debug)]
pub struct RbvpProblem {
    pub contour: Contour,
    pub coefficient: Expr,
    pub free_term: Expr,
    pub polynomial: Vec<DualComplex>,
    pub tolerances: Tolerances,
    pub route: Route,
}

impl RbvpProblem {
    pub fn new(contour: &Contour, coefficient: Expr, free_term: Expr) -> Self {
        RbvpProblem {
            contour: contour.clone(),
            coefficient,
            free_term,
            polynomial: Vec::new(),
            tolerances: Tolerances::default(),
            route: Route::default(),
        }
    }

    /// Parses both boundary expressions.
    pub fn parse(contour: &Contour, coefficient: &str, free_term: &str) -> Result<Self> {
        Ok(RbvpProblem::new(contour, Expr::parse(coefficient)?, Expr::parse(free_term)?))
    }

    pub fn with_polynomial(mut self, coefficients: Vec<DualComplex>) -> Self {
        self.polynomial = coefficients;
        self
    }

    pub fn with_tolerances(mut self, tolerances: Tolerances) -> Self {
        self.tolerances = tolerances;
        self
    }

    pub fn with_route(mut self, route: Route) -> Self {
        self.route = route;
        self
    }

    /// `G ≡ 1`.
    pub fn is_jump(&self) -> bool {
        self.coefficient.constant_value() == Some(DualComplex::ONE)
    }

    /// `g ≡ 0`.
    pub fn is_homogeneous(&self) -> bool {
        self.free_term.constant_value() == Some(DualComplex::ZERO)
    }

    /// Dispatches on the shape of the data: `G ≡ 1` → jump, `g ≡ 0` → homogeneous, otherwise general.
    pub fn solve(&self) -> Result<RbvpSolution> {
        if self.is_jump() {
            let c = self.polynomial.first().copied().unwrap_or(DualComplex::ZERO);
            check_polynomial(&self.polynomial, 0)?;
            solve_jump(self, c)
        } else if self.is_homogeneous() {
            solve_homogeneous(self)
        } else {
            solve_nonhomogeneous(self)
        }
    }

    pub fn solve_as(&self, kind: SolutionKind) -> Result<RbvpSolution> {
        match kind {
            SolutionKind::Jump => {
                check_polynomial(&self.polynomial, 0)?;
                solve_jump(self, self.polynomial.first().copied().unwrap_or(DualComplex::ZERO))
            }
            SolutionKind::Homogeneous => solve_homogeneous(self),
            SolutionKind::Nonhomogeneous => solve_nonhomogeneous(self),
        }
    }
}

/// Moments `M_s = ∮ψ(τ)τ^{s−1}dτ`, `s = 1..−ϰ`, that must vanish when `ϰ < 0`.
#[derive(Clone, Debug)]
pub struct SolvabilityReport {
    pub kappa: i64,
    pub moments: Vec<DualComplex>,
    pub solvable: bool,
    pub tolerance: f64,
}

impl SolvabilityReport {
    pub fn moment_norms(&self) -> Vec<f64> {
        self.moments.iter().map(DualComplex::norm).collect()
    }

    fn vacuous(kappa: i64, tolerance: f64) -> Self {
        SolvabilityReport { kappa, moments: Vec::new(), solvable: true, tolerance }
    }
}

fn trim(coefficients: &[DualComplex]) -> &[DualComplex] {
    let len = coefficients.iter().rposition(|c| *c != DualComplex::ZERO).map_or(0, |i| i + 1);
    &coefficients[..len]
}

fn check_polynomial(coefficients: &[DualComplex], kappa: i64) -> Result<Vec<DualComplex>> {
    let p = trim(coefficients);
    if !p.is_empty() && (p.len() as i64 - 1) > kappa {
        return Err(Error::PolynomialDegree { degree: p.len() - 1, kappa });
    }
    Ok(p.to_vec())
}

fn eval_polynomial(p: &[DualComplex], z: DualComplex) -> DualComplex {
    p.iter().rev().fold(DualComplex::ZERO, |acc, c| acc * z + *c)
}

/// A solution `Φ± = X±(ψ̃ + P)`; the jump problem is the case `X ≡ 1`, the homogeneous one `ψ̃ ≡ 0`.
#[derive(Clone, Debug)]
pub struct RbvpSolution {
    pub kind: SolutionKind,
    pub kappa: i64,
    pub canonical: Option<CanonicalX>,
    /// `ψ = g(X⁺)⁻¹` at the nodes (all zero for the homogeneous problem).
    pub density: Vec<DualComplex>,
    pub cauchy: Option<CauchyIntegral>,
    pub polynomial: Vec<DualComplex>,
    pub solvability: SolvabilityReport,
    pub route: Route,
    /// Set for the homogeneous problem with `ϰ < 0`, whose only solution is zero.
    pub trivial_only: bool,
    contour: Contour,
}

impl RbvpSolution {
    pub fn contour(&self) -> &Contour {
        &self.contour
    }

    /// Multiplies the solution by a constant of `𝔹`. For homogeneous solutions the result solves
    /// the same problem; in general it solves the problem with free term `k·g`.
    pub fn scaled(&self, k: DualComplex) -> Result<RbvpSolution> {
        let mut out = self.clone();
        out.polynomial = self.polynomial.iter().map(|c| k * *c).collect();
        out.density = self.density.iter().map(|c| k * *c).collect();
        out.cauchy = match &self.cauchy {
            Some(f) => Some(CauchyIntegral::with_options(&self.contour, out.density.clone(), f.options())?),
            None => None,
        };
        Ok(out)
    }

    /// Adds the polynomial part of a homogeneous solution of the same problem.
    pub fn superpose(&self, homogeneous: &RbvpSolution) -> Result<RbvpSolution> {
        if homogeneous.kind != SolutionKind::Homogeneous || homogeneous.kappa != self.kappa {
            return Err(Error::InvalidInput("superposition needs a homogeneous solution with the same index".into()));
        }
        let n = self.polynomial.len().max(homogeneous.polynomial.len());
        let mut out = self.clone();
        out.polynomial = (0..n)
            .map(|i| {
                self.polynomial.get(i).copied().unwrap_or_default()
                    + homogeneous.polynomial.get(i).copied().unwrap_or_default()
            })
            .collect();
        Ok(out)
    }

    fn x_factor(&self, z: PointE, anchor: Option<usize>, side: Side) -> Result<DualComplex> {
        match (&self.canonical, anchor) {
            (None, _) => Ok(DualComplex::ONE),
            (Some(x), Some(k)) => x.evaluate_anchored(z, k, side),
            (Some(x), None) => x.evaluate_side(z, side),
        }
    }

    fn inner(&self, z: PointE, anchor: Option<usize>, side: Side) -> Result<DualComplex> {
        let psi = match (&self.cauchy, anchor) {
            (None, _) => DualComplex::ZERO,
            (Some(f), Some(k)) => f.evaluate_anchored(z, k, side)?,
            (Some(f), None) => f.evaluate_near(z)?,
        };
        Ok(psi + eval_polynomial(&self.polynomial, z.xi))
    }

    /// `Φ(ζ)` on the given side.
    pub fn evaluate_side(&self, z: PointE, side: Side) -> Result<DualComplex> {
        if self.trivial_only {
            return Ok(DualComplex::ZERO);
        }
        Ok(self.x_factor(z, None, side)? * self.inner(z, None, side)?)
    }

    /// `Φ(ζ)`, with `Φ⁺` used inside the curve and `Φ⁻` outside.
    pub fn evaluate(&self, z: PointE) -> Result<DualComplex> {
        self.evaluate_side(z, side_of(&self.contour, z))
    }

    /// `Φ⁺` on the interior domain.
    pub fn phi_plus(&self, z: PointE) -> Result<DualComplex> {
        self.evaluate_side(z, Side::Plus)
    }

    /// `Φ⁻` on the exterior domain.
    pub fn phi_minus(&self, z: PointE) -> Result<DualComplex> {
        self.evaluate_side(z, Side::Minus)
    }

    /// `Φ±(τ_k)` as the limit of the assembled evaluator.
    pub fn boundary_value(&self, k: usize, side: Side) -> Result<DualComplex> {
        if self.trivial_only {
            return Ok(DualComplex::ZERO);
        }
        let opts = self.cauchy.as_ref().map(|f| f.options()).unwrap_or_default();
        let f = |z: PointE| Ok(self.x_factor(z, Some(k), side)? * self.inner(z, Some(k), side)?);
        Ok(boundary_limit_with(&self.contour, k, side, &opts, f)?.value)
    }

    /// `(k, Φ⁺(τ_k), Φ⁻(τ_k))` at every non-corner node.
    pub fn boundary_values(&self) -> Result<Vec<(usize, DualComplex, DualComplex)>> {
        if let Some(f) = &self.cauchy {
            f.prepare();
        }
        smooth_nodes(&self.contour)
            .into_par_iter()
            .map(|k| Ok((k, self.boundary_value(k, Side::Plus)?, self.boundary_value(k, Side::Minus)?)))
            .collect()
    }

    /// `sup ‖Φ⁻‖` on circles of radius `r` about the centroid of the curve.
    pub fn sup_on_circle(&self, radius: f64, samples: usize) -> Result<f64> {
        let (cx, cy) = centroid(&self.contour);
        let b = self.contour.basis();
        (0..samples)
            .map(|j| {
                let th = 2.0 * std::f64::consts::PI * j as f64 / samples as f64;
                Ok(self.phi_minus(b.point(cx + radius * th.cos(), cy + radius * th.sin()))?.norm())
            })
            .try_fold(0.0, |acc: f64, v: Result<f64>| Ok(acc.max(v?)))
    }
}

fn centroid(c: &Contour) -> (f64, f64) {
    let n = c.len() as f64;
    let (sx, sy) = c.nodes().iter().fold((0.0, 0.0), |(a, b), p| (a + p.x, b + p.y));
    (sx / n, sy / n)
}

/// `Φ±(ζ) = g̃(ζ) + c`: the Cauchy-type integral of `g` plus an arbitrary constant.
pub fn solve_jump(p: &RbvpProblem, c: DualComplex) -> Result<RbvpSolution> {
    if !p.is_jump() {
        return Err(Error::InvalidInput("the jump problem needs G ≡ 1".into()));
    }
    let density = p.contour.sample(&p.free_term)?;
    let cauchy = CauchyIntegral::new(&p.contour, density.clone())?;
    Ok(RbvpSolution {
        kind: SolutionKind::Jump,
        kappa: 0,
        canonical: None,
        density,
        cauchy: Some(cauchy),
        polynomial: trim(&[c]).to_vec(),
        solvability: SolvabilityReport::vacuous(0, p.tolerances.residual),
        route: p.route,
        trivial_only: false,
        contour: p.contour.clone(),
    })
}

fn canonical_for(p: &RbvpProblem) -> Result<Option<CanonicalX>> {
    if p.is_jump() {
        Ok(None)
    } else {
        build_canonical_x_with(&p.contour, &p.coefficient, p.tolerances.index_integrality).map(Some)
    }
}

/// `Φ± = X±·P_ϰ` for `ϰ ≥ 0`; only the zero solution for `ϰ < 0`.
pub fn solve_homogeneous(p: &RbvpProblem) -> Result<RbvpSolution> {
    if !p.is_homogeneous() {
        return Err(Error::InvalidInput("the homogeneous problem needs g ≡ 0".into()));
    }
    let canonical = canonical_for(p)?;
    let kappa = canonical.as_ref().map_or(0, CanonicalX::kappa);
    let polynomial = check_polynomial(&p.polynomial, kappa)?;
    Ok(RbvpSolution {
        kind: SolutionKind::Homogeneous,
        kappa,
        canonical,
        density: vec![DualComplex::ZERO; p.contour.len()],
        cauchy: None,
        polynomial,
        solvability: SolvabilityReport::vacuous(kappa, p.tolerances.residual),
        route: p.route,
        trivial_only: kappa < 0,
        contour: p.contour.clone(),
    })
}

/// `ψ = g(X⁺)⁻¹` at the nodes.
pub fn density(p: &RbvpProblem, x: Option<&CanonicalX>) -> Result<Vec<DualComplex>> {
    let g = p.contour.sample(&p.free_term)?;
    match x {
        None => Ok(g),
        Some(x) => g.iter().zip(x.x_plus()).map(|(g, xp)| Ok(*g * xp.inv()?)).collect(),
    }
}

/// Evaluates the moments for `ϰ < 0`; vacuously solvable otherwise.
pub fn check_solvability(p: &RbvpProblem, x: &CanonicalX) -> Result<SolvabilityReport> {
    let psi = density(p, Some(x))?;
    Ok(solvability_from_density(&p.contour, &psi, x.kappa(), p.tolerances.residual))
}

fn solvability_from_density(c: &Contour, psi: &[DualComplex], kappa: i64, tolerance: f64) -> SolvabilityReport {
    if kappa >= 0 {
        return SolvabilityReport::vacuous(kappa, tolerance);
    }
    let mut weighted = psi.to_vec();
    let mut moments = Vec::new();
    for _ in 0..(-kappa) {
        moments.push(contour_integral(c, &weighted));
        for (w, node) in weighted.iter_mut().zip(c.nodes()) {
            *w *= node.xi;
        }
    }
    let solvable = moments.iter().all(|m| m.norm() <= tolerance);
    SolvabilityReport { kappa, moments, solvable, tolerance }
}

/// `Φ± = X±(ψ̃ + P_ϰ)`, with `P_ϰ ≡ 0` when `ϰ < 0` and the moments required to vanish there.
pub fn solve_nonhomogeneous(p: &RbvpProblem) -> Result<RbvpSolution> {
    let canonical = canonical_for(p)?;
    let kappa = canonical.as_ref().map_or(0, CanonicalX::kappa);
    let psi = density(p, canonical.as_ref())?;
    let solvability = solvability_from_density(&p.contour, &psi, kappa, p.tolerances.residual);
    if !solvability.solvable {
        return Err(Error::Unsolvable(Box::new(solvability)));
    }
    let polynomial = check_polynomial(&p.polynomial, kappa)?;
    let cauchy = CauchyIntegral::new(&p.contour, psi.clone())?;
    Ok(RbvpSolution {
        kind: SolutionKind::Nonhomogeneous,
        kappa,
        canonical,
        density: psi,
        cauchy: Some(cauchy),
        polynomial,
        solvability,
        route: p.route,
        trivial_only: false,
        contour: p.contour.clone(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub sup_residual: f64,
    pub worst_node: usize,
    /// `(node, ‖Φ⁺ − GΦ⁻ − g‖)` at every non-corner node.
    pub per_node: Vec<(usize, f64)>,
    /// `sup ‖Φ⁻‖` on the largest sampling circle.
    pub infinity_bound: f64,
    /// `(radius, sup ‖Φ⁻‖)` for radii `{10, 100, 1000}·diam`.
    pub infinity_samples: Vec<(f64, f64)>,
}

pub const INFINITY_RADII: [f64; 3] = [10.0, 100.0, 1000.0];

/// Boundary defect of `s` against the data of `p`, plus the behaviour of `Φ⁻` far away.
pub fn residual_report(s: &RbvpSolution, p: &RbvpProblem) -> Result<ResidualReport> {
    let values = s.boundary_values()?;
    residual_from_values(s, p, &values)
}

/// As [`residual_report`], from precomputed boundary values `(k, Φ⁺, Φ⁻)`.
pub fn residual_from_values(
    s: &RbvpSolution,
    p: &RbvpProblem,
    values: &[(usize, DualComplex, DualComplex)],
) -> Result<ResidualReport> {
    let g_big = p.contour.sample(&p.coefficient)?;
    let g = p.contour.sample(&p.free_term)?;
    let per_node: Vec<(usize, f64)> =
        values.iter().map(|&(k, plus, minus)| (k, (plus - g_big[k] * minus - g[k]).norm())).collect();
    let (worst_node, sup_residual) =
        per_node.iter().fold((0, 0.0), |acc, &(k, r)| if r > acc.1 { (k, r) } else { acc });
    let diam = s.contour.diameter();
    let infinity_samples: Vec<(f64, f64)> = INFINITY_RADII
        .iter()
        .map(|&m| Ok((m * diam, s.sup_on_circle(m * diam, 64)?)))
        .collect::<Result<_>>()?;
    let infinity_bound = infinity_samples.last().map_or(0.0, |v| v.1);
    Ok(ResidualReport { sup_residual, worst_node, per_node, infinity_bound, infinity_samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Basis;
    use crate::contour::{BuildOptions, ContourSpec};

    fn circle(n: usize) -> Contour {
        Contour::build_with(
            ContourSpec::circle([0.0, 0.0], 1.0),
            Basis::biharmonic(),
            BuildOptions { nodes: n, ..Default::default() },
        )
        .unwrap()
    }

    fn pt(x: f64, y: f64) -> PointE {
        Basis::biharmonic().point(x, y)
    }

    #[test]
    fn jump_examples() {
        let c = circle(256);
        let s = RbvpProblem::parse(&c, "1", "tau").unwrap().solve().unwrap();
        assert_eq!(s.kind, SolutionKind::Jump);
        let z = pt(0.3, 0.2);
        assert!((s.phi_plus(z).unwrap() - z.xi).norm() < 1e-12);
        assert!(s.phi_minus(pt(2.0, 0.0)).unwrap().norm() < 1e-12);

        let k = DualComplex::from_parts(1.0, -1.0, 0.5, 0.0);
        let p = RbvpProblem::parse(&c, "1", "0").unwrap().with_polynomial(vec![k]);
        let s = p.solve_as(SolutionKind::Jump).unwrap();
        assert!((s.evaluate(pt(3.0, 3.0)).unwrap() - k).norm() < 1e-14);

        let p = RbvpProblem::parse(&c, "1", "1/tau").unwrap();
        let s = p.solve().unwrap();
        assert!(s.phi_plus(z).unwrap().norm() < 1e-12);
        let far = pt(1.5, -1.0);
        assert!((s.phi_minus(far).unwrap() + far.xi.inv().unwrap()).norm() < 1e-12);
        assert!(residual_report(&s, &p).unwrap().sup_residual < 1e-8);
    }

    #[test]
    fn homogeneous_examples() {
        let c = circle(256);
        let (alpha, beta) = (DualComplex::from_parts(0.5, 0.1, -0.2, 0.3), DualComplex::from_parts(-1.0, 0.4, 0.0, 0.7));
        let p = RbvpProblem::parse(&c, "tau", "0").unwrap().with_polynomial(vec![alpha, beta]);
        let s = p.solve().unwrap();
        assert_eq!((s.kind, s.kappa), (SolutionKind::Homogeneous, 1));
        let z = pt(0.1, -0.4);
        assert!((s.phi_plus(z).unwrap() - (alpha + beta * z.xi)).norm() < 1e-12);
        let r = residual_report(&s, &p).unwrap();
        assert!(r.sup_residual < 1e-8, "{}", r.sup_residual);
        assert!((r.infinity_bound - beta.norm()).abs() < 1e-2 * beta.norm() + alpha.norm() / 100.0);

        let inv = RbvpProblem::parse(&c, "1/tau", "0").unwrap().solve().unwrap();
        assert!(inv.trivial_only && inv.kappa == -1);
        assert_eq!(inv.evaluate(z).unwrap(), DualComplex::ZERO);

        let too_high = RbvpProblem::parse(&c, "tau", "0").unwrap().with_polynomial(vec![alpha, beta, alpha]);
        assert!(matches!(too_high.solve(), Err(Error::PolynomialDegree { degree: 2, kappa: 1 })));
    }

    #[test]
    fn nonhomogeneous_examples() {
        let c = circle(256);
        let p = RbvpProblem::parse(&c, "tau", "1").unwrap();
        let s = p.solve().unwrap();
        let z = pt(0.2, 0.2);
        assert!((s.phi_plus(z).unwrap() - DualComplex::ONE).norm() < 1e-10);
        assert!(s.phi_minus(pt(2.0, 1.0)).unwrap().norm() < 1e-10);
        assert!(residual_report(&s, &p).unwrap().sup_residual < 1e-8);

        let p = RbvpProblem::parse(&c, "1/tau", "1").unwrap();
        let s = p.solve().unwrap();
        assert!(s.solvability.solvable && s.solvability.moments.len() == 1);
        assert!((s.phi_plus(z).unwrap() - DualComplex::ONE).norm() < 1e-10);
        assert!(s.phi_minus(pt(2.0, 1.0)).unwrap().norm() < 1e-10);

        let p = RbvpProblem::parse(&c, "1/tau", "1/tau").unwrap();
        match p.solve() {
            Err(Error::Unsolvable(r)) => assert!((r.moment_norms()[0] - 2.0 * std::f64::consts::PI).abs() < 1e-8),
            other => panic!("expected unsolvable, got {other:?}"),
        }
    }

    #[test]
    fn perturbed_free_term_shows_in_residual() {
        let c = circle(128);
        let p = RbvpProblem::parse(&c, "tau", "1").unwrap();
        let s = p.solve().unwrap();
        let q = RbvpProblem::parse(&c, "tau", "1.01").unwrap();
        let r = residual_report(&s, &q).unwrap();
        assert!((r.sup_residual - 0.01).abs() < 1e-8);
    }
}
