//! File-driven front end: problem files in, result and verification reports out.
//!
//! Both file kinds are JSON. Elements of `𝔹` are written as `[Re c1, Im c1, Re c2, Im c2]`.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Basis, DualComplex};
use crate::canonical::{compute_index_with, verify_x_relation, IndexReport};
use crate::contour::{BuildOptions, Contour, ContourSpec, Region, DEFAULT_NODES};
use crate::diagnostics::{dini_estimate, DiniEstimate};
use crate::error::{Error, Result};
use crate::expr::{Env, Expr, Var};
use crate::integral::jump_check_integral;
use crate::rbvp::{residual_from_values, Route, RbvpProblem, RbvpSolution, SolutionKind, SolvabilityReport, Tolerances};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisFile {
    pub e1: [f64; 4],
    pub e2: [f64; 4],
}

impl Default for BasisFile {
    fn default() -> Self {
        let b = Basis::biharmonic();
        BasisFile { e1: b.e1().to_array(), e2: b.e2().to_array() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContourFile {
    #[serde(flatten)]
    pub spec: ContourSpec,
    #[serde(default)]
    pub nodes: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    /// Padding around the bounding box of the curve, as a fraction of its larger side.
    #[serde(default = "default_margin")]
    pub margin: f64,
}

fn default_margin() -> f64 {
    0.25
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "default_true")]
    pub boundary_samples: bool,
    #[serde(default)]
    pub grid: Option<GridSpec>,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec { boundary_samples: true, grid: None }
    }
}

fn one() -> String {
    "1".into()
}

fn zero() -> String {
    "0".into()
}

/// Schema of a problem file. Everything except the contour has a default.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    pub basis: BasisFile,
    pub contour: ContourFile,
    #[serde(rename = "G", default = "one")]
    pub coefficient: String,
    #[serde(rename = "g", default = "zero")]
    pub free_term: String,
    #[serde(default)]
    pub polynomial: Vec<[f64; 4]>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub route: Route,
    #[serde(default)]
    pub output: OutputSpec,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<ProblemFile> {
        read_json(path)
    }

    pub fn basis(&self) -> Result<Basis> {
        Basis::new(DualComplex::from_array(self.basis.e1), DualComplex::from_array(self.basis.e2))
    }

    pub fn contour(&self, nodes: Option<usize>) -> Result<Contour> {
        let n = nodes.or(self.contour.nodes).unwrap_or(DEFAULT_NODES);
        Contour::build_with(self.contour.spec.clone(), self.basis()?, BuildOptions { nodes: n, ..Default::default() })
    }

    pub fn problem(&self, contour: &Contour) -> Result<RbvpProblem> {
        let g_big = boundary_expr(&self.coefficient)?;
        let g = boundary_expr(&self.free_term)?;
        Ok(RbvpProblem::new(contour, g_big, g)
            .with_polynomial(self.polynomial.iter().map(|c| DualComplex::from_array(*c)).collect())
            .with_tolerances(self.tolerances)
            .with_route(self.route))
    }
}

fn boundary_expr(text: &str) -> Result<Expr> {
    let e = Expr::parse(text)?;
    if e.mentions(Var::Z) {
        return Err(Error::InvalidInput(format!("boundary data `{text}` must use `tau` and `t`, not `z`")));
    }
    Ok(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Auto,
    Jump,
    Homogeneous,
    Nonhomogeneous,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Mode::Auto),
            "jump" => Ok(Mode::Jump),
            "homogeneous" => Ok(Mode::Homogeneous),
            "nonhomogeneous" | "non-homogeneous" => Ok(Mode::Nonhomogeneous),
            other => Err(format!("unknown mode `{other}` (auto, jump, homogeneous, nonhomogeneous)")),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    pub mode: Option<Mode>,
    pub nodes: Option<usize>,
    pub tol_residual: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundarySamples {
    pub nodes: Vec<usize>,
    pub t: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub plus: Vec<[f64; 4]>,
    pub minus: Vec<[f64; 4]>,
}

/// Row-major samples over a rectangle; `side` and `values` are `null` inside the guard band.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridSamples {
    pub nx: usize,
    pub ny: usize,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub side: Vec<Option<String>>,
    pub values: Vec<Option<[f64; 4]>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Regularity {
    pub dini_coefficient: f64,
    pub dini_free_term: f64,
}

/// Contents of a result file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolveResult {
    pub kind: SolutionKind,
    pub route: Route,
    pub contour_hash: String,
    /// Node budget the contour was built with; polygons may end up with more nodes.
    pub node_budget: usize,
    pub nodes: usize,
    pub kappa: i64,
    pub index_raw: Option<f64>,
    /// `[Re, Im]` of the principal logarithm at node 0 where the continuous branch starts.
    pub log_branch_start: Option<[f64; 2]>,
    pub solvable: bool,
    pub trivial_only: bool,
    pub moments: Vec<[f64; 4]>,
    pub moment_norms: Vec<f64>,
    pub solvability_tolerance: f64,
    pub polynomial: Vec<[f64; 4]>,
    pub sup_residual: Option<f64>,
    pub residual_tolerance: f64,
    pub infinity_bound: Option<f64>,
    pub infinity_samples: Vec<(f64, f64)>,
    pub boundary: Option<BoundarySamples>,
    pub grid: Option<GridSamples>,
    pub regularity: Option<Regularity>,
    pub warnings: Vec<String>,
    pub error: Option<String>,
}

fn solvability_fields(r: &SolvabilityReport) -> (Vec<[f64; 4]>, Vec<f64>) {
    (r.moments.iter().map(|m| m.to_array()).collect(), r.moment_norms())
}

fn kind_for(mode: Mode, p: &RbvpProblem) -> SolutionKind {
    match mode {
        Mode::Auto if p.is_jump() => SolutionKind::Jump,
        Mode::Auto if p.is_homogeneous() => SolutionKind::Homogeneous,
        Mode::Auto | Mode::Nonhomogeneous => SolutionKind::Nonhomogeneous,
        Mode::Jump => SolutionKind::Jump,
        Mode::Homogeneous => SolutionKind::Homogeneous,
    }
}

fn grid_samples(s: &RbvpSolution, spec: &GridSpec) -> Result<GridSamples> {
    let c = s.contour();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for n in c.nodes() {
        x0 = x0.min(n.x);
        x1 = x1.max(n.x);
        y0 = y0.min(n.y);
        y1 = y1.max(n.y);
    }
    let pad = spec.margin * (x1 - x0).max(y1 - y0);
    let axis = |lo: f64, hi: f64, n: usize| -> Vec<f64> {
        (0..n).map(|i| if n == 1 { 0.5 * (lo + hi) } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect()
    };
    let xs = axis(x0 - pad, x1 + pad, spec.nx);
    let ys = axis(y0 - pad, y1 + pad, spec.ny);
    let points: Vec<(f64, f64)> = ys.iter().flat_map(|&y| xs.iter().map(move |&x| (x, y))).collect();
    let cells: Vec<(Option<String>, Option<[f64; 4]>)> = points
        .par_iter()
        .map(|&(x, y)| {
            let p = c.basis().point(x, y);
            Ok(match c.interior_test(p) {
                Region::NearBoundary => (None, None),
                Region::Interior => (Some("+".to_string()), Some(s.phi_plus(p)?.to_array())),
                Region::Exterior => (Some("-".to_string()), Some(s.phi_minus(p)?.to_array())),
            })
        })
        .collect::<Result<_>>()?;
    let (side, values) = cells.into_iter().unzip();
    Ok(GridSamples { nx: spec.nx, ny: spec.ny, x: xs, y: ys, side, values })
}

/// Solves the problem in a file. `Err` only for failures that leave nothing to report; an
/// unsolvable problem yields `Ok` with `solvable = false` and an error message.
pub fn solve_file(path: &Path, options: &SolveOptions) -> Result<SolveResult> {
    let file = ProblemFile::load(path)?;
    let node_budget = options.nodes.or(file.contour.nodes).unwrap_or(DEFAULT_NODES);
    let contour = file.contour(Some(node_budget))?;
    let mut problem = file.problem(&contour)?;
    if let Some(tol) = options.tol_residual {
        problem.tolerances.residual = tol;
    }
    let kind = kind_for(options.mode.unwrap_or(Mode::Auto), &problem);
    let mut result = SolveResult {
        kind,
        route: problem.route,
        contour_hash: contour.fingerprint(),
        node_budget,
        nodes: contour.len(),
        kappa: 0,
        index_raw: None,
        log_branch_start: None,
        solvable: true,
        trivial_only: false,
        moments: Vec::new(),
        moment_norms: Vec::new(),
        solvability_tolerance: problem.tolerances.residual,
        polynomial: Vec::new(),
        sup_residual: None,
        residual_tolerance: problem.tolerances.residual,
        infinity_bound: None,
        infinity_samples: Vec::new(),
        boundary: None,
        grid: None,
        regularity: None,
        warnings: contour.warnings().to_vec(),
        error: None,
    };
    let solution = match problem.solve_as(kind) {
        Ok(s) => s,
        Err(Error::Unsolvable(report)) => {
            result.kappa = report.kappa;
            result.solvable = false;
            (result.moments, result.moment_norms) = solvability_fields(&report);
            result.error = Some(Error::Unsolvable(report).to_string());
            return Ok(result);
        }
        Err(e) => return Err(e),
    };
    result.kappa = solution.kappa;
    result.index_raw = solution.canonical.as_ref().map(|x| x.index().raw);
    result.log_branch_start = solution.canonical.as_ref().map(|x| [x.branch().start.re, x.branch().start.im]);
    result.trivial_only = solution.trivial_only;
    (result.moments, result.moment_norms) = solvability_fields(&solution.solvability);
    result.polynomial = solution.polynomial.iter().map(|c| c.to_array()).collect();

    let values = solution.boundary_values()?;
    let report = residual_from_values(&solution, &problem, &values)?;
    result.sup_residual = Some(report.sup_residual);
    result.infinity_bound = Some(report.infinity_bound);
    result.infinity_samples = report.infinity_samples;
    if file.output.boundary_samples {
        let nodes: Vec<usize> = values.iter().map(|v| v.0).collect();
        result.boundary = Some(BoundarySamples {
            t: nodes.iter().map(|&k| contour.node(k).t).collect(),
            x: nodes.iter().map(|&k| contour.node(k).x).collect(),
            y: nodes.iter().map(|&k| contour.node(k).y).collect(),
            plus: values.iter().map(|v| v.1.to_array()).collect(),
            minus: values.iter().map(|v| v.2.to_array()).collect(),
            nodes,
        });
    }
    if let Some(spec) = &file.output.grid {
        result.grid = Some(grid_samples(&solution, spec)?);
    }
    let dini_coefficient = dini_estimate(&contour, &problem.coefficient)?.value;
    let dini_free_term = dini_estimate(&contour, &problem.free_term)?.value;
    result.regularity = Some(Regularity { dini_coefficient, dini_free_term });
    if report.sup_residual > problem.tolerances.residual {
        result.warnings.push(format!(
            "boundary residual {:.3e} exceeds the tolerance {:.1e}",
            report.sup_residual, problem.tolerances.residual
        ));
    }
    Ok(result)
}

fn write_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn report_error(e: &Error) -> i32 {
    eprintln!("error: {e}");
    e.exit_code()
}

/// `solve`: exit 0 on success, 2 when unsolvable (the result is still written), 3 for invalid
/// input, 4 for numerical failure.
pub fn run_solve(path: &Path, options: &SolveOptions, out: Option<&Path>) -> i32 {
    match solve_file(path, options).and_then(|r| write_json(&r, out).map(|_| r)) {
        Ok(r) if !r.solvable => {
            eprintln!("error: {}", r.error.as_deref().unwrap_or("problem is not solvable"));
            2
        }
        Ok(_) => 0,
        Err(e) => report_error(&e),
    }
}

/// Contents of a verification report.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub contour_hash: String,
    /// `sup ‖Φ⁺ − GΦ⁻ − g‖` over the boundary samples stored in the solution file.
    pub sup_residual: f64,
    pub worst_node: usize,
    pub tolerance: f64,
    pub passed: bool,
    /// Largest difference between the stored boundary samples and a fresh solve.
    pub sample_deviation: f64,
    /// Jump residual `‖ψ̃⁺ − ψ̃⁻ − ψ‖` of the density of the fresh solve.
    pub jump_residual: Option<f64>,
    /// `sup ‖X⁺ − GX⁻‖` of the canonical function of the fresh solve.
    pub canonical_residual: Option<f64>,
    pub index: Option<IndexReport>,
    pub dini_coefficient: DiniEstimate,
    pub dini_free_term: DiniEstimate,
}

/// Checks a solution file against its problem; `Ok(report)` even when the residual fails.
pub fn verify_files(problem_path: &Path, solution_path: &Path, tol_residual: Option<f64>) -> Result<VerifyReport> {
    let file = ProblemFile::load(problem_path)?;
    let stored: SolveResult = read_json(solution_path)?;
    let contour = file.contour(Some(stored.node_budget))?;
    let hash = contour.fingerprint();
    if hash != stored.contour_hash {
        return Err(Error::ContourMismatch { expected: hash, found: stored.contour_hash });
    }
    if !stored.solvable {
        return Err(Error::InvalidInput("the solution file records an unsolvable problem".into()));
    }
    let boundary = stored
        .boundary
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("the solution file has no boundary samples".into()))?;
    let mut problem = file.problem(&contour)?;
    problem.polynomial = stored.polynomial.iter().map(|c| DualComplex::from_array(*c)).collect();
    let tolerance = tol_residual.unwrap_or(problem.tolerances.residual);

    let g_big = contour.sample(&problem.coefficient)?;
    let g = contour.sample(&problem.free_term)?;
    let mut sup_residual = 0.0;
    let mut worst_node = 0;
    for ((&k, plus), minus) in boundary.nodes.iter().zip(&boundary.plus).zip(&boundary.minus) {
        if k >= contour.len() {
            return Err(Error::InvalidInput(format!("node index {k} out of range")));
        }
        let r = (DualComplex::from_array(*plus) - g_big[k] * DualComplex::from_array(*minus) - g[k]).norm();
        if r > sup_residual {
            sup_residual = r;
            worst_node = k;
        }
    }

    let fresh = problem.solve_as(stored.kind)?;
    let values = fresh.boundary_values()?;
    let mut sample_deviation: f64 = 0.0;
    for (k, plus, minus) in &values {
        if let Some(i) = boundary.nodes.iter().position(|n| n == k) {
            sample_deviation = sample_deviation
                .max((*plus - DualComplex::from_array(boundary.plus[i])).norm())
                .max((*minus - DualComplex::from_array(boundary.minus[i])).norm());
        }
    }
    let jump_residual = match &fresh.cauchy {
        Some(f) => Some(jump_check_integral(f)?.sup_residual),
        None => None,
    };
    let canonical_residual = match &fresh.canonical {
        Some(x) => Some(verify_x_relation(x, &problem.coefficient)?),
        None => None,
    };
    let index = match fresh.canonical {
        Some(_) => Some(compute_index_with(&contour, &problem.coefficient, problem.tolerances.index_integrality)?),
        None => None,
    };
    Ok(VerifyReport {
        contour_hash: hash,
        sup_residual,
        worst_node,
        tolerance,
        passed: sup_residual <= tolerance,
        sample_deviation,
        jump_residual,
        canonical_residual,
        index,
        dini_coefficient: dini_estimate(&contour, &problem.coefficient)?,
        dini_free_term: dini_estimate(&contour, &problem.free_term)?,
    })
}

/// `verify`: exit 0 iff the stored samples meet the residual tolerance, 1 if they do not,
/// 3 on mismatched or invalid files.
pub fn run_verify(problem: &Path, solution: &Path, tol_residual: Option<f64>, out: Option<&Path>) -> i32 {
    match verify_files(problem, solution, tol_residual).and_then(|r| write_json(&r, out).map(|_| r)) {
        Ok(r) if r.passed => 0,
        Ok(r) => {
            eprintln!("residual {:.3e} exceeds tolerance {:.1e}", r.sup_residual, r.tolerance);
            1
        }
        Err(e) => report_error(&e),
    }
}

/// `index`: prints `ϰ` and the raw winding as JSON.
pub fn run_index(path: &Path, nodes: Option<usize>) -> i32 {
    let run = || -> Result<IndexReport> {
        let file = ProblemFile::load(path)?;
        let contour = file.contour(nodes)?;
        compute_index_with(&contour, &boundary_expr(&file.coefficient)?, file.tolerances.index_integrality)
    };
    match run().and_then(|r| write_json(&r, None)) {
        Ok(()) => 0,
        Err(e) => report_error(&e),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EvalOutput {
    pub expression: String,
    pub point: [f64; 2],
    pub value: [f64; 4],
    pub display: String,
}

/// Evaluates an expression at the point `x·e1 + y·e2`; `z` and `tau` both bind to it.
pub fn eval_expression(text: &str, x: f64, y: f64, t: f64, basis: &Basis) -> Result<EvalOutput> {
    let e = Expr::parse(text)?;
    let p = basis.point(x, y);
    let value = e.eval(&Env { z: Some(p.xi), tau: Some(p.xi), t: Some(t) })?;
    Ok(EvalOutput { expression: e.to_string(), point: [x, y], value: value.to_array(), display: value.to_string() })
}

pub fn run_eval(text: &str, x: f64, y: f64, t: f64, basis: &Basis) -> i32 {
    match eval_expression(text, x, y, t, basis).and_then(|r| write_json(&r, None)) {
        Ok(()) => 0,
        Err(e) => report_error(&e),
    }
}
