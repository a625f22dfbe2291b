//! Closed Jordan curves in `E`, sampled for quadrature.
//!
//! Curves are stored in `(x, y)` coordinates; the algebra form `ξ1 + ξ2ρ` of each node and of
//! each quadrature increment `dτ` is computed once through the basis. Smooth curves (circles,
//! ellipses, explicit periodic node lists) use the trapezoid rule in a uniform parameter.
//! Polygons use 8-point Gauss–Legendre panels along each edge; their vertices are kept as
//! zero-weight corner nodes so the node polyline traces the polygon exactly.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Basis, DualComplex, PointE};
use crate::error::{Error, Result};
use crate::expr::{Env, Expr};
use crate::numerics::{barycentric_eval, barycentric_weights, gauss_legendre, Spectrum};

pub const DEFAULT_NODES: usize = 512;
pub const PANEL_ORDER: usize = 8;

/// Geometric description of a curve, in `(x, y)` coordinates of `E`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ContourSpec {
    Circle {
        center: [f64; 2],
        radius: f64,
        #[serde(default)]
        clockwise: bool,
    },
    Ellipse {
        center: [f64; 2],
        semi_axes: [f64; 2],
        #[serde(default)]
        rotation: f64,
        #[serde(default)]
        clockwise: bool,
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    /// Samples of a smooth closed curve at uniform parameter values.
    Nodes {
        points: Vec<[f64; 2]>,
    },
}

impl ContourSpec {
    pub fn circle(center: [f64; 2], radius: f64) -> Self {
        ContourSpec::Circle { center, radius, clockwise: false }
    }

    pub fn ellipse(center: [f64; 2], semi_axes: [f64; 2], rotation: f64) -> Self {
        ContourSpec::Ellipse { center, semi_axes, rotation, clockwise: false }
    }

    pub fn polygon(vertices: Vec<[f64; 2]>) -> Self {
        ContourSpec::Polygon { vertices }
    }

    fn reversed(&self) -> Self {
        match self.clone() {
            ContourSpec::Circle { center, radius, clockwise } => ContourSpec::Circle { center, radius, clockwise: !clockwise },
            ContourSpec::Ellipse { center, semi_axes, rotation, clockwise } => {
                ContourSpec::Ellipse { center, semi_axes, rotation, clockwise: !clockwise }
            }
            ContourSpec::Polygon { mut vertices } => {
                vertices.reverse();
                ContourSpec::Polygon { vertices }
            }
            ContourSpec::Nodes { points } => {
                let mut rev = vec![points[0]];
                rev.extend(points[1..].iter().rev());
                ContourSpec::Nodes { points: rev }
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Node count for smooth curves and the total budget for polygons. Ignored for explicit
    /// node lists unless they are resampled with [`Contour::with_nodes`].
    pub nodes: usize,
    /// Run the O(N²) simplicity check.
    pub check_simple: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { nodes: DEFAULT_NODES, check_simple: true }
    }
}

/// One sample of the curve.
#[derive(Clone, Copy, Debug)]
pub struct Node {
    pub x: f64,
    pub y: f64,
    /// Quadrature increment `dτ` in coordinates: weight times tangent.
    pub dx: f64,
    pub dy: f64,
    /// Curve parameter in `[0, 1)`.
    pub t: f64,
    /// Polygon vertex (zero quadrature weight, no one-sided limits).
    pub corner: bool,
    /// `τ` as an element of the algebra.
    pub xi: DualComplex,
    /// `dτ` as an element of the algebra.
    pub dxi: DualComplex,
}

#[derive(Clone, Debug)]
struct Panel {
    a: [f64; 2],
    b: [f64; 2],
    first: usize,
}

#[derive(Clone, Debug)]
enum Layout {
    Periodic { spectrum: Spectrum },
    Panels { panels: Vec<Panel> },
}

#[derive(Debug)]
struct Inner {
    spec: ContourSpec,
    basis: Basis,
    options: BuildOptions,
    nodes: Vec<Node>,
    layout: Layout,
    length: f64,
    max_spacing: f64,
    xy_orientation: f64,
    warnings: Vec<String>,
}

/// A positively oriented, sampled closed curve. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Contour {
    inner: Arc<Inner>,
}

/// Location of a point relative to the curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    Interior,
    Exterior,
    NearBoundary,
}

/// Quadrature data on a refined copy of the curve.
#[derive(Clone, Debug)]
pub struct Refined {
    pub xi: Vec<DualComplex>,
    pub dxi: Vec<DualComplex>,
    pub max_spacing: f64,
}

impl Contour {
    pub fn build(spec: ContourSpec, basis: Basis) -> Result<Contour> {
        Contour::build_with(spec, basis, BuildOptions::default())
    }

    /// Builds the curve and normalizes its orientation so the interior lies on the left of the
    /// `ξ1`-trace (for bases with positive determinant this is the `(x, y)` orientation).
    pub fn build_with(spec: ContourSpec, basis: Basis, options: BuildOptions) -> Result<Contour> {
        validate(&spec, &options)?;
        let mut inner = discretize(&spec, basis, options)?;
        if inner.xy_orientation * basis.determinant().signum() < 0.0 {
            let reversed = spec.reversed();
            inner = discretize(&reversed, basis, options)?;
            inner.warnings.push("contour was negatively oriented; reversed to positive orientation".into());
        }
        if options.check_simple {
            check_simple(&inner)?;
        }
        Ok(Contour { inner: Arc::new(inner) })
    }

    /// The same curve sampled with a different node budget.
    pub fn with_nodes(&self, n: usize) -> Result<Contour> {
        let options = BuildOptions { nodes: n, ..self.inner.options };
        let spec = match (&self.inner.spec, &self.inner.layout) {
            (ContourSpec::Nodes { .. }, Layout::Periodic { spectrum }) => {
                let pts = spectrum.resample(n, false);
                ContourSpec::Nodes { points: pts.iter().map(|p| [p.re, p.im]).collect() }
            }
            (spec, _) => spec.clone(),
        };
        Contour::build_with(spec, self.inner.basis, options)
    }

    pub fn spec(&self) -> &ContourSpec {
        &self.inner.spec
    }

    pub fn basis(&self) -> &Basis {
        &self.inner.basis
    }

    pub fn nodes(&self) -> &[Node] {
        &self.inner.nodes
    }

    pub fn node(&self, k: usize) -> &Node {
        &self.inner.nodes[k]
    }

    pub fn len(&self) -> usize {
        self.inner.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.nodes.is_empty()
    }

    pub fn warnings(&self) -> &[String] {
        &self.inner.warnings
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.inner.layout, Layout::Periodic { .. })
    }

    /// Arc length, by quadrature of the speed.
    pub fn length(&self) -> f64 {
        self.inner.length
    }

    /// Length of the polyline through the nodes.
    pub fn polyline_length(&self) -> f64 {
        self.segments().map(|(p, q)| dist(p, q)).sum()
    }

    pub fn max_spacing(&self) -> f64 {
        self.inner.max_spacing
    }

    /// Width of the band around the curve inside which the Cauchy kernel is not evaluated.
    pub fn guard_band(&self) -> f64 {
        3.0 * self.inner.max_spacing
    }

    /// `+1` when the interior is to the left of the `(x, y)` trace, `-1` otherwise.
    pub fn xy_orientation(&self) -> f64 {
        self.inner.xy_orientation.signum()
    }

    pub fn diameter(&self) -> f64 {
        let pts: Vec<[f64; 2]> = self.inner.nodes.iter().map(|n| [n.x, n.y]).collect();
        let n = pts.len();
        let mut best: f64 = 0.0;
        let stride = (n / 256).max(1);
        for i in (0..n).step_by(stride) {
            for j in (i + 1..n).step_by(stride) {
                best = best.max(dist(pts[i], pts[j]));
            }
        }
        best
    }

    /// Polyline segments `(node k, node k+1)`, closing back to node 0.
    pub fn segments(&self) -> impl Iterator<Item = ([f64; 2], [f64; 2])> + '_ {
        let n = self.inner.nodes.len();
        (0..n).map(move |k| {
            let a = &self.inner.nodes[k];
            let b = &self.inner.nodes[(k + 1) % n];
            ([a.x, a.y], [b.x, b.y])
        })
    }

    pub fn distance_to(&self, p: PointE) -> f64 {
        let c = [p.x, p.y];
        self.segments().map(|(a, b)| segment_distance(c, a, b)).fold(f64::INFINITY, f64::min)
    }

    /// Winding number of the node polyline around a point, in the curve's orientation.
    pub fn winding(&self, p: PointE) -> i64 {
        let (px, py) = (p.x, p.y);
        let mut w = 0i64;
        for (a, b) in self.segments() {
            let is_left = (b[0] - a[0]) * (py - a[1]) - (px - a[0]) * (b[1] - a[1]);
            if a[1] <= py {
                if b[1] > py && is_left > 0.0 {
                    w += 1;
                }
            } else if b[1] <= py && is_left < 0.0 {
                w -= 1;
            }
        }
        w * self.xy_orientation() as i64
    }

    pub fn interior_test(&self, p: PointE) -> Region {
        if self.distance_to(p) < self.guard_band() {
            Region::NearBoundary
        } else if self.winding(p) != 0 {
            Region::Interior
        } else {
            Region::Exterior
        }
    }

    /// `θ_τ(ε)`: length of the part of the curve within distance `ε` of node `k`.
    pub fn theta_measure(&self, k: usize, eps: f64) -> f64 {
        let node = &self.inner.nodes[k];
        let c = [node.x, node.y];
        self.segments().map(|(a, b)| segment_length_in_disk(c, eps, a, b)).sum()
    }

    /// Unit normal at node `k` pointing into the interior, in `(x, y)` coordinates.
    pub fn inward_normal(&self, k: usize) -> Result<[f64; 2]> {
        let node = &self.inner.nodes[k];
        if node.corner {
            return Err(Error::CornerNode(k));
        }
        let len = node.dx.hypot(node.dy);
        let s = self.xy_orientation();
        Ok([-s * node.dy / len, s * node.dx / len])
    }

    /// Point and parameter a fraction `frac ∈ [0, 1]` of the way from node `k` to node `k+1`.
    pub fn interpolate(&self, k: usize, frac: f64) -> (PointE, f64) {
        let n = self.len();
        let a = &self.inner.nodes[k];
        let b = &self.inner.nodes[(k + 1) % n];
        let t_b = if (k + 1) % n == 0 { 1.0 } else { b.t };
        let t = a.t + frac * (t_b - a.t);
        let p = match &self.inner.layout {
            Layout::Periodic { spectrum } => {
                let z = spectrum.eval(t);
                self.inner.basis.point(z.re, z.im)
            }
            Layout::Panels { .. } => {
                self.inner.basis.point(a.x + frac * (b.x - a.x), a.y + frac * (b.y - a.y))
            }
        };
        (p, t)
    }

    /// Evaluates boundary data (`tau`, `t`) at every node.
    pub fn sample(&self, expr: &Expr) -> Result<Vec<DualComplex>> {
        self.inner.nodes.iter().map(|n| expr.eval(&Env::boundary(n.xi, n.t))).collect()
    }

    /// Evaluates a field expression (`z`) at every node: the trace of the function on the curve.
    pub fn sample_field(&self, expr: &Expr) -> Result<Vec<DualComplex>> {
        self.inner.nodes.iter().map(|n| expr.eval_at(n.xi)).collect()
    }

    /// Samples an arbitrary function of the node.
    pub fn sample_with<F>(&self, f: F) -> Vec<DualComplex>
    where
        F: Fn(&Node) -> DualComplex,
    {
        self.inner.nodes.iter().map(f).collect()
    }

    /// Upsamples the curve and a node-aligned density by `factor`.
    ///
    /// Smooth curves are interpolated trigonometrically, polygon panels by Lagrange
    /// interpolation on their Gauss nodes.
    pub fn refine(&self, factor: usize, density: &[DualComplex]) -> (Refined, Vec<DualComplex>) {
        assert_eq!(density.len(), self.len(), "density must be node-aligned");
        let basis = self.inner.basis;
        match &self.inner.layout {
            Layout::Periodic { spectrum } => {
                let m = self.len() * factor;
                let pos = spectrum.resample(m, false);
                let vel = spectrum.resample(m, true);
                let xi = pos.iter().map(|p| basis.combine(p.re, p.im)).collect();
                let dxi = vel.iter().map(|v| basis.combine(v.re / m as f64, v.im / m as f64)).collect();
                let c1: Vec<Complex64> = density.iter().map(|d| d.c1).collect();
                let c2: Vec<Complex64> = density.iter().map(|d| d.c2).collect();
                let r1 = Spectrum::from_samples(&c1).resample(m, false);
                let r2 = Spectrum::from_samples(&c2).resample(m, false);
                let psi = r1.into_iter().zip(r2).map(|(a, b)| DualComplex::new(a, b)).collect();
                (Refined { xi, dxi, max_spacing: self.max_spacing() / factor as f64 }, psi)
            }
            Layout::Panels { panels } => {
                let (gx, gw) = gauss_legendre(PANEL_ORDER);
                let bw = barycentric_weights(&gx);
                let mut xi = Vec::new();
                let mut dxi = Vec::new();
                let mut psi = Vec::new();
                for panel in panels {
                    let vals = &density[panel.first..panel.first + PANEL_ORDER];
                    for sub in 0..factor {
                        let lo = -1.0 + 2.0 * sub as f64 / factor as f64;
                        let hi = -1.0 + 2.0 * (sub + 1) as f64 / factor as f64;
                        for (&u, &w) in gx.iter().zip(&gw) {
                            let s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * u;
                            let f = 0.5 * (s + 1.0);
                            let x = panel.a[0] + f * (panel.b[0] - panel.a[0]);
                            let y = panel.a[1] + f * (panel.b[1] - panel.a[1]);
                            let scale = 0.5 * w * 0.5 * (hi - lo);
                            xi.push(basis.combine(x, y));
                            dxi.push(basis.combine(scale * (panel.b[0] - panel.a[0]), scale * (panel.b[1] - panel.a[1])));
                            psi.push(barycentric_eval(&gx, &bw, vals, s));
                        }
                    }
                }
                (Refined { xi, dxi, max_spacing: self.max_spacing() / factor as f64 }, psi)
            }
        }
    }

    /// Stable hash of the sampled geometry and basis, hex encoded.
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        let b = self.inner.basis;
        for v in b.e1().to_array().into_iter().chain(b.e2().to_array()) {
            h.update(v.to_le_bytes());
        }
        for n in &self.inner.nodes {
            for v in [n.x, n.y, n.dx, n.dy] {
                h.update(v.to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }
}

fn validate(spec: &ContourSpec, options: &BuildOptions) -> Result<()> {
    let finite = |p: &[f64; 2]| p[0].is_finite() && p[1].is_finite();
    match spec {
        ContourSpec::Circle { center, radius, .. } => {
            if !(*radius > 0.0) || !radius.is_finite() || !finite(center) {
                return Err(Error::InvalidContour(format!("circle radius must be positive, got {radius}")));
            }
        }
        ContourSpec::Ellipse { center, semi_axes, rotation, .. } => {
            if !(semi_axes[0] > 0.0 && semi_axes[1] > 0.0) || !finite(center) || !finite(semi_axes) || !rotation.is_finite() {
                return Err(Error::InvalidContour("ellipse semi-axes must be positive".into()));
            }
        }
        ContourSpec::Polygon { vertices } => {
            if vertices.is_empty() {
                return Err(Error::EmptySpec("polygon has no vertices".into()));
            }
            if vertices.len() < 3 {
                return Err(Error::InvalidContour(format!("polygon needs at least 3 vertices, got {}", vertices.len())));
            }
            if !vertices.iter().all(finite) {
                return Err(Error::InvalidContour("non-finite polygon vertex".into()));
            }
        }
        ContourSpec::Nodes { points } => {
            if points.is_empty() {
                return Err(Error::EmptySpec("node list is empty".into()));
            }
            if points.len() < 8 {
                return Err(Error::InvalidContour(format!("need at least 8 nodes, got {}", points.len())));
            }
            if !points.iter().all(finite) {
                return Err(Error::InvalidContour("non-finite node".into()));
            }
        }
    }
    if options.nodes < 8 {
        return Err(Error::InvalidContour(format!("need at least 8 nodes, got {}", options.nodes)));
    }
    Ok(())
}

fn discretize(spec: &ContourSpec, basis: Basis, options: BuildOptions) -> Result<Inner> {
    let n = options.nodes;
    let (nodes, layout) = match spec {
        ContourSpec::Circle { center, radius, clockwise } => {
            let s = if *clockwise { -1.0 } else { 1.0 };
            periodic(basis, n, |t| {
                let th = 2.0 * PI * t * s;
                let (sn, cs) = th.sin_cos();
                (
                    [center[0] + radius * cs, center[1] + radius * sn],
                    [-2.0 * PI * s * radius * sn, 2.0 * PI * s * radius * cs],
                )
            })
        }
        ContourSpec::Ellipse { center, semi_axes, rotation, clockwise } => {
            let s = if *clockwise { -1.0 } else { 1.0 };
            let (rs, rc) = rotation.sin_cos();
            periodic(basis, n, |t| {
                let th = 2.0 * PI * t * s;
                let (sn, cs) = th.sin_cos();
                let (u, v) = (semi_axes[0] * cs, semi_axes[1] * sn);
                let (du, dv) = (-2.0 * PI * s * semi_axes[0] * sn, 2.0 * PI * s * semi_axes[1] * cs);
                ([center[0] + rc * u - rs * v, center[1] + rs * u + rc * v], [rc * du - rs * dv, rs * du + rc * dv])
            })
        }
        ContourSpec::Nodes { points } => {
            let samples: Vec<Complex64> = points.iter().map(|p| Complex64::new(p[0], p[1])).collect();
            let spectrum = Spectrum::from_samples(&samples);
            let m = points.len();
            let vel = spectrum.resample(m, true);
            let nodes = points
                .iter()
                .zip(&vel)
                .enumerate()
                .map(|(k, (p, v))| make_node(basis, *p, [v.re / m as f64, v.im / m as f64], k as f64 / m as f64, false))
                .collect();
            (nodes, Layout::Periodic { spectrum })
        }
        ContourSpec::Polygon { vertices } => polygon(basis, vertices, n)?,
    };
    let area = signed_area(&nodes);
    let length = nodes.iter().map(|n| n.dx.hypot(n.dy)).sum();
    let count = nodes.len();
    let max_spacing = (0..count)
        .map(|k| {
            let (a, b) = (&nodes[k], &nodes[(k + 1) % count]);
            (b.x - a.x).hypot(b.y - a.y)
        })
        .fold(0.0, f64::max);
    if !(area.abs() > 0.0) {
        return Err(Error::InvalidContour("curve encloses no area".into()));
    }
    Ok(Inner {
        spec: spec.clone(),
        basis,
        options,
        nodes,
        layout,
        length,
        max_spacing,
        xy_orientation: area,
        warnings: Vec::new(),
    })
}

fn make_node(basis: Basis, p: [f64; 2], d: [f64; 2], t: f64, corner: bool) -> Node {
    Node {
        x: p[0],
        y: p[1],
        dx: d[0],
        dy: d[1],
        t,
        corner,
        xi: basis.combine(p[0], p[1]),
        dxi: basis.combine(d[0], d[1]),
    }
}

fn periodic<F>(basis: Basis, n: usize, f: F) -> (Vec<Node>, Layout)
where
    F: Fn(f64) -> ([f64; 2], [f64; 2]),
{
    let mut nodes = Vec::with_capacity(n);
    let mut samples = Vec::with_capacity(n);
    for k in 0..n {
        let t = k as f64 / n as f64;
        let (p, d) = f(t);
        nodes.push(make_node(basis, p, [d[0] / n as f64, d[1] / n as f64], t, false));
        samples.push(Complex64::new(p[0], p[1]));
    }
    (nodes, Layout::Periodic { spectrum: Spectrum::from_samples(&samples) })
}

fn polygon(basis: Basis, vertices: &[[f64; 2]], budget: usize) -> Result<(Vec<Node>, Layout)> {
    let m = vertices.len();
    let edges: Vec<f64> = (0..m).map(|i| dist(vertices[i], vertices[(i + 1) % m])).collect();
    if let Some(i) = edges.iter().position(|&l| !(l > 0.0)) {
        return Err(Error::InvalidContour(format!("polygon edge {i} has zero length")));
    }
    let total: f64 = edges.iter().sum();
    let h = total / budget as f64;
    let (gx, gw) = gauss_legendre(PANEL_ORDER);
    let mut nodes = Vec::new();
    let mut panels = Vec::new();
    let mut s = 0.0;
    for i in 0..m {
        let (a, b) = (vertices[i], vertices[(i + 1) % m]);
        nodes.push(make_node(basis, a, [0.0, 0.0], s / total, true));
        let count = (edges[i] / (PANEL_ORDER as f64 * h)).ceil().max(1.0) as usize;
        for p in 0..count {
            let f0 = p as f64 / count as f64;
            let f1 = (p + 1) as f64 / count as f64;
            let pa = [a[0] + f0 * (b[0] - a[0]), a[1] + f0 * (b[1] - a[1])];
            let pb = [a[0] + f1 * (b[0] - a[0]), a[1] + f1 * (b[1] - a[1])];
            let t0 = (s + f0 * edges[i]) / total;
            let t1 = (s + f1 * edges[i]) / total;
            panels.push(Panel { a: pa, b: pb, first: nodes.len() });
            for (&u, &w) in gx.iter().zip(&gw) {
                let f = 0.5 * (u + 1.0);
                let x = [pa[0] + f * (pb[0] - pa[0]), pa[1] + f * (pb[1] - pa[1])];
                let d = [0.5 * w * (pb[0] - pa[0]), 0.5 * w * (pb[1] - pa[1])];
                nodes.push(make_node(basis, x, d, t0 + f * (t1 - t0), false));
            }
        }
        s += edges[i];
    }
    Ok((nodes, Layout::Panels { panels }))
}

fn signed_area(nodes: &[Node]) -> f64 {
    let n = nodes.len();
    0.5 * (0..n)
        .map(|k| {
            let (a, b) = (&nodes[k], &nodes[(k + 1) % n]);
            a.x * b.y - b.x * a.y
        })
        .sum::<f64>()
}

fn check_simple(inner: &Inner) -> Result<()> {
    let pts: Vec<[f64; 2]> = match (&inner.spec, &inner.layout) {
        (ContourSpec::Polygon { .. }, Layout::Panels { .. }) => {
            inner.nodes.iter().filter(|n| n.corner).map(|n| [n.x, n.y]).collect()
        }
        _ => inner.nodes.iter().map(|n| [n.x, n.y]).collect(),
    };
    let n = pts.len();
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            if segments_intersect(a, b, c, d) {
                return Err(Error::SelfIntersecting(i, j));
            }
        }
    }
    Ok(())
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn segments_intersect(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |p: [f64; 2], q: [f64; 2], r: [f64; 2]| {
        r[0] >= p[0].min(q[0]) && r[0] <= p[0].max(q[0]) && r[1] >= p[1].min(q[1]) && r[1] <= p[1].max(q[1])
    };
    (d1 == 0.0 && on(c, d, a)) || (d2 == 0.0 && on(c, d, b)) || (d3 == 0.0 && on(a, b, c)) || (d4 == 0.0 && on(a, b, d))
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let s = if len2 > 0.0 { (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0) } else { 0.0 };
    dist(p, [a[0] + s * d[0], a[1] + s * d[1]])
}

/// Length of the part of segment `ab` inside the closed disk of radius `r` about `c`.
fn segment_length_in_disk(c: [f64; 2], r: f64, a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let f = [a[0] - c[0], a[1] - c[1]];
    let qa = d[0] * d[0] + d[1] * d[1];
    if qa == 0.0 {
        return 0.0;
    }
    let qb = 2.0 * (f[0] * d[0] + f[1] * d[1]);
    let qc = f[0] * f[0] + f[1] * f[1] - r * r;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc <= 0.0 {
        return 0.0;
    }
    let sq = disc.sqrt();
    let s0 = ((-qb - sq) / (2.0 * qa)).max(0.0);
    let s1 = ((-qb + sq) / (2.0 * qa)).min(1.0);
    if s1 > s0 {
        (s1 - s0) * qa.sqrt()
    } else {
        0.0
    }
}
