//! Shared test support: an independent scalar-complex solver for the classical Riemann problem
//! on the complex-part trace of a curve, plus small helpers.
//!
//! The oracle shares no numerical code with the library: it parametrizes the curve itself,
//! takes boundary values from the principal-value formula with singularity subtraction
//! (spectral derivative by a naive DFT on the diagonal), and gets the index from the argument
//! principle with a hand-written derivative of the coefficient.

#![allow(dead_code)]

use std::f64::consts::PI;

use dual_rbvp::algebra::{Basis, DualComplex};
use dual_rbvp::contour::ContourSpec;
use num_complex::Complex64 as C;

/// A smooth closed curve `t ↦ (x(t), y(t))`, `t ∈ [0, 1)`, with its derivative.
pub struct Curve {
    pub point: Box<dyn Fn(f64) -> [f64; 2] + Sync>,
    pub deriv: Box<dyn Fn(f64) -> [f64; 2] + Sync>,
}

impl Curve {
    pub fn circle(center: [f64; 2], r: f64) -> Curve {
        Curve::ellipse(center, [r, r], 0.0)
    }

    pub fn ellipse(center: [f64; 2], axes: [f64; 2], rot: f64) -> Curve {
        let (s, c) = rot.sin_cos();
        Curve {
            point: Box::new(move |t| {
                let (u, v) = (axes[0] * (2.0 * PI * t).cos(), axes[1] * (2.0 * PI * t).sin());
                [center[0] + c * u - s * v, center[1] + s * u + c * v]
            }),
            deriv: Box::new(move |t| {
                let w = 2.0 * PI;
                let (u, v) = (-axes[0] * w * (w * t).sin(), axes[1] * w * (w * t).cos());
                [c * u - s * v, s * u + c * v]
            }),
        }
    }
}

/// Coefficient and free term of the classical problem as functions of the complex coordinate,
/// with the derivative of the coefficient.
pub struct ClassicalData {
    pub g_big: Box<dyn Fn(C) -> C + Sync>,
    pub dg_big: Box<dyn Fn(C) -> C + Sync>,
    pub g: Box<dyn Fn(C) -> C + Sync>,
    /// Coefficients of the free polynomial, lowest degree first.
    pub polynomial: Vec<C>,
}

pub struct ClassicalSolution {
    pub kappa: i64,
    pub index_raw: f64,
    pub tau: Vec<C>,
    pub plus: Vec<C>,
    pub minus: Vec<C>,
    pub moments: Vec<C>,
}

fn dft_derivative(f: &[C]) -> Vec<C> {
    let n = f.len();
    let coeffs: Vec<C> = (0..n)
        .map(|m| {
            let mut acc = C::new(0.0, 0.0);
            for (k, v) in f.iter().enumerate() {
                acc += v * C::from_polar(1.0, -2.0 * PI * (m * k) as f64 / n as f64);
            }
            acc / n as f64
        })
        .collect();
    (0..n)
        .map(|k| {
            let mut acc = C::new(0.0, 0.0);
            for (m, c) in coeffs.iter().enumerate() {
                let freq = if m < n / 2 {
                    m as f64
                } else if m == n / 2 {
                    0.0
                } else {
                    m as f64 - n as f64
                };
                acc += c * C::new(0.0, 2.0 * PI * freq) * C::from_polar(1.0, 2.0 * PI * (m * k) as f64 / n as f64);
            }
            acc
        })
        .collect()
}

/// Boundary values `(F⁺, F⁻)` of `(1/2πi)∮ f(τ)/(τ − z) dτ` on the trapezoid nodes:
/// `F⁺ = f + S`, `F⁻ = S` with `S_k = (1/2πi)∮ (f(τ) − f_k)/(τ − τ_k) dτ`.
fn plemelj(tau: &[C], dtau: &[C], f: &[C]) -> (Vec<C>, Vec<C>) {
    let n = tau.len();
    let h = 1.0 / n as f64;
    let df = dft_derivative(f);
    let factor = C::new(0.0, -1.0 / (2.0 * PI));
    let s: Vec<C> = (0..n)
        .map(|k| {
            let mut acc = df[k] * h;
            for j in 0..n {
                if j != k {
                    acc += (f[j] - f[k]) / (tau[j] - tau[k]) * dtau[j] * h;
                }
            }
            acc * factor
        })
        .collect();
    let plus = s.iter().zip(f).map(|(s, f)| s + f).collect();
    (plus, s)
}

/// Solves `Φ⁺ = G Φ⁻ + g` on the trace `τ(t) = x(t)a + y(t)b` of the curve, where `a`, `b` are
/// the complex parts of the basis vectors.
pub fn solve_classical(curve: &Curve, a: C, b: C, n: usize, data: &ClassicalData) -> ClassicalSolution {
    let ts: Vec<f64> = (0..n).map(|k| k as f64 / n as f64).collect();
    let tau: Vec<C> = ts.iter().map(|&t| { let p = (curve.point)(t); a * p[0] + b * p[1] }).collect();
    let dtau: Vec<C> = ts.iter().map(|&t| { let d = (curve.deriv)(t); a * d[0] + b * d[1] }).collect();
    let h = 1.0 / n as f64;

    // argument principle
    let raw: C = tau.iter().zip(&dtau).map(|(t, d)| (data.dg_big)(*t) / (data.g_big)(*t) * d * h).sum::<C>()
        / C::new(0.0, 2.0 * PI);
    let kappa = raw.re.round() as i64;

    // continuous log of τ^{-ϰ}G along the nodes
    let w: Vec<C> = tau.iter().map(|t| t.powi(-kappa as i32) * (data.g_big)(*t)).collect();
    let mut logs = Vec::with_capacity(n);
    let mut arg = w[0].arg();
    for k in 0..n {
        if k > 0 {
            let mut d = w[k].arg() - w[k - 1].arg();
            while d > PI {
                d -= 2.0 * PI;
            }
            while d < -PI {
                d += 2.0 * PI;
            }
            arg += d;
        }
        logs.push(C::new(w[k].norm().ln(), arg));
    }
    let (gp, gm) = plemelj(&tau, &dtau, &logs);
    let xp: Vec<C> = gp.iter().map(|v| v.exp()).collect();
    let xm: Vec<C> = gm.iter().zip(&tau).map(|(v, t)| v.exp() * t.powi(-kappa as i32)).collect();

    let psi: Vec<C> = tau.iter().zip(&xp).map(|(t, x)| (data.g)(*t) / x).collect();
    let moments: Vec<C> = (1..=(-kappa).max(0))
        .map(|s| psi.iter().zip(&tau).zip(&dtau).map(|((p, t), d)| p * t.powi(s as i32 - 1) * d * h).sum())
        .collect();
    let (pp, pm) = plemelj(&tau, &dtau, &psi);
    let poly = |z: C| data.polynomial.iter().rev().fold(C::new(0.0, 0.0), |acc, c| acc * z + c);
    let plus = (0..n).map(|k| xp[k] * (pp[k] + poly(tau[k]))).collect();
    let minus = (0..n).map(|k| xm[k] * (pm[k] + poly(tau[k]))).collect();
    ClassicalSolution { kappa, index_raw: raw.re, tau, plus, minus, moments }
}

/// Classical zero-free data `G(τ) = e^{λτ} τ^m` with its derivative.
pub fn exp_power(lambda: C, m: i32) -> (Box<dyn Fn(C) -> C + Sync>, Box<dyn Fn(C) -> C + Sync>) {
    (
        Box::new(move |z: C| (lambda * z).exp() * z.powi(m)),
        Box::new(move |z: C| (lambda * z).exp() * (lambda * z.powi(m) + z.powi(m - 1) * m as f64)),
    )
}

/// A problem for the library together with its classical counterpart.
pub struct OracleCase {
    pub name: &'static str,
    pub spec: ContourSpec,
    pub curve: Curve,
    pub basis: Basis,
    pub g_big: &'static str,
    pub g: &'static str,
    pub polynomial: Vec<DualComplex>,
    pub data: ClassicalData,
}

pub fn oracle_cases() -> Vec<OracleCase> {
    let skew = Basis::new(DualComplex::from_parts(1.0, 0.2, 0.3, 0.0), DualComplex::from_parts(0.1, 1.0, 0.0, -0.5)).unwrap();
    let (a1, b1) = (DualComplex::from_parts(0.5, 0.1, 0.2, -0.3), DualComplex::from_parts(-0.2, 0.4, 0.0, 1.0));
    let mut cases = Vec::new();
    let (g, dg) = exp_power(C::new(1.0, 0.0), 1);
    cases.push(OracleCase {
        name: "G=τe^τ, g=τ²+2",
        spec: ContourSpec::circle([0.0, 0.0], 1.0),
        curve: Curve::circle([0.0, 0.0], 1.0),
        basis: Basis::biharmonic(),
        g_big: "tau*exp(tau)",
        g: "tau^2 + 2 + rho",
        polynomial: vec![a1, b1],
        data: ClassicalData { g_big: g, dg_big: dg, g: Box::new(|z| z * z + 2.0), polynomial: vec![a1.c1, b1.c1] },
    });
    let (g, dg) = exp_power(C::new(0.5, -0.3), 2);
    cases.push(OracleCase {
        name: "G=e^{λτ}τ², g=0, ellipse",
        spec: ContourSpec::ellipse([0.1, 0.0], [1.3, 0.8], 0.3),
        curve: Curve::ellipse([0.1, 0.0], [1.3, 0.8], 0.3),
        basis: Basis::biharmonic(),
        g_big: "exp((0.5 - 0.3*i)*tau)*tau^2",
        g: "0",
        polynomial: vec![a1, b1, a1 * b1],
        data: ClassicalData { g_big: g, dg_big: dg, g: Box::new(|_| C::new(0.0, 0.0)), polynomial: vec![a1.c1, b1.c1, (a1 * b1).c1] },
    });
    let (g, dg) = exp_power(C::new(0.0, 0.7), -1);
    cases.push(OracleCase {
        name: "G=e^{0.7iτ}/τ, g=1, skew basis",
        spec: ContourSpec::circle([0.2, -0.1], 1.2),
        curve: Curve::circle([0.2, -0.1], 1.2),
        basis: skew,
        g_big: "exp(0.7*i*tau)/tau",
        g: "1",
        polynomial: vec![],
        data: ClassicalData { g_big: g, dg_big: dg, g: Box::new(|_| C::new(1.0, 0.0)), polynomial: vec![] },
    });
    let (g, dg) = exp_power(C::new(0.0, 0.0), 0);
    cases.push(OracleCase {
        name: "G=1 jump, g=e^τ/(τ-3)",
        spec: ContourSpec::ellipse([0.0, 0.0], [1.0, 0.6], -0.2),
        curve: Curve::ellipse([0.0, 0.0], [1.0, 0.6], -0.2),
        basis: Basis::classical(),
        g_big: "1",
        g: "exp(tau)/(tau - 3) + 1/tau",
        polynomial: vec![a1],
        data: ClassicalData {
            g_big: g,
            dg_big: dg,
            g: Box::new(|z| z.exp() / (z - 3.0) + 1.0 / z),
            polynomial: vec![a1.c1],
        },
    });
    cases
}

