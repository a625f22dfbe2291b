//! Quadrature rules and trigonometric interpolation shared by the contour and integral modules.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, z);
        dp = if d != 0.0 { d } else { dp };
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// `(P_n(z), P_n'(z))` by the three-term recurrence.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Barycentric weights for Lagrange interpolation on arbitrary distinct nodes.
pub fn barycentric_weights(nodes: &[f64]) -> Vec<f64> {
    nodes
        .iter()
        .enumerate()
        .map(|(j, &xj)| {
            let prod: f64 = nodes.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &xk)| xj - xk).product();
            1.0 / prod
        })
        .collect()
}

/// Evaluates the interpolant through `(nodes, values)` at `x`.
pub fn barycentric_eval<T>(nodes: &[f64], weights: &[f64], values: &[T], x: f64) -> T
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
{
    let mut num = T::default();
    let mut den = 0.0;
    for ((&xj, &wj), &vj) in nodes.iter().zip(weights).zip(values) {
        let d = x - xj;
        if d == 0.0 {
            return vj;
        }
        let c = wj / d;
        num = num + vj * c;
        den += c;
    }
    num * (1.0 / den)
}

/// Fourier coefficients of periodic samples on the uniform grid `t_k = k/n`, normalized so
/// that `f(t) = Σ c_f e^{2πi f t}` over signed frequencies.
#[derive(Clone, Debug)]
pub struct Spectrum {
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn from_samples(samples: &[Complex64]) -> Self {
        let n = samples.len();
        let mut buf = samples.to_vec();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        let scale = 1.0 / n as f64;
        buf.iter_mut().for_each(|c| *c *= scale);
        Spectrum { coeffs: buf }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Signed modes `(f, c_f)`; an even-length Nyquist coefficient is split evenly between `±n/2`.
    fn modes(&self) -> Vec<(i64, Complex64)> {
        let n = self.coeffs.len() as i64;
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        for (k, &c) in self.coeffs.iter().enumerate() {
            let k = k as i64;
            if n % 2 == 0 && k == n / 2 {
                out.push((k, c * 0.5));
                out.push((-k, c * 0.5));
            } else if k <= n / 2 {
                out.push((k, c));
            } else {
                out.push((k - n, c));
            }
        }
        out
    }

    /// Values (`derivative = false`) or `d/dt` values of the interpolant on an `m`-point grid.
    pub fn resample(&self, m: usize, derivative: bool) -> Vec<Complex64> {
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        let half = (m / 2) as i64;
        for (f, c) in self.modes() {
            // modes the target grid cannot represent are dropped
            if f.abs() > half {
                continue;
            }
            let c = if derivative { c * Complex64::new(0.0, 2.0 * PI * f as f64) } else { c };
            let idx = f.rem_euclid(m as i64) as usize;
            buf[idx] += c;
        }
        FftPlanner::new().plan_fft_inverse(m).process(&mut buf);
        buf
    }

    /// Value of the interpolant at an arbitrary parameter.
    pub fn eval(&self, t: f64) -> Complex64 {
        self.modes().into_iter().map(|(f, c)| c * Complex64::from_polar(1.0, 2.0 * PI * f as f64 * t)).sum()
    }
}
