//! Arithmetic in the algebra of dual complex numbers `c = c1 + c2·ρ`, `ρ² = 0`,
//! and the real two-dimensional subspace `E` spanned by a basis `{e1, e2}`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use crate::error::{Error, Result};

/// Relative threshold on `|c1|` below which an element is treated as a zero divisor.
pub const INVERTIBILITY_THRESHOLD: f64 = 1e-12;

/// Relative threshold on the basis determinant.
pub const BASIS_DET_THRESHOLD: f64 = 1e-10;

/// An element `c1 + c2·ρ` of the algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DualComplex {
    pub c1: Complex64,
    pub c2: Complex64,
}

impl DualComplex {
    pub const ZERO: DualComplex = DualComplex::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    pub const ONE: DualComplex = DualComplex::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    pub const RHO: DualComplex = DualComplex::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    pub const I: DualComplex = DualComplex::new(Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0));

    pub const fn new(c1: Complex64, c2: Complex64) -> Self {
        DualComplex { c1, c2 }
    }

    pub fn from_parts(re1: f64, im1: f64, re2: f64, im2: f64) -> Self {
        DualComplex::new(Complex64::new(re1, im1), Complex64::new(re2, im2))
    }

    /// Embeds a complex number as `c + 0·ρ`.
    pub fn scalar(c: Complex64) -> Self {
        DualComplex::new(c, Complex64::new(0.0, 0.0))
    }

    pub fn real(x: f64) -> Self {
        DualComplex::scalar(Complex64::new(x, 0.0))
    }

    /// `[Re c1, Im c1, Re c2, Im c2]`, the interchange layout used in problem and result files.
    pub fn to_array(self) -> [f64; 4] {
        [self.c1.re, self.c1.im, self.c2.re, self.c2.im]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        DualComplex::from_parts(a[0], a[1], a[2], a[3])
    }

    pub fn is_finite(&self) -> bool {
        self.c1.is_finite() && self.c2.is_finite()
    }

    /// `‖c‖ = sqrt(|c1|² + |c2|²)`.
    pub fn norm(&self) -> f64 {
        self.c1.norm().hypot(self.c2.norm())
    }

    pub fn scale(self, k: f64) -> Self {
        DualComplex::new(self.c1 * k, self.c2 * k)
    }

    pub fn scale_complex(self, k: Complex64) -> Self {
        DualComplex::new(self.c1 * k, self.c2 * k)
    }

    pub fn is_invertible(&self) -> bool {
        self.c1.norm() > INVERTIBILITY_THRESHOLD * self.norm().max(1.0)
    }

    fn check_invertible(&self) -> Result<()> {
        if self.is_invertible() {
            Ok(())
        } else {
            Err(Error::NotInvertible { c1_abs: self.c1.norm() })
        }
    }

    /// `c⁻¹ = 1/c1 − (c2/c1²)·ρ`.
    pub fn inv(&self) -> Result<Self> {
        self.check_invertible()?;
        let r = self.c1.inv();
        Ok(DualComplex::new(r, -self.c2 * r * r))
    }

    /// Principal logarithm `ln c1 + (c2/c1)·ρ`; the cut runs along the negative real axis of `c1`.
    pub fn ln(&self) -> Result<Self> {
        self.check_invertible()?;
        Ok(DualComplex::new(self.c1.ln(), self.c2 / self.c1))
    }

    /// `exp(c1 + c2ρ) = e^{c1}(1 + c2ρ)`; the series truncates after the linear term.
    pub fn exp(&self) -> Result<Self> {
        let e = self.c1.exp();
        if !e.is_finite() {
            return Err(Error::Overflow { re: self.c1.re });
        }
        Ok(DualComplex::new(e, e * self.c2))
    }

    /// Integer power; negative exponents go through [`DualComplex::inv`].
    pub fn powi(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = DualComplex::ONE;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc *= sq;
            }
            sq *= sq;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(*self * rhs.inv()?)
    }
}

impl fmt::Display for DualComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})ρ", self.c1, self.c2)
    }
}

impl Add for DualComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        DualComplex::new(self.c1 + rhs.c1, self.c2 + rhs.c2)
    }
}

impl Sub for DualComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        DualComplex::new(self.c1 - rhs.c1, self.c2 - rhs.c2)
    }
}

impl Neg for DualComplex {
    type Output = Self;
    fn neg(self) -> Self {
        DualComplex::new(-self.c1, -self.c2)
    }
}

impl Mul for DualComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        DualComplex::new(self.c1 * rhs.c1, self.c1 * rhs.c2 + self.c2 * rhs.c1)
    }
}

impl Mul<f64> for DualComplex {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl AddAssign for DualComplex {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for DualComplex {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for DualComplex {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl Sum for DualComplex {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(DualComplex::ZERO, |a, b| a + b)
    }
}

/// A basis `e1 = a1 + b1ρ`, `e2 = a2 + b2ρ` of a real two-dimensional subspace `E`.
///
/// Construction checks that `det[[Re a1, Re a2], [Im a1, Im a2]]` is nonzero, which makes
/// `e1, e2` independent over the reals and every nonzero element of `E` invertible.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Basis {
    e1: DualComplex,
    e2: DualComplex,
    det: f64,
}

impl Basis {
    pub fn new(e1: DualComplex, e2: DualComplex) -> Result<Self> {
        let (a1, a2) = (e1.c1, e2.c1);
        let det = a1.re * a2.im - a2.re * a1.im;
        let threshold = BASIS_DET_THRESHOLD * e1.norm() * e2.norm();
        if !(det.abs() > threshold) || !e1.is_finite() || !e2.is_finite() {
            return Err(Error::DegenerateBasis { det, threshold });
        }
        Ok(Basis { e1, e2, det })
    }

    /// `e1 = 1`, `e2 = i − (i/2)ρ`.
    pub fn biharmonic() -> Self {
        Basis::new(DualComplex::ONE, DualComplex::from_parts(0.0, 1.0, 0.0, -0.5))
            .expect("biharmonic basis is valid")
    }

    /// `e1 = 1`, `e2 = i`: the complex plane sitting inside the algebra.
    pub fn classical() -> Self {
        Basis::new(DualComplex::ONE, DualComplex::I).expect("classical basis is valid")
    }

    pub fn e1(&self) -> DualComplex {
        self.e1
    }

    pub fn e2(&self) -> DualComplex {
        self.e2
    }

    pub fn determinant(&self) -> f64 {
        self.det
    }

    /// `sqrt(‖e1‖² + ‖e2‖²)`, the constant in `‖ζ‖ ≤ c·|ζ|`.
    pub fn embedding_constant(&self) -> f64 {
        self.e1.norm().hypot(self.e2.norm())
    }

    /// `ζ = x·e1 + y·e2`.
    pub fn point(&self, x: f64, y: f64) -> PointE {
        PointE { x, y, xi: self.combine(x, y) }
    }

    /// The algebra element `x·e1 + y·e2` without building a [`PointE`].
    pub fn combine(&self, x: f64, y: f64) -> DualComplex {
        self.e1.scale(x) + self.e2.scale(y)
    }

    /// Recovers `(x, y)` from an element of `E`.
    pub fn locate(&self, c: DualComplex) -> Result<PointE> {
        let (a1, a2) = (self.e1.c1, self.e2.c1);
        let x = (c.c1.re * a2.im - a2.re * c.c1.im) / self.det;
        let y = (a1.re * c.c1.im - c.c1.re * a1.im) / self.det;
        let p = self.point(x, y);
        let mismatch = (p.xi.c2 - c.c2).norm();
        if mismatch > 1e-9 * c.norm().max(1.0) {
            return Err(Error::NotInSubspace { mismatch });
        }
        Ok(p)
    }
}

/// A point `ζ = x·e1 + y·e2 = ξ1 + ξ2ρ` of `E`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointE {
    pub x: f64,
    pub y: f64,
    pub xi: DualComplex,
}

impl PointE {
    /// Euclidean modulus `sqrt(x² + y²)` of the coordinates.
    pub fn modulus(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Algebra norm `‖ζ‖`.
    pub fn norm(&self) -> f64 {
        self.xi.norm()
    }
}
