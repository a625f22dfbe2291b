//! Riemann boundary value problems for monogenic functions on a two-dimensional subspace `E`
//! of the algebra `𝔹` of dual complex numbers (`ρ² = 0`).
//!
//! The crate builds up from [`algebra`] (arithmetic in `𝔹`, bases of `E`) and [`expr`]
//! (boundary and field expressions) through [`contour`] and [`integral`] (quadrature and
//! Cauchy-type integrals) to [`canonical`] and [`rbvp`] (index, canonical function, solvers).
//! [`diagnostics`] estimates regularity of boundary data and [`cli`] drives everything from
//! JSON problem files.

pub mod algebra;
pub mod canonical;
pub mod cli;
pub mod contour;
pub mod diagnostics;
pub mod error;
pub mod expr;
pub mod integral;
pub mod numerics;
pub mod rbvp;

pub use algebra::{Basis, DualComplex, PointE};
pub use contour::{Contour, ContourSpec};
pub use error::{Error, Result};
pub use expr::Expr;
pub use integral::{CauchyIntegral, Side};
pub use rbvp::{RbvpProblem, RbvpSolution};
