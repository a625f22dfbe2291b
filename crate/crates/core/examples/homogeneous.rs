//! The homogeneous problem: a (κ + 1)-parameter family for κ ≥ 0, only zero for κ < 0.

use dual_rbvp::algebra::{Basis, DualComplex};
use dual_rbvp::contour::{Contour, ContourSpec};
use dual_rbvp::rbvp::{residual_report, RbvpProblem};

fn main() -> dual_rbvp::Result<()> {
    let basis = Basis::biharmonic();
    let c = Contour::build(ContourSpec::circle([0.0, 0.0], 1.0), basis)?;

    let alpha = DualComplex::from_parts(0.5, 0.1, -0.2, 0.3);
    let beta = DualComplex::from_parts(-1.0, 0.4, 0.0, 0.7);
    let p = RbvpProblem::parse(&c, "tau*exp(tau)", "0")?.with_polynomial(vec![alpha, beta]);
    let s = p.solve()?;
    let r = residual_report(&s, &p)?;
    println!("kappa {}, residual {:.2e}", s.kappa, r.sup_residual);
    for (radius, sup) in &r.infinity_samples {
        println!("  sup |Phi-| on radius {radius:>7.1}: {sup:.6} (|beta| = {:.6})", beta.norm());
    }

    // multiplying by any constant of the algebra gives another solution
    let k = DualComplex::from_parts(0.0, 2.0, 1.0, 0.0);
    let scaled = s.scaled(k)?;
    println!("k*Phi residual {:.2e}", residual_report(&scaled, &p)?.sup_residual);

    let neg = RbvpProblem::parse(&c, "exp(tau)/tau", "0")?.solve()?;
    println!("kappa {}: only the zero solution? {}", neg.kappa, neg.trivial_only);
    Ok(())
}
