//! The general problem, including the solvability conditions for a negative index.

use dual_rbvp::algebra::Basis;
use dual_rbvp::contour::{Contour, ContourSpec};
use dual_rbvp::rbvp::{residual_report, RbvpProblem};
use dual_rbvp::Error;

fn main() -> dual_rbvp::Result<()> {
    let basis = Basis::biharmonic();
    let c = Contour::build(ContourSpec::circle([0.0, 0.0], 1.0), basis)?;

    let p = RbvpProblem::parse(&c, "tau*exp(tau)", "1 + rho*tau")?;
    let s = p.solve()?;
    let r = residual_report(&s, &p)?;
    println!("kappa {}, residual {:.2e}", s.kappa, r.sup_residual);
    println!("Phi(0.2, 0.1) = {}", s.evaluate(basis.point(0.2, 0.1))?);

    // κ = −2: g must be orthogonal to 1 and τ after division by X⁺
    for g in ["exp(tau)*(1 + tau^2)", "exp(tau)/tau"] {
        match RbvpProblem::parse(&c, "exp(tau)/tau^2", g)?.solve() {
            Ok(s) => println!("g = {g}: solvable, moments {:?}", s.solvability.moment_norms()),
            Err(Error::Unsolvable(report)) => {
                println!("g = {g}: not solvable, moment norms {:?}", report.moment_norms())
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
