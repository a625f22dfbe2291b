//! The jump problem: find a piecewise monogenic function whose boundary values differ by g.

use dual_rbvp::algebra::{Basis, DualComplex};
use dual_rbvp::contour::{Contour, ContourSpec};
use dual_rbvp::rbvp::{residual_report, RbvpProblem};

fn main() -> dual_rbvp::Result<()> {
    let basis = Basis::biharmonic();
    let c = Contour::build(ContourSpec::circle([0.0, 0.0], 1.0), basis)?;
    // g = τ² + 1/τ splits into an interior part τ² and an exterior part −1/τ
    let constant = DualComplex::from_parts(0.0, 0.0, 1.0, 0.0);
    let p = RbvpProblem::parse(&c, "1", "tau^2 + 1/tau")?.with_polynomial(vec![constant]);
    let s = p.solve()?;
    println!("kind {:?}", s.kind);
    for (x, y) in [(0.2, 0.3), (2.0, -1.0)] {
        let z = basis.point(x, y);
        println!("Phi({x}, {y}) = {}", s.evaluate(z)?);
    }
    let z = basis.point(0.2, 0.3);
    println!("expected inside: {}", z.xi * z.xi + constant);
    let r = residual_report(&s, &p)?;
    println!("boundary residual {:.2e}, |Phi| far away {:.3}", r.sup_residual, r.infinity_bound);
    Ok(())
}
