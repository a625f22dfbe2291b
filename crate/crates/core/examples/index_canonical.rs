//! The index of a coefficient and its canonical function.

use dual_rbvp::algebra::Basis;
use dual_rbvp::canonical::{build_canonical_x, compute_index, verify_x_relation};
use dual_rbvp::contour::{Contour, ContourSpec};
use dual_rbvp::expr::Expr;

fn main() -> dual_rbvp::Result<()> {
    let basis = Basis::biharmonic();
    let c = Contour::build(ContourSpec::ellipse([0.1, 0.0], [1.4, 0.8], 0.5), basis)?;
    for g in ["tau^3*exp(tau)", "(tau - 0.5)/(tau - 3)", "exp(i*tau)/tau^2 + rho", "2 + rho*tau"] {
        let r = compute_index(&c, &Expr::parse(g)?)?;
        println!("ind {g:<24} = {:>2}  (raw {:+.12}, refined steps {})", r.kappa, r.raw, r.refined_steps);
    }

    let g = Expr::parse("tau^2*exp(0.5*tau)*(1 + rho*tau)")?;
    let x = build_canonical_x(&c, &g)?;
    println!("kappa = {}, log closure mismatch {:.1e}", x.kappa(), x.branch().closure_mismatch);
    println!("sup |X+ - G X-| = {:.2e}", verify_x_relation(&x, &g)?);
    for (px, py) in [(0.0, 0.0), (0.5, 0.2), (3.0, 0.0)] {
        println!("X({px}, {py}) = {}", x.evaluate(basis.point(px, py))?);
    }
    println!("at infinity: {:?}", x.at_infinity());
    Ok(())
}
