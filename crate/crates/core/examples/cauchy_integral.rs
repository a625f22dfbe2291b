//! The Cauchy integral theorem and formula, one-sided boundary limits, and Taylor coefficients.

use dual_rbvp::algebra::Basis;
use dual_rbvp::contour::{Contour, ContourSpec};
use dual_rbvp::expr::Expr;
use dual_rbvp::integral::{contour_integral, jump_check, taylor_coeffs_expr, CauchyIntegral, Side};

fn main() -> dual_rbvp::Result<()> {
    let basis = Basis::biharmonic();
    let c = Contour::build(ContourSpec::ellipse([0.0, 0.0], [1.3, 0.9], 0.2), basis)?;
    let phi = Expr::parse("exp(z)*(z + rho)")?;
    let trace = c.sample_field(&phi)?;

    println!("closed integral of a monogenic field: {:.2e}", contour_integral(&c, &trace).norm());

    let f = CauchyIntegral::new(&c, trace.clone())?;
    let inside = basis.point(0.3, -0.2);
    let err = (f.evaluate(inside)? - phi.eval_at(inside.xi)?).norm();
    println!("Cauchy formula at an interior point: error {err:.2e}");
    println!("value outside: {:.2e}", f.evaluate(basis.point(2.0, 1.0))?.norm());

    let k = 100;
    let plus = f.boundary_limit(k, Side::Plus)?;
    let minus = f.boundary_limit(k, Side::Minus)?;
    println!(
        "node {k}: |F+ - phi| = {:.2e}, |F-| = {:.2e} (extrapolation estimates {:.1e}, {:.1e})",
        (plus.value - trace[k]).norm(),
        minus.value.norm(),
        plus.error_estimate,
        minus.error_estimate
    );

    // a smooth density that is not the trace of anything monogenic on this ellipse
    let psi = c.sample(&Expr::parse("exp(exp(6.283185307179586*i*t)) + rho*exp(-6.283185307179586*i*t)")?)?;
    let r = jump_check(&c, &psi)?;
    println!("jump residual over {} nodes: {:.2e}", r.checked, r.sup_residual);

    let coeffs = taylor_coeffs_expr(&c, &Expr::parse("1/(2 - z)")?, basis.point(0.0, 0.0), 5)?;
    for (n, cn) in coeffs.iter().enumerate() {
        println!("c{n} = {cn}");
    }
    Ok(())
}
