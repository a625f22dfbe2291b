//! Regularity of boundary data: modulus of continuity, Hölder slope and a Dini estimate.

use dual_rbvp::algebra::{Basis, DualComplex};
use dual_rbvp::contour::{Contour, ContourSpec};
use dual_rbvp::diagnostics::{dini_refinement, regularity_report, sup_norm};
use dual_rbvp::expr::Expr;

fn main() -> dual_rbvp::Result<()> {
    let basis = Basis::biharmonic();
    let c = Contour::build(ContourSpec::circle([0.0, 0.0], 1.0), basis)?.with_nodes(256)?;

    let smooth = c.sample(&Expr::parse("exp(tau)")?)?;
    let holder = c.sample_with(|n| DualComplex::real((n.t - 0.5).abs().sqrt()));
    for (name, samples) in [("exp(tau)", &smooth), ("|t - 1/2|^(1/2)", &holder)] {
        let r = regularity_report(&c, samples);
        println!("{name}: slope {:.3}, Dini estimate {:.3}", r.slope.unwrap_or(f64::NAN), r.dini.value);
    }

    let step = |cc: &Contour| Ok(cc.sample_with(|n| DualComplex::real(if n.t < 0.5 { 0.0 } else { 1.0 })));
    let r = dini_refinement(&c, 2, step)?;
    println!("step function: estimates {:?} on {:?} nodes, diverging {}", r.estimates, r.nodes, r.diverging);

    let grid: Vec<_> = (0..11).flat_map(|i| (0..11).map(move |j| (i, j))).map(|(i, j)| {
        basis.point(-1.0 + 0.2 * i as f64, -1.0 + 0.2 * j as f64)
    }).collect();
    let f = Expr::parse("exp(z)")?;
    println!("sup |exp| on the grid: {:.4}", sup_norm(|p| f.eval_at(p.xi), &grid)?);
    Ok(())
}
