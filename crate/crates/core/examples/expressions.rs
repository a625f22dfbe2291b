//! Parsing, printing, evaluating and differentiating expressions.

use dual_rbvp::algebra::Basis;
use dual_rbvp::expr::{Env, Expr};

fn main() -> dual_rbvp::Result<()> {
    let f = Expr::parse("z^2*exp(-z) + rho/(z - 2)")?;
    let df = f.differentiate()?;
    println!("f  = {f}");
    println!("f' = {df}");

    let z = Basis::biharmonic().point(0.4, 0.7);
    println!("f(z)  = {}", f.eval_at(z.xi)?);
    println!("f'(z) = {}", df.eval_at(z.xi)?);

    // boundary data may also use the curve parameter t
    let g = Expr::parse("tau*exp(2*i*t)")?;
    println!("g(tau, t=0.25) = {}", g.eval(&Env::boundary(z.xi, 0.25))?);
    println!("g is a field expression? {}", g.is_field());

    match Expr::parse("z^1.5") {
        Ok(e) => println!("parsed {e}"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
