//! Arithmetic in the dual complex numbers and coordinates in a harmonic basis.

use dual_rbvp::algebra::{Basis, DualComplex};

fn main() -> dual_rbvp::Result<()> {
    let a = DualComplex::from_parts(1.0, 2.0, 0.5, -1.0);
    let b = DualComplex::from_parts(-0.5, 0.0, 3.0, 0.25);
    println!("a     = {a}");
    println!("b     = {b}");
    println!("a*b   = {}", a * b);
    println!("1/a   = {}", a.inv()?);
    println!("a/b   = {}", a.div(&b)?);
    println!("ln a  = {}", a.ln()?);
    println!("e^a   = {}", a.exp()?);
    println!("rho^2 = {}", DualComplex::RHO * DualComplex::RHO);
    println!("rho invertible? {}", DualComplex::RHO.is_invertible());

    for (name, basis) in [("biharmonic", Basis::biharmonic()), ("classical", Basis::classical())] {
        let p = basis.point(0.3, -1.2);
        let back = basis.locate(p.xi)?;
        println!(
            "{name}: e1 = {}, e2 = {}, det = {:.3}, 0.3e1 - 1.2e2 = {} -> ({:.3}, {:.3})",
            basis.e1(),
            basis.e2(),
            basis.determinant(),
            p.xi,
            back.x,
            back.y
        );
    }
    Ok(())
}
