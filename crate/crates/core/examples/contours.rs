//! Building closed curves in E and querying their geometry.

use dual_rbvp::algebra::Basis;
use dual_rbvp::contour::{BuildOptions, Contour, ContourSpec, Region};

fn main() -> dual_rbvp::Result<()> {
    let basis = Basis::biharmonic();
    let specs = [
        ContourSpec::circle([0.0, 0.0], 1.0),
        ContourSpec::ellipse([0.2, 0.0], [1.5, 0.6], 0.4),
        ContourSpec::polygon(vec![[-1.0, -1.0], [1.0, -1.0], [0.0, 1.2]]),
    ];
    for spec in specs {
        let c = Contour::build_with(spec, basis, BuildOptions { nodes: 256, ..Default::default() })?;
        let corners = c.nodes().iter().filter(|n| n.corner).count();
        println!(
            "{} nodes ({} corners), length {:.6}, diameter {:.4}, max spacing {:.4}, guard band {:.4}",
            c.len(),
            corners,
            c.length(),
            c.diameter(),
            c.max_spacing(),
            c.guard_band()
        );
        for (x, y) in [(0.0, 0.0), (3.0, 0.0), (c.node(5).x, c.node(5).y)] {
            let region = match c.interior_test(basis.point(x, y)) {
                Region::Interior => "interior",
                Region::Exterior => "exterior",
                Region::NearBoundary => "on the curve",
            };
            println!("  ({x:.3}, {y:.3}) is {region}");
        }
        println!("  fingerprint {}", &c.fingerprint()[..16]);
    }

    // a self-intersecting polygon is rejected
    let bow = ContourSpec::polygon(vec![[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]]);
    if let Err(e) = Contour::build(bow, basis) {
        println!("bow tie: {e}");
    }
    Ok(())
}
