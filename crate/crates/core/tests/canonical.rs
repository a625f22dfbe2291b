use dual_rbvp::algebra::{Basis, DualComplex};
use dual_rbvp::canonical::{build_canonical_x, compute_index, verify_x_relation, CLOSURE_TOLERANCE};
use dual_rbvp::contour::{BuildOptions, Contour, ContourSpec};
use dual_rbvp::expr::Expr;
use dual_rbvp::Error;
use proptest::prelude::*;

fn e(s: &str) -> Expr {
    Expr::parse(s).unwrap()
}

fn skew() -> Basis {
    Basis::new(DualComplex::from_parts(1.0, 0.2, 0.3, 0.0), DualComplex::from_parts(0.1, 1.0, 0.0, -0.5)).unwrap()
}

fn build(spec: ContourSpec, basis: Basis, nodes: usize) -> Contour {
    Contour::build_with(spec, basis, BuildOptions { nodes, ..Default::default() }).unwrap()
}

fn ellipse(basis: Basis, nodes: usize) -> Contour {
    build(ContourSpec::ellipse([0.1, -0.1], [1.3, 0.8], 0.4), basis, nodes)
}

#[test]
fn index_is_stable_under_node_doubling() {
    let coefficients = [
        ("tau^2*exp(tau) + rho*tau", 2),
        ("exp(0.5*i*tau)/tau^3", -3),
        ("(tau - 0.2)*(tau + 0.3*i)*inv(tau - 4)", 2),
        ("2 + rho", 0),
    ];
    for basis in [Basis::biharmonic(), skew()] {
        for (g, expect) in coefficients {
            let coarse = compute_index(&ellipse(basis, 256), &e(g)).unwrap();
            let fine = compute_index(&ellipse(basis, 512), &e(g)).unwrap();
            assert_eq!(coarse.kappa, expect, "{g}");
            assert_eq!(fine.kappa, expect, "{g}");
            assert!((coarse.raw - fine.raw).abs() < 1e-6);
        }
    }
}

#[test]
fn index_on_a_polygon() {
    let c = build(ContourSpec::polygon(vec![[-1.0, -0.8], [1.1, -0.6], [0.9, 1.0], [-0.7, 0.9]]), skew(), 512);
    for n in -2..=3 {
        assert_eq!(compute_index(&c, &e(&format!("tau^({n})*exp(tau)"))).unwrap().kappa, n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scaling_by_an_invertible_constant_keeps_the_index(
        n in -3i32..4,
        parts in prop::array::uniform4(-3.0..3.0f64),
    ) {
        let k = DualComplex::from_array(parts);
        prop_assume!(k.c1.norm() > 0.1);
        let c = ellipse(Basis::biharmonic(), 256);
        let lit = format!("(({:?}) + ({:?})*i + (({:?}) + ({:?})*i)*rho)", parts[0], parts[1], parts[2], parts[3]);
        let g = format!("tau^({n})*exp(tau)");
        let base = compute_index(&c, &e(&g)).unwrap();
        let scaled = compute_index(&c, &e(&format!("{lit}*{g}"))).unwrap();
        prop_assert_eq!(base.kappa, n as i64);
        prop_assert_eq!(scaled.kappa, base.kappa);
    }

    #[test]
    fn index_is_additive(m in -3i32..4, n in -3i32..4) {
        let c = ellipse(skew(), 256);
        let a = format!("tau^({m})*exp(0.3*tau)");
        let b = format!("tau^({n})*(2 + rho*tau)");
        let ab = compute_index(&c, &e(&format!("({a})*({b})"))).unwrap().kappa;
        prop_assert_eq!(ab, compute_index(&c, &e(&a)).unwrap().kappa + compute_index(&c, &e(&b)).unwrap().kappa);
    }
}

#[test]
fn canonical_function_of_exponential_data_is_explicit() {
    // G = τ^m e^{λτ}: the log is λτ, so X⁺ = e^{λζ} inside and X⁻ = ζ^{−m} outside
    let basis = Basis::biharmonic();
    let c = ellipse(basis, 512);
    for m in [-2, 0, 3] {
        let g = e(&format!("tau^({m})*exp((0.5 - 0.2*i)*tau)"));
        let x = build_canonical_x(&c, &g).unwrap();
        assert_eq!(x.kappa(), m as i64);
        assert!(x.branch().closure_mismatch <= CLOSURE_TOLERANCE);
        assert!(verify_x_relation(&x, &g).unwrap() < 1e-8);
        let inner = e("exp((0.5 - 0.2*i)*z)");
        for (px, py) in [(0.0, 0.0), (0.5, 0.2), (-0.4, -0.3)] {
            let p = basis.point(px, py);
            let v = x.evaluate(p).unwrap();
            assert!((v - inner.eval_at(p.xi).unwrap()).norm() < 1e-9);
        }
        for (px, py) in [(2.0, 0.0), (-1.0, 2.5), (5.0, -5.0)] {
            let p = basis.point(px, py);
            let v = x.evaluate(p).unwrap();
            assert!((v - p.xi.powi(-m).unwrap()).norm() < 1e-9);
        }
        for k in (0..c.len()).step_by(61) {
            let tau = c.node(k).xi;
            assert!((x.x_plus()[k] - inner.eval_at(tau).unwrap()).norm() < 1e-8);
            assert!((x.x_minus()[k] - tau.powi(-m).unwrap()).norm() < 1e-8);
        }
    }
}

#[test]
fn canonical_function_is_invertible_off_the_curve() {
    let basis = skew();
    let c = ellipse(basis, 512);
    let g = e("(tau - 0.3)*exp(tau^2)*(1 + rho*tau)/(tau - 3)");
    let x = build_canonical_x(&c, &g).unwrap();
    assert_eq!(x.kappa(), 1);
    assert!(verify_x_relation(&x, &g).unwrap() < 1e-7);
    for i in 0..9 {
        for j in 0..9 {
            let p = basis.point(-2.0 + 0.5 * i as f64, -2.0 + 0.5 * j as f64);
            if c.distance_to(p) < 0.05 {
                continue;
            }
            assert!(x.x0(p).unwrap().is_invertible());
            assert!(x.evaluate(p).unwrap().is_invertible());
        }
    }
    for k in 0..c.len() {
        assert!(x.x_plus()[k].is_invertible() && x.x_minus()[k].is_invertible());
    }
}

#[test]
fn behaviour_at_infinity_follows_the_index() {
    let c = ellipse(Basis::biharmonic(), 256);
    for (g, limit, order) in [("exp(tau)", Some(DualComplex::ONE), 0), ("tau^2", Some(DualComplex::ZERO), -2), ("1/tau", None, 1)] {
        let x = build_canonical_x(&c, &e(g)).unwrap();
        let inf = x.at_infinity();
        assert_eq!(inf.growth_order, order, "{g}");
        assert_eq!(inf.limit, limit.map(DualComplex::to_array), "{g}");
    }
}

#[test]
fn fast_rotation_on_coarse_nodes_is_a_branch_ambiguity() {
    let c = build(ContourSpec::circle([0.0, 0.0], 1.0), Basis::biharmonic(), 32);
    // 170/2^j turns per step stays near a third of a revolution at every refinement level
    let r = compute_index(&c, &e("tau^170"));
    assert!(matches!(r, Err(Error::BranchAmbiguity { .. })), "{r:?}");
}

#[test]
fn discontinuous_coefficient_is_rejected() {
    let c = build(ContourSpec::circle([0.0, 0.0], 1.0), Basis::biharmonic(), 256);
    // arg G climbs by π over one revolution and jumps back where t wraps
    let r = compute_index(&c, &e("exp(3.141592653589793*i*t)"));
    assert!(matches!(r, Err(Error::BranchAmbiguity { next: 0, .. })), "{r:?}");
}

#[test]
fn coefficient_must_be_invertible_on_the_curve() {
    let c = build(ContourSpec::circle([0.0, 0.0], 1.0), Basis::biharmonic(), 256);
    assert!(matches!(compute_index(&c, &e("tau - 1")), Err(Error::NotInvertibleOnContour(_))));
    assert!(matches!(compute_index(&c, &e("rho*tau")), Err(Error::NotInvertibleOnContour(_))));
}

#[test]
fn origin_must_be_interior() {
    let c = build(ContourSpec::circle([3.0, 0.0], 1.0), Basis::biharmonic(), 128);
    assert!(matches!(build_canonical_x(&c, &e("tau")), Err(Error::OriginNotInterior)));
}
