mod common;

use dual_rbvp::algebra::{Basis, DualComplex};
use dual_rbvp::contour::{BuildOptions, Contour, ContourSpec};
use dual_rbvp::integral::Side;
use dual_rbvp::rbvp::{residual_from_values, residual_report, RbvpProblem, SolutionKind, Tolerances};
use dual_rbvp::Error;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{oracle_cases, solve_classical};

fn skew() -> Basis {
    Basis::new(DualComplex::from_parts(1.0, 0.2, 0.3, 0.0), DualComplex::from_parts(0.1, 1.0, 0.0, -0.5)).unwrap()
}

fn build(spec: ContourSpec, basis: Basis, nodes: usize) -> Contour {
    Contour::build_with(spec, basis, BuildOptions { nodes, ..Default::default() }).unwrap()
}

fn ellipse(basis: Basis, nodes: usize) -> Contour {
    build(ContourSpec::ellipse([0.1, 0.0], [1.2, 0.8], 0.3), basis, nodes)
}

fn random_dc(rng: &mut ChaCha8Rng) -> DualComplex {
    DualComplex::from_parts(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )
}

#[test]
fn particular_plus_homogeneous_is_a_solution() {
    let c = ellipse(skew(), 256);
    let g_big = "tau^2*exp(tau)";
    let p = RbvpProblem::parse(&c, g_big, "tau + 3 + rho").unwrap();
    let particular = p.solve().unwrap();
    assert_eq!(particular.kappa, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let coeffs = vec![random_dc(&mut rng), random_dc(&mut rng), random_dc(&mut rng)];
    let hom = RbvpProblem::parse(&c, g_big, "0").unwrap().with_polynomial(coeffs.clone()).solve().unwrap();
    let general = particular.superpose(&hom).unwrap();
    assert_eq!(general.polynomial, coeffs);
    let r = residual_report(&general, &p).unwrap();
    assert!(r.sup_residual < Tolerances::default().residual, "{} at {}", r.sup_residual, r.worst_node);

    // the difference of two solutions solves the homogeneous problem
    let z = c.basis().point(0.3, -0.2);
    let diff = general.evaluate(z).unwrap() - particular.evaluate(z).unwrap();
    assert!((diff - hom.evaluate(z).unwrap()).norm() < 1e-10);

    assert!(particular.superpose(&particular).is_err());
}

#[test]
fn solutions_are_linear_in_the_free_term() {
    let c = ellipse(Basis::biharmonic(), 256);
    let g_big = "exp(0.4*tau)*tau";
    let s1 = RbvpProblem::parse(&c, g_big, "exp(tau)").unwrap().solve().unwrap();
    let s2 = RbvpProblem::parse(&c, g_big, "rho/(tau - 3)").unwrap().solve().unwrap();
    let s12 = RbvpProblem::parse(&c, g_big, "2*exp(tau) - rho/(tau - 3)").unwrap().solve().unwrap();
    for (x, y) in [(0.0, 0.1), (0.5, -0.3), (2.0, 2.0), (-3.0, 0.5)] {
        let z = c.basis().point(x, y);
        let lhs = s12.evaluate(z).unwrap();
        let rhs = s1.evaluate(z).unwrap().scale(2.0) - s2.evaluate(z).unwrap();
        assert!((lhs - rhs).norm() < 1e-10, "({x}, {y})");
    }
}

#[test]
fn homogeneous_solution_space_has_dimension_kappa_plus_one() {
    let c = ellipse(Basis::biharmonic(), 256);
    let g_big = "tau^3*exp(-tau)";
    let monomial = |j: usize| {
        let mut p = vec![DualComplex::ZERO; j + 1];
        p[j] = DualComplex::ONE;
        RbvpProblem::parse(&c, g_big, "0").unwrap().with_polynomial(p).solve()
    };
    let basis: Vec<_> = (0..=3).map(|j| monomial(j).unwrap()).collect();
    assert!(basis.iter().all(|s| s.kappa == 3 && s.kind == SolutionKind::Homogeneous));
    assert!(matches!(monomial(4), Err(Error::PolynomialDegree { degree: 4, kappa: 3 })));
    // trailing zero coefficients do not raise the degree
    let padded = RbvpProblem::parse(&c, g_big, "0")
        .unwrap()
        .with_polynomial(vec![DualComplex::ONE, DualComplex::ZERO, DualComplex::ZERO, DualComplex::ZERO, DualComplex::ZERO]);
    assert_eq!(padded.solve().unwrap().polynomial.len(), 1);

    // X·ζ^j at four points: the 4×4 matrix of complex parts is nonsingular
    let pts: Vec<_> = [(0.1, 0.0), (-0.3, 0.2), (0.4, 0.4), (0.0, -0.5)].iter().map(|&(x, y)| c.basis().point(x, y)).collect();
    let m: Vec<Vec<Complex64>> = pts.iter().map(|p| basis.iter().map(|s| s.evaluate(*p).unwrap().c1).collect()).collect();
    assert!(det4(&m).norm() > 1e-6);
}

fn det4(m: &[Vec<Complex64>]) -> Complex64 {
    let mut a: Vec<Vec<Complex64>> = m.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..4 {
        let pivot = (col..4).max_by(|&i, &j| a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap()).unwrap();
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
        }
    }
    det
}

#[test]
fn negative_index_homogeneous_problem_has_only_the_zero_solution() {
    let c = ellipse(skew(), 256);
    let p = RbvpProblem::parse(&c, "exp(tau)/tau^2", "0").unwrap();
    let s = p.solve().unwrap();
    assert!(s.trivial_only);
    assert_eq!(s.boundary_value(10, Side::Plus).unwrap(), DualComplex::ZERO);
    assert!(residual_report(&s, &p).unwrap().sup_residual == 0.0);
    let with_poly = p.with_polynomial(vec![DualComplex::ONE]);
    assert!(matches!(with_poly.solve(), Err(Error::PolynomialDegree { .. })));
}

#[test]
fn solvable_negative_index_problem() {
    // X⁺ = e^ζ, X⁻ = ζ²; ψ = 1 + ζ² is entire, so both moments vanish
    let basis = Basis::biharmonic();
    let c = ellipse(basis, 256);
    let p = RbvpProblem::parse(&c, "exp(tau)/tau^2", "exp(tau)*(1 + tau^2)").unwrap();
    let s = p.solve().unwrap();
    assert_eq!(s.kappa, -2);
    assert!(s.solvability.solvable);
    assert!(s.solvability.moment_norms().iter().all(|m| *m < 1e-10));
    let z = basis.point(0.2, 0.3);
    let expect = z.xi.exp().unwrap() * (DualComplex::ONE + z.xi * z.xi);
    assert!((s.evaluate(z).unwrap() - expect).norm() < 1e-9);
    assert!(s.evaluate(basis.point(3.0, -1.0)).unwrap().norm() < 1e-9);
    let r = residual_report(&s, &p).unwrap();
    assert!(r.sup_residual < 1e-7, "{}", r.sup_residual);
    // Φ⁻ = X⁻ψ̃⁻ → 0, but the quadrature error left in the moments is multiplied by X⁻ ~ ζ²
    for (radius, sup) in &r.infinity_samples {
        assert!(*sup < 1e-11 * radius, "{:?}", r.infinity_samples);
    }
}

#[test]
fn unsolvable_moments_are_stable_under_node_doubling() {
    let basis = skew();
    let g_big = "exp(tau)/tau^2";
    let g = "exp(tau)*(1/tau + rho/tau^2)";
    let moments = |n: usize| match RbvpProblem::parse(&ellipse(basis, n), g_big, g).unwrap().solve() {
        Err(Error::Unsolvable(r)) => r.moments,
        other => panic!("expected an unsolvable problem, got {other:?}"),
    };
    let (coarse, fine) = (moments(256), moments(512));
    assert_eq!(coarse.len(), 2);
    for (a, b) in coarse.iter().zip(&fine) {
        assert!((*a - *b).norm() < 1e-9);
    }
    // ψ = 1/τ + ρ/τ²: M1 = 2πi, M2 = 2πiρ
    let two_pi_i = DualComplex::from_parts(0.0, 2.0 * std::f64::consts::PI, 0.0, 0.0);
    assert!((fine[0] - two_pi_i).norm() < 1e-9);
    assert!((fine[1] - two_pi_i * DualComplex::RHO).norm() < 1e-9);
}

#[test]
fn agrees_with_the_classical_oracle_at_sampled_nodes() {
    let n = 256;
    for case in oracle_cases() {
        let c = build(case.spec.clone(), case.basis, n);
        let p = RbvpProblem::parse(&c, case.g_big, case.g).unwrap().with_polynomial(case.polynomial.clone());
        let s = p.solve().unwrap();
        let oracle = solve_classical(&case.curve, case.basis.e1().c1, case.basis.e2().c1, n, &case.data);
        assert_eq!(s.kappa, oracle.kappa, "{}", case.name);
        for k in (0..n).step_by(37) {
            let plus = s.boundary_value(k, Side::Plus).unwrap();
            let minus = s.boundary_value(k, Side::Minus).unwrap();
            assert!((plus.c1 - oracle.plus[k]).norm() < 1e-6, "{} node {k}", case.name);
            assert!((minus.c1 - oracle.minus[k]).norm() < 1e-6, "{} node {k}", case.name);
        }
    }
}

#[test]
fn perturbed_boundary_values_show_up_in_the_residual() {
    let c = ellipse(Basis::biharmonic(), 256);
    let p = RbvpProblem::parse(&c, "tau*exp(tau)", "1 + tau^2").unwrap();
    let s = p.solve().unwrap();
    let mut values = s.boundary_values().unwrap();
    let clean = residual_from_values(&s, &p, &values).unwrap().sup_residual;
    assert!(clean < 1e-7);
    let bump = DualComplex::from_parts(0.006, 0.008, 0.0, 0.0);
    values[40].1 += bump;
    let r = residual_from_values(&s, &p, &values).unwrap();
    assert_eq!(r.worst_node, values[40].0);
    assert!((r.sup_residual - 0.01).abs() < 1e-6, "{}", r.sup_residual);
}

#[test]
fn exterior_solution_tends_to_the_leading_coefficient() {
    // ϰ = 1 with trivial exterior exponent: Φ⁻ = (α + βζ)/ζ → β
    let c = ellipse(skew(), 256);
    let (alpha, beta) = (DualComplex::from_parts(0.3, -0.2, 0.1, 0.0), DualComplex::from_parts(-0.7, 0.5, 0.4, 0.2));
    let p = RbvpProblem::parse(&c, "tau*exp(0.5*tau)", "0").unwrap().with_polynomial(vec![alpha, beta]);
    let s = p.solve().unwrap();
    let r = residual_report(&s, &p).unwrap();
    assert!(r.sup_residual < 1e-7);
    assert!((r.infinity_bound - beta.norm()).abs() < 1e-2 * beta.norm());
    assert_eq!(r.infinity_samples.len(), 3);
}

#[test]
fn dispatch_follows_the_data() {
    let c = ellipse(Basis::biharmonic(), 128);
    let kind = |g_big: &str, g: &str| RbvpProblem::parse(&c, g_big, g).unwrap().solve().unwrap().kind;
    assert_eq!(kind("1", "tau"), SolutionKind::Jump);
    assert_eq!(kind("tau", "0"), SolutionKind::Homogeneous);
    assert_eq!(kind("tau", "1"), SolutionKind::Nonhomogeneous);
    // jump data handed to the general solver gives the same solution
    let p = RbvpProblem::parse(&c, "1", "exp(tau)").unwrap();
    let z = c.basis().point(0.2, 0.1);
    let a = p.solve().unwrap().evaluate(z).unwrap();
    let b = p.solve_as(SolutionKind::Nonhomogeneous).unwrap().evaluate(z).unwrap();
    assert!((a - b).norm() < 1e-10);
    assert!(p.solve_as(SolutionKind::Homogeneous).is_err());
}
