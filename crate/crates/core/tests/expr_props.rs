use dual_rbvp::algebra::{Basis, DualComplex};
use dual_rbvp::expr::{Env, Expr, Func, Var};
use proptest::prelude::*;

fn leaf(vars: &'static [Var]) -> BoxedStrategy<Expr> {
    let constants = prop_oneof![
        (0.0..100.0f64).prop_map(Expr::Real),
        (0u32..20).prop_map(|k| Expr::Real(k as f64 / 4.0)),
        (0.0..10.0f64).prop_map(Expr::Imag),
        Just(Expr::ImagUnit),
        Just(Expr::Rho),
    ];
    if vars.is_empty() {
        constants.boxed()
    } else {
        prop_oneof![constants, prop::sample::select(vars).prop_map(Expr::Var)].boxed()
    }
}

fn tree(vars: &'static [Var], depth: u32) -> impl Strategy<Value = Expr> {
    leaf(vars).prop_recursive(depth, 32, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Div(b(x), b(y))),
            (inner.clone(), -4i32..5).prop_map(move |(x, n)| Expr::Pow(b(x), n)),
            inner.clone().prop_map(move |x| Expr::Neg(b(x))),
            (prop::sample::select(&[Func::Exp, Func::Ln, Func::Inv][..]), inner)
                .prop_map(move |(f, x)| Expr::Call(f, b(x))),
        ]
    })
}

/// Field expressions whose every subterm stays invertible near the sample points: no
/// division, logarithm or negative powers.
fn smooth_field(depth: u32) -> impl Strategy<Value = Expr> {
    let leaves = prop_oneof![
        (0u32..12).prop_map(|k| Expr::Real(k as f64 / 4.0)),
        (0u32..8).prop_map(|k| Expr::Imag(k as f64 / 4.0)),
        Just(Expr::Rho),
        Just(Expr::Var(Var::Z)),
        Just(Expr::Var(Var::Z)),
    ];
    leaves.prop_recursive(depth, 24, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner.clone(), 0i32..4).prop_map(move |(x, n)| Expr::Pow(b(x), n)),
            inner.clone().prop_map(move |x| Expr::Neg(b(x))),
            inner.prop_map(move |x| Expr::Call(Func::Exp, b(x))),
        ]
    })
}

fn close(a: DualComplex, b: DualComplex, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
}

const ALL: &[Var] = &[Var::Z, Var::Tau, Var::T];

proptest! {
    #[test]
    fn display_parses_back_to_the_same_tree(e in tree(ALL, 5)) {
        let text = e.to_string();
        let back = Expr::parse(&text).unwrap();
        prop_assert_eq!(&back, &e, "text was {}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn whitespace_is_insignificant(e in tree(ALL, 4)) {
        let text = e.to_string();
        let spaced: String = text.chars().flat_map(|c| match c {
            '(' | ')' | '+' | '*' | '/' | '^' => vec![' ', c, ' '],
            _ => vec![c],
        }).collect();
        let squeezed: String = text.chars().filter(|c| *c != ' ').collect();
        prop_assert_eq!(Expr::parse(&spaced).unwrap(), e.clone());
        prop_assert_eq!(Expr::parse(&squeezed).unwrap(), e);
    }

    #[test]
    fn derivative_matches_central_differences(
        e in smooth_field(4),
        x in -0.8..0.8f64,
        y in -0.8..0.8f64,
        classical in any::<bool>(),
    ) {
        let basis = if classical { Basis::classical() } else { Basis::biharmonic() };
        let z = basis.point(x, y).xi;
        let d = e.differentiate().unwrap();
        let exact = d.eval_at(z).unwrap();
        prop_assume!(exact.is_finite() && e.eval_at(z).unwrap().norm() < 1e6);
        // monogenic: the same derivative along both basis directions
        let h = 1e-5;
        for dir in [basis.e1(), basis.e2()] {
            let fp = e.eval_at(z + dir.scale(h)).unwrap();
            let fm = e.eval_at(z - dir.scale(h)).unwrap();
            let quotient = (fp - fm).scale(0.5 / h).div(&dir).unwrap();
            let scale = e.eval_at(z).unwrap().norm().max(1.0);
            prop_assert!(
                (quotient - exact).norm() <= 1e-5 * scale.max(exact.norm()),
                "{} at {:?}: fd {:?} vs {:?}", e, z, quotient, exact
            );
        }
    }

    #[test]
    fn constants_have_zero_derivative(e in tree(&[], 4)) {
        prop_assert!(e.is_constant());
        if let Ok(v) = e.eval(&Env::default()) {
            prop_assert_eq!(e.constant_value(), Some(v));
        }
        let d = e.differentiate().unwrap();
        if let Ok(v) = d.eval(&Env::default()) {
            prop_assert!(v.norm() == 0.0 || !v.is_finite());
        }
    }
}

#[test]
fn boundary_variables_need_a_boundary_environment() {
    let e = Expr::parse("tau * exp(t)").unwrap();
    assert!(!e.is_field());
    assert!(e.differentiate().is_err());
    assert!(e.eval_at(DualComplex::ONE).is_err());
    let v = e.eval(&Env::boundary(DualComplex::I, 0.0)).unwrap();
    assert!(close(v, DualComplex::I, 1e-15));
}

#[test]
fn syntax_errors_report_a_position() {
    for bad in ["z +", "exp z", "z^1.5", "(z", "foo(z)", "2 ** z"] {
        assert!(Expr::parse(bad).is_err(), "{bad} should not parse");
    }
}
