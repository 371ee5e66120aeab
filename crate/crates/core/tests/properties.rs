use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use spinharm::harmonics::{legendre_poly, make_harmonic, norm_squared_integral, QuantumNumbers};
use spinharm::numeric::{min_quadrature_nodes, quadrature_norm};
use spinharm::operators::{apply, commutator_check, ladder_classify, Direction, LadderOutcome, OperatorKind};
use spinharm::symtrig::{
    canonicalize, chebyshev_t, chebyshev_u_shifted, eval_expr, GaussianRational, HalfInteger, TrigExpr, TrigTerm,
};

fn rational() -> impl Strategy<Value = BigRational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn coeff() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

fn term() -> impl Strategy<Value = TrigTerm> {
    (coeff(), -3i64..=5, 0i64..=3, -3i64..=3).prop_map(|(c, s2, q, p2)| {
        TrigTerm::new(c, HalfInteger::from_twice(s2), q, HalfInteger::from_twice(p2)).unwrap()
    })
}

fn member() -> impl Strategy<Value = TrigExpr> {
    prop::collection::vec(term(), 0..=4).prop_map(canonicalize)
}

fn any_state(max_l2: i64) -> impl Strategy<Value = QuantumNumbers> {
    (0..=max_l2)
        .prop_flat_map(|l2| (Just(l2), 0..=l2))
        .prop_map(|(l2, j)| QuantumNumbers::from_twice(l2, 2 * j - l2).unwrap())
}

fn direct_eval(terms: &[TrigTerm], theta: f64, phi: f64) -> Complex64 {
    terms
        .iter()
        .map(|t| {
            let c = Complex64::new(
                t.coeff.re.numer().to_string().parse::<f64>().unwrap() / t.coeff.re.denom().to_string().parse::<f64>().unwrap(),
                t.coeff.im.numer().to_string().parse::<f64>().unwrap() / t.coeff.im.denom().to_string().parse::<f64>().unwrap(),
            );
            let radial = theta.sin().powf(t.sin_pow.to_f64()) * theta.cos().powi(t.cos_pow as i32);
            c * radial * Complex64::from_polar(1.0, t.phi_freq.to_f64() * phi)
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_commutes(a in member(), b in member()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_associates(a in member(), b in member(), c in member()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn canonicalize_is_idempotent(terms in prop::collection::vec(term(), 0..=6)) {
        let once = canonicalize(terms);
        prop_assert_eq!(once.canonicalize(), once);
    }

    #[test]
    fn d_dtheta_is_a_derivation(a in member(), b in member()) {
        let lhs = (&a * &b).d_dtheta();
        let rhs = &(&a.d_dtheta() * &b) + &(&a * &b.d_dtheta());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_dphi_is_a_derivation(a in member(), b in member()) {
        let lhs = (&a * &b).d_dphi();
        let rhs = &(&a.d_dphi() * &b) + &(&a * &b.d_dphi());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_partials_commute(e in member()) {
        prop_assert_eq!(e.d_dphi().d_dtheta(), e.d_dtheta().d_dphi());
    }

    #[test]
    fn eval_matches_term_formula(terms in prop::collection::vec(term(), 1..=4), theta in 0.1..(PI - 0.1), phi in -7.0..7.0f64) {
        let raw = direct_eval(&terms, theta, phi);
        let got = eval_expr(&canonicalize(terms.clone()), theta, phi).unwrap();
        let scale: f64 = terms.iter().map(|t| direct_eval(std::slice::from_ref(t), theta, phi).norm()).sum();
        prop_assert!((got - raw).norm() <= 1e-12 * scale.max(1e-300), "{} vs {}", got, raw);
    }

    #[test]
    fn chebyshev_multiple_angles(k in 0u32..=13, theta in 0.05..(PI - 0.05)) {
        let t = eval_expr(&chebyshev_t(k), theta, 0.0).unwrap();
        prop_assert!((t - (k as f64 * theta).cos()).norm() < 1e-12);
        let u = eval_expr(&chebyshev_u_shifted(k), theta, 0.0).unwrap() * theta.sin();
        prop_assert!((u - (k as f64 * theta).sin()).norm() < 1e-12);
    }

    #[test]
    fn m2_equals_sum_of_squares(e in member()) {
        use OperatorKind::*;
        let sum = &(&apply(Mx, &apply(Mx, &e)) + &apply(My, &apply(My, &e))) + &apply(Mz, &apply(Mz, &e));
        prop_assert_eq!(apply(M2, &e), sum);
    }

    #[test]
    fn commutators_on_family_members(e in member()) {
        prop_assert!(commutator_check(&e).all_zero());
    }

    #[test]
    fn ladder_sign_symmetry(qn in any_state(25)) {
        let mirror = QuantumNumbers::new(qn.l(), -qn.m()).unwrap();
        let up = ladder_classify(qn, Direction::Up).unwrap();
        let down = ladder_classify(mirror, Direction::Down).unwrap();
        match (&up, &down) {
            (LadderOutcome::Annihilated, LadderOutcome::Annihilated) => {}
            (LadderOutcome::Proportional { constant: a, target: ta }, LadderOutcome::Proportional { constant: b, target: tb }) => {
                prop_assert_eq!(a, b);
                prop_assert_eq!(ta.m(), -tb.m());
            }
            (LadderOutcome::Anomalous { k: ka, scale: sa, .. }, LadderOutcome::Anomalous { k: kb, scale: sb, .. }) => {
                prop_assert_eq!(ka, kb);
                prop_assert_eq!(sa, sb);
            }
            _ => prop_assert!(false, "{:?} vs {:?}", up, down),
        }
    }

    #[test]
    fn quadrature_plateau(qn in any_state(25), extra in 1usize..=20) {
        let base = min_quadrature_nodes(qn);
        let a = quadrature_norm(qn, base).unwrap();
        let b = quadrature_norm(qn, base + extra).unwrap();
        prop_assert!((a - b).abs() <= 1e-13 * a.abs(), "{} vs {}", a, b);
    }
}

#[test]
fn polynomial_parity_and_termination() {
    for qn in QuantumNumbers::all_up_to(HalfInteger::from_twice(25)) {
        let p = legendre_poly(qn.l(), qn.abs_m()).unwrap();
        let n = p.order() as usize;
        assert_eq!(p.coeffs().len(), n + 1);
        for (k, a) in p.coeffs().iter().enumerate() {
            if k % 2 != n % 2 {
                assert!(a.is_zero(), "{qn}: a_{k}");
            }
        }
        assert!(!p.coeffs()[n].is_zero());
        assert!(p.next_coefficient().is_zero(), "{qn}");
    }
}

#[test]
fn low_order_polynomial_forms() {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    for am2 in 0..=10 {
        let am = r(am2, 2);
        let forms: [Vec<BigRational>; 4] = [
            vec![r(1, 1)],
            vec![r(0, 1), r(1, 1)],
            vec![r(1, 1), r(0, 1), -(r(2, 1) * &am + r(3, 1))],
            vec![r(0, 1), r(3, 1), r(0, 1), -(r(2, 1) * &am + r(5, 1))],
        ];
        for (n, form) in forms.iter().enumerate() {
            let l = HalfInteger::from_twice(am2 + 2 * n as i64);
            let p = legendre_poly(l, HalfInteger::from_twice(am2)).unwrap();
            let k = form.iter().rposition(|c| !c.is_zero()).unwrap();
            let ratio = &p.coeffs()[k] / &form[k];
            let scaled: Vec<BigRational> = form.iter().map(|c| c * &ratio).collect();
            assert_eq!(p.coeffs(), &scaled[..], "n={n} |m|={am}");
        }
    }
}

#[test]
fn norms_are_positive() {
    for qn in QuantumNumbers::all_up_to(HalfInteger::from_twice(25)) {
        assert!(norm_squared_integral(qn).unwrap().to_f64() > 0.0, "{qn}");
    }
}

#[test]
fn harmonics_are_m2_eigenfunctions() {
    for qn in QuantumNumbers::all_up_to(HalfInteger::from_twice(25)) {
        let y = make_harmonic(qn).unwrap().expr;
        let l = qn.l().to_rational();
        let eig = GaussianRational::real(&l * (&l + BigRational::from_integer(1.into())));
        assert!((&apply(OperatorKind::M2, &y) - &y.scale(&eig)).is_zero(), "{qn}");
    }
}
