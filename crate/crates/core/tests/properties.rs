mod common;

use common::ctx;
use proptest::prelude::*;
use prudnikov::identities::{rho_algebra, verify_rho_recurrence, verify_weight_ode};
use prudnikov::moments::WeightSpec;
use prudnikov::specfun::{gamma, pochhammer, rho};
use prudnikov::{Polynomial, Real};

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn rho_recurrence_holds(nu in -2.0f64..4.0, x in 0.01f64..60.0) {
        let c = ctx(40);
        let r = verify_rho_recurrence(&c.real(nu), &[c.real(x)], &c).unwrap();
        prop_assert!(r.passed, "{}", r.to_json());
    }

    #[test]
    fn rho_is_positive_and_decreasing(nu in -1.5f64..3.0, x in 0.01f64..30.0) {
        let c = ctx(30);
        let nu = c.real(nu);
        let a = rho(&nu, &c.real(x), &c).unwrap();
        let b = rho(&nu, &c.real(x * 1.1), &c).unwrap();
        prop_assert!(a.is_positive() && b < a);
    }

    #[test]
    fn weight_odes_hold(nu in 0.05f64..3.0, x in 0.02f64..40.0, plus in any::<bool>()) {
        let c = ctx(40);
        let spec = if plus { WeightSpec::plus(c.real(nu)) } else { WeightSpec::minus(c.real(nu)) }.unwrap();
        let r = verify_weight_ode(&spec, &[c.real(x)], &c).unwrap();
        prop_assert!(r.passed, "{}", r.to_json());
    }

    #[test]
    fn gamma_functional_equation(x in 0.1f64..20.0) {
        let c = ctx(40);
        let x = c.real(x);
        let g = gamma(&x, &c).unwrap();
        let g1 = gamma(&(&x + 1i64), &c).unwrap();
        prop_assert!(g1.rel_diff(&(g * &x)) < c.pow10(-38));
    }

    #[test]
    fn pochhammer_ratio_of_gammas(a in 0.1f64..10.0, k in 0u32..12) {
        let c = ctx(40);
        let a = c.real(a);
        let p = pochhammer(&a, k, &c);
        let q = gamma(&(&a + k as i64), &c).unwrap() / gamma(&a, &c).unwrap();
        prop_assert!(p.rel_diff(&q) < c.pow10(-37));
    }

    #[test]
    fn theta_power_on_monomials(n in 0u32..6, k in 0u32..5) {
        let c = ctx(30);
        let mut p = Polynomial::monomial(c.one(), k as usize);
        for _ in 0..n {
            p = rho_algebra::theta(&p);
        }
        prop_assert_eq!(p.degree(), (n + k) as usize);
        let want = c.factorial(n + k) / c.factorial(k);
        prop_assert!(p.leading().rel_diff(&want).is_zero());
    }

    #[test]
    fn sig_string_round_trips(v in -1e30f64..1e30, digits in 16u32..60) {
        let c = ctx(digits);
        let x = c.real(v);
        let s = x.to_sig_string(digits);
        let y = c.parse(&s).unwrap();
        prop_assert!(x.rel_diff(&y) <= c.pow10(1 - digits as i32));
        prop_assert_eq!(s.clone(), y.to_sig_string(digits));
    }

    #[test]
    fn polynomial_product_evaluates_pointwise(a in prop::collection::vec(-5.0f64..5.0, 1..5),
                                              b in prop::collection::vec(-5.0f64..5.0, 1..5),
                                              x in -3.0f64..3.0) {
        let c = ctx(30);
        let to = |v: &[f64]| Polynomial::new(v.iter().map(|t| c.real(*t)).collect());
        let (p, q) = (to(&a), to(&b));
        let x = c.real(x);
        let lhs = (&p * &q).eval(&x);
        let rhs = p.eval(&x) * q.eval(&x);
        let scale = Real::one(c.bits()).max(lhs.abs());
        prop_assert!(((&lhs - &rhs).abs() / scale) < c.pow10(-25));
    }
}
