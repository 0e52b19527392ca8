mod common;

use std::collections::BTreeMap;

use common::{q, rational_function, rng, vars};
use fedosov_core::scalar::parse_rational_function;
use fedosov_core::{Error, Rational, RationalFunction, Scalar};
use proptest::prelude::*;

fn triple(seed: u64) -> (RationalFunction, RationalFunction, RationalFunction) {
    let v = vars(&["x", "y"]);
    let mut r = rng(seed);
    (rational_function(&mut r, &v), rational_function(&mut r, &v), rational_function(&mut r, &v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(seed in any::<u64>()) {
        let (a, b, c) = triple(seed);
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a - &a, RationalFunction::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), RationalFunction::one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mixed_partials_commute(seed in any::<u64>()) {
        let (f, _, _) = triple(seed);
        let xy = f.partial("x").unwrap().partial("y").unwrap();
        let yx = f.partial("y").unwrap().partial("x").unwrap();
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn leibniz_and_quotient_rules(seed in any::<u64>()) {
        let (f, g, _) = triple(seed);
        let d = |h: &RationalFunction| h.partial("x").unwrap();
        prop_assert_eq!(d(&(&f * &g)), &(&d(&f) * &g) + &(&f * &d(&g)));
        if !g.is_zero() {
            let inv = g.recip().unwrap();
            prop_assert_eq!(d(&inv), -(&d(&g) / &(&g * &g)));
        }
    }

    #[test]
    fn display_reparses(seed in any::<u64>()) {
        let (f, _, _) = triple(seed);
        let back = parse_rational_function(&f.to_string(), &vars(&["x", "y"])).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn evaluation_is_a_homomorphism(seed in any::<u64>(), x in -4i64..=4, y in -4i64..=4) {
        let (f, g, _) = triple(seed);
        let p: BTreeMap<String, Rational> = [("x".to_string(), Rational::integer(x)), ("y".to_string(), Rational::integer(y))].into();
        if let (Ok(a), Ok(b)) = (f.eval(&p), g.eval(&p)) {
            if let Ok(s) = (&f + &g).eval(&p) {
                prop_assert_eq!(s, &a + &b);
            }
            if let Ok(m) = (&f * &g).eval(&p) {
                prop_assert_eq!(m, &a * &b);
            }
        }
    }
}

#[test]
fn derivative_of_the_first_area_coefficient() {
    // d/dx (1/(3x²)) = −2/(3x³) by the quotient rule
    let v = vars(&["x", "y"]);
    let f = parse_rational_function("1/(3*x^2)", &v).unwrap();
    assert_eq!(f.partial("x").unwrap(), parse_rational_function("-2/(3*x^3)", &v).unwrap());
    assert!(f.partial("y").unwrap().is_zero());
    let xy = parse_rational_function("x*y", &v).unwrap();
    assert_eq!(xy.partial("x").unwrap(), parse_rational_function("y", &v).unwrap());
    assert!(matches!(f.partial("z"), Err(Error::UnknownVariable(_))));
}

#[test]
fn point_evaluation() {
    let v = vars(&["x"]);
    let at = |x: i64| -> BTreeMap<String, Rational> { [("x".to_string(), Rational::integer(x))].into() };
    let f = parse_rational_function("1/(3*x^2)", &v).unwrap();
    assert_eq!(f.eval(&at(1)).unwrap(), q(1, 3));
    let g = parse_rational_function("-4/(3*x)", &v).unwrap();
    assert_eq!(g.eval(&at(2)).unwrap(), q(-2, 3));
    let h = parse_rational_function("1/x", &v).unwrap();
    assert!(matches!(h.eval(&at(0)), Err(Error::Pole(_))));
    assert!(matches!(h.eval(&BTreeMap::new()), Err(Error::UnassignedVariable(_))));
}

#[test]
fn large_coefficients_stay_exact() {
    let v = vars(&["x"]);
    let f = parse_rational_function("(x+1)/(x-1)", &v).unwrap();
    let p = f.pow(40);
    let back = p.pow(1);
    assert_eq!(back, p);
    let at: BTreeMap<String, Rational> = [("x".to_string(), Rational::integer(3))].into();
    assert_eq!(p.eval(&at).unwrap(), Rational::integer(2).pow(40));
}
