use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::precise::bits_for_digits;
use crate::qseries::UnivariateFamily;
use crate::{BigComplex, Cyclotomic};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `(x;y)_n` by a fresh product every time.
fn naive_poch(x: &BigRational, y: &BigRational, n: u32) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, j| acc * (BigRational::one() - x * y.pow(j as i32)))
}

/// The five sums over `0..=bound`, without any knowledge of where they stop.
fn naive_value(expr: TerminatingExpr, p: &BigRational, q: &BigRational, bound: u32) -> BigRational {
    let ip = p.recip();
    let iq = q.recip();
    (0..=bound)
        .map(|n| match expr {
            TerminatingExpr::Comp1Left => naive_poch(&ip, &iq, n),
            TerminatingExpr::Comp2First => rat(-1, 1).pow(n as i32) * naive_poch(&ip, &iq, n),
            TerminatingExpr::Comp1Mid => p * q.pow(n as i32) * naive_poch(p, q, n) * naive_poch(q, q, n),
            TerminatingExpr::Comp2Mid => {
                p * q.pow(n as i32) * naive_poch(p, q, n) * naive_poch(&-q.clone(), q, n)
            }
            TerminatingExpr::Comp2Right => (q / p).pow(n as i32) * naive_poch(p, &(q * q), n),
        })
        .sum()
}

#[test]
fn comp2_example_is_five_eighths() {
    let (p, q) = (rat(4, 1), rat(1, 2));
    for e in TerminatingFamily::Comp2.expressions() {
        let v = evaluate_terminating(*e, &p, &q).unwrap();
        assert_eq!(v.value, rat(5, 8), "{e}");
        assert_eq!(v.certificate, 1);
        assert_eq!(v.value, naive_value(*e, &p, &q, 12));
    }
    assert!(verify_terminating(TerminatingFamily::Comp2, &p, &q).unwrap().is_verified());
}

#[test]
fn comp1_example_is_three_halves() {
    let (p, q) = (rat(2, 1), rat(1, 2));
    for e in TerminatingFamily::Comp1.expressions() {
        let v = evaluate_terminating(*e, &p, &q).unwrap();
        assert_eq!(v.value, rat(3, 2), "{e}");
        assert_eq!(v.value, naive_value(*e, &p, &q, 12));
    }
}

#[test]
fn comp1_left_at_p_one() {
    for q in [rat(1, 2), rat(-3, 7), rat(5, 1)] {
        let v = evaluate_terminating(TerminatingExpr::Comp1Left, &BigRational::one(), &q).unwrap();
        assert_eq!(v.value, BigRational::one());
        assert_eq!(v.certificate, 0);
    }
}

#[test]
fn refuses_without_certificate() {
    let err = evaluate_terminating(TerminatingExpr::Comp1Left, &rat(3, 1), &rat(1, 2)).unwrap_err();
    assert!(matches!(err, IdentityError::NoCertificate { .. }), "{err}");
    // p q^k = 1 with k odd does not certify comp2
    let err = evaluate_terminating(TerminatingExpr::Comp2Right, &rat(2, 1), &rat(1, 2)).unwrap_err();
    assert!(matches!(err, IdentityError::NoCertificate { .. }));
    assert!(evaluate_terminating(TerminatingExpr::Comp1Mid, &BigRational::zero(), &rat(1, 2)).is_err());
    assert!(evaluate_terminating(TerminatingExpr::Comp1Mid, &rat(1, 1), &BigRational::zero()).is_err());
}

#[test]
fn terminating_grid() {
    for q in [rat(1, 2), rat(1, 3), rat(2, 3)] {
        for k in 1..=3i32 {
            let p2 = q.pow(-2 * k);
            let r = verify_terminating(TerminatingFamily::Comp2, &p2, &q).unwrap();
            assert!(r.is_verified(), "comp2 q={q} k={k}: {r}");
            let expected = naive_value(TerminatingExpr::Comp2Right, &p2, &q, 4 * k as u32 + 3);
            assert_eq!(evaluate_terminating(TerminatingExpr::Comp2First, &p2, &q).unwrap().value, expected);

            let p1 = q.pow(-k);
            let r = verify_terminating(TerminatingFamily::Comp1, &p1, &q).unwrap();
            assert!(r.is_verified(), "comp1 q={q} k={k}: {r}");
            let expected = naive_value(TerminatingExpr::Comp1Mid, &p1, &q, 2 * k as u32 + 3);
            assert_eq!(evaluate_terminating(TerminatingExpr::Comp1Left, &p1, &q).unwrap().value, expected);
        }
    }
}

#[test]
fn comp2_at_fourth_root_of_unity() {
    let q = Cyclotomic::zeta(4, 1);
    let p = Cyclotomic::zeta(4, 2);
    assert_eq!(p, Cyclotomic::rational(rat(-1, 1)).lift(4));
    let r = verify_terminating(TerminatingFamily::Comp2, &p, &q).unwrap();
    assert!(r.is_verified(), "{r}");
    // k = 1: 1 + (q/p)(1 - p) = 1 - 2 zeta4
    let v = evaluate_terminating(TerminatingExpr::Comp2Right, &p, &q).unwrap().value;
    let two_zeta = Cyclotomic::zeta(4, 1) + Cyclotomic::zeta(4, 1);
    assert_eq!(v, Cyclotomic::rational(BigRational::one()).lift(4) - two_zeta);
}

proptest! {
    #[test]
    fn comp2_three_way_agrees(num in 1i64..6, den in 2i64..7, k in 1i32..4, neg in any::<bool>()) {
        prop_assume!(num != den);
        let q = rat(if neg { -num } else { num }, den);
        let p = q.pow(-2 * k);
        let vals: Vec<_> = TerminatingFamily::Comp2
            .expressions()
            .iter()
            .map(|e| evaluate_terminating(*e, &p, &q).unwrap().value)
            .collect();
        prop_assert_eq!(&vals[0], &vals[1]);
        prop_assert_eq!(&vals[0], &vals[2]);
    }
}

fn point(identity: NumericIdentity, values: &[(&str, (f64, f64))]) -> NumericEvalParams {
    NumericEvalParams::new(NumericPoint::from_values(identity, values, 60).unwrap(), 60)
}

#[test]
fn rogers_fine_example() {
    let params = point(
        NumericIdentity::RogersFine,
        &[("a", (0.3, 0.0)), ("b", (0.2, 0.0)), ("t", (0.4, 0.0)), ("q", (0.5, 0.0))],
    );
    let r = numeric_check(&params).unwrap();
    assert!(r.is_verified(), "{r}");
}

#[test]
fn rogers_fine_left_side_at_a_equal_b() {
    // a = b collapses the left side to 1/(1 - t)
    let params = point(
        NumericIdentity::RogersFine,
        &[("a", (0.35, 0.1)), ("b", (0.35, 0.1)), ("t", (0.25, -0.3)), ("q", (-0.4, 0.2))],
    );
    let (lhs, rhs) = evaluate_sides(&params).unwrap();
    let p = bits_for_digits(60);
    let mut expected = BigComplex::from_i64_prec(1, p);
    expected -= &BigComplex::from_f64(0.25, -0.3, p);
    let expected = expected.inv().unwrap();
    for side in [lhs, rhs] {
        let SideSum::Converged { value, .. } = side else { panic!("no decay") };
        let mut d = value;
        d -= &expected;
        assert!(d.magnitude() < 1e-26, "{}", d.magnitude());
    }
}

#[test]
fn random_draws_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for id in [
        NumericIdentity::RogersFine,
        NumericIdentity::GeneralizedRogersFine,
        NumericIdentity::WatsonLimit,
    ] {
        for _ in 0..4 {
            let params = NumericEvalParams::new(NumericPoint::random(id, &mut rng, 60), 60);
            let r = numeric_check(&params).unwrap();
            assert!(r.is_verified(), "{r}");
        }
    }
}

#[test]
fn watson_limit_with_minus_n_fails() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let params = NumericEvalParams::new(NumericPoint::random(NumericIdentity::WatsonLimitMinusN, &mut rng, 60), 60);
        let r = numeric_check(&params).unwrap();
        assert!(matches!(r.outcome, Outcome::Mismatch(_)), "{r}");
    }
}

#[test]
fn degeneration_to_rogers_fine() {
    let r = degeneration_check((0.3, 0.1), (0.2, -0.4), (0.4, 0.0), (0.5, 0.1), 1e-30, 60, 1e-25).unwrap();
    assert!(r.is_verified(), "{r}");
}

#[test]
fn numeric_pole_and_no_decay() {
    let params = point(
        NumericIdentity::RogersFine,
        &[("a", (0.3, 0.0)), ("b", (2.0, 0.0)), ("t", (0.4, 0.0)), ("q", (0.5, 0.0))],
    );
    assert!(matches!(evaluate_sides(&params), Err(IdentityError::Pole { .. })));

    let mut params = point(
        NumericIdentity::RogersFine,
        &[("a", (0.3, 0.0)), ("b", (0.2, 0.0)), ("t", (0.95, 0.0)), ("q", (0.5, 0.0))],
    );
    params.max_summands = 20;
    let r = numeric_check(&params).unwrap();
    assert!(matches!(r.outcome, Outcome::Inconclusive(_)), "{r}");

    let bad = point(
        NumericIdentity::RogersFine,
        &[("a", (0.3, 0.0)), ("b", (0.2, 0.0)), ("t", (1.5, 0.0)), ("q", (0.5, 0.0))],
    );
    assert!(matches!(evaluate_sides(&bad), Err(IdentityError::InvalidParameter(_))));
    let mut zero_tol = bad.clone();
    zero_tol.tolerance = 0.0;
    assert!(evaluate_sides(&zero_tol).is_err());
}

#[test]
fn watson_example() {
    let p = WatsonParams::with_d_equal_q(rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11), rat(1, 2), 1);
    let (l, r) = watson_sides(&p).unwrap();
    assert_eq!(l, r);
    assert!(verify_watson(&p).unwrap().is_verified());
}

#[test]
fn watson_general_d_and_random() {
    let mut p = WatsonParams::with_d_equal_q(rat(2, 9), rat(-3, 4), rat(5, 6), rat(7, 3), rat(-2, 5), 3);
    p.d = rat(4, 7);
    assert!(verify_watson(&p).unwrap().is_verified());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut done = 0;
    while done < 10 {
        let p = WatsonParams::random(&mut rng, 1 + done % 3);
        match verify_watson(&p) {
            Ok(r) => {
                assert!(r.is_verified(), "{r}");
                done += 1;
            }
            Err(IdentityError::Pole { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn watson_pole_is_named() {
    // aq/b = 1 makes the first factor of (aq/b;q)_n vanish
    let p = WatsonParams::with_d_equal_q(rat(1, 3), rat(1, 6), rat(1, 7), rat(1, 11), rat(1, 2), 1);
    match watson_sides(&p) {
        Err(IdentityError::Pole { factor, .. }) => assert!(factor.contains("(aq/b;q)"), "{factor}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn asymptotic_constants() {
    let c = AsymptoticConstants::new(128);
    let pi = std::f64::consts::PI;
    let alpha = 12.0 * 3f64.sqrt() * pi.powf(-2.5) * (pi * pi / 12.0).exp();
    let beta = 6.0 * 2f64.sqrt() / (pi * pi) * (pi * pi / 24.0).exp();
    assert!((crate::precise::real::to_f64(&c.alpha) - alpha).abs() < 1e-12);
    assert!((crate::precise::real::to_f64(&c.beta) - beta).abs() < 1e-12);
}

#[test]
fn asymptotic_trends() {
    for which in [UnivariateFamily::Fishburn, UnivariateFamily::RowFishburn] {
        let t = asymptotic_trend(which, 100).unwrap();
        assert_eq!(t.rows.len(), 100);
        assert!(t.rows[0].ratio.is_finite());
        let r = verify_trend(which).unwrap();
        assert!(r.is_verified(), "{r}");
    }
    let f = asymptotic_trend(UnivariateFamily::Fishburn, 60).unwrap();
    assert!((f.deviation(30).unwrap() - 0.0189).abs() < 1e-3);
    assert!(asymptotic_trend(UnivariateFamily::Fishburn, 121).is_err());
}

#[test]
fn formal_checks() {
    for r in verify_main_theorem(8).unwrap() {
        assert!(r.is_verified(), "{r}");
    }
    for id in ["prop12-r=-1", "prop12-r=1", "KR-first=F3"] {
        let id: FormalIdentity = id.parse().unwrap();
        assert!(verify_formal(&id, 6).unwrap().is_verified(), "{id}");
    }
    assert!(verify_formal(&FormalIdentity::Pentagonal3Way, 30).unwrap().is_verified());
    let g = FormalIdentity::Gamma1 { gamma: rat(-2, 3), r: rat(5, 4) };
    assert!(verify_formal(&g, 5).unwrap().is_verified());
    assert!(matches!(verify_formal(&FormalIdentity::F1F2, 15), Err(IdentityError::OrderBudget { .. })));
    assert!(verify_formal(&FormalIdentity::Gamma2 { gamma: rat(1, 1) }, 4).is_err());
}

#[test]
fn coefficient_oracles() {
    for fam in [CoefficientFamily::F1, CoefficientFamily::G1] {
        let r = verify_coefficient_oracle(fam, 4).unwrap();
        assert!(r.is_verified(), "{r}");
    }
    assert!(verify_coefficient_oracle(CoefficientFamily::F1, 0).unwrap().is_verified());
    assert!(verify_coefficient_oracle(CoefficientFamily::F1, 8).is_err());
}
