use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use fishburn_cli::json::{series_from_json, series_to_json, CoeffCodec};
use fishburn_core::{Cyclotomic, TruncatedSeries};

fn terms<S: Clone + std::fmt::Debug>(coeff: impl Strategy<Value = S> + Clone) -> impl Strategy<Value = (usize, u32, Vec<(Vec<u32>, S)>)> {
    (1usize..=3, 0u32..8).prop_flat_map(move |(vars, n)| {
        let term = (prop::collection::vec(0u32..=n, vars), coeff.clone());
        (Just(vars), Just(n), prop::collection::vec(term, 0..12))
    })
}

fn round_trip<S: CoeffCodec>(vars: usize, n: u32, t: Vec<(Vec<u32>, S)>) {
    let s = TruncatedSeries::from_terms(vars, n, t).unwrap();
    let text = serde_json::to_string(&series_to_json(&s)).unwrap();
    let back: TruncatedSeries<S> = series_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, s);
}

proptest! {
    #[test]
    fn integer_series((vars, n, t) in terms((-10_000i64..10_000).prop_map(BigInt::from))) {
        round_trip(vars, n, t);
    }

    #[test]
    fn rational_series((vars, n, t) in terms((-500i64..500, 1i64..60).prop_map(|(a, b)| BigRational::new(a.into(), b.into())))) {
        round_trip(vars, n, t);
    }

    #[test]
    fn cyclotomic_series((vars, n, t) in terms((-9i64..9, 0i64..12).prop_map(|(c, j)| Cyclotomic::zeta(12, j) * Cyclotomic::rational(BigRational::from_integer(c.into()))))) {
        round_trip(vars, n, t);
    }
}

#[test]
fn ring_mismatch_is_rejected() {
    let s = TruncatedSeries::from_terms(1, 3, [(vec![1], BigRational::new(1.into(), 2.into()))]).unwrap();
    let j = series_to_json(&s);
    assert!(series_from_json::<BigInt>(&j).is_err());
}
