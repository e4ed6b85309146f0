//! q-Pochhammer symbols and the named series families built from them.

mod families;
mod partitions;
mod univariate;

use thiserror::Error;

pub use families::{
    expand_family, expand_family_with_extra, prop12_lhs, prop12_rhs, Expansion, FamilyContext,
    SeriesFamily, SeriesFamilyId,
};
pub use partitions::{partition_side_table, PartitionParityTable};
pub use univariate::{univariate_coefficients, univariate_fishburn_series, UnivariateFamily};

use crate::scalar::Scalar;
use crate::series::{SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QSeriesError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("infinite product needs a base with zero constant term, got constant {constant}")]
    InfiniteProductDiverges { constant: String },
    #[error("{family}: gamma = 1 makes the denominator (gamma; q)_n vanish at the origin")]
    GammaIsOne { family: String },
    #[error("unknown series family `{0}`")]
    UnknownFamily(String),
    #[error("{family} takes {expected} parameter(s), got {got}")]
    ParameterCount {
        family: String,
        expected: usize,
        got: usize,
    },
    #[error("{family}: parameters must be exact rationals in an integer-only ring")]
    NonIntegerParameter { family: String },
}

/// Length of a q-Pochhammer product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLength {
    Finite(usize),
    Infinite,
}

/// `(a; q)_n`.
#[derive(Clone, Debug)]
pub struct QPochhammerSpec<S> {
    pub a: TruncatedSeries<S>,
    pub q: TruncatedSeries<S>,
    pub n: PochLength,
}

/// `(a; q)_n = prod_{k=0}^{n-1} (1 - a q^k)`, with `(a; q)_0 = 1`.
///
/// For `n = Infinite` the base `q` must have zero constant term; factors are
/// multiplied in until `a q^k` vanishes under the truncation.
pub fn q_pochhammer<S: Scalar>(spec: &QPochhammerSpec<S>) -> Result<TruncatedSeries<S>, QSeriesError> {
    match spec.n {
        PochLength::Finite(n) => Ok(PochhammerSteps::new(&spec.a, &spec.q)
            .nth(n)
            .expect("steps never end")),
        PochLength::Infinite => {
            let c = spec.q.constant_term();
            if !c.is_zero() {
                return Err(QSeriesError::InfiniteProductDiverges {
                    constant: c.to_string(),
                });
            }
            spec.a.try_mul(&spec.q)?;
            let one = TruncatedSeries::one(spec.a.vars(), spec.a.truncation());
            let mut prod = one.clone();
            let mut aq = spec.a.clone();
            while !aq.is_zero() {
                prod = prod.try_mul(&one.try_sub(&aq)?)?;
                aq = aq.try_mul(&spec.q)?;
            }
            Ok(prod)
        }
    }
}

/// Finite shorthand for [`q_pochhammer`].
pub fn poch<S: Scalar>(
    a: &TruncatedSeries<S>,
    q: &TruncatedSeries<S>,
    n: usize,
) -> Result<TruncatedSeries<S>, QSeriesError> {
    q_pochhammer(&QPochhammerSpec {
        a: a.clone(),
        q: q.clone(),
        n: PochLength::Finite(n),
    })
}

/// Yields `(a;q)_0, (a;q)_1, ...`, one multiplication per step.
///
/// Operands are assumed compatible (same variables and truncation).
pub struct PochhammerSteps<S> {
    current: TruncatedSeries<S>,
    aq: TruncatedSeries<S>,
    q: TruncatedSeries<S>,
}

impl<S: Scalar> PochhammerSteps<S> {
    pub fn new(a: &TruncatedSeries<S>, q: &TruncatedSeries<S>) -> Self {
        PochhammerSteps {
            current: TruncatedSeries::one(a.vars(), a.truncation()),
            aq: a.clone(),
            q: q.clone(),
        }
    }
}

impl<S: Scalar> Iterator for PochhammerSteps<S> {
    type Item = TruncatedSeries<S>;

    fn next(&mut self) -> Option<Self::Item> {
        let out = self.current.clone();
        let one = TruncatedSeries::one(self.aq.vars(), self.aq.truncation());
        self.current = &self.current * &(&one - &self.aq);
        self.aq = &self.aq * &self.q;
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use proptest::prelude::*;

    use super::*;

    type Z = TruncatedSeries<BigInt>;

    fn one_minus(var: usize, n: u32) -> Z {
        &Z::one(2, n) - &Z::var(2, n, var)
    }

    #[test]
    fn empty_product_is_one() {
        let p = poch(&one_minus(1, 4), &one_minus(0, 4), 0).unwrap();
        assert_eq!(p, Z::one(2, 4));
    }

    #[test]
    fn first_factor() {
        let p = poch(&one_minus(1, 4), &one_minus(0, 4), 1).unwrap();
        assert_eq!(p, Z::var(2, 4, 1));
    }

    #[test]
    fn second_order_fishburn_factor() {
        // x * (1 - (1-x)^2) = 2x^2 - x^3
        let p = poch(&one_minus(0, 4), &one_minus(0, 4), 2).unwrap();
        let expected = Z::from_terms(
            2,
            4,
            vec![(vec![2, 0], BigInt::from(2)), (vec![3, 0], BigInt::from(-1))],
        )
        .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn infinite_product_rejects_unit_base() {
        let spec = QPochhammerSpec {
            a: one_minus(0, 3),
            q: one_minus(0, 3),
            n: PochLength::Infinite,
        };
        assert!(matches!(
            q_pochhammer(&spec),
            Err(QSeriesError::InfiniteProductDiverges { .. })
        ));
    }

    #[test]
    fn euler_product_is_pentagonal() {
        let w = Z::var(1, 12, 0);
        let p = q_pochhammer(&QPochhammerSpec {
            a: w.clone(),
            q: w,
            n: PochLength::Infinite,
        })
        .unwrap();
        let expected = Z::from_terms(
            1,
            12,
            [(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1)]
                .into_iter()
                .map(|(e, c)| (vec![e], BigInt::from(c))),
        )
        .unwrap();
        assert_eq!(p, expected);
    }

    proptest! {
        #[test]
        fn pochhammer_min_degree(n in 0usize..=12) {
            let p = poch(&one_minus(1, 14), &one_minus(0, 14), n).unwrap();
            prop_assert!(p.min_degree().map_or(true, |d| d as usize >= n));
            prop_assert!(!p.is_zero());
        }
    }
}
