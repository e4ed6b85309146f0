use num_bigint::BigInt;

use super::{IdentityError, Mode, Outcome, VerificationReport, Witness};
use crate::enumeration::{refined_counts, verify_facts, MatrixFamily};
use crate::qseries::{expand_family, Expansion, SeriesFamily, SeriesFamilyId};

/// Largest size the brute-force oracle is asked for.
pub const MAX_ORACLE_SIZE: u32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientFamily {
    /// F1 against Fishburn matrices by (size, last column sum).
    F1,
    /// G1 against row-Fishburn matrices by (size, last column sum).
    G1,
}

impl CoefficientFamily {
    fn series(self) -> SeriesFamilyId {
        match self {
            CoefficientFamily::F1 => SeriesFamilyId::F1,
            CoefficientFamily::G1 => SeriesFamilyId::G1,
        }
    }

    fn matrices(self) -> MatrixFamily {
        match self {
            CoefficientFamily::F1 => MatrixFamily::Fishburn,
            CoefficientFamily::G1 => MatrixFamily::RowFishburn,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            CoefficientFamily::F1 => "F1-coefficients",
            CoefficientFamily::G1 => "G1-coefficients",
        }
    }
}

/// Checks that the coefficient of `x^{m-l} y^l` equals the number of
/// matrices of size `m` with last column sum `l`, for every `m <= m_max`.
pub fn verify_coefficient_oracle(
    family: CoefficientFamily,
    m_max: u32,
) -> Result<VerificationReport, IdentityError> {
    if m_max > MAX_ORACLE_SIZE {
        return Err(IdentityError::OrderBudget {
            id: family.id().into(),
            order: m_max,
            max: MAX_ORACLE_SIZE,
        });
    }
    let series = match expand_family(&SeriesFamily::plain(family.series())?, m_max)? {
        Expansion::Integer(s) => s,
        Expansion::Rational(_) => unreachable!("F1 and G1 are integral"),
    };
    let report = VerificationReport::timed(family.id(), Mode::Oracle, |r| {
        for m in 0..=m_max {
            let counts = refined_counts(family.matrices(), m).by_last_column();
            let row: Vec<String> = (0..=m)
                .map(|l| counts.get(&l).cloned().unwrap_or_default().to_string())
                .collect();
            r.note(format!("m={m}: l=0..{m} -> {}", row.join(",")));
            for l in 0..=m {
                let want = BigInt::from(counts.get(&l).cloned().unwrap_or_default());
                let got = series.coeff(&[m - l, l]).expect("within truncation");
                if got != want {
                    return Outcome::Mismatch(Witness {
                        index: format!("(m={m},l={l})"),
                        left: got.to_string(),
                        right: want.to_string(),
                    });
                }
            }
        }
        Outcome::Verified
    });
    Ok(report.with_order(m_max))
}

/// Self-dual matrices of reduced size `m` with last column sum `l`: those
/// with zero diagonal, and row-Fishburn matrices of size `m` with last column
/// sum `l`, both number half of all of them. Checked for `1 <= m <= m_max`.
pub fn verify_self_dual_facts(m_max: u32) -> Result<VerificationReport, IdentityError> {
    if m_max > MAX_ORACLE_SIZE {
        return Err(IdentityError::OrderBudget {
            id: "self-dual-facts".into(),
            order: m_max,
            max: MAX_ORACLE_SIZE,
        });
    }
    let report = VerificationReport::timed("self-dual-facts", Mode::Oracle, |r| {
        let facts = verify_facts(m_max);
        r.note(format!("{} (m, l) cells", facts.rows.len()));
        let outcome = match facts.violations().next() {
            None => Outcome::Verified,
            Some(row) => Outcome::Mismatch(Witness {
                index: format!("(m={},l={})", row.m, row.l),
                left: format!("s={} zero-diagonal={}", row.self_dual, row.zero_diagonal),
                right: format!("row-fishburn={}", row.row_fishburn),
            }),
        };
        outcome
    });
    Ok(report.with_order(m_max))
}
