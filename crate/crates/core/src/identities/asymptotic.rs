use astro_float::{BigFloat, RoundingMode};
use num_bigint::BigInt;

use super::{IdentityError, Mode, Outcome, VerificationReport, Witness};
use crate::precise::real;
use crate::qseries::{univariate_coefficients, UnivariateFamily};

const RM: RoundingMode = RoundingMode::ToEven;

/// Largest index accepted by [`asymptotic_trend`].
pub const MAX_TREND_INDEX: usize = 120;

/// The constants in the leading terms, as high-precision reals.
#[derive(Clone, Debug)]
pub struct AsymptoticConstants {
    /// `12 sqrt(3) pi^{-5/2} e^{pi^2/12}`
    pub alpha: BigFloat,
    /// `6 sqrt(2) pi^{-2} e^{pi^2/24}`
    pub beta: BigFloat,
    pub precision: usize,
}

impl AsymptoticConstants {
    pub fn new(precision: usize) -> Self {
        let p = precision + 32;
        let pi = real::pi(p);
        let pi2 = pi.mul(&pi, p, RM);
        let int = |v: i64| BigFloat::from_i64(v, p);
        let sqrt_pi = real::sqrt(&pi, p);
        let pi_5_2 = pi2.mul(&sqrt_pi, p, RM);
        let alpha = int(12)
            .mul(&real::sqrt(&int(3), p), p, RM)
            .div(&pi_5_2, p, RM)
            .mul(&real::exp(&pi2.div(&int(12), p, RM), p), p, RM);
        let beta = int(6)
            .mul(&real::sqrt(&int(2), p), p, RM)
            .div(&pi2, p, RM)
            .mul(&real::exp(&pi2.div(&int(24), p, RM), p), p, RM);
        AsymptoticConstants {
            alpha: alpha.round(precision, RM),
            beta: beta.round(precision, RM),
            precision,
        }
    }
}

/// One row of the ratio table.
#[derive(Clone, Debug, PartialEq)]
pub struct TrendRow {
    pub n: usize,
    pub coefficient: BigInt,
    /// Coefficient divided by the leading term.
    pub ratio: f64,
    /// `|ratio - 1|`.
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrendTable {
    pub which: UnivariateFamily,
    pub rows: Vec<TrendRow>,
}

impl TrendTable {
    pub fn deviation(&self, n: usize) -> Option<f64> {
        self.rows.iter().find(|r| r.n == n).map(|r| r.deviation)
    }

    /// `n * deviation` over `lo..=hi`, as `(min, max)`.
    pub fn scaled_band(&self, lo: usize, hi: usize) -> Option<(f64, f64)> {
        let scaled: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| (lo..=hi).contains(&r.n))
            .map(|r| r.n as f64 * r.deviation)
            .collect();
        if scaled.is_empty() {
            return None;
        }
        let min = scaled.iter().copied().fold(f64::INFINITY, f64::min);
        let max = scaled.iter().copied().fold(0.0, f64::max);
        Some((min, max))
    }
}

/// Exact coefficients `1..=n_max` against the leading asymptotic term:
/// `n! (6/pi^2)^n sqrt(n) alpha` for Fishburn numbers,
/// `m! (12/pi^2)^m beta` for row-Fishburn numbers.
pub fn asymptotic_trend(which: UnivariateFamily, n_max: usize) -> Result<TrendTable, IdentityError> {
    if n_max > MAX_TREND_INDEX {
        return Err(IdentityError::OrderBudget {
            id: format!("asymptotics-{}", which.name()),
            order: n_max as u32,
            max: MAX_TREND_INDEX as u32,
        });
    }
    let p = 256;
    let consts = AsymptoticConstants::new(p);
    let coeffs = univariate_coefficients(which, n_max);
    let pi = real::pi(p);
    let pi2 = pi.mul(&pi, p, RM);
    let (base, constant) = match which {
        UnivariateFamily::Fishburn => (BigFloat::from_i64(6, p).div(&pi2, p, RM), consts.alpha.clone()),
        UnivariateFamily::RowFishburn => (BigFloat::from_i64(12, p).div(&pi2, p, RM), consts.beta.clone()),
    };
    let one = BigFloat::from_i64(1, p);
    let mut factorial = one.clone();
    let mut power = one.clone();
    let mut rows = Vec::with_capacity(n_max);
    for (n, c) in coeffs.iter().enumerate().skip(1) {
        factorial = factorial.mul(&BigFloat::from_u64(n as u64, p), p, RM);
        power = power.mul(&base, p, RM);
        let mut main = factorial.mul(&power, p, RM).mul(&constant, p, RM);
        if which == UnivariateFamily::Fishburn {
            main = main.mul(&real::sqrt(&BigFloat::from_u64(n as u64, p), p), p, RM);
        }
        let ratio = real::from_bigint(c, p).div(&main, p, RM);
        let deviation = real::to_f64(&ratio.sub(&one, p, RM).abs());
        rows.push(TrendRow {
            n,
            coefficient: c.clone(),
            ratio: real::to_f64(&ratio),
            deviation,
        });
    }
    Ok(TrendTable { which, rows })
}

/// Deviation at 60 below deviation at 30, and `n * deviation` within a
/// factor-3 band over `[20, 100]`.
pub fn verify_trend(which: UnivariateFamily) -> Result<VerificationReport, IdentityError> {
    let table = asymptotic_trend(which, 100)?;
    Ok(VerificationReport::timed(format!("asymptotics-{}", which.name()), Mode::Trend, |r| {
        let d30 = table.deviation(30).expect("row 30");
        let d60 = table.deviation(60).expect("row 60");
        let (lo, hi) = table.scaled_band(20, 100).expect("rows 20..=100");
        r.note(format!("deviation(30) = {d30:.6e}, deviation(60) = {d60:.6e}"));
        r.note(format!("n*deviation over [20,100] in [{lo:.6}, {hi:.6}]"));
        if d60 >= d30 {
            return Outcome::Mismatch(Witness {
                index: "deviation 30 vs 60".into(),
                left: format!("{d30:e}"),
                right: format!("{d60:e}"),
            });
        }
        if hi > 3.0 * lo {
            return Outcome::Mismatch(Witness {
                index: "n*deviation band over [20,100]".into(),
                left: format!("{lo:e}"),
                right: format!("{hi:e}"),
            });
        }
        Outcome::Verified
    })
    .with_order(100))
}
