use num_bigint::BigInt;
use num_traits::Zero;

use crate::series::TruncatedSeries;

/// The diagonal `y = x` of F1 (Fishburn numbers) or of G1 (row-Fishburn numbers).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnivariateFamily {
    Fishburn,
    RowFishburn,
}

impl UnivariateFamily {
    pub fn name(self) -> &'static str {
        match self {
            UnivariateFamily::Fishburn => "fishburn",
            UnivariateFamily::RowFishburn => "rowFishburn",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "fishburn" => Some(UnivariateFamily::Fishburn),
            "rowfishburn" => Some(UnivariateFamily::RowFishburn),
            _ => None,
        }
    }

    /// Dense coefficients of the k-th factor, `1 - (1-x)^k` or `(1-x)^{-k} - 1`.
    fn factor(self, k: usize, n: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n + 1];
        // running binomial: C(k, j) resp. C(k+j-1, j)
        let mut c = BigInt::from(1);
        for j in 1..=n {
            match self {
                UnivariateFamily::Fishburn => {
                    if j > k {
                        break;
                    }
                    c = c * (k + 1 - j) / j;
                    out[j] = if j % 2 == 1 { c.clone() } else { -c.clone() };
                }
                UnivariateFamily::RowFishburn => {
                    c = c * (k + j - 1) / j;
                    out[j] = c.clone();
                }
            }
        }
        out
    }
}

fn mul_truncated(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().min(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Coefficients `c_0..=c_n` of `sum_k prod_{j=1}^{k} factor_j`.
pub fn univariate_coefficients(which: UnivariateFamily, n: usize) -> Vec<BigInt> {
    let mut total = vec![BigInt::zero(); n + 1];
    let mut prod = total.clone();
    prod[0] = BigInt::from(1);
    // the k-th product has minimum degree k
    for k in 0..=n {
        if k > 0 {
            prod = mul_truncated(&prod, &which.factor(k, n));
        }
        for (t, p) in total.iter_mut().zip(&prod) {
            *t += p;
        }
    }
    total
}

/// [`univariate_coefficients`] as a one-variable series.
pub fn univariate_fishburn_series(which: UnivariateFamily, n: u32) -> TruncatedSeries<BigInt> {
    let coeffs = univariate_coefficients(which, n as usize);
    TruncatedSeries::from_terms(
        1,
        n,
        coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| (vec![i as u32], c)),
    )
    .expect("dense coefficients fit the truncation")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn fishburn_numbers() {
        assert_eq!(
            univariate_coefficients(UnivariateFamily::Fishburn, 9),
            ints(&[1, 1, 2, 5, 15, 53, 217, 1014, 5335, 31240])
        );
        assert_eq!(univariate_coefficients(UnivariateFamily::Fishburn, 0), ints(&[1]));
    }

    #[test]
    fn row_fishburn_numbers() {
        assert_eq!(
            univariate_coefficients(UnivariateFamily::RowFishburn, 7),
            ints(&[1, 1, 3, 12, 61, 380, 2815, 24213])
        );
    }

    #[test]
    fn series_form_matches_dense() {
        let s = univariate_fishburn_series(UnivariateFamily::Fishburn, 6);
        assert_eq!(s.coeff(&[6]).unwrap(), BigInt::from(217));
        assert_eq!(s.len(), 7);
    }
}
