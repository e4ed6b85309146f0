use num_bigint::BigInt;
use num_traits::Zero;

use super::PochhammerSteps;
use crate::series::TruncatedSeries;

/// `a_{r,s}`: partitions of `s` into distinct parts with largest part `r`,
/// counted with sign `+1` for an odd number of parts and `-1` for even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionParityTable {
    max_largest_part: usize,
    max_weight: usize,
    entries: Vec<Vec<BigInt>>,
}

impl PartitionParityTable {
    pub fn max_largest_part(&self) -> usize {
        self.max_largest_part
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    /// `a_{r,s}` for `1 <= r <= R`, `1 <= s <= S`; zero outside.
    pub fn get(&self, r: usize, s: usize) -> BigInt {
        if r == 0 || s == 0 || r > self.max_largest_part || s > self.max_weight {
            return BigInt::zero();
        }
        self.entries[r - 1][s - 1].clone()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }
}

/// Reads `a_{r,s}` off `sum_{n>=0} (p w)^{n+1} (w; w)_n`, the partition side
/// rewritten in `w = 1/q`, expanded in independent variables `(p, w)`.
pub fn partition_side_table(max_r: usize, max_s: usize) -> PartitionParityTable {
    let n = (max_r + max_s) as u32;
    let p = TruncatedSeries::<BigInt>::var(2, n, 0);
    let w = TruncatedSeries::<BigInt>::var(2, n, 1);
    let pw = &p * &w;
    let mut total = TruncatedSeries::zero(2, n);
    let mut front = pw.clone();
    // summand n carries p^{n+1}: only n < R matter
    for poch in PochhammerSteps::new(&w, &w).take(max_r) {
        total = &total + &(&front * &poch);
        front = &front * &pw;
    }
    let entries = (1..=max_r)
        .map(|r| {
            (1..=max_s)
                .map(|s| total.coeff(&[r as u32, s as u32]).expect("within truncation"))
                .collect()
        })
        .collect();
    PartitionParityTable {
        max_largest_part: max_r,
        max_weight: max_s,
        entries,
    }
}
