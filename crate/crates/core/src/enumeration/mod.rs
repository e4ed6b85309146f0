//! Brute-force generation of the combinatorial families behind the series
//! coefficients: Fishburn, row-Fishburn and self-dual matrices, interval
//! orders, ascent sequences and distinct partitions.

mod matrices;
mod posets;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

pub use matrices::{
    enumerate_fishburn, enumerate_row_fishburn, enumerate_self_dual, fishburn_of_dimension,
    row_fishburn_of_dimension, self_dual_of_dimension, FishburnMatrix, RowFishburnMatrix,
    SelfDualMatrix, TriangularMatrix,
};
pub use posets::{enumerate_interval_orders, IntervalOrder, Poset, MAX_POSET_SIZE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("poset generation is brute force; n = {n} exceeds the bound {max}")]
    PosetBound { n: usize, max: usize },
    #[error("unknown matrix family `{0}` (expected fishburn, rowFishburn or selfDual)")]
    UnknownFamily(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixFamily {
    Fishburn,
    RowFishburn,
    SelfDual,
}

impl MatrixFamily {
    pub fn name(self) -> &'static str {
        match self {
            MatrixFamily::Fishburn => "fishburn",
            MatrixFamily::RowFishburn => "rowFishburn",
            MatrixFamily::SelfDual => "selfDual",
        }
    }

    /// Names of the statistics forming a [`CountTable`] key.
    pub fn statistics(self) -> &'static [&'static str] {
        match self {
            MatrixFamily::Fishburn => &["firstRowSum", "lastColumnSum"],
            MatrixFamily::RowFishburn => &["lastColumnSum"],
            MatrixFamily::SelfDual => &["lastColumnSum", "nonzeroDiagonal"],
        }
    }
}

impl std::str::FromStr for MatrixFamily {
    type Err = EnumerationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "fishburn" => Ok(MatrixFamily::Fishburn),
            "rowfishburn" => Ok(MatrixFamily::RowFishburn),
            "selfdual" => Ok(MatrixFamily::SelfDual),
            _ => Err(EnumerationError::UnknownFamily(s.into())),
        }
    }
}

impl fmt::Display for MatrixFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Counts keyed by a tuple of statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub family: MatrixFamily,
    /// Matrix size (reduced size for self-dual matrices).
    pub size: u32,
    pub counts: BTreeMap<Vec<u32>, BigUint>,
}

impl CountTable {
    fn new(family: MatrixFamily, size: u32) -> Self {
        CountTable {
            family,
            size,
            counts: BTreeMap::new(),
        }
    }

    fn bump(&mut self, key: Vec<u32>) {
        *self.counts.entry(key).or_insert_with(BigUint::zero) += 1u32;
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn get(&self, key: &[u32]) -> BigUint {
        self.counts.get(key).cloned().unwrap_or_default()
    }

    /// Sums out every statistic except the one at `axis`.
    pub fn marginal(&self, axis: usize) -> BTreeMap<u32, BigUint> {
        let mut out = BTreeMap::new();
        for (k, v) in &self.counts {
            *out.entry(k[axis]).or_insert_with(BigUint::zero) += v;
        }
        out
    }

    /// Distribution of the last column sum, whatever the family.
    pub fn by_last_column(&self) -> BTreeMap<u32, BigUint> {
        self.marginal(match self.family {
            MatrixFamily::Fishburn => 1,
            _ => 0,
        })
    }
}

/// Refined counts of matrices of size `m` (reduced size for self-dual ones).
/// The empty matrix is the single object of size 0, with all statistics 0.
pub fn refined_counts(family: MatrixFamily, m: u32) -> CountTable {
    let mut table = CountTable::new(family, m);
    if m == 0 {
        table.bump(vec![0; family.statistics().len()]);
        return table;
    }
    match family {
        MatrixFamily::Fishburn => {
            for n in 1..=m as usize {
                fishburn_of_dimension(n, m, &mut |mat| {
                    table.bump(vec![mat.first_row_sum(), mat.last_column_sum()])
                });
            }
        }
        MatrixFamily::RowFishburn => {
            for n in 1..=m as usize {
                row_fishburn_of_dimension(n, m, &mut |mat| table.bump(vec![mat.last_column_sum()]));
            }
        }
        MatrixFamily::SelfDual => {
            for n in 1..=2 * m as usize {
                self_dual_of_dimension(n, m, &mut |mat| {
                    table.bump(vec![mat.last_column_sum(), u32::from(!mat.diagonal_all_zero())])
                });
            }
        }
    }
    table
}

/// One `(m, l)` cell of the self-dual facts check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactRow {
    pub m: u32,
    pub l: u32,
    pub self_dual: BigUint,
    pub zero_diagonal: BigUint,
    pub row_fishburn: BigUint,
}

impl FactRow {
    pub fn zero_diagonal_is_half(&self) -> bool {
        &self.zero_diagonal * 2u32 == self.self_dual
    }

    pub fn row_fishburn_is_half(&self) -> bool {
        &self.row_fishburn * 2u32 == self.self_dual
    }

    pub fn holds(&self) -> bool {
        self.zero_diagonal_is_half() && self.row_fishburn_is_half()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FactsReport {
    pub rows: Vec<FactRow>,
}

impl FactsReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(FactRow::holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &FactRow> {
        self.rows.iter().filter(|r| !r.holds())
    }
}

/// For each `1 <= m <= m_max` and each last column sum `l`: the zero-diagonal
/// self-dual matrices and the row-Fishburn matrices both number `s_{m,l}/2`.
pub fn verify_facts(m_max: u32) -> FactsReport {
    let mut rows = Vec::new();
    for m in 1..=m_max {
        let sd = refined_counts(MatrixFamily::SelfDual, m);
        let rf = refined_counts(MatrixFamily::RowFishburn, m).by_last_column();
        let s = sd.by_last_column();
        let mut ls: Vec<u32> = s.keys().chain(rf.keys()).copied().collect();
        ls.sort_unstable();
        ls.dedup();
        for l in ls {
            rows.push(FactRow {
                m,
                l,
                self_dual: s.get(&l).cloned().unwrap_or_default(),
                zero_diagonal: sd.get(&[l, 0]),
                row_fishburn: rf.get(&l).cloned().unwrap_or_default(),
            });
        }
    }
    FactsReport { rows }
}

/// Sequences `x_1 = 0`, `x_{i+1} <= asc(x_1..x_i) + 1`, counted by generating them.
pub fn count_ascent_sequences(n: usize) -> BigUint {
    fn walk(remaining: usize, last: usize, ascents: usize, count: &mut BigUint) {
        if remaining == 0 {
            *count += 1u32;
            return;
        }
        for next in 0..=ascents + 1 {
            walk(remaining - 1, next, ascents + usize::from(next > last), count);
        }
    }
    let mut count = BigUint::zero();
    if n == 0 {
        return BigUint::one();
    }
    walk(n - 1, 0, 0, &mut count);
    count
}

/// Partitions of `s` into distinct parts with largest part exactly `r`:
/// those with an odd number of parts minus those with an even number.
pub fn distinct_partition_parity(r: u32, s: u32) -> BigInt {
    // parts below r form a set T with sum s - r; total part count 1 + |T|
    fn walk(max_part: u32, target: u32, parts: usize, acc: &mut BigInt) {
        if target == 0 {
            if parts % 2 == 0 {
                *acc += 1;
            } else {
                *acc -= 1;
            }
            return;
        }
        for p in (1..=max_part.min(target)).rev() {
            walk(p - 1, target - p, parts + 1, acc);
        }
    }
    let mut acc = BigInt::zero();
    if r >= 1 && s >= r {
        walk(r - 1, s - r, 0, &mut acc);
    }
    acc
}

#[cfg(test)]
mod tests;
