use std::fmt;

/// An upper-triangular matrix of nonnegative integers, stored densely.
///
/// Rows and columns are 0-based in the API; the statistics follow the usual
/// 1-based conventions (first row, last column).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangularMatrix {
    n: usize,
    entries: Vec<u32>,
}

/// Every row and every column has a nonzero entry.
pub type FishburnMatrix = TriangularMatrix;
/// Every row has a nonzero entry; columns may vanish.
pub type RowFishburnMatrix = TriangularMatrix;

impl TriangularMatrix {
    /// Panics if an entry below the diagonal is nonzero or the shape is not square.
    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let n = rows.len();
        let mut entries = vec![0; n * n];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                assert!(j >= i || v == 0, "entry ({i},{j}) lies below the diagonal");
                entries[i * n + j] = v;
            }
        }
        TriangularMatrix { n, entries }
    }

    pub(crate) fn zeros(n: usize) -> Self {
        TriangularMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n.max(1)).map(<[u32]>::to_vec).take(self.n).collect()
    }

    pub fn size(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn first_row_sum(&self) -> u32 {
        (0..self.n).map(|j| self.get(0, j)).sum()
    }

    pub fn last_column_sum(&self) -> u32 {
        (0..self.n).map(|i| self.get(i, self.n - 1)).sum()
    }

    pub fn rows_nonzero(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).any(|j| self.get(i, j) > 0))
    }

    pub fn columns_nonzero(&self) -> bool {
        (0..self.n).all(|j| (0..=j).any(|i| self.get(i, j) > 0))
    }

    pub fn is_fishburn(&self) -> bool {
        self.n >= 1 && self.rows_nonzero() && self.columns_nonzero()
    }

    pub fn is_row_fishburn(&self) -> bool {
        self.n >= 1 && self.rows_nonzero()
    }

    /// Entry `(i, j)` moves to `(n-1-j, n-1-i)`: reflection in the north-east diagonal.
    pub fn reverse_transpose(&self) -> Self {
        let n = self.n;
        let mut out = TriangularMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                out.set(n - 1 - j, n - 1 - i, self.get(i, j));
            }
        }
        out
    }

    pub fn is_self_dual(&self) -> bool {
        *self == self.reverse_transpose()
    }

    /// Dump format: `n=<dim>` followed by one line per row.
    pub fn dump(&self) -> String {
        let mut s = format!("n={}\n", self.n);
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for TriangularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// A self-dual Fishburn matrix, determined by its south-east entries
/// (`i + j >= n - 1` in 0-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SelfDualMatrix {
    full: TriangularMatrix,
}

impl SelfDualMatrix {
    /// Completes south-east entries `((i, j), value)` by symmetry.
    pub fn from_south_east(n: usize, cells: impl IntoIterator<Item = ((usize, usize), u32)>) -> Self {
        let mut full = TriangularMatrix::zeros(n);
        for ((i, j), v) in cells {
            assert!(i <= j && i + j + 1 >= n, "({i},{j}) is not a south-east cell");
            full.set(i, j, v);
            full.set(n - 1 - j, n - 1 - i, v);
        }
        SelfDualMatrix { full }
    }

    /// `None` unless `m` is fixed by the reverse-transpose.
    pub fn from_full(m: TriangularMatrix) -> Option<Self> {
        m.is_self_dual().then_some(SelfDualMatrix { full: m })
    }

    pub fn dimension(&self) -> usize {
        self.full.n
    }

    pub fn full(&self) -> &TriangularMatrix {
        &self.full
    }

    pub fn south_east_cells(n: usize) -> impl Iterator<Item = (usize, usize)> {
        (0..n).flat_map(move |i| (i..n).filter(move |&j| i + j + 1 >= n).map(move |j| (i, j)))
    }

    pub fn reduced_size(&self) -> u32 {
        Self::south_east_cells(self.full.n)
            .map(|(i, j)| self.full.get(i, j))
            .sum()
    }

    /// Entries with `i + j = n - 1` on or above the main diagonal.
    pub fn diagonal_entries(&self) -> Vec<u32> {
        let n = self.full.n;
        (0..n)
            .filter(|&i| 2 * i + 1 <= n)
            .map(|i| self.full.get(i, n - 1 - i))
            .collect()
    }

    pub fn diagonal_all_zero(&self) -> bool {
        self.diagonal_entries().iter().all(|&v| v == 0)
    }

    pub fn last_column_sum(&self) -> u32 {
        self.full.last_column_sum()
    }
}

/// Cells in row-major order, each covering one or two constraint groups
/// that must end up with a positive total.
struct CellProblem {
    cells: Vec<(usize, usize)>,
    covers: Vec<Vec<usize>>,
    group_count: usize,
    /// Index of the last cell covering each group.
    last_cell: Vec<usize>,
    /// Groups whose last covering cell is this one.
    closing: Vec<Vec<usize>>,
    max_cover: usize,
}

impl CellProblem {
    fn new(cells: Vec<(usize, usize)>, covers: Vec<Vec<usize>>, group_count: usize) -> Self {
        let mut last_cell = vec![usize::MAX; group_count];
        for (c, gs) in covers.iter().enumerate() {
            for &g in gs {
                last_cell[g] = c;
            }
        }
        let mut closing = vec![Vec::new(); cells.len()];
        for (g, &c) in last_cell.iter().enumerate() {
            if c != usize::MAX {
                closing[c].push(g);
            }
        }
        let max_cover = covers.iter().map(Vec::len).max().unwrap_or(1).max(1);
        CellProblem {
            cells,
            covers,
            group_count,
            last_cell,
            closing,
            max_cover,
        }
    }

    fn feasible_at_all(&self) -> bool {
        self.last_cell.iter().all(|&c| c != usize::MAX)
    }

    /// Visits every assignment of nonnegative values summing to `total`
    /// that covers every group, in lexicographic order of the cell values.
    fn solve(&self, total: u32, visit: &mut dyn FnMut(&[u32])) {
        if !self.feasible_at_all() {
            return;
        }
        let mut values = vec![0u32; self.cells.len()];
        let mut coverage = vec![0u32; self.group_count];
        let mut uncovered = self.group_count;
        self.step(0, total, &mut values, &mut coverage, &mut uncovered, visit);
    }

    fn step(
        &self,
        pos: usize,
        remaining: u32,
        values: &mut [u32],
        coverage: &mut [u32],
        uncovered: &mut usize,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        let needed = (*uncovered).div_ceil(self.max_cover);
        if (remaining as usize) < needed {
            return;
        }
        if pos == self.cells.len() {
            if remaining == 0 && *uncovered == 0 {
                visit(values);
            }
            return;
        }
        for v in 0..=remaining {
            values[pos] = v;
            if v > 0 {
                for &g in &self.covers[pos] {
                    if coverage[g] == 0 {
                        *uncovered -= 1;
                    }
                    coverage[g] += 1;
                }
            }
            let dead = self.closing[pos].iter().any(|&g| coverage[g] == 0);
            if !dead {
                self.step(pos + 1, remaining - v, values, coverage, uncovered, visit);
            }
            if v > 0 {
                for &g in &self.covers[pos] {
                    coverage[g] -= 1;
                    if coverage[g] == 0 {
                        *uncovered += 1;
                    }
                }
            }
        }
        values[pos] = 0;
    }
}

fn upper_cells(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// All `n x n` Fishburn matrices of size `m`, in row-major lexicographic order.
pub fn fishburn_of_dimension(n: usize, m: u32, visit: &mut dyn FnMut(&FishburnMatrix)) {
    if n == 0 {
        return;
    }
    let cells = upper_cells(n);
    // groups 0..n are rows, n..2n columns
    let covers = cells.iter().map(|&(i, j)| vec![i, n + j]).collect();
    let problem = CellProblem::new(cells.clone(), covers, 2 * n);
    problem.solve(m, &mut |vals| {
        let mut mat = TriangularMatrix::zeros(n);
        for (&(i, j), &v) in cells.iter().zip(vals) {
            mat.set(i, j, v);
        }
        visit(&mat);
    });
}

/// All `n x n` row-Fishburn matrices of size `m`.
pub fn row_fishburn_of_dimension(n: usize, m: u32, visit: &mut dyn FnMut(&RowFishburnMatrix)) {
    if n == 0 {
        return;
    }
    let cells = upper_cells(n);
    let covers = cells.iter().map(|&(i, _)| vec![i]).collect();
    let problem = CellProblem::new(cells.clone(), covers, n);
    problem.solve(m, &mut |vals| {
        let mut mat = TriangularMatrix::zeros(n);
        for (&(i, j), &v) in cells.iter().zip(vals) {
            mat.set(i, j, v);
        }
        visit(&mat);
    });
}

/// All `n x n` self-dual Fishburn matrices of reduced size `m`.
pub fn self_dual_of_dimension(n: usize, m: u32, visit: &mut dyn FnMut(&SelfDualMatrix)) {
    if n == 0 {
        return;
    }
    let cells: Vec<_> = SelfDualMatrix::south_east_cells(n).collect();
    // an entry and its mirror cover columns j and n-1-i; row i is nonzero
    // exactly when column n-1-i is, so columns suffice
    let covers = cells
        .iter()
        .map(|&(i, j)| {
            let mut g = vec![j, n - 1 - i];
            g.dedup();
            g
        })
        .collect();
    let problem = CellProblem::new(cells.clone(), covers, n);
    problem.solve(m, &mut |vals| {
        visit(&SelfDualMatrix::from_south_east(
            n,
            cells.iter().copied().zip(vals.iter().copied()),
        ));
    });
}

/// Fishburn matrices of size `m`, over all dimensions `1..=m`.
/// Empty for `m = 0`.
pub fn enumerate_fishburn(m: u32) -> impl Iterator<Item = FishburnMatrix> {
    (1..=m as usize).flat_map(move |n| {
        let mut out = Vec::new();
        fishburn_of_dimension(n, m, &mut |mat| out.push(mat.clone()));
        out
    })
}

/// Row-Fishburn matrices of size `m`, over all dimensions `1..=m`.
pub fn enumerate_row_fishburn(m: u32) -> impl Iterator<Item = RowFishburnMatrix> {
    (1..=m as usize).flat_map(move |n| {
        let mut out = Vec::new();
        row_fishburn_of_dimension(n, m, &mut |mat| out.push(mat.clone()));
        out
    })
}

/// Self-dual Fishburn matrices of reduced size `m`, over dimensions `1..=2m`.
pub fn enumerate_self_dual(m: u32) -> impl Iterator<Item = SelfDualMatrix> {
    (1..=2 * m as usize).flat_map(move |n| {
        let mut out = Vec::new();
        self_dual_of_dimension(n, m, &mut |mat| out.push(mat.clone()));
        out
    })
}
