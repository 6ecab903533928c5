use super::dense::{DenseMatrix, Rref};
use super::field::PrimeField;
use crate::error::{Error, Result};

/// Matrices with at most this many entries are eliminated densely.
pub const DEFAULT_DENSE_THRESHOLD: usize = 1 << 22;

/// Choice between dense and sparse elimination. Ranks do not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EliminationConfig {
    pub dense_threshold: usize,
}

impl Default for EliminationConfig {
    fn default() -> Self {
        Self {
            dense_threshold: DEFAULT_DENSE_THRESHOLD,
        }
    }
}

/// Row-compressed sparse matrix; each row is sorted by column with no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    field: PrimeField,
    cols: usize,
    rows: Vec<Vec<(usize, u32)>>,
}

impl SparseMatrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            cols,
            rows: vec![Vec::new(); rows],
        }
    }

    /// Builds a matrix from unsorted `(column, value)` rows. Duplicate columns
    /// are summed and zeros dropped.
    pub fn from_rows(field: PrimeField, cols: usize, rows: Vec<Vec<(usize, u32)>>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .map(|row| normalize_row(field, cols, row))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { field, cols, rows })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, u32)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.field, self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                d.set(i, j, v);
            }
        }
        d
    }

    pub fn from_dense(d: &DenseMatrix) -> Self {
        let rows = (0..d.rows())
            .map(|i| {
                d.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, &v)| (j, v))
                    .collect()
            })
            .collect();
        Self {
            field: d.field(),
            cols: d.cols(),
            rows,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.cols];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                rows[j].push((i, v));
            }
        }
        Self {
            field: self.field,
            cols: self.rows.len(),
            rows,
        }
    }

    /// `v * M` for a row vector `v`.
    pub fn left_mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.rows.len() {
            return Err(Error::DimensionMismatch(format!(
                "row vector of length {} against {} rows",
                v.len(),
                self.rows.len()
            )));
        }
        let f = self.field;
        let mut out = vec![0u32; self.cols];
        for (row, &c) in self.rows.iter().zip(v) {
            if c == 0 {
                continue;
            }
            for &(j, a) in row {
                out[j] = f.mul_add(out[j], c, a);
            }
        }
        Ok(out)
    }

    /// `M * v`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = self.field;
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().fold(0, |acc, &(j, a)| f.mul_add(acc, a, v[j])))
            .collect())
    }

    pub fn rank(&self) -> usize {
        self.rank_with(&EliminationConfig::default())
    }

    pub fn rank_with(&self, config: &EliminationConfig) -> usize {
        if self.rows.len().saturating_mul(self.cols) <= config.dense_threshold {
            self.to_dense().rank()
        } else {
            self.markowitz_rank()
        }
    }

    pub fn rref(&self) -> Rref {
        self.to_dense().rref()
    }

    pub fn right_kernel_basis(&self) -> Vec<Vec<u32>> {
        self.to_dense().right_kernel_basis()
    }

    pub fn left_kernel_dim(&self) -> usize {
        self.rows.len() - self.rank()
    }

    /// Structured elimination: repeatedly take the lightest remaining row and,
    /// inside it, the column with the fewest remaining entries (ties broken by
    /// lowest index), then clear that column from every other active row.
    pub fn markowitz_rank(&self) -> usize {
        let f = self.field;
        let mut rows = self.rows.clone();
        let mut active = vec![true; rows.len()];
        let mut col_count = vec![0usize; self.cols];
        // may hold stale row ids; membership is rechecked before use
        let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); self.cols];
        for (i, row) in rows.iter().enumerate() {
            for &(j, _) in row {
                col_count[j] += 1;
                col_rows[j].push(i);
            }
        }
        let mut scratch = Vec::new();
        let mut rank = 0;
        loop {
            let pivot_row = (0..rows.len())
                .filter(|&i| active[i] && !rows[i].is_empty())
                .min_by_key(|&i| (rows[i].len(), i));
            let Some(p) = pivot_row else { break };
            active[p] = false;
            let pivot = std::mem::take(&mut rows[p]);
            let &(pc, pv) = pivot
                .iter()
                .min_by_key(|&&(j, _)| (col_count[j], j))
                .expect("nonempty row");
            for &(j, _) in &pivot {
                col_count[j] -= 1;
            }
            let pinv = f.inv_nonzero(pv);
            let targets = std::mem::take(&mut col_rows[pc]);
            for s in targets {
                if !active[s] {
                    continue;
                }
                let Ok(pos) = rows[s].binary_search_by_key(&pc, |&(j, _)| j) else {
                    continue;
                };
                let factor = f.neg(f.mul(rows[s][pos].1, pinv));
                scratch.clear();
                axpy_merge(f, &rows[s], factor, &pivot, &mut scratch);
                // bookkeeping for entries that appeared or vanished
                let old = std::mem::replace(&mut rows[s], scratch.clone());
                let (mut a, mut b) = (0, 0);
                while a < old.len() || b < rows[s].len() {
                    let oa = old.get(a).map(|e| e.0);
                    let nb = rows[s].get(b).map(|e| e.0);
                    match (oa, nb) {
                        (Some(x), Some(y)) if x == y => {
                            a += 1;
                            b += 1;
                        }
                        (Some(x), Some(y)) if x < y => {
                            col_count[x] -= 1;
                            a += 1;
                        }
                        (Some(x), None) => {
                            col_count[x] -= 1;
                            a += 1;
                        }
                        (_, Some(y)) => {
                            col_count[y] += 1;
                            col_rows[y].push(s);
                            b += 1;
                        }
                        (None, None) => unreachable!(),
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// `out = a + factor * b` on sorted sparse rows.
fn axpy_merge(
    f: PrimeField,
    a: &[(usize, u32)],
    factor: u32,
    b: &[(usize, u32)],
    out: &mut Vec<(usize, u32)>,
) {
    let (mut i, mut k) = (0, 0);
    while i < a.len() || k < b.len() {
        let ja = a.get(i).map_or(usize::MAX, |e| e.0);
        let jb = b.get(k).map_or(usize::MAX, |e| e.0);
        if ja < jb {
            out.push(a[i]);
            i += 1;
        } else if jb < ja {
            let v = f.mul(factor, b[k].1);
            if v != 0 {
                out.push((jb, v));
            }
            k += 1;
        } else {
            let v = f.mul_add(a[i].1, factor, b[k].1);
            if v != 0 {
                out.push((ja, v));
            }
            i += 1;
            k += 1;
        }
    }
}

fn normalize_row(
    field: PrimeField,
    cols: usize,
    mut row: Vec<(usize, u32)>,
) -> Result<Vec<(usize, u32)>> {
    if let Some(&(j, _)) = row.iter().find(|&&(j, _)| j >= cols) {
        return Err(Error::DimensionMismatch(format!(
            "column {j} outside {cols} columns"
        )));
    }
    row.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, u32)> = Vec::with_capacity(row.len());
    for (j, v) in row {
        let v = field.reduce(v as u64);
        match out.last_mut() {
            Some(last) if last.0 == j => last.1 = field.add(last.1, v),
            _ => out.push((j, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn from_rows_normalizes() {
        let m =
            SparseMatrix::from_rows(gf(5), 4, vec![vec![(3, 1), (0, 2), (3, 4), (1, 0)]]).unwrap();
        assert_eq!(m.row(0), &[(0, 2)]);
        assert!(SparseMatrix::from_rows(gf(5), 2, vec![vec![(2, 1)]]).is_err());
    }

    #[test]
    fn markowitz_agrees_on_small_cases() {
        let f = gf(5);
        let m = SparseMatrix::from_rows(f, 2, vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 4)]])
            .unwrap();
        assert_eq!(m.markowitz_rank(), 1);
        let id = SparseMatrix::from_dense(&DenseMatrix::identity(f, 5));
        assert_eq!(id.markowitz_rank(), 5);
        assert_eq!(SparseMatrix::new(f, 3, 4).markowitz_rank(), 0);
    }

    #[test]
    fn dense_round_trip() {
        let f = gf(7);
        let d = DenseMatrix::from_rows(f, &[vec![0, 3, 0], vec![1, 0, 6]]).unwrap();
        let s = SparseMatrix::from_dense(&d);
        assert_eq!(s.nnz(), 3);
        assert_eq!(s.to_dense(), d);
        assert_eq!(s.transpose().to_dense(), d.transpose());
    }

    #[test]
    fn strategy_threshold_switches_path() {
        let f = gf(3);
        let m =
            SparseMatrix::from_rows(f, 3, vec![vec![(0, 1)], vec![(0, 2)], vec![(2, 1)]]).unwrap();
        let dense = EliminationConfig {
            dense_threshold: usize::MAX,
        };
        let sparse = EliminationConfig { dense_threshold: 0 };
        assert_eq!(m.rank_with(&dense), 2);
        assert_eq!(m.rank_with(&sparse), 2);
    }
}
