use std::fmt;

use super::field::PrimeField;
use crate::error::{Error, Result};

/// Row-major dense matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub matrix: DenseMatrix,
    /// Pivot column of each of the first `rank` rows, strictly increasing.
    pub pivots: Vec<usize>,
}

impl DenseMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row-major data. Entries are reduced mod q.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let q = field.modulus();
        let data = data.into_iter().map(|v| v % q).collect();
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from signed integer rows, reducing each entry.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&v| field.from_i64(v)).collect();
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.field.modulus());
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.mul_add(out.data[idx], a, other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `M * v`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect())
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != other.rows || self.cols != other.cols || self.field != other.field {
            return Err(Error::DimensionMismatch(
                "matrix sum of different shapes".into(),
            ));
        }
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Self { data, ..*self })
    }

    pub fn scale(&self, s: u32) -> DenseMatrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Self { data, ..*self }
    }

    /// Gauss-Jordan elimination with the first nonzero entry of each column as
    /// pivot, so the output is reproducible bit for bit.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let q = f.modulus() as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&i| m[i * cols + col] != 0) else {
                continue;
            };
            if p != rank {
                for j in col..cols {
                    m.swap(p * cols + j, rank * cols + j);
                }
            }
            let inv = f.inv_nonzero(m[rank * cols + col]);
            for j in col..cols {
                let idx = rank * cols + j;
                m[idx] = f.mul(m[idx], inv);
            }
            let (before, rest) = m.split_at_mut(rank * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let factor = row[col];
                if factor == 0 {
                    return;
                }
                let neg = q - factor as u64;
                for j in col..cols {
                    if pivot_row[j] != 0 {
                        row[j] = ((row[j] as u64 + neg * pivot_row[j] as u64) % q) as u32;
                    }
                }
            };
            before.chunks_exact_mut(cols).for_each(eliminate);
            after.chunks_exact_mut(cols).for_each(eliminate);
            pivots.push(col);
            rank += 1;
        }
        Rref {
            rank,
            matrix: Self {
                field: f,
                rows,
                cols,
                data: m,
            },
            pivots,
        }
    }

    /// Rank by forward elimination only.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let q = f.modulus() as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&i| m[i * cols + col] != 0) else {
                continue;
            };
            if p != rank {
                for j in col..cols {
                    m.swap(p * cols + j, rank * cols + j);
                }
            }
            let inv = f.inv_nonzero(m[rank * cols + col]) as u64;
            let (head, tail) = m.split_at_mut((rank + 1) * cols);
            let pivot_row = &head[rank * cols..];
            for row in tail.chunks_exact_mut(cols) {
                if row[col] == 0 {
                    continue;
                }
                let factor = row[col] as u64 * inv % q;
                let neg = q - factor;
                for j in col..cols {
                    if pivot_row[j] != 0 {
                        row[j] = ((row[j] as u64 + neg * pivot_row[j] as u64) % q) as u32;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of `{v : M v = 0}`: one vector per free column `f` of the RREF,
    /// with a 1 at `f`, zeros at the other free columns.
    pub fn right_kernel_basis(&self) -> Vec<Vec<u32>> {
        let rref = self.rref();
        kernel_from_rref(&rref)
    }

    /// `rows - rank`.
    pub fn left_kernel_dim(&self) -> usize {
        self.rows - self.rank()
    }
}

pub(crate) fn kernel_from_rref(rref: &Rref) -> Vec<Vec<u32>> {
    let m = &rref.matrix;
    let f = m.field;
    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &p in &rref.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u32; cols];
            v[free] = 1;
            for (i, &p) in rref.pivots.iter().enumerate() {
                v[p] = f.neg(m.get(i, free));
            }
            v
        })
        .collect()
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "DenseMatrix {}x{} over GF({})",
            self.rows,
            self.cols,
            self.field.modulus()
        )?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn identity_rref() {
        let id = DenseMatrix::identity(gf(7), 3);
        let r = id.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.matrix, id);
        assert!(id.right_kernel_basis().is_empty());
        assert_eq!(id.left_kernel_dim(), 0);
    }

    #[test]
    fn zero_matrix() {
        let z = DenseMatrix::zeros(gf(5), 2, 3);
        let r = z.rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
        let k = z.right_kernel_basis();
        assert_eq!(k, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn dependent_rows_mod_five() {
        let m = DenseMatrix::from_rows(gf(5), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.rref().rank, 1);
        assert_eq!(m.left_kernel_dim(), 1);
    }

    #[test]
    fn kernel_of_single_row() {
        let m = DenseMatrix::from_rows(gf(5), &[vec![1, 2]]).unwrap();
        assert_eq!(m.right_kernel_basis(), vec![vec![3, 1]]);
    }

    #[test]
    fn equal_rows_have_one_left_kernel_vector() {
        let m = DenseMatrix::from_rows(gf(7), &[vec![1, 2, 3], vec![1, 2, 3]]).unwrap();
        assert_eq!(m.left_kernel_dim(), 1);
        assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn rref_is_reduced() {
        let m = DenseMatrix::from_rows(
            gf(7),
            &[vec![0, 2, 4, 1], vec![0, 1, 2, 3], vec![3, 1, 1, 1]],
        )
        .unwrap();
        let r = m.rref();
        assert_eq!(r.pivots, vec![0, 1, 3]);
        for (i, &p) in r.pivots.iter().enumerate() {
            for k in 0..m.rows() {
                assert_eq!(r.matrix.get(k, p), u32::from(k == i));
            }
        }
        assert_eq!(r.matrix.rref().matrix, r.matrix);
    }

    #[test]
    fn shape_checks() {
        let f = gf(3);
        assert!(DenseMatrix::from_vec(f, 2, 2, vec![1, 2, 3]).is_err());
        let a = DenseMatrix::zeros(f, 2, 3);
        assert!(a.mul(&a).is_err());
        assert!(a.mul_vec(&[1, 2]).is_err());
    }
}
