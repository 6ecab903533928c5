//! Macaulay matrices of the SupportMinors system at x-degree `b`.
//!
//! Rows are indexed by `(mu, eq)` with `mu` a monomial of degree `b - 1` and
//! columns by `(nu, T)` with `nu` a monomial of degree `b` and `T` an r-subset.
//! Both composite orders are lexicographic on the pairs: row
//! `rank(mu) * #eqs + index(eq)`, column `rank(nu) * C(n, r) + colex(T)`.

use crate::equations::{build_equations, EquationId, PlueckerIndex, SystemShape};
use crate::error::{Error, Result};
use crate::linalg::{PrimeField, SparseMatrix};
use crate::minrank::MinRankInstance;
use crate::subsets::{all_monomials, monomial_count, monomial_rank, monomial_unrank};

/// Default bound on `rows * cols` for any assembled matrix.
pub const DEFAULT_MATRIX_CAP: u128 = 1 << 25;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacaulayMatrix {
    b: usize,
    shape: SystemShape,
    row_monomials: usize,
    col_monomials: usize,
    data: SparseMatrix,
}

/// `(rows, cols)` of the degree-`b` Macaulay matrix, without overflow.
pub fn macaulay_shape(shape: &SystemShape, b: usize) -> (u128, u128) {
    let eqs = shape.m as u128 * crate::subsets::binomial(shape.n, shape.r + 1);
    let rows = monomial_count(shape.k, b - 1).saturating_mul(eqs);
    let cols =
        monomial_count(shape.k, b).saturating_mul(crate::subsets::binomial(shape.n, shape.r));
    (rows, cols)
}

pub fn check_matrix_cap(rows: u128, cols: u128, cap: u128) -> Result<()> {
    if rows.saturating_mul(cols) > cap {
        return Err(Error::MatrixCap { rows, cols, cap });
    }
    Ok(())
}

pub fn macaulay(inst: &MinRankInstance, b: usize) -> Result<MacaulayMatrix> {
    macaulay_capped(inst, b, DEFAULT_MATRIX_CAP)
}

pub fn macaulay_capped(inst: &MinRankInstance, b: usize, cap: u128) -> Result<MacaulayMatrix> {
    if b == 0 {
        return Err(Error::InvalidParameters(
            "x-degree b must be at least 1".into(),
        ));
    }
    let shape = SystemShape::of(inst);
    let (rows, cols) = macaulay_shape(&shape, b);
    check_matrix_cap(rows, cols, cap)?;
    let eqs = build_equations(inst)?;
    let k = shape.k;
    let n_pl = shape.pluecker_count();
    let row_monos = all_monomials(k, b - 1);
    let col_monomials = monomial_count(k, b) as usize;
    // product table: rank(mu * x_l) for every row monomial mu
    let mut times = Vec::with_capacity(row_monos.len() * k);
    for mu in &row_monos {
        for l in 0..k {
            let mut prod = mu.clone();
            let pos = prod.partition_point(|&v| v <= l);
            prod.insert(pos, l);
            times.push(monomial_rank(&prod, k)?);
        }
    }
    let mut data = Vec::with_capacity(rows as usize);
    for mu in 0..row_monos.len() {
        for eq in &eqs {
            let row = eq
                .terms
                .iter()
                .map(|t| (times[mu * k + t.var] * n_pl + t.pluecker, t.coeff))
                .collect();
            data.push(row);
        }
    }
    let data = SparseMatrix::from_rows(inst.field(), cols as usize, data)?;
    Ok(MacaulayMatrix {
        b,
        shape,
        row_monomials: row_monos.len(),
        col_monomials,
        data,
    })
}

impl MacaulayMatrix {
    pub fn b(&self) -> usize {
        self.b
    }

    pub fn shape(&self) -> SystemShape {
        self.shape
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.data
    }

    pub fn field(&self) -> PrimeField {
        self.data.field()
    }

    pub fn rows(&self) -> usize {
        self.data.rows()
    }

    pub fn cols(&self) -> usize {
        self.data.cols()
    }

    pub fn row_monomial_count(&self) -> usize {
        self.row_monomials
    }

    pub fn col_monomial_count(&self) -> usize {
        self.col_monomials
    }

    pub fn row_index(&self, mu: &[usize], eq: EquationId) -> Result<usize> {
        let r = monomial_rank(mu, self.shape.k)?;
        if mu.len() + 1 != self.b {
            return Err(Error::OutOfRange(format!(
                "row monomial {mu:?} has the wrong degree"
            )));
        }
        Ok(r * self.shape.equation_count() + eq.index(self.shape.n, self.shape.r))
    }

    pub fn row_key(&self, row: usize) -> Result<(Vec<usize>, EquationId)> {
        if row >= self.rows() {
            return Err(Error::OutOfRange(format!("row {row}")));
        }
        let per = self.shape.equation_count();
        let mu = monomial_unrank(row / per, self.shape.k, self.b - 1)?;
        Ok((
            mu,
            EquationId::from_index(row % per, self.shape.n, self.shape.r),
        ))
    }

    /// Column of `nu * c_T` given the rank of `nu` and of `T`.
    #[inline]
    pub fn col_of(&self, nu_rank: usize, pluecker: usize) -> usize {
        nu_rank * self.shape.pluecker_count() + pluecker
    }

    pub fn col_index(&self, nu: &[usize], t: &PlueckerIndex) -> Result<usize> {
        if nu.len() != self.b {
            return Err(Error::OutOfRange(format!(
                "column monomial {nu:?} has the wrong degree"
            )));
        }
        Ok(self.col_of(monomial_rank(nu, self.shape.k)?, t.rank))
    }

    pub fn col_key(&self, col: usize) -> Result<(Vec<usize>, PlueckerIndex)> {
        if col >= self.cols() {
            return Err(Error::OutOfRange(format!("column {col}")));
        }
        let per = self.shape.pluecker_count();
        let nu = monomial_unrank(col / per, self.shape.k, self.b)?;
        Ok((
            nu,
            PlueckerIndex::from_rank(col % per, self.shape.n, self.shape.r)?,
        ))
    }

    pub fn rank(&self) -> usize {
        self.data.rank()
    }

    /// Vector of `nu(x) * p_T` over all columns.
    pub fn evaluation_vector(&self, x: &[u32], pluecker: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.shape.k || pluecker.len() != self.shape.pluecker_count() {
            return Err(Error::DimensionMismatch(
                "evaluation point has the wrong shape".into(),
            ));
        }
        let f = self.field();
        let mut out = Vec::with_capacity(self.cols());
        for nu in all_monomials(self.shape.k, self.b) {
            let value = nu.iter().fold(1, |acc, &v| f.mul(acc, x[v]));
            out.extend(pluecker.iter().map(|&p| f.mul(value, p)));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::{pluecker_coordinates, row_space_cover};
    use crate::minrank::{evaluate_pencil, gen_planted, gen_random};

    fn gf(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn dimensions() {
        let inst = gen_random(gf(32003), 4, 4, 3, 2, 0).unwrap();
        let m1 = macaulay(&inst, 1).unwrap();
        assert_eq!((m1.rows(), m1.cols()), (16, 18));
        let m2 = macaulay(&inst, 2).unwrap();
        assert_eq!((m2.rows(), m2.cols()), (48, 36));
        let sub = gen_random(gf(32003), 5, 3, 5, 2, 0).unwrap();
        let m4 = macaulay(&sub, 4).unwrap();
        assert_eq!((m4.rows(), m4.cols()), (175, 210));
        assert!(macaulay(&inst, 0).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let inst = gen_random(gf(7), 4, 4, 3, 2, 0).unwrap();
        assert!(matches!(
            macaulay_capped(&inst, 2, 100),
            Err(Error::MatrixCap {
                rows: 48,
                cols: 36,
                ..
            })
        ));
    }

    #[test]
    fn index_maps_are_bijections() {
        let inst = gen_random(gf(7), 3, 4, 3, 2, 5).unwrap();
        let mac = macaulay(&inst, 2).unwrap();
        for row in 0..mac.rows() {
            let (mu, eq) = mac.row_key(row).unwrap();
            assert_eq!(mac.row_index(&mu, eq).unwrap(), row);
        }
        for col in 0..mac.cols() {
            let (nu, t) = mac.col_key(col).unwrap();
            assert_eq!(mac.col_index(&nu, &t).unwrap(), col);
        }
        assert!(mac.row_key(mac.rows()).is_err());
        assert!(mac.col_key(mac.cols()).is_err());
    }

    #[test]
    fn degree_one_rows_reappear_at_degree_two() {
        let inst = gen_random(gf(7), 3, 4, 3, 1, 2).unwrap();
        let m1 = macaulay(&inst, 1).unwrap();
        let m2 = macaulay(&inst, 2).unwrap();
        let k = 3;
        for l in 0..k {
            for row in 0..m1.rows() {
                let (_, eq) = m1.row_key(row).unwrap();
                let big = m2.row_index(&[l], eq).unwrap();
                let shifted: Vec<(usize, u32)> = m1
                    .matrix()
                    .row(row)
                    .iter()
                    .map(|&(c, v)| {
                        let (nu, t) = m1.col_key(c).unwrap();
                        let mut prod = vec![nu[0], l];
                        prod.sort();
                        (m2.col_index(&prod, &t).unwrap(), v)
                    })
                    .collect();
                let mut shifted = shifted;
                shifted.sort();
                assert_eq!(m2.matrix().row(big), shifted.as_slice());
            }
        }
    }

    #[test]
    fn planted_evaluation_lies_in_kernel() {
        for b in 1..=3 {
            let (inst, x) = gen_planted(gf(31), 3, 4, 3, 2, b as u64).unwrap();
            let c = row_space_cover(&evaluate_pencil(&inst, &x).unwrap(), 2).unwrap();
            let p = pluecker_coordinates(&c).unwrap();
            let mac = macaulay(&inst, b).unwrap();
            let v = mac.evaluation_vector(&x, &p).unwrap();
            assert!(v.iter().any(|&e| e != 0));
            assert!(mac.matrix().mul_vec(&v).unwrap().iter().all(|&e| e == 0));
            assert!(mac.rank() < mac.cols());
        }
    }
}
