//! The SupportMinors equations.
//!
//! For each row `i` of `M_x` and each `(r+1)`-subset `J` of columns, the
//! `(r+1) x (r+1)` minor on columns `J` of the matrix stacking row `i` of `M_x`
//! on top of an `r x n` matrix `C` of unknowns. Expanding along that first row,
//! with `J = {j_1 < ... < j_{r+1}}`,
//!
//! ```text
//! sum_t (-1)^(t+1) m_{i, j_t}(x) * c_{J \ {j_t}}
//! ```
//!
//! where `c_T` is the Plücker coordinate (maximal minor of `C`) on columns `T`.
//! Plücker coordinates are treated as independent unknowns; each equation is
//! bilinear in `x` and `c`.

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, PrimeField};
use crate::minrank::MinRankInstance;
use crate::subsets::{binom_usize, subset_rank, subset_unrank};

/// An r-subset of columns together with its colex rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlueckerIndex {
    pub rank: usize,
    pub cols: Vec<usize>,
}

impl PlueckerIndex {
    pub fn from_cols(cols: Vec<usize>, n: usize) -> Result<Self> {
        let rank = subset_rank(&cols, n)?;
        Ok(Self { rank, cols })
    }

    pub fn from_rank(rank: usize, n: usize, r: usize) -> Result<Self> {
        let cols = subset_unrank(rank, n, r)?;
        Ok(Self { rank, cols })
    }
}

/// Equation identifier `(i, J)`, ordered by row then by colex rank of `J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquationId {
    pub row: usize,
    /// Colex rank of the `(r+1)`-subset `J`.
    pub subset: usize,
}

impl EquationId {
    /// Position in the `(i, colex(J))` order.
    pub fn index(&self, n: usize, r: usize) -> usize {
        self.row * binom_usize(n, r + 1) + self.subset
    }

    pub fn from_index(index: usize, n: usize, r: usize) -> Self {
        let per_row = binom_usize(n, r + 1);
        Self {
            row: index / per_row,
            subset: index % per_row,
        }
    }
}

/// Coefficient of `x_var * c_T` where `T` has colex rank `pluecker`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term {
    pub var: usize,
    pub pluecker: usize,
    pub coeff: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearEquation {
    pub id: EquationId,
    /// The column set `J`.
    pub cols: Vec<usize>,
    /// Sorted by `(var, pluecker)`; no zero coefficients.
    pub terms: Vec<Term>,
}

/// Shape of the equation system: `m * C(n, r+1)` equations in `K * C(n, r)`
/// bilinear monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemShape {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub r: usize,
}

impl SystemShape {
    pub fn of(inst: &MinRankInstance) -> Self {
        Self {
            m: inst.m(),
            n: inst.n(),
            k: inst.k(),
            r: inst.r(),
        }
    }

    pub fn equation_count(&self) -> usize {
        self.m * binom_usize(self.n, self.r + 1)
    }

    pub fn pluecker_count(&self) -> usize {
        binom_usize(self.n, self.r)
    }
}

pub fn build_equations(inst: &MinRankInstance) -> Result<Vec<BilinearEquation>> {
    let (m, n, r) = (inst.m(), inst.n(), inst.r());
    if r >= n {
        return Err(Error::InvalidParameters(format!(
            "r={r} leaves no (r+1)-subsets of {n} columns"
        )));
    }
    let f = inst.field();
    let subsets = crate::subsets::all_subsets(n, r + 1);
    let mut out = Vec::with_capacity(m * subsets.len());
    for i in 0..m {
        for (s, cols) in subsets.iter().enumerate() {
            let mut terms = Vec::with_capacity(inst.k() * cols.len());
            for l in 0..inst.k() {
                for (t, &j) in cols.iter().enumerate() {
                    let v = inst.coeff(l, i, j);
                    if v == 0 {
                        continue;
                    }
                    // t is 0-based here, so the sign (-1)^(t+1) of the 1-based
                    // expansion becomes (-1)^t
                    let coeff = if t % 2 == 0 { v } else { f.neg(v) };
                    let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
                    terms.push(Term {
                        var: l,
                        pluecker: subset_rank(&rest, n)?,
                        coeff,
                    });
                }
            }
            terms.sort_by_key(|t| (t.var, t.pluecker));
            out.push(BilinearEquation {
                id: EquationId { row: i, subset: s },
                cols: cols.clone(),
                terms,
            });
        }
    }
    Ok(out)
}

/// Determinant of a square matrix by elimination.
pub fn determinant(a: &DenseMatrix) -> Result<u32> {
    if a.rows() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "determinant of a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let f = a.field();
    let n = a.rows();
    let mut m: Vec<u32> = a.as_slice().to_vec();
    let mut det = 1u32;
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| m[i * n + col] != 0) else {
            return Ok(0);
        };
        if p != col {
            for j in 0..n {
                m.swap(p * n + j, col * n + j);
            }
            det = f.neg(det);
        }
        let pv = m[col * n + col];
        det = f.mul(det, pv);
        let inv = f.inv_nonzero(pv);
        for i in col + 1..n {
            let factor = f.mul(m[i * n + col], inv);
            if factor == 0 {
                continue;
            }
            for j in col..n {
                m[i * n + j] = f.sub(m[i * n + j], f.mul(factor, m[col * n + j]));
            }
        }
    }
    Ok(det)
}

/// Plücker coordinates of an `r x n` matrix, indexed by colex rank.
pub fn pluecker_coordinates(c: &DenseMatrix) -> Result<Vec<u32>> {
    let (r, n) = (c.rows(), c.cols());
    crate::subsets::all_subsets(n, r)
        .into_iter()
        .map(|cols| {
            let mut data = Vec::with_capacity(r * r);
            for i in 0..r {
                data.extend(cols.iter().map(|&j| c.get(i, j)));
            }
            determinant(&DenseMatrix::from_vec(c.field(), r, r, data)?)
        })
        .collect()
}

/// An `r x n` matrix of rank `r` whose row space contains that of `a`: the
/// nonzero rows of `rref(a)` followed by unit rows on the first non-pivot
/// columns.
pub fn row_space_cover(a: &DenseMatrix, r: usize) -> Result<DenseMatrix> {
    let rref = a.rref();
    if rref.rank > r || r > a.cols() {
        return Err(Error::InvalidParameters(format!(
            "rank {} does not fit in {r} rows over {} columns",
            rref.rank,
            a.cols()
        )));
    }
    let f: PrimeField = a.field();
    let mut data = Vec::with_capacity(r * a.cols());
    for i in 0..rref.rank {
        data.extend_from_slice(rref.matrix.row(i));
    }
    let free = (0..a.cols()).filter(|c| !rref.pivots.contains(c));
    for c in free.take(r - rref.rank) {
        data.extend((0..a.cols()).map(|j| u32::from(j == c)));
    }
    DenseMatrix::from_vec(f, r, a.cols(), data)
}

/// Value of an equation at `x` and Plücker vector `p`.
pub fn evaluate_equation(f: PrimeField, eq: &BilinearEquation, x: &[u32], p: &[u32]) -> u32 {
    eq.terms.iter().fold(0, |acc, t| {
        f.add(acc, f.mul(t.coeff, f.mul(x[t.var], p[t.pluecker])))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minrank::{evaluate_pencil, gen_planted};

    fn gf(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn two_by_two_example() {
        let f = gf(5);
        let inst = MinRankInstance::new(
            f,
            1,
            vec![DenseMatrix::from_rows(f, &[vec![1, 2]]).unwrap()],
        )
        .unwrap();
        let eqs = build_equations(&inst).unwrap();
        assert_eq!(eqs.len(), 1);
        // m11 * c_{2} - m12 * c_{1}, with c_{1} rank 0 and c_{2} rank 1
        assert_eq!(
            eqs[0].terms,
            vec![
                Term {
                    var: 0,
                    pluecker: 0,
                    coeff: 3
                },
                Term {
                    var: 0,
                    pluecker: 1,
                    coeff: 1
                },
            ]
        );
    }

    #[test]
    fn equation_count_and_order() {
        let (inst, _) = gen_planted(gf(7), 3, 5, 2, 2, 1).unwrap();
        let eqs = build_equations(&inst).unwrap();
        let shape = SystemShape::of(&inst);
        assert_eq!(eqs.len(), 3 * 10);
        assert_eq!(eqs.len(), shape.equation_count());
        for (idx, e) in eqs.iter().enumerate() {
            assert_eq!(e.id.index(5, 2), idx);
            assert_eq!(EquationId::from_index(idx, 5, 2), e.id);
            assert!(e.terms.iter().all(|t| t.coeff != 0));
            assert!(e.terms.len() <= 2 * 3);
        }
    }

    #[test]
    fn rejects_full_rank_target() {
        let f = gf(7);
        let inst = MinRankInstance::new(f, 2, vec![DenseMatrix::identity(f, 2)]).unwrap();
        assert!(build_equations(&inst).is_err());
    }

    #[test]
    fn determinants() {
        let f = gf(7);
        let a = DenseMatrix::from_rows(f, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(determinant(&a).unwrap(), 6);
        let b = DenseMatrix::from_rows(f, &[vec![2, 3, 1], vec![4, 6, 2], vec![1, 1, 1]]).unwrap();
        assert_eq!(determinant(&b).unwrap(), 0);
        let c = DenseMatrix::from_rows(f, &[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]).unwrap();
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(determinant(&c).unwrap(), 0);
        let d = DenseMatrix::from_rows(f, &[vec![1, 2, 0], vec![0, 1, 4], vec![5, 6, 0]]).unwrap();
        // 1(0-24) - 2(0-20) + 0 = 16 = 2 mod 7
        assert_eq!(determinant(&d).unwrap(), 2);
    }

    #[test]
    fn planted_solution_zeroes_every_equation() {
        for q in [7u64, 32003] {
            for seed in 0..5 {
                let (inst, x) = gen_planted(gf(q), 4, 5, 3, 2, seed).unwrap();
                let f = inst.field();
                let c = row_space_cover(&evaluate_pencil(&inst, &x).unwrap(), 2).unwrap();
                let p = pluecker_coordinates(&c).unwrap();
                assert!(p.iter().any(|&v| v != 0));
                for eq in build_equations(&inst).unwrap() {
                    assert_eq!(evaluate_equation(f, &eq, &x, &p), 0);
                }
            }
        }
    }
}
