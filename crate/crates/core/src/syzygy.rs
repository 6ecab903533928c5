//! Linear syzygies of the SupportMinors equations that involve only the pencil
//! variables.
//!
//! Before specialization the pencil entries are free variables `y_{k,j}`;
//! specialization replaces `y_{k,j}` with the linear form
//! `sum_l m^l_{k,j} x_l`. A syzygy is stored as a map from equation id to its
//! linear-form coefficient.
//!
//! Two families are enumerated, both for `(r+2)`-column sets
//! `J+ = {j_1 < ... < j_{r+2}}`:
//!
//! * one per row `h`: the expansion along a duplicated row `h` of the
//!   `(r+2) x (r+2)` determinant, with entry `(-1)^(t+1) y_{h, j_t}` at
//!   equation `(h, J+ \ {j_t})`;
//! * one per row pair `h1 < h2`: the difference of the expansions along rows
//!   `h1` and `h2`, with entry `(-1)^(t+1) y_{h1, j_t}` at `(h2, J+ \ {j_t})`
//!   and `-(-1)^t y_{h2, j_t}` (the same sign) at `(h1, J+ \ {j_t})`.
//!
//! Together there are `C(m+1, 2) C(n, r+2)` of them.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};

use crate::equations::{BilinearEquation, EquationId};
use crate::error::{Error, Result};
use crate::estimator::binomial;
use crate::linalg::{DenseMatrix, PrimeField};
use crate::macaulay::{macaulay_capped, MacaulayMatrix, DEFAULT_MATRIX_CAP};
use crate::minrank::MinRankInstance;
use crate::subsets::{all_subsets, monomial_rank, subset_rank};

/// Variable universe of a linear form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Universe {
    /// `y_{k,j}` with id `k * n + j`.
    Y { m: usize, n: usize },
    /// `x_l` with id `l`.
    X { k: usize },
}

impl Universe {
    fn size(&self) -> usize {
        match *self {
            Universe::Y { m, n } => m * n,
            Universe::X { k } => k,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    universe: Universe,
    coeffs: BTreeMap<usize, u32>,
}

impl LinearForm {
    pub fn zero(universe: Universe) -> Self {
        Self {
            universe,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    /// Adds `c * var`, dropping the term if it cancels.
    pub fn add_term(&mut self, f: PrimeField, var: usize, c: u32) -> Result<()> {
        if var >= self.universe.size() {
            return Err(Error::OutOfRange(format!(
                "variable {var} outside {:?}",
                self.universe
            )));
        }
        let entry = self.coeffs.entry(var).or_insert(0);
        *entry = f.add(*entry, c);
        if *entry == 0 {
            self.coeffs.remove(&var);
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.coeffs.iter().map(|(&v, &c)| (v, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SyzygyOrigin {
    DuplicatedRow {
        h: usize,
        cols: Vec<usize>,
    },
    RowPair {
        h1: usize,
        h2: usize,
        cols: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syzygy {
    pub universe: Universe,
    pub entries: BTreeMap<EquationId, LinearForm>,
    pub origin: SyzygyOrigin,
}

impl Syzygy {
    fn new(universe: Universe, origin: SyzygyOrigin) -> Self {
        Self {
            universe,
            entries: BTreeMap::new(),
            origin,
        }
    }

    fn add(&mut self, f: PrimeField, id: EquationId, var: usize, c: u32) -> Result<()> {
        let universe = self.universe;
        let form = self
            .entries
            .entry(id)
            .or_insert_with(|| LinearForm::zero(universe));
        form.add_term(f, var, c)?;
        if form.is_zero() {
            self.entries.remove(&id);
        }
        Ok(())
    }
}

/// Sign `(-1)^(t+1)` for a 1-based position, given the 0-based index `t0`.
fn cofactor_sign(f: PrimeField, t0: usize) -> u32 {
    if t0.is_multiple_of(2) {
        1
    } else {
        f.neg(1)
    }
}

fn drop_one(cols: &[usize], skip: usize, n: usize) -> Result<usize> {
    let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != skip).collect();
    subset_rank(&rest, n)
}

/// Duplicated-row syzygies, one per `(h, J+)`, ordered by `h` then colex `J+`.
pub fn enumerate_sprime1(f: PrimeField, m: usize, n: usize, r: usize) -> Result<Vec<Syzygy>> {
    if r + 2 > n {
        return Ok(Vec::new());
    }
    let universe = Universe::Y { m, n };
    let mut out = Vec::new();
    for h in 0..m {
        for cols in all_subsets(n, r + 2) {
            let mut s = Syzygy::new(
                universe,
                SyzygyOrigin::DuplicatedRow {
                    h,
                    cols: cols.clone(),
                },
            );
            for (t, &j) in cols.iter().enumerate() {
                let id = EquationId {
                    row: h,
                    subset: drop_one(&cols, j, n)?,
                };
                s.add(f, id, h * n + j, cofactor_sign(f, t))?;
            }
            out.push(s);
        }
    }
    Ok(out)
}

/// Row-pair syzygies, one per `(h1 < h2, J+)`.
pub fn enumerate_sprime3(f: PrimeField, m: usize, n: usize, r: usize) -> Result<Vec<Syzygy>> {
    if r + 2 > n || m < 2 {
        return Ok(Vec::new());
    }
    let universe = Universe::Y { m, n };
    let mut out = Vec::new();
    for h2 in 1..m {
        for h1 in 0..h2 {
            for cols in all_subsets(n, r + 2) {
                let mut s = Syzygy::new(
                    universe,
                    SyzygyOrigin::RowPair {
                        h1,
                        h2,
                        cols: cols.clone(),
                    },
                );
                for (t, &j) in cols.iter().enumerate() {
                    let subset = drop_one(&cols, j, n)?;
                    let sign = cofactor_sign(f, t);
                    s.add(f, EquationId { row: h2, subset }, h1 * n + j, sign)?;
                    s.add(f, EquationId { row: h1, subset }, h2 * n + j, sign)?;
                }
                out.push(s);
            }
        }
    }
    out.sort_by(|a, b| a.origin.cmp(&b.origin));
    Ok(out)
}

/// Both families, duplicated-row first.
pub fn enumerate_sprime(f: PrimeField, m: usize, n: usize, r: usize) -> Result<Vec<Syzygy>> {
    let mut all = enumerate_sprime1(f, m, n, r)?;
    all.extend(enumerate_sprime3(f, m, n, r)?);
    Ok(all)
}

/// Substitutes `y_{k,j} -> sum_l m^l_{k,j} x_l`.
pub fn specialize(s: &Syzygy, inst: &MinRankInstance) -> Result<Syzygy> {
    let Universe::Y { m, n } = s.universe else {
        return Err(Error::InvalidParameters(
            "syzygy is already specialized".into(),
        ));
    };
    if m != inst.m() || n != inst.n() {
        return Err(Error::DimensionMismatch(format!(
            "syzygy over {m}x{n} pencils, instance is {}x{}",
            inst.m(),
            inst.n()
        )));
    }
    let f = inst.field();
    let mut out = Syzygy::new(Universe::X { k: inst.k() }, s.origin.clone());
    for (&id, form) in &s.entries {
        for (var, c) in form.terms() {
            let (row, col) = (var / n, var % n);
            for l in 0..inst.k() {
                let v = inst.coeff(l, row, col);
                if v != 0 {
                    out.add(f, id, l, f.mul(c, v))?;
                }
            }
        }
    }
    Ok(out)
}

/// Whether `sum entry * equation` is the zero polynomial of bidegree (2, 1).
pub fn check_annihilation(f: PrimeField, s: &Syzygy, eqs: &[BilinearEquation]) -> Result<bool> {
    let Universe::X { k } = s.universe else {
        return Err(Error::InvalidParameters(
            "specialize the syzygy first".into(),
        ));
    };
    let by_id: HashMap<EquationId, &BilinearEquation> = eqs.iter().map(|e| (e.id, e)).collect();
    let mut acc: HashMap<(usize, usize), u32> = HashMap::new();
    for (id, form) in &s.entries {
        let eq = by_id
            .get(id)
            .ok_or_else(|| Error::OutOfRange(format!("syzygy entry at unknown equation {id:?}")))?;
        for (a, c) in form.terms() {
            for t in &eq.terms {
                let mono = monomial_rank(&[a.min(t.var), a.max(t.var)], k)?;
                let slot = acc.entry((mono, t.pluecker)).or_insert(0);
                *slot = f.mul_add(*slot, c, t.coeff);
            }
        }
    }
    Ok(acc.values().all(|&v| v == 0))
}

/// Coefficients of a specialized syzygy as a row vector against the degree-2
/// Macaulay matrix: entry `c x_l` at equation `e` lands in row `(x_l, e)`.
pub fn syzygy_row_vector(s: &Syzygy, mac: &MacaulayMatrix) -> Result<Vec<u32>> {
    let Universe::X { k } = s.universe else {
        return Err(Error::InvalidParameters(
            "specialize the syzygy first".into(),
        ));
    };
    if mac.b() != 2 || mac.shape().k != k {
        return Err(Error::DimensionMismatch(
            "expected the degree-2 Macaulay matrix of the same instance".into(),
        ));
    }
    let mut v = vec![0u32; mac.rows()];
    for (&id, form) in &s.entries {
        for (l, c) in form.terms() {
            v[mac.row_index(&[l], id)?] = c;
        }
    }
    Ok(v)
}

/// Dimension of the syzygies whose entries are forms of degree exactly `d`
/// in `x` alone: the left kernel dimension of the Macaulay matrix at `b = d + 1`.
pub fn xonly_syzygy_dim(inst: &MinRankInstance, d: usize) -> Result<usize> {
    xonly_syzygy_dim_capped(inst, d, DEFAULT_MATRIX_CAP)
}

pub fn xonly_syzygy_dim_capped(inst: &MinRankInstance, d: usize, cap: u128) -> Result<usize> {
    let mac = macaulay_capped(inst, d + 1, cap)?;
    Ok(mac.matrix().left_kernel_dim())
}

/// Rank of the stacked row vectors of the specialized syzygies, and whether
/// every one of them lies in the left kernel of the degree-2 Macaulay matrix.
pub fn sprime_span(inst: &MinRankInstance) -> Result<(usize, bool)> {
    let mac = macaulay_capped(inst, 2, DEFAULT_MATRIX_CAP)?;
    let f = inst.field();
    let mut data = Vec::new();
    let mut count = 0;
    let mut all_in_kernel = true;
    for s in enumerate_sprime(f, inst.m(), inst.n(), inst.r())? {
        let v = syzygy_row_vector(&specialize(&s, inst)?, &mac)?;
        all_in_kernel &= mac.matrix().left_mul_vec(&v)?.iter().all(|&e| e == 0);
        data.extend(v);
        count += 1;
    }
    let stacked = DenseMatrix::from_vec(f, count, mac.rows(), data)?;
    Ok((stacked.rank(), all_in_kernel))
}

/// Dimension count for `r = n - 1`:
/// `sum_{i=1}^{min(m-n, n+1, b-n)} (-1)^(i-1) C(m, n+i) C(n, i-1) C(K+b-n-i-1, K-1)`.
pub fn submax_dim_formula(m: usize, n: usize, k: usize, b: usize) -> BigInt {
    let top = (m as i64 - n as i64)
        .min(n as i64 + 1)
        .min(b as i64 - n as i64);
    let mut total = BigInt::from(0);
    for i in 1..=top.max(0) as usize {
        // i <= b - n, so K + b - n - i - 1 >= K - 1
        let term = binomial(m, n + i) * binomial(n, i - 1) * binomial(k + b - n - i - 1, k - 1);
        let term = BigInt::from(term);
        if i % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Left kernel dimension of the degree-`b` Macaulay matrix for `r = n - 1`.
pub fn submax_dim_empirical(inst: &MinRankInstance, b: usize) -> Result<usize> {
    if inst.r() + 1 != inst.n() {
        return Err(Error::InvalidParameters(format!(
            "needs r = n - 1 (r={}, n={})",
            inst.r(),
            inst.n()
        )));
    }
    if b == 0 {
        return Err(Error::InvalidParameters("b must be positive".into()));
    }
    xonly_syzygy_dim(inst, b - 1)
}

/// Sizes of the four generator families of the syzygies of all `(r+1)`-minors
/// of the stacked `(m + r) x n` matrix, and of the two subfamilies above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorCounts {
    pub duplicated_row: BigUint,
    pub duplicated_col: BigUint,
    pub row_differences: BigUint,
    pub row_col_differences: BigUint,
    pub sprime1: BigUint,
    pub sprime3: BigUint,
}

pub fn generator_counts(m: usize, n: usize, r: usize) -> GeneratorCounts {
    let rows = m + r;
    let step = BigUint::from(r + 1);
    GeneratorCounts {
        duplicated_row: binomial(rows, r + 1) * binomial(n, r + 2) * &step,
        duplicated_col: binomial(rows, r + 2) * binomial(n, r + 1) * &step,
        row_differences: binomial(rows, r + 2) * binomial(n, r + 2) * &step,
        row_col_differences: binomial(rows, r + 2) * binomial(n, r + 2) * &step,
        sprime1: BigUint::from(m) * binomial(n, r + 2),
        sprime3: binomial(m, 2) * binomial(n, r + 2),
    }
}

/// `K = m n` instance of elementary matrices, on which specialization is a
/// renaming `y_{k,j} -> x_{k n + j}`.
pub fn identity_instance(f: PrimeField, m: usize, n: usize, r: usize) -> Result<MinRankInstance> {
    let matrices = (0..m * n)
        .map(|l| {
            let mut e = DenseMatrix::zeros(f, m, n);
            e.set(l / n, l % n, 1);
            e
        })
        .collect();
    MinRankInstance::new(f, r, matrices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::build_equations;
    use crate::minrank::gen_random;

    fn gf(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn counts_for_four_by_four() {
        let f = gf(7);
        let s1 = enumerate_sprime1(f, 4, 4, 2).unwrap();
        let s3 = enumerate_sprime3(f, 4, 4, 2).unwrap();
        assert_eq!(s1.len(), 4);
        assert_eq!(s3.len(), 6);
        assert!(s1.iter().all(|s| s.entries.len() == 4));
        assert!(s3.iter().all(|s| s.entries.len() == 8));
        let c = generator_counts(4, 4, 2);
        assert_eq!(c.sprime1, BigUint::from(4u32));
        assert_eq!(c.sprime3, BigUint::from(6u32));
    }

    #[test]
    fn no_syzygies_without_room() {
        let f = gf(7);
        assert!(enumerate_sprime1(f, 3, 3, 2).unwrap().is_empty());
        assert!(enumerate_sprime3(f, 1, 5, 1).unwrap().is_empty());
    }

    #[test]
    fn identity_specialization_is_renaming() {
        let f = gf(7);
        let inst = identity_instance(f, 3, 4, 1).unwrap();
        let eqs = build_equations(&inst).unwrap();
        for s in enumerate_sprime(f, 3, 4, 1).unwrap() {
            let sp = specialize(&s, &inst).unwrap();
            assert_eq!(sp.entries.len(), s.entries.len());
            for (id, form) in &s.entries {
                let renamed: Vec<_> = form.terms().collect();
                let got: Vec<_> = sp.entries[id].terms().collect();
                assert_eq!(renamed, got);
            }
            assert!(check_annihilation(f, &sp, &eqs).unwrap());
        }
    }

    #[test]
    fn zero_matrices_specialize_to_zero() {
        let f = gf(5);
        let inst = MinRankInstance::new(f, 1, vec![DenseMatrix::zeros(f, 2, 4); 3]).unwrap();
        for s in enumerate_sprime(f, 2, 4, 1).unwrap() {
            assert!(specialize(&s, &inst).unwrap().entries.is_empty());
        }
    }

    #[test]
    fn empty_syzygy_annihilates() {
        let f = gf(5);
        let inst = gen_random(f, 2, 4, 3, 1, 0).unwrap();
        let zero = Syzygy::new(
            Universe::X { k: 3 },
            SyzygyOrigin::DuplicatedRow { h: 0, cols: vec![] },
        );
        assert!(check_annihilation(f, &zero, &build_equations(&inst).unwrap()).unwrap());
    }

    #[test]
    fn random_vector_is_not_a_syzygy() {
        let f = gf(32003);
        let inst = gen_random(f, 3, 4, 3, 1, 2).unwrap();
        let eqs = build_equations(&inst).unwrap();
        let mut rng = crate::rng::FieldSampler::from_seed(99);
        let mut s = Syzygy::new(
            Universe::X { k: 3 },
            SyzygyOrigin::DuplicatedRow { h: 0, cols: vec![] },
        );
        for e in &eqs {
            for l in 0..3 {
                s.add(f, e.id, l, rng.element(f)).unwrap();
            }
        }
        assert!(!check_annihilation(f, &s, &eqs).unwrap());
    }

    #[test]
    fn unspecialized_input_is_rejected() {
        let f = gf(5);
        let inst = gen_random(f, 2, 4, 3, 1, 0).unwrap();
        let s = &enumerate_sprime1(f, 2, 4, 1).unwrap()[0];
        assert!(check_annihilation(f, s, &build_equations(&inst).unwrap()).is_err());
        let other = gen_random(f, 3, 4, 3, 1, 0).unwrap();
        assert!(specialize(s, &other).is_err());
    }

    #[test]
    fn submax_formula_values() {
        assert_eq!(submax_dim_formula(5, 3, 5, 4), BigInt::from(5));
        assert_eq!(submax_dim_formula(5, 3, 5, 5), BigInt::from(22));
        assert_eq!(submax_dim_formula(5, 3, 5, 3), BigInt::from(0));
        assert_eq!(submax_dim_formula(3, 3, 5, 9), BigInt::from(0));
    }

    #[test]
    fn submax_requires_maximal_minors() {
        let inst = gen_random(gf(7), 4, 4, 3, 2, 0).unwrap();
        assert!(submax_dim_empirical(&inst, 3).is_err());
    }
}
