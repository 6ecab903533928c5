//! MinRank instances: the pencil `M_x = sum x_l M_l`, seeded generators, and an
//! exhaustive ground-truth solver.
//!
//! Matrices have `m` rows and `n` columns. An instance stated with `n x m`
//! matrices is the transposed instance and has the same solutions.

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, PrimeField};
use crate::rng::FieldSampler;

/// Default bound on the number of projective points the brute-force solver visits.
pub const DEFAULT_ENUMERATION_CAP: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinRankInstance {
    field: PrimeField,
    m: usize,
    n: usize,
    r: usize,
    matrices: Vec<DenseMatrix>,
}

impl MinRankInstance {
    pub fn new(field: PrimeField, r: usize, matrices: Vec<DenseMatrix>) -> Result<Self> {
        let first = matrices.first().ok_or_else(|| {
            Error::InvalidParameters("an instance needs at least one matrix".into())
        })?;
        let (m, n) = (first.rows(), first.cols());
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameters("matrices must be nonempty".into()));
        }
        if let Some(bad) = matrices
            .iter()
            .position(|a| a.rows() != m || a.cols() != n || a.field() != field)
        {
            return Err(Error::DimensionMismatch(format!(
                "matrix {} does not match the first ({m}x{n} over GF({}))",
                bad + 1,
                field.modulus()
            )));
        }
        if r == 0 || r > n {
            return Err(Error::InvalidParameters(format!(
                "target rank r={r} outside [1, {n}]"
            )));
        }
        Ok(Self {
            field,
            m,
            n,
            r,
            matrices,
        })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Number of rows of each matrix.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of columns of each matrix.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of matrices `K`.
    #[inline]
    pub fn k(&self) -> usize {
        self.matrices.len()
    }

    /// Target rank.
    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn matrices(&self) -> &[DenseMatrix] {
        &self.matrices
    }

    /// Entry `(row, col)` of matrix `l` (all 0-based).
    #[inline]
    pub fn coeff(&self, l: usize, row: usize, col: usize) -> u32 {
        self.matrices[l].get(row, col)
    }

    pub fn with_target_rank(&self, r: usize) -> Result<Self> {
        Self::new(self.field, r, self.matrices.clone())
    }
}

/// A projective solution, scaled so its first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SolutionCandidate {
    pub x: Vec<u32>,
    pub achieved_rank: usize,
}

/// Scales `x` so that its first nonzero coordinate is 1; `None` for the zero vector.
pub fn normalize(field: PrimeField, x: &[u32]) -> Option<Vec<u32>> {
    let lead = *x.iter().find(|&&v| v != 0)?;
    let inv = field.inv_nonzero(lead);
    Some(x.iter().map(|&v| field.mul(v, inv)).collect())
}

pub fn evaluate_pencil(inst: &MinRankInstance, x: &[u32]) -> Result<DenseMatrix> {
    if x.len() != inst.k() {
        return Err(Error::DimensionMismatch(format!(
            "pencil vector of length {} for K={}",
            x.len(),
            inst.k()
        )));
    }
    let f = inst.field;
    let mut acc = vec![0u32; inst.m * inst.n];
    for (mat, &xl) in inst.matrices.iter().zip(x) {
        let xl = xl % f.modulus();
        if xl == 0 {
            continue;
        }
        for (a, &v) in acc.iter_mut().zip(mat.as_slice()) {
            *a = f.mul_add(*a, xl, v);
        }
    }
    DenseMatrix::from_vec(f, inst.m, inst.n, acc)
}

/// True iff `M_x` is nonzero with rank at most `r`.
pub fn verify_solution(inst: &MinRankInstance, x: &[u32], r: usize) -> Result<bool> {
    let pencil = evaluate_pencil(inst, x)?;
    Ok(!pencil.is_zero() && pencil.rank() <= r)
}

fn check_shape(m: usize, n: usize, k: usize, r: usize) -> Result<()> {
    if m == 0 || n == 0 || k == 0 {
        return Err(Error::InvalidParameters(format!(
            "m={m}, n={n}, K={k} must be positive"
        )));
    }
    if r == 0 || r > m.min(n) {
        return Err(Error::InvalidParameters(format!(
            "target rank r={r} outside [1, min(m, n)={}]",
            m.min(n)
        )));
    }
    Ok(())
}

fn random_matrix(s: &mut FieldSampler, f: PrimeField, rows: usize, cols: usize) -> DenseMatrix {
    DenseMatrix::from_vec(f, rows, cols, s.elements(f, rows * cols)).expect("shape")
}

/// Uniformly random matrices, reproducible from `seed`.
pub fn gen_random(
    field: PrimeField,
    m: usize,
    n: usize,
    k: usize,
    r: usize,
    seed: u64,
) -> Result<MinRankInstance> {
    if m == 0 || n == 0 || k == 0 {
        return Err(Error::InvalidParameters(format!(
            "m={m}, n={n}, K={k} must be positive"
        )));
    }
    let mut s = FieldSampler::from_seed(seed);
    let matrices = (0..k).map(|_| random_matrix(&mut s, field, m, n)).collect();
    MinRankInstance::new(field, r, matrices)
}

/// Instance with a planted solution `x*`.
///
/// Draw order from the seeded stream: `M_1..M_{K-1}` (row-major), the first
/// `K-1` coordinates of `x*`, its nonzero last coordinate, then `U` (`m x r`)
/// and `V` (`r x n`), redrawn together until `U V != 0`. Finally
/// `M_K = x*_K^{-1} (U V - sum_{l<K} x*_l M_l)`.
pub fn gen_planted(
    field: PrimeField,
    m: usize,
    n: usize,
    k: usize,
    r: usize,
    seed: u64,
) -> Result<(MinRankInstance, Vec<u32>)> {
    check_shape(m, n, k, r)?;
    let f = field;
    let mut s = FieldSampler::from_seed(seed);
    let mut matrices: Vec<DenseMatrix> =
        (0..k - 1).map(|_| random_matrix(&mut s, f, m, n)).collect();
    let mut x = s.elements(f, k - 1);
    x.push(s.nonzero(f));
    let target = loop {
        let u = random_matrix(&mut s, f, m, r);
        let v = random_matrix(&mut s, f, r, n);
        let uv = u.mul(&v)?;
        if !uv.is_zero() {
            break uv;
        }
    };
    let mut rest = DenseMatrix::zeros(f, m, n);
    for (mat, &xl) in matrices.iter().zip(&x) {
        rest = rest.add(&mat.scale(xl))?;
    }
    let diff = target.add(&rest.scale(f.neg(1)))?;
    matrices.push(diff.scale(f.inv_nonzero(x[k - 1])));
    Ok((MinRankInstance::new(f, r, matrices)?, x))
}

/// Number of points of `P^{K-1}(GF(q))`, saturating.
pub fn projective_point_count(q: u32, k: usize) -> u128 {
    let q = q as u128;
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..k {
        total = total.saturating_add(power);
        power = power.saturating_mul(q);
    }
    total
}

/// Calls `visit` on every normalized projective point of `P^{K-1}` in
/// increasing lexicographic order.
pub(crate) fn for_each_projective_point(q: u32, k: usize, mut visit: impl FnMut(&[u32])) {
    let mut x = vec![0u32; k];
    for lead in (0..k).rev() {
        x.iter_mut().for_each(|v| *v = 0);
        x[lead] = 1;
        loop {
            visit(&x);
            // odometer on the coordinates after `lead`
            let mut pos = k;
            let mut wrapped = true;
            while pos > lead + 1 {
                pos -= 1;
                x[pos] += 1;
                if x[pos] < q {
                    wrapped = false;
                    break;
                }
                x[pos] = 0;
            }
            if wrapped {
                break;
            }
        }
    }
}

/// Every normalized `x` with `0 < rank(M_x) <= r`, sorted lexicographically.
pub fn brute_force_solve(
    inst: &MinRankInstance,
    r: usize,
    cap: u128,
) -> Result<Vec<SolutionCandidate>> {
    let points = projective_point_count(inst.field.modulus(), inst.k());
    if points > cap {
        return Err(Error::EnumerationCap { points, cap });
    }
    let mut out = Vec::new();
    let mut err = None;
    for_each_projective_point(inst.field.modulus(), inst.k(), |x| {
        if err.is_some() {
            return;
        }
        match evaluate_pencil(inst, x) {
            Ok(p) if !p.is_zero() => {
                let rank = p.rank();
                if rank <= r {
                    out.push(SolutionCandidate {
                        x: x.to_vec(),
                        achieved_rank: rank,
                    });
                }
            }
            Ok(_) => {}
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    out.sort();
    Ok(out)
}

/// Rank-metric decoding as MinRank: the instance `(M_1, ..., M_K, M_0)`.
///
/// A solution `(x_1, ..., x_K, lambda)` with `lambda != 0` decodes to
/// `-lambda^{-1} (x_1, ..., x_K)`; see [`decoding_from_solution`].
pub fn decoding_to_minrank(
    received: &DenseMatrix,
    basis: &[DenseMatrix],
    radius: usize,
) -> Result<MinRankInstance> {
    if let Some(i) = basis.iter().position(|b| {
        b.rows() != received.rows() || b.cols() != received.cols() || b.field() != received.field()
    }) {
        return Err(Error::DimensionMismatch(format!(
            "basis matrix {} differs in shape or field from the received matrix",
            i + 1
        )));
    }
    let mut matrices = basis.to_vec();
    matrices.push(received.clone());
    MinRankInstance::new(received.field(), radius, matrices)
}

/// Codeword coefficients from a solution of the homogenized instance, or
/// `None` when the last coordinate vanishes.
pub fn decoding_from_solution(field: PrimeField, x: &[u32]) -> Option<Vec<u32>> {
    let (&lambda, coords) = x.split_last()?;
    if lambda == 0 {
        return None;
    }
    let s = field.neg(field.inv_nonzero(lambda));
    Some(coords.iter().map(|&v| field.mul(v, s)).collect())
}
