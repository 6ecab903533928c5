//! Rank checks against the closed-form counts, and MinRank solving by
//! linearization of the Macaulay matrix at `b = 1, 2`.
//!
//! The solver works with the homogeneous system. For every solution `x` and
//! every `r x n` matrix `C` of rank `r` whose row space contains that of
//! `M_x`, the vector of `nu(x) * c_T` lies in the right kernel. Reading a
//! kernel vector `w` at the columns `(mu * x_a, T)` for fixed `mu` (degree
//! `b-1`) and `T` gives a vector in `GF(q)^K` which, for such evaluation
//! vectors, is a multiple of `x`. The span of all these vectors over a kernel
//! basis therefore contains every solution; the extraction step searches that
//! span.

use num_bigint::BigInt;

use crate::equations::SystemShape;
use crate::error::{Error, Result};
use crate::estimator::{b2_precondition, eqs_b1, eqs_b2, ParameterSet};
use crate::linalg::{kernel_from_rref, DenseMatrix, PrimeField};
use crate::macaulay::{macaulay_capped, MacaulayMatrix, DEFAULT_MATRIX_CAP};
use crate::minrank::{
    evaluate_pencil, for_each_projective_point, normalize, projective_point_count, MinRankInstance,
    SolutionCandidate, DEFAULT_ENUMERATION_CAP,
};
use crate::subsets::{all_monomials, monomial_rank};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub b: usize,
    pub rows: usize,
    pub cols: usize,
    pub observed_rank: usize,
    /// `None` when the count is not established for these parameters.
    pub predicted: Option<BigInt>,
    pub precondition_met: bool,
    pub matches: Option<bool>,
}

fn params_of(inst: &MinRankInstance) -> Result<ParameterSet> {
    ParameterSet::new(inst.m(), inst.n(), inst.k(), inst.r())
}

/// Predicted rank of the degree-`b` Macaulay matrix for generic instances.
pub fn predicted_rank(p: &ParameterSet, b: usize) -> Result<(Option<BigInt>, bool)> {
    match b {
        1 => Ok((Some(BigInt::from(eqs_b1(p))), true)),
        2 => {
            let (count, ok) = eqs_b2(p);
            Ok((ok.then_some(count), ok))
        }
        _ => Err(Error::UnsupportedDegree(b)),
    }
}

pub fn rank_check(inst: &MinRankInstance, b: usize) -> Result<RankReport> {
    rank_check_capped(inst, b, DEFAULT_MATRIX_CAP)
}

pub fn rank_check_capped(inst: &MinRankInstance, b: usize, cap: u128) -> Result<RankReport> {
    let p = params_of(inst)?;
    let (predicted, precondition_met) = predicted_rank(&p, b)?;
    debug_assert_eq!(precondition_met, b == 1 || b2_precondition(&p));
    let mac = macaulay_capped(inst, b, cap)?;
    let observed_rank = mac.rank();
    let matches = predicted
        .as_ref()
        .map(|v| *v == BigInt::from(observed_rank));
    Ok(RankReport {
        b,
        rows: mac.rows(),
        cols: mac.cols(),
        observed_rank,
        predicted,
        precondition_met,
        matches,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveConfig {
    /// Kernels of larger dimension only get per-vector extraction.
    pub kernel_cap: usize,
    /// Bound on projective points searched inside the candidate span.
    pub enumeration_cap: u128,
    pub matrix_cap: u128,
    /// Dehomogenize with `c_T = 1` for the Plücker index of this colex rank.
    pub fix_pluecker: Option<usize>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            kernel_cap: 8,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            matrix_cap: DEFAULT_MATRIX_CAP,
            fix_pluecker: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extraction {
    /// Trivial kernel: nothing to extract.
    EmptyKernel,
    /// The candidate span is one-dimensional.
    Direct,
    /// Every projective point of the candidate span was tested.
    Enumerated { points: u128 },
    /// Caps prevented a complete search; only kernel basis vectors with a
    /// one-dimensional candidate span were used.
    Partial { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveDiagnostics {
    pub b: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// Dimension of the (possibly projected) right kernel used for extraction.
    pub kernel_dim: usize,
    /// Dimension of the span containing all solutions, when computed.
    pub candidate_dim: Option<usize>,
    pub extraction: Extraction,
    pub fixed_pluecker: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    /// Verified solutions, normalized and sorted.
    pub solutions: Vec<SolutionCandidate>,
    pub diagnostics: SolveDiagnostics,
}

pub fn solve_linearization(inst: &MinRankInstance, b: usize) -> Result<SolveOutcome> {
    solve_linearization_with(inst, b, &SolveConfig::default())
}

pub fn solve_linearization_with(
    inst: &MinRankInstance,
    b: usize,
    config: &SolveConfig,
) -> Result<SolveOutcome> {
    if !(1..=2).contains(&b) {
        return Err(Error::UnsupportedDegree(b));
    }
    let mac = macaulay_capped(inst, b, config.matrix_cap)?;
    let shape = mac.shape();
    let dense = mac.matrix().to_dense();
    let (rank, kernel, blocks) = match config.fix_pluecker {
        None => {
            let rref = dense.rref();
            let kernel = kernel_from_rref(&rref);
            let all: Vec<usize> = (0..shape.pluecker_count()).collect();
            (rref.rank, kernel, BlockLayout::Full(all))
        }
        Some(t) => {
            if t >= shape.pluecker_count() {
                return Err(Error::OutOfRange(format!(
                    "Plücker index {t} >= C({}, {})",
                    shape.n, shape.r
                )));
            }
            let (rank, kernel) = projected_kernel(&mac, &dense, t);
            (rank, kernel, BlockLayout::Fixed)
        }
    };
    let mut diagnostics = SolveDiagnostics {
        b,
        rows: mac.rows(),
        cols: mac.cols(),
        rank,
        kernel_dim: kernel.len(),
        candidate_dim: None,
        extraction: Extraction::EmptyKernel,
        fixed_pluecker: config.fix_pluecker,
    };
    if kernel.is_empty() {
        return Ok(SolveOutcome {
            solutions: Vec::new(),
            diagnostics,
        });
    }
    let reader = DirectionReader::new(&mac, blocks);
    let f = inst.field();
    let mut solutions = Vec::new();
    if kernel.len() > config.kernel_cap {
        diagnostics.extraction = Extraction::Partial {
            reason: format!(
                "kernel dimension {} exceeds cap {}",
                kernel.len(),
                config.kernel_cap
            ),
        };
        per_vector(inst, &reader, &kernel, &mut solutions)?;
    } else {
        let span = reader.span(f, &kernel);
        let dim = span.len();
        diagnostics.candidate_dim = Some(dim);
        let points = projective_point_count(f.modulus(), dim);
        if dim == 1 {
            diagnostics.extraction = Extraction::Direct;
            push_verified(inst, &span[0], &mut solutions)?;
        } else if points <= config.enumeration_cap {
            diagnostics.extraction = Extraction::Enumerated { points };
            let mut err = None;
            for_each_projective_point(f.modulus(), dim, |c| {
                if err.is_some() {
                    return;
                }
                let x = combine(f, &span, c);
                if let Err(e) = push_verified(inst, &x, &mut solutions) {
                    err = Some(e);
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        } else {
            diagnostics.extraction = Extraction::Partial {
                reason: format!(
                    "candidate span of {points} points exceeds cap {}",
                    config.enumeration_cap
                ),
            };
            per_vector(inst, &reader, &kernel, &mut solutions)?;
        }
    }
    solutions.sort();
    solutions.dedup();
    Ok(SolveOutcome {
        solutions,
        diagnostics,
    })
}

fn per_vector(
    inst: &MinRankInstance,
    reader: &DirectionReader,
    kernel: &[Vec<u32>],
    out: &mut Vec<SolutionCandidate>,
) -> Result<()> {
    for w in kernel {
        let span = reader.span(inst.field(), std::slice::from_ref(w));
        if span.len() == 1 {
            push_verified(inst, &span[0], out)?;
        }
    }
    Ok(())
}

fn push_verified(
    inst: &MinRankInstance,
    x: &[u32],
    out: &mut Vec<SolutionCandidate>,
) -> Result<()> {
    let Some(x) = normalize(inst.field(), x) else {
        return Ok(());
    };
    let pencil = evaluate_pencil(inst, &x)?;
    if pencil.is_zero() {
        return Ok(());
    }
    let rank = pencil.rank();
    if rank <= inst.r() {
        out.push(SolutionCandidate {
            x,
            achieved_rank: rank,
        });
    }
    Ok(())
}

fn combine(f: PrimeField, basis: &[Vec<u32>], coeffs: &[u32]) -> Vec<u32> {
    let mut x = vec![0u32; basis[0].len()];
    for (v, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (a, &b) in x.iter_mut().zip(v) {
            *a = f.mul_add(*a, c, b);
        }
    }
    x
}

enum BlockLayout {
    /// Kernel vectors over all columns; read every Plücker block.
    Full(Vec<usize>),
    /// Kernel vectors over the `c_T` block only, indexed by monomial rank.
    Fixed,
}

/// Reads the `K`-vectors `a -> w[(mu * x_a, T)]` out of kernel vectors.
struct DirectionReader {
    k: usize,
    n_pl: usize,
    layout: BlockLayout,
    /// For each degree `b-1` monomial, the rank of `mu * x_a` for each `a`.
    products: Vec<Vec<usize>>,
}

impl DirectionReader {
    fn new(mac: &MacaulayMatrix, layout: BlockLayout) -> Self {
        let shape = mac.shape();
        let k = shape.k;
        let products = all_monomials(k, mac.b() - 1)
            .into_iter()
            .map(|mu| {
                (0..k)
                    .map(|a| {
                        let mut prod = mu.clone();
                        let pos = prod.partition_point(|&v| v <= a);
                        prod.insert(pos, a);
                        monomial_rank(&prod, k).expect("valid monomial")
                    })
                    .collect()
            })
            .collect();
        Self {
            k,
            n_pl: shape.pluecker_count(),
            layout,
            products,
        }
    }

    /// Row-reduced basis of the span of all direction vectors of `vectors`.
    fn span(&self, f: PrimeField, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let mut data = Vec::new();
        let mut count = 0;
        for w in vectors {
            for prods in &self.products {
                match &self.layout {
                    BlockLayout::Full(blocks) => {
                        for &t in blocks {
                            data.extend(prods.iter().map(|&nu| w[nu * self.n_pl + t]));
                            count += 1;
                        }
                    }
                    BlockLayout::Fixed => {
                        data.extend(prods.iter().map(|&nu| w[nu]));
                        count += 1;
                    }
                }
            }
        }
        let m = DenseMatrix::from_vec(f, count, self.k, data).expect("shape");
        let rref = m.rref();
        (0..rref.rank)
            .map(|i| rref.matrix.row(i).to_vec())
            .collect()
    }
}

/// Kernel projected onto the `c_T` columns, found by eliminating with those
/// columns ordered last and keeping the echelon rows supported on them.
fn projected_kernel(mac: &MacaulayMatrix, dense: &DenseMatrix, t: usize) -> (usize, Vec<Vec<u32>>) {
    let shape: SystemShape = mac.shape();
    let f = dense.field();
    let n_nu = mac.col_monomial_count();
    let n_pl = shape.pluecker_count();
    let fixed: Vec<usize> = (0..n_nu).map(|nu| mac.col_of(nu, t)).collect();
    let others: Vec<usize> = (0..mac.cols()).filter(|c| c % n_pl != t).collect();
    let order: Vec<usize> = others.iter().chain(&fixed).copied().collect();
    let mut data = Vec::with_capacity(dense.rows() * order.len());
    for i in 0..dense.rows() {
        let row = dense.row(i);
        data.extend(order.iter().map(|&c| row[c]));
    }
    let permuted = DenseMatrix::from_vec(f, dense.rows(), order.len(), data).expect("shape");
    let rref = permuted.rref();
    let split = others.len();
    let mut constraint = Vec::new();
    let mut count = 0;
    for (i, &p) in rref.pivots.iter().enumerate() {
        if p >= split {
            constraint.extend_from_slice(&rref.matrix.row(i)[split..]);
            count += 1;
        }
    }
    let sub = DenseMatrix::from_vec(f, count, n_nu, constraint).expect("shape");
    (rref.rank, sub.right_kernel_basis())
}
