//! Closed-form counts for SupportMinors linearization at `b = 1, 2`, Macaulay
//! dimensions, and a cost model.
//!
//! All formula paths use exact big integers. The two cost figures are model
//! outputs: dense elimination `rows * cols * min(rows, cols)` and a sparse
//! model `3 * cols^2 * w` with `w = K (r+1)`, the nonzero count of a row when
//! the coefficient matrices are dense.

use std::fmt::Write;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParameterSet {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub q: Option<u64>,
}

impl ParameterSet {
    pub fn new(m: usize, n: usize, k: usize, r: usize) -> Result<Self> {
        if m == 0 || n == 0 || k == 0 || r == 0 || r > n {
            return Err(Error::InvalidParameters(format!(
                "need positive m, n, K and 1 <= r <= n (got m={m}, n={n}, K={k}, r={r})"
            )));
        }
        Ok(Self {
            m,
            n,
            k,
            r,
            q: None,
        })
    }
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `C(m+1, 2) * C(n, r+2)`, the number of linear x-only syzygies at `b = 2`.
pub fn syzygy_count(p: &ParameterSet) -> BigUint {
    binomial(p.m + 1, 2) * binomial(p.n, p.r + 2)
}

/// `min{ m C(n, r+1), K C(n, r) }`.
pub fn eqs_b1(p: &ParameterSet) -> BigUint {
    let rows = BigUint::from(p.m) * binomial(p.n, p.r + 1);
    let cols = BigUint::from(p.k) * binomial(p.n, p.r);
    rows.min(cols)
}

/// Whether `m C(n, r+1) <= K C(n, r)`, the hypothesis of the `b = 2` count.
pub fn b2_precondition(p: &ParameterSet) -> bool {
    BigUint::from(p.m) * binomial(p.n, p.r + 1) <= BigUint::from(p.k) * binomial(p.n, p.r)
}

/// `min{ K m C(n, r+1) - C(m+1, 2) C(n, r+2), C(K+1, 2) C(n, r) }` and the
/// precondition flag. The first term can be negative for degenerate inputs.
pub fn eqs_b2(p: &ParameterSet) -> (BigInt, bool) {
    let (rows_term, cols_term) = b2_terms(p);
    (rows_term.min(cols_term), b2_precondition(p))
}

fn b2_terms(p: &ParameterSet) -> (BigInt, BigInt) {
    let rows = BigInt::from(BigUint::from(p.k * p.m) * binomial(p.n, p.r + 1));
    let rows_term = rows - BigInt::from(syzygy_count(p));
    let cols_term = BigInt::from(binomial(p.k + 1, 2) * binomial(p.n, p.r));
    (rows_term, cols_term)
}

fn b1_solvable(p: &ParameterSet) -> bool {
    let lhs = BigInt::from(BigUint::from(p.m) * binomial(p.n, p.r + 1));
    let rhs = BigInt::from(BigUint::from(p.k) * binomial(p.n, p.r)) - 1;
    lhs >= rhs
}

fn b2_solvable(p: &ParameterSet) -> bool {
    let (rows_term, cols_term) = b2_terms(p);
    rows_term >= cols_term - 1
}

/// Whether linearization at degree `b` is predicted to yield a solution for
/// generic instances. At `b = 2` this is the degree-two condition alone; see
/// [`first_solvable_degree`] for the combined rule.
pub fn solvable(p: &ParameterSet, b: usize) -> Result<bool> {
    match b {
        1 => Ok(b1_solvable(p)),
        2 => Ok(b2_solvable(p)),
        _ => Err(Error::UnsupportedDegree(b)),
    }
}

/// Smallest `b` in `{1, 2}` at which a solution is predicted, if any.
pub fn first_solvable_degree(p: &ParameterSet) -> Option<usize> {
    if b1_solvable(p) {
        Some(1)
    } else if b2_solvable(p) {
        Some(2)
    } else {
        None
    }
}

/// `(C(K+b-2, b-1) m C(n, r+1), C(K+b-1, b) C(n, r))`.
pub fn macaulay_dims(p: &ParameterSet, b: usize) -> Result<(BigUint, BigUint)> {
    if b == 0 {
        return Err(Error::InvalidParameters(
            "x-degree b must be at least 1".into(),
        ));
    }
    let rows = binomial(p.k + b - 2, b - 1) * BigUint::from(p.m) * binomial(p.n, p.r + 1);
    let cols = binomial(p.k + b - 1, b) * binomial(p.n, p.r);
    Ok((rows, cols))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostEstimate {
    pub dense: BigUint,
    pub sparse: BigUint,
}

pub fn cost_from_dims(rows: &BigUint, cols: &BigUint, row_weight: &BigUint) -> CostEstimate {
    let dense = rows * cols * rows.min(cols);
    let sparse = BigUint::from(3u32) * cols * cols * row_weight;
    CostEstimate { dense, sparse }
}

pub fn cost_estimate(p: &ParameterSet, b: usize) -> Result<CostEstimate> {
    let (rows, cols) = macaulay_dims(p, b)?;
    let weight = if rows.is_zero() {
        BigUint::zero()
    } else {
        BigUint::from(p.k * (p.r + 1))
    };
    Ok(cost_from_dims(&rows, &cols, &weight))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub b: usize,
    pub rows: BigUint,
    pub cols: BigUint,
    pub predicted_independent: BigInt,
    pub precondition: bool,
    pub solvable: bool,
    pub cost: CostEstimate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityReport {
    pub params: ParameterSet,
    pub entries: Vec<DegreeReport>,
}

pub fn complexity_report(p: &ParameterSet) -> ComplexityReport {
    let entries = [1usize, 2]
        .into_iter()
        .map(|b| {
            let (rows, cols) = macaulay_dims(p, b).expect("b >= 1");
            let (predicted_independent, precondition) = if b == 1 {
                (BigInt::from(eqs_b1(p)), true)
            } else {
                eqs_b2(p)
            };
            DegreeReport {
                b,
                rows,
                cols,
                predicted_independent,
                precondition,
                solvable: solvable(p, b).expect("b in {1, 2}"),
                cost: cost_estimate(p, b).expect("b >= 1"),
            }
        })
        .collect();
    ComplexityReport {
        params: *p,
        entries,
    }
}

impl ComplexityReport {
    /// Line-oriented `key=value` text. Parameter keys come first, then one
    /// block per degree starting with `b=`. `precondition` is always `true`
    /// at `b = 1`.
    pub fn to_key_value(&self) -> String {
        let p = &self.params;
        let mut out = String::new();
        let _ = writeln!(out, "m={}\nn={}\nK={}\nr={}", p.m, p.n, p.k, p.r);
        let first = first_solvable_degree(p).map_or("none".to_string(), |b| b.to_string());
        let _ = writeln!(out, "first_solvable_b={first}");
        for e in &self.entries {
            let _ = writeln!(out, "b={}", e.b);
            let _ = writeln!(out, "rows={}", e.rows);
            let _ = writeln!(out, "cols={}", e.cols);
            let _ = writeln!(out, "predicted={}", e.predicted_independent);
            let _ = writeln!(out, "precondition={}", e.precondition);
            let _ = writeln!(out, "solvable={}", e.solvable);
            let _ = writeln!(out, "cost_dense={}", e.cost.dense);
            let _ = writeln!(out, "cost_sparse={}", e.cost.sparse);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: usize, n: usize, r: usize, k: usize) -> ParameterSet {
        ParameterSet::new(m, n, k, r).unwrap()
    }

    #[test]
    fn b1_counts() {
        assert_eq!(eqs_b1(&p(4, 4, 2, 3)), BigUint::from(16u32));
        assert_eq!(eqs_b1(&p(2, 3, 1, 2)), BigUint::from(6u32));
        assert!(eqs_b1(&p(3, 3, 3, 2)).is_zero());
    }

    #[test]
    fn b2_counts() {
        assert_eq!(eqs_b2(&p(4, 4, 2, 3)), (BigInt::from(36), true));
        // 2*4*4 - 10 = 22 against C(3,2)*6 = 18
        assert_eq!(eqs_b2(&p(4, 4, 2, 2)), (BigInt::from(18), false));
        // r + 2 > n: no subtraction
        assert!(syzygy_count(&p(4, 4, 3, 2)).is_zero());
        assert_eq!(eqs_b2(&p(4, 4, 3, 2)).0, BigInt::from(2 * 4));
    }

    #[test]
    fn solvability() {
        let q = p(4, 4, 2, 3);
        assert!(!solvable(&q, 1).unwrap());
        assert!(solvable(&q, 2).unwrap());
        assert_eq!(first_solvable_degree(&q), Some(2));
        assert!(solvable(&q, 3).is_err());
        for m in 1..6 {
            for n in 2..7 {
                for r in 1..n {
                    let s = p(m, n, r, 1);
                    let expected = (m as u128) * crate::subsets::binomial(n, r + 1) + 1
                        >= crate::subsets::binomial(n, r);
                    assert_eq!(solvable(&s, 1).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn dims_and_cost() {
        let q = p(4, 4, 2, 3);
        let one = macaulay_dims(&q, 1).unwrap();
        assert_eq!(one, (BigUint::from(16u32), BigUint::from(18u32)));
        assert_eq!(
            macaulay_dims(&q, 2).unwrap(),
            (BigUint::from(48u32), BigUint::from(36u32))
        );
        assert_eq!(
            macaulay_dims(&p(5, 3, 2, 5), 4).unwrap(),
            (BigUint::from(175u32), BigUint::from(210u32))
        );
        assert_eq!(cost_estimate(&q, 2).unwrap().dense, BigUint::from(62208u32));
        let zero = cost_from_dims(&BigUint::zero(), &BigUint::zero(), &BigUint::zero());
        assert!(zero.dense.is_zero() && zero.sparse.is_zero());
        let costs: Vec<_> = (1..6).map(|b| cost_estimate(&q, b).unwrap()).collect();
        assert!(costs
            .windows(2)
            .all(|w| w[0].dense <= w[1].dense && w[0].sparse <= w[1].sparse));
    }

    #[test]
    fn degenerate_full_rank() {
        let q = p(3, 4, 4, 2);
        let report = complexity_report(&q);
        assert!(report.entries[0].rows.is_zero());
        assert!(report.entries[0].predicted_independent.is_zero());
        assert!(report.to_key_value().contains("predicted=0\n"));
    }

    #[test]
    fn cryptographic_size_parameters() {
        let q = p(60, 60, 30, 100);
        let report = complexity_report(&q);
        assert_eq!(report.entries.len(), 2);
        assert!(report.entries[1].cols > BigUint::from(u64::MAX));
        let text = report.to_key_value();
        for key in [
            "b",
            "rows",
            "cols",
            "predicted",
            "precondition",
            "solvable",
            "cost_dense",
            "cost_sparse",
        ] {
            assert_eq!(
                text.lines()
                    .filter(|l| l.starts_with(&format!("{key}=")))
                    .count(),
                2
            );
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ParameterSet::new(0, 3, 1, 1).is_err());
        assert!(ParameterSet::new(3, 3, 1, 4).is_err());
        assert!(ParameterSet::new(3, 3, 1, 0).is_err());
    }
}
