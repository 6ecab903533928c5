//! Colexicographic ranking of k-subsets (the combinatorial number system) and
//! of monomials of fixed degree.
//!
//! Subsets are sorted vectors of 0-based indices. The colex rank of
//! `{a_1 < ... < a_k}` is `sum_t C(a_t, t)`.
//!
//! A monomial of degree `d` in `K` variables is stored as the sorted multiset
//! of its variable indices `v_1 <= ... <= v_d`. Its rank is the colex rank of
//! the strictly increasing set `{v_t + t - 1}` inside `[0, K + d - 1)`, so
//! monomials of one degree are ordered colexicographically on their exponent
//! vectors: for K=3, d=2 the order is x1^2, x1x2, x2^2, x1x3, x2x3, x3^2.

use crate::error::{Error, Result};

/// Exact binomial coefficient in `u128`, saturating on overflow.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at each step
        let Some(next) = acc.checked_mul((n - i) as u128) else {
            return u128::MAX;
        };
        acc = next / (i as u128 + 1);
    }
    acc
}

/// `binomial` as `usize`, for sizes that index memory.
pub(crate) fn binom_usize(n: usize, k: usize) -> usize {
    usize::try_from(binomial(n, k)).unwrap_or(usize::MAX)
}

pub fn subset_rank(subset: &[usize], n: usize) -> Result<usize> {
    let mut prev = None;
    let mut rank = 0usize;
    for (t, &a) in subset.iter().enumerate() {
        if a >= n || prev.is_some_and(|p| p >= a) {
            return Err(Error::OutOfRange(format!(
                "{subset:?} is not a strictly increasing subset of [0, {n})"
            )));
        }
        prev = Some(a);
        rank += binom_usize(a, t + 1);
    }
    Ok(rank)
}

pub fn subset_unrank(rank: usize, n: usize, k: usize) -> Result<Vec<usize>> {
    let total = binomial(n, k);
    if rank as u128 >= total {
        return Err(Error::OutOfRange(format!(
            "rank {rank} >= C({n}, {k}) = {total}"
        )));
    }
    let mut out = vec![0usize; k];
    let mut rest = rank;
    let mut bound = n;
    for t in (1..=k).rev() {
        // largest a < bound with C(a, t) <= rest
        let mut a = bound - 1;
        while binom_usize(a, t) > rest {
            a -= 1;
        }
        out[t - 1] = a;
        rest -= binom_usize(a, t);
        bound = a;
    }
    Ok(out)
}

/// All k-subsets of `[0, n)` in colex order.
pub fn all_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let count = binom_usize(n, k);
    (0..count)
        .map(|r| subset_unrank(r, n, k).expect("rank in range"))
        .collect()
}

/// Number of monomials of degree `d` in `k` variables.
pub fn monomial_count(k: usize, d: usize) -> u128 {
    if k == 0 {
        return u128::from(d == 0);
    }
    binomial(k + d - 1, d)
}

pub fn monomial_rank(vars: &[usize], k: usize) -> Result<usize> {
    if vars.windows(2).any(|w| w[0] > w[1]) || vars.iter().any(|&v| v >= k) {
        return Err(Error::OutOfRange(format!(
            "{vars:?} is not a sorted multiset over {k} variables"
        )));
    }
    let shifted: Vec<usize> = vars.iter().enumerate().map(|(t, &v)| v + t).collect();
    subset_rank(&shifted, (k + vars.len()).saturating_sub(1))
}

pub fn monomial_unrank(rank: usize, k: usize, d: usize) -> Result<Vec<usize>> {
    if k == 0 {
        return if d == 0 && rank == 0 {
            Ok(Vec::new())
        } else {
            Err(Error::OutOfRange("no variables".into()))
        };
    }
    let set = subset_unrank(rank, k + d - 1, d)?;
    Ok(set.into_iter().enumerate().map(|(t, s)| s - t).collect())
}

/// All degree-`d` monomials in `k` variables, in rank order.
pub fn all_monomials(k: usize, d: usize) -> Vec<Vec<usize>> {
    let count = usize::try_from(monomial_count(k, d)).unwrap_or(usize::MAX);
    (0..count)
        .map(|r| monomial_unrank(r, k, d).expect("rank in range"))
        .collect()
}

/// Exponent vector of a monomial given as a sorted multiset.
pub fn exponents(vars: &[usize], k: usize) -> Vec<usize> {
    let mut e = vec![0; k];
    for &v in vars {
        e[v] += 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    #[test]
    fn colex_pairs_of_four() {
        // 1-based {1,2},{1,3},{2,3},{1,4},{2,4},{3,4}
        let expected = [[0, 1], [0, 2], [1, 2], [0, 3], [1, 3], [2, 3]];
        for (r, s) in expected.iter().enumerate() {
            assert_eq!(subset_rank(s, 4).unwrap(), r);
            assert_eq!(subset_unrank(r, 4, 2).unwrap(), s.to_vec());
        }
    }

    #[test]
    fn full_set_has_rank_zero() {
        assert_eq!(subset_rank(&[0, 1, 2, 3, 4], 5).unwrap(), 0);
        assert_eq!(subset_unrank(0, 5, 5).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(subset_rank(&[], 3).unwrap(), 0);
    }

    #[test]
    fn round_trip_all_triples_of_eight() {
        let all = all_subsets(8, 3);
        assert_eq!(all.len(), 56);
        for (r, s) in all.iter().enumerate() {
            assert_eq!(subset_rank(s, 8).unwrap(), r);
        }
        // colex: compare from the largest element down
        let key = |s: &Vec<usize>| s.iter().rev().copied().collect::<Vec<_>>();
        assert!(all.windows(2).all(|w| key(&w[0]) < key(&w[1])));
    }

    #[test]
    fn rejects_bad_subsets() {
        assert!(subset_rank(&[2, 1], 4).is_err());
        assert!(subset_rank(&[1, 1], 4).is_err());
        assert!(subset_rank(&[4], 4).is_err());
        assert!(subset_unrank(6, 4, 2).is_err());
    }

    #[test]
    fn degree_two_monomials_in_three_variables() {
        let all = all_monomials(3, 2);
        assert_eq!(
            all,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![1, 1],
                vec![0, 2],
                vec![1, 2],
                vec![2, 2]
            ]
        );
        for (r, m) in all.iter().enumerate() {
            assert_eq!(monomial_rank(m, 3).unwrap(), r);
        }
        assert_eq!(exponents(&[0, 2, 2], 3), vec![1, 0, 2]);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomial_count(3, 0), 1);
        assert_eq!(monomial_count(5, 4), 70);
        assert_eq!(all_monomials(4, 0), vec![Vec::<usize>::new()]);
        assert_eq!(all_monomials(5, 3).len(), 35);
        assert!(monomial_rank(&[1, 0], 3).is_err());
        assert!(monomial_rank(&[3], 3).is_err());
    }
}
