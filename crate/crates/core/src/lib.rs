//! SupportMinors modeling of the MinRank problem over prime fields.
//!
//! Given `K` matrices `M_1, ..., M_K` of size `m x n` over GF(q) and a target
//! rank `r`, MinRank asks for `x != 0` with `0 < rank(sum x_l M_l) <= r`. The
//! SupportMinors system expresses that every row of `M_x` lies in the row
//! space of an unknown `r x n` matrix `C` through the vanishing of
//! `(r+1)`-minors, which are bilinear in `x` and the Plücker coordinates of
//! `C`. This crate builds that system, its Macaulay matrices, solves it by
//! linearization, and checks the rank and syzygy counts that govern when
//! linearization succeeds.
//!
//! Modules:
//! * [`linalg`]: GF(q) arithmetic, dense and sparse elimination.
//! * [`minrank`]: instances, generators, brute-force oracle, decoding adapter.
//! * [`format`]: the `minrank v1` instance file format.
//! * [`equations`], [`macaulay`], [`linearization`]: the system and solver.
//! * [`syzygy`]: explicit syzygies and kernel-dimension checks.
//! * [`estimator`]: closed-form counts and cost model.

pub mod equations;
pub mod error;
pub mod estimator;
pub mod format;
pub mod linalg;
pub mod linearization;
pub mod macaulay;
pub mod minrank;
pub mod rng;
pub mod subsets;
pub mod syzygy;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, PrimeField, SparseMatrix};
pub use minrank::{MinRankInstance, SolutionCandidate};
pub use num_bigint::{BigInt, BigUint};
