//! Tensor-train (TT) tensors and a beam-search method for locating the
//! entries of largest and smallest value without forming the full tensor.
//!
//! ```
//! use tt_optima::{optima_tt, tt_random};
//!
//! let t = tt_random(&[5, 5, 5, 5], &[3, 3, 3], 0).unwrap();
//! let res = optima_tt(&t, 100).unwrap();
//! assert!(res.y_min <= res.y_max);
//! ```
//!
//! With `k >= prod(shape) / max(shape)` the search is exhaustive and the
//! result is exact.

pub mod benchmarks;
pub mod error;
pub mod index;
pub mod io;
pub mod ops;
pub mod optima;
pub mod oracle;
pub mod orth;
pub mod probability;
pub mod tensor;

pub use benchmarks::{explicit_cores, nearest_grid_index, tt_svd, Benchmark, BenchmarkKind, GridSpec, ModeGrid};
pub use error::{Result, TtError};
pub use index::MultiIndex;
pub use ops::{tt_add, tt_const, tt_dif};
pub use optima::{
    join_first_indices, optima_tt, optima_tt_max, optima_tt_max_bidir, optima_tt_with, pruning_bound, CandidateSet,
    Direction, OptimaResult, DEFAULT_K,
};
pub use orth::{tt_orth, tt_orth_with, RankPolicy};
pub use probability::{beam_marginal_check, prefix_marginal, sample, Marginals, Preparation};
pub use tensor::{tt_random, TtCore, TtTensor};
