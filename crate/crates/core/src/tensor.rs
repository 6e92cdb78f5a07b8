//! Tensor-train storage.
//!
//! A `d`-dimensional tensor `Y` of shape `N_1 x ... x N_d` is stored as `d`
//! three-way cores `G_i` of shape `(R_{i-1}, N_i, R_i)` with `R_0 = R_d = 1`:
//!
//! ```text
//! Y[n_1, ..., n_d] = G_1[0, n_1, :] G_2[:, n_2, :] ... G_d[:, n_d, 0]
//! ```
//!
//! Each core is a row-major `ndarray::Array3` (left rank outermost, right rank
//! innermost), so both unfoldings `(R_{i-1}, N_i R_i)` and `(R_{i-1} N_i, R_i)`
//! are zero-copy reshapes.

use ndarray::{Array2, Array3, ArrayD, ArrayView2, Axis, IxDyn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Result, TtError};
use crate::index::MultiIndex;

/// Largest number of elements [`TtTensor::to_full`] will materialize.
pub const DEFAULT_ELEMENT_BUDGET: u128 = 50_000_000;

/// One three-way TT-core of shape `(left rank, mode size, right rank)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TtCore {
    data: Array3<f64>,
}

impl TtCore {
    /// Wraps an array, rejecting empty dimensions and non-finite entries.
    pub fn new(data: Array3<f64>) -> Result<Self> {
        Self::validated(data, 0)
    }

    pub(crate) fn validated(data: Array3<f64>, core: usize) -> Result<Self> {
        let (r0, n, r1) = data.dim();
        if r0 == 0 || n == 0 || r1 == 0 {
            return Err(TtError::InvalidCore { core, reason: format!("empty dimension in shape ({r0}, {n}, {r1})") });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(TtError::InvalidCore { core, reason: "non-finite entry".into() });
        }
        // Keep the documented row-major layout regardless of how the caller built it.
        let data = if data.is_standard_layout() { data } else { data.as_standard_layout().into_owned() };
        Ok(TtCore { data })
    }

    /// Builds a core from row-major values.
    pub fn from_vec(shape: (usize, usize, usize), values: Vec<f64>) -> Result<Self> {
        let data =
            Array3::from_shape_vec(shape, values).map_err(|e| TtError::InvalidArgument(format!("core data: {e}")))?;
        Self::new(data)
    }

    pub fn zeros(shape: (usize, usize, usize)) -> Self {
        TtCore { data: Array3::zeros(shape) }
    }

    pub fn data(&self) -> &Array3<f64> {
        &self.data
    }

    pub fn into_data(self) -> Array3<f64> {
        self.data
    }

    pub fn left_rank(&self) -> usize {
        self.data.dim().0
    }

    pub fn mode_size(&self) -> usize {
        self.data.dim().1
    }

    pub fn right_rank(&self) -> usize {
        self.data.dim().2
    }

    /// The `(R_{i-1}, N_i R_i)` unfolding.
    pub fn left_unfolding(&self) -> ArrayView2<'_, f64> {
        let (r0, n, r1) = self.data.dim();
        self.data.view().into_shape_with_order((r0, n * r1)).expect("standard layout")
    }

    /// The `(R_{i-1} N_i, R_i)` unfolding.
    pub fn right_unfolding(&self) -> ArrayView2<'_, f64> {
        let (r0, n, r1) = self.data.dim();
        self.data.view().into_shape_with_order((r0 * n, r1)).expect("standard layout")
    }

    /// The matrix `G[:, n, :]`.
    pub fn slice(&self, n: usize) -> ArrayView2<'_, f64> {
        self.data.index_axis(Axis(1), n)
    }

    /// Swaps the two rank axes: `(R_{i-1}, N, R_i) -> (R_i, N, R_{i-1})`.
    pub fn transposed(&self) -> TtCore {
        let data = self.data.view().permuted_axes([2, 1, 0]).as_standard_layout().into_owned();
        TtCore { data }
    }
}

/// A tensor in the tensor-train format. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct TtTensor {
    cores: Vec<TtCore>,
}

impl TtTensor {
    /// Validates the rank chain: `R_0 = R_d = 1` and matching inner ranks.
    pub fn new(cores: Vec<TtCore>) -> Result<Self> {
        if cores.is_empty() {
            return Err(TtError::InvalidArgument("a tensor needs at least one core".into()));
        }
        let d = cores.len();
        if cores[0].left_rank() != 1 {
            return Err(TtError::InvalidCore {
                core: 1,
                reason: format!("first core has left rank {}, expected 1", cores[0].left_rank()),
            });
        }
        if cores[d - 1].right_rank() != 1 {
            return Err(TtError::InvalidCore {
                core: d,
                reason: format!("last core has right rank {}, expected 1", cores[d - 1].right_rank()),
            });
        }
        for (i, pair) in cores.windows(2).enumerate() {
            if pair[0].right_rank() != pair[1].left_rank() {
                return Err(TtError::InvalidCore {
                    core: i + 2,
                    reason: format!(
                        "left rank {} does not match right rank {} of core {}",
                        pair[1].left_rank(),
                        pair[0].right_rank(),
                        i + 1
                    ),
                });
            }
        }
        Ok(TtTensor { cores })
    }

    /// Builds a tensor from raw arrays, validating every core.
    pub fn from_arrays(arrays: Vec<Array3<f64>>) -> Result<Self> {
        let cores =
            arrays.into_iter().enumerate().map(|(i, a)| TtCore::validated(a, i + 1)).collect::<Result<Vec<_>>>()?;
        Self::new(cores)
    }

    pub(crate) fn from_cores_unchecked(cores: Vec<TtCore>) -> Self {
        debug_assert!(TtTensor::new(cores.clone()).is_ok());
        TtTensor { cores }
    }

    pub fn cores(&self) -> &[TtCore] {
        &self.cores
    }

    pub fn into_cores(self) -> Vec<TtCore> {
        self.cores
    }

    pub fn ndim(&self) -> usize {
        self.cores.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.cores.iter().map(TtCore::mode_size).collect()
    }

    /// All `d + 1` ranks, boundary ones included.
    pub fn ranks(&self) -> Vec<usize> {
        std::iter::once(1).chain(self.cores.iter().map(TtCore::right_rank)).collect()
    }

    /// Arithmetic mean of the inner ranks `R_1 .. R_{d-1}` (1 for `d = 1`).
    pub fn mean_rank(&self) -> f64 {
        let inner = &self.ranks()[1..self.ndim()];
        if inner.is_empty() {
            1.0
        } else {
            inner.iter().sum::<usize>() as f64 / inner.len() as f64
        }
    }

    /// Total element count of the represented tensor, saturating at
    /// `u128::MAX` for shapes too large to count.
    pub fn numel(&self) -> u128 {
        self.cores.iter().fold(1u128, |n, c| n.saturating_mul(c.mode_size() as u128))
    }

    /// Evaluates one element with `d` vector-matrix products.
    pub fn eval(&self, idx: &MultiIndex) -> Result<f64> {
        if idx.len() != self.ndim() {
            return Err(TtError::ShapeMismatch(format!(
                "index has {} entries but the tensor has {} modes",
                idx.len(),
                self.ndim()
            )));
        }
        idx.check_within(&self.shape())?;
        Ok(self.eval_unchecked(idx.as_slice()))
    }

    /// Evaluates without range checks; panics on an out-of-range index.
    pub fn eval_unchecked(&self, idx: &[usize]) -> f64 {
        let mut row = self.cores[0].slice(idx[0]).row(0).to_owned();
        for (core, &n) in self.cores.iter().zip(idx).skip(1) {
            row = row.dot(&core.slice(n));
        }
        row[0]
    }

    /// Densifies with the default element budget.
    pub fn to_full(&self) -> Result<ArrayD<f64>> {
        self.to_full_with_budget(DEFAULT_ELEMENT_BUDGET)
    }

    /// Densifies into a row-major array, failing if more than `budget`
    /// elements would be materialized.
    pub fn to_full_with_budget(&self, budget: u128) -> Result<ArrayD<f64>> {
        let numel = self.numel();
        if numel > budget {
            return Err(TtError::Budget { what: "dense tensor", requested: numel, limit: budget });
        }
        let mut acc: Array2<f64> = self.cores[0].right_unfolding().to_owned();
        for core in &self.cores[1..] {
            let rows = acc.nrows() * core.mode_size();
            let next = acc.dot(&core.left_unfolding());
            acc = next.into_shape_with_order((rows, core.right_rank())).expect("contiguous product");
        }
        let (values, _) = acc.into_raw_vec_and_offset();
        Ok(ArrayD::from_shape_vec(IxDyn(&self.shape()), values).expect("element count matches shape"))
    }

    /// The same tensor with modes in reverse order.
    pub fn reversed(&self) -> TtTensor {
        TtTensor { cores: self.cores.iter().rev().map(TtCore::transposed).collect() }
    }
}

fn check_shape(shape: &[usize]) -> Result<()> {
    if shape.is_empty() {
        return Err(TtError::InvalidArgument("shape must have at least one mode".into()));
    }
    if let Some(mode) = shape.iter().position(|&n| n == 0) {
        return Err(TtError::InvalidArgument(format!("mode {} has size 0", mode + 1)));
    }
    Ok(())
}

pub(crate) fn full_ranks(shape: &[usize], inner_ranks: &[usize]) -> Result<Vec<usize>> {
    check_shape(shape)?;
    if inner_ranks.len() + 1 != shape.len() {
        return Err(TtError::InvalidArgument(format!(
            "{} modes need {} inner ranks, got {}",
            shape.len(),
            shape.len() - 1,
            inner_ranks.len()
        )));
    }
    if let Some(pos) = inner_ranks.iter().position(|&r| r == 0) {
        return Err(TtError::InvalidArgument(format!("rank R_{} is 0", pos + 1)));
    }
    Ok(std::iter::once(1).chain(inner_ranks.iter().copied()).chain(std::iter::once(1)).collect())
}

/// Random tensor with i.i.d. standard normal core entries.
///
/// The generator is ChaCha8 seeded with `seed` via `SeedableRng::seed_from_u64`;
/// cores are filled in order, each in row-major order. `inner_ranks` holds
/// `R_1 .. R_{d-1}`.
pub fn tt_random(shape: &[usize], inner_ranks: &[usize], seed: u64) -> Result<TtTensor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    tt_random_with_rng(&mut rng, shape, inner_ranks)
}

/// [`tt_random`] drawing from a caller-provided generator.
pub fn tt_random_with_rng<R: Rng + ?Sized>(rng: &mut R, shape: &[usize], inner_ranks: &[usize]) -> Result<TtTensor> {
    let ranks = full_ranks(shape, inner_ranks)?;
    let cores = shape
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let dim = (ranks[i], n, ranks[i + 1]);
            let values = (0..dim.0 * dim.1 * dim.2).map(|_| rng.sample(StandardNormal)).collect();
            TtCore { data: Array3::from_shape_vec(dim, values).expect("sized buffer") }
        })
        .collect();
    Ok(TtTensor::from_cores_unchecked(cores))
}
