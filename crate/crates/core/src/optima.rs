//! Beam search for the largest-modulus element of a TT-tensor, and the
//! min/max driver built on it.
//!
//! The tensor is right-orthogonalized first. Then, for the prefix product
//! `q = G_1[0, n_1, :] ... G_i[:, n_i, :]`, the squared norm `|q|^2` equals the
//! sum of `Y^2` over all completions of the prefix `(n_1, .., n_i)`. The
//! search sweeps left to right, extends every retained prefix by every index
//! of the next mode and keeps the `K` extensions with the largest norm. At the
//! last mode the norm is the modulus of the element itself.

use ndarray::{Array2, ArrayView2, Axis};
use serde::{Deserialize, Serialize};

use crate::error::{Result, TtError};
use crate::index::MultiIndex;
use crate::ops::{tt_const, tt_dif};
use crate::orth::{tt_orth_with, RankPolicy};
use crate::tensor::{TtCore, TtTensor, DEFAULT_ELEMENT_BUDGET};

/// Beam width used by the experiments unless configured otherwise.
pub const DEFAULT_K: usize = 100;

/// Row numbers of the `k` rows of `m` with the largest Euclidean norm, in
/// descending norm order. Equal norms keep the lower row number first.
/// Returns every row when `k >= m.nrows()`.
pub fn top_k(m: ArrayView2<'_, f64>, k: usize) -> Vec<usize> {
    let norms: Vec<f64> = m.rows().into_iter().map(scaled_norm).collect();
    let cmp = |a: &usize, b: &usize| norms[*b].total_cmp(&norms[*a]).then(a.cmp(b));
    let mut rows: Vec<usize> = (0..norms.len()).collect();
    if k < rows.len() && k > 0 {
        rows.select_nth_unstable_by(k - 1, cmp);
        rows.truncate(k);
    }
    rows.sort_unstable_by(cmp);
    rows
}

/// Euclidean norm computed as `s * |r / s|` with `s = max |r_i|`, so rows of
/// a heavily scaled tensor do not overflow to equal infinite norms.
fn scaled_norm(r: ndarray::ArrayView1<'_, f64>) -> f64 {
    let s = r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if s == 0.0 || !s.is_finite() {
        return s;
    }
    s * r.iter().map(|x| (x / s) * (x / s)).sum::<f64>().sqrt()
}

/// The retained candidates after a beam step: prefix chain products and the
/// partial multi-indices that produced them, row by row.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateSet {
    prefix: Array2<f64>,
    indices: Array2<usize>,
}

impl CandidateSet {
    /// Prefix products, shape `(rows, R_i)`.
    pub fn prefix(&self) -> &Array2<f64> {
        &self.prefix
    }

    /// Zero-based partial multi-indices, shape `(rows, i)`.
    pub fn indices(&self) -> &Array2<usize> {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn multi_index(&self, row: usize) -> MultiIndex {
        MultiIndex::from_zero_based(self.indices.row(row).to_vec())
    }

    pub fn multi_indices(&self) -> Vec<MultiIndex> {
        (0..self.len()).map(|r| self.multi_index(r)).collect()
    }
}

/// One expansion step as seen by [`run_beam`] observers, before pruning.
pub(crate) struct BeamStep<'a> {
    /// Zero-based mode being expanded.
    pub mode: usize,
    /// Expanded prefix products; row `p * n + l` extends parent `p` by index `l`.
    pub expanded: ArrayView2<'a, f64>,
    /// Parent partial indices, one row per retained candidate.
    pub parents: ArrayView2<'a, usize>,
}

/// Runs the beam over an already orthogonalized tensor.
///
/// The sweep starts from a single empty prefix with product `[1]`, so the
/// first step reproduces `Q = G_1[0, :, :]` and every step is the same
/// multiply, reshape, select sequence.
pub(crate) fn run_beam(ortho: &TtTensor, k: usize, mut observe: impl FnMut(&BeamStep<'_>)) -> CandidateSet {
    let mut prefix = Array2::<f64>::ones((1, 1));
    let mut indices = Array2::<usize>::zeros((1, 0));
    for (mode, core) in ortho.cores().iter().enumerate() {
        let (parents, n, r) = (prefix.nrows(), core.mode_size(), core.right_rank());
        let expanded =
            prefix.dot(&core.left_unfolding()).into_shape_with_order((parents * n, r)).expect("contiguous product");
        observe(&BeamStep { mode, expanded: expanded.view(), parents: indices.view() });

        let keep = top_k(expanded.view(), k);
        // Row s of the expanded index matrix is [indices[s / n], s % n]; only
        // the selected rows are materialized.
        let mut next = Array2::<usize>::zeros((keep.len(), mode + 1));
        for (dst, &s) in keep.iter().enumerate() {
            let mut row = next.row_mut(dst);
            row.slice_mut(ndarray::s![..mode]).assign(&indices.row(s / n));
            row[mode] = s % n;
        }
        prefix = expanded.select(Axis(0), &keep);
        indices = next;
        debug_assert!(distinct_rows(&indices));
    }
    CandidateSet { prefix, indices }
}

fn distinct_rows(indices: &Array2<usize>) -> bool {
    let mut rows: Vec<Vec<usize>> = indices.rows().into_iter().map(|r| r.to_vec()).collect();
    rows.sort_unstable();
    rows.windows(2).all(|w| w[0] != w[1])
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(TtError::InvalidArgument("beam width K must be at least 1".into()));
    }
    Ok(())
}

/// Approximate multi-index of the largest-modulus element, plus the final
/// beam (approximate top-`K` elements by modulus, best first).
///
/// Works on an orthogonalized copy; the input is not modified. Ranks that
/// cannot be orthogonalized as given are lowered without changing values.
pub fn optima_tt_max(t: &TtTensor, k: usize) -> Result<(MultiIndex, CandidateSet)> {
    check_k(k)?;
    let ortho = tt_orth_with(t, RankPolicy::Shrink)?;
    let beam = run_beam(&ortho, k, |_| {});
    Ok((beam.multi_index(0), beam))
}

/// Which sweep order(s) the search uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Forward,
    Backward,
    BestOfBoth,
}

/// [`optima_tt_max`] with a choice of sweep direction. `BestOfBoth` runs
/// both sweeps and keeps the candidate with the larger modulus, preferring
/// the forward one on ties.
pub fn optima_tt_max_directed(t: &TtTensor, k: usize, direction: Direction) -> Result<MultiIndex> {
    match direction {
        Direction::Forward => Ok(optima_tt_max(t, k)?.0),
        Direction::Backward => Ok(optima_tt_max(&t.reversed(), k)?.0.reversed()),
        Direction::BestOfBoth => {
            let fwd = optima_tt_max(t, k)?.0;
            let bwd = optima_tt_max(&t.reversed(), k)?.0.reversed();
            let (yf, yb) = (t.eval(&fwd)?, t.eval(&bwd)?);
            Ok(if yb.abs() > yf.abs() { bwd } else { fwd })
        }
    }
}

/// Two-sweep variant of [`optima_tt_max`].
pub fn optima_tt_max_bidir(t: &TtTensor, k: usize) -> Result<MultiIndex> {
    optima_tt_max_directed(t, k, Direction::BestOfBoth)
}

/// Approximate minimum and maximum elements.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimaResult {
    pub i_min: MultiIndex,
    pub y_min: f64,
    pub i_max: MultiIndex,
    pub y_max: f64,
    pub k_used: usize,
    pub direction: Direction,
}

/// Finds the largest-modulus element `y1`, then the largest-modulus element
/// of `t - y1`, which is the opposite extreme; the two are ordered by value.
pub fn optima_tt(t: &TtTensor, k: usize) -> Result<OptimaResult> {
    optima_tt_with(t, k, Direction::Forward)
}

pub fn optima_tt_with(t: &TtTensor, k: usize, direction: Direction) -> Result<OptimaResult> {
    check_k(k)?;
    let i1 = optima_tt_max_directed(t, k, direction)?;
    let y1 = t.eval(&i1)?;
    let shifted = tt_dif(t, &tt_const(&t.shape(), y1)?)?;
    let i2 = optima_tt_max_directed(&shifted, k, direction)?;
    let y2 = t.eval(&i2)?;
    let ((i_min, y_min), (i_max, y_max)) = if y1 >= y2 { ((i2, y2), (i1, y1)) } else { ((i1, y1), (i2, y2)) };
    Ok(OptimaResult { i_min, y_min, i_max, y_max, k_used: k, direction })
}

/// Merges the first `j` modes into one of size `N_1 ... N_j`, with the
/// merged position `n_1 + n_2 N_1 + ... + n_j N_1 ... N_{j-1}` (zero-based,
/// first mode fastest). Fails if the merged first core would exceed the
/// default element budget.
pub fn join_first_indices(t: &TtTensor, j: usize) -> Result<TtTensor> {
    join_first_indices_with_budget(t, j, DEFAULT_ELEMENT_BUDGET)
}

pub fn join_first_indices_with_budget(t: &TtTensor, j: usize, budget: u128) -> Result<TtTensor> {
    let d = t.ndim();
    if j == 0 || j >= d {
        return Err(TtError::InvalidArgument(format!("join count must be in 1..{d}, got {j}")));
    }
    // Largest intermediate: (N_1 ... N_s) x R_s for s <= j.
    let mut merged: u128 = 1;
    let mut requested: u128 = 0;
    for core in &t.cores()[..j] {
        merged *= core.mode_size() as u128;
        requested = requested.max(merged * core.right_rank() as u128);
    }
    if requested > budget {
        return Err(TtError::Budget { what: "joined first core", requested, limit: budget });
    }

    // acc[m, :] holds the prefix product for merged position m.
    let mut acc = t.cores()[0].right_unfolding().to_owned();
    for core in &t.cores()[1..j] {
        let (m, n, r1) = (acc.nrows(), core.mode_size(), core.right_rank());
        let mut next = Array2::<f64>::zeros((m * n, r1));
        for l in 0..n {
            let block = acc.dot(&core.slice(l));
            next.slice_mut(ndarray::s![l * m..(l + 1) * m, ..]).assign(&block);
        }
        acc = next;
    }
    let (m, r1) = acc.dim();
    let first = acc.into_shape_with_order((1, m, r1)).expect("contiguous");
    let mut cores = vec![TtCore::new(first)?];
    cores.extend_from_slice(&t.cores()[j..]);
    TtTensor::new(cores)
}

/// Maps an index of a tensor joined over its first `j` modes back to the
/// original `shape`.
pub fn split_joined_index(shape: &[usize], j: usize, joined: &MultiIndex) -> MultiIndex {
    let mut flat = joined.as_slice()[0];
    let mut out = Vec::with_capacity(shape.len());
    for &n in &shape[..j] {
        out.push(flat % n);
        flat /= n;
    }
    out.extend_from_slice(&joined.as_slice()[1..]);
    MultiIndex::from_zero_based(out)
}

/// Guaranteed lower bound on `Y[found]^2 / max Y^2` for beam width `k`:
/// `prod_{i > j} 1 / N_i`, where `j` is the largest mode count with
/// `N_1 ... N_{j-1} <= k`. With `k = 1` this is `prod_{i >= 2} 1 / N_i`.
pub fn pruning_bound(shape: &[usize], k: usize) -> f64 {
    let mut j = 1;
    let mut head: u128 = 1;
    while j < shape.len() {
        head = head.saturating_mul(shape[j - 1] as u128);
        if head > k as u128 {
            break;
        }
        j += 1;
    }
    shape[j..].iter().map(|&n| 1.0 / n as f64).product()
}

/// Re-evaluates every candidate of a final beam and returns the row with the
/// largest `|Y|` (first row on ties).
pub fn best_candidate_row(t: &TtTensor, beam: &CandidateSet) -> Result<usize> {
    let mut best = (0, -1.0);
    for row in 0..beam.len() {
        let v = t.eval(&beam.multi_index(row))?.abs();
        if v > best.1 {
            best = (row, v);
        }
    }
    Ok(best.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::tt_random;
    use ndarray::array;

    #[test]
    fn top_k_hand_example() {
        let m = array![[3.0, 4.0], [0.0, 1.0], [5.0, 0.0]];
        assert_eq!(top_k(m.view(), 2), vec![0, 2]);
        assert_eq!(top_k(m.view(), 10), vec![0, 2, 1]);
        assert_eq!(top_k(m.view(), 1), vec![0]);
    }

    #[test]
    fn top_k_matches_full_sort() {
        let t = tt_random(&[50, 4], &[4], 3).unwrap();
        let m = t.cores()[0].right_unfolding().to_owned();
        let norms: Vec<f64> = m.rows().into_iter().map(|r| r.dot(&r).sqrt()).collect();
        let mut order: Vec<usize> = (0..50).collect();
        order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap());
        for k in [1, 7, 25, 50, 80] {
            assert_eq!(top_k(m.view(), k), order[..k.min(50)].to_vec());
        }
    }

    fn rank_one(vectors: &[&[f64]]) -> TtTensor {
        TtTensor::new(vectors.iter().map(|v| TtCore::from_vec((1, v.len(), 1), v.to_vec()).unwrap()).collect()).unwrap()
    }

    #[test]
    fn rank_one_max_modulus_factorizes() {
        let t = rank_one(&[&[0.5, -3.0, 1.0], &[2.0, 0.1], &[-0.2, 0.3, -4.0, 1.0]]);
        for k in [1, 2, 5, 100] {
            let (idx, _) = optima_tt_max(&t, k).unwrap();
            assert_eq!(idx.as_slice(), &[1, 0, 2]);
        }
    }

    #[test]
    fn min_max_of_rank_one_pair() {
        // elements: (1,1)=-2 (1,2)=-6 (2,1)=1 (2,2)=3
        let t = rank_one(&[&[-2.0, 1.0], &[1.0, 3.0]]);
        let r = optima_tt(&t, 1).unwrap();
        assert_eq!(r.y_min, -6.0);
        assert_eq!(r.i_min.to_one_based(), vec![1, 2]);
        assert_eq!(r.y_max, 3.0);
        assert_eq!(r.i_max.to_one_based(), vec![2, 2]);
    }

    #[test]
    fn constant_tensor_min_equals_max() {
        let t = tt_const(&[3, 3], 4.0).unwrap();
        let r = optima_tt(&t, 5).unwrap();
        assert!((r.y_min - 4.0).abs() < 1e-14 && (r.y_max - 4.0).abs() < 1e-14);
        assert!(r.y_min <= r.y_max);
    }

    #[test]
    fn single_mode_tensor() {
        let t = rank_one(&[&[1.0, -7.0, 3.0, 5.0]]);
        let r = optima_tt(&t, 1).unwrap();
        assert_eq!((r.y_min, r.y_max), (-7.0, 5.0));
        assert_eq!(r.i_max.to_one_based(), vec![4]);
    }

    #[test]
    fn zero_k_is_rejected() {
        let t = tt_const(&[2, 2], 1.0).unwrap();
        assert!(optima_tt_max(&t, 0).is_err());
        assert!(optima_tt(&t, 0).is_err());
    }

    #[test]
    fn input_is_not_mutated() {
        let t = tt_random(&[4, 5, 6], &[3, 3], 1).unwrap();
        let copy = t.clone();
        optima_tt(&t, 3).unwrap();
        assert_eq!(t, copy);
    }

    #[test]
    fn beam_rows_are_distinct_and_first_row_is_best() {
        let t = tt_random(&[6, 7, 5, 8], &[3, 4, 3], 21).unwrap();
        let (idx, beam) = optima_tt_max(&t, 30).unwrap();
        assert_eq!(beam.len(), 30);
        assert!(distinct_rows(beam.indices()));
        assert_eq!(beam.multi_index(0), idx);
        assert_eq!(best_candidate_row(&t, &beam).unwrap(), 0);
    }

    #[test]
    fn join_identity_and_values() {
        let t = tt_random(&[3, 4, 5], &[2, 3], 2).unwrap();
        assert!(join_first_indices(&t, 0).is_err());
        assert!(join_first_indices(&t, 3).is_err());
        let joined = join_first_indices(&t, 2).unwrap();
        assert_eq!(joined.shape(), vec![12, 5]);
        for n1 in 0..3 {
            for n2 in 0..4 {
                for n3 in 0..5 {
                    let a = t.eval_unchecked(&[n1, n2, n3]);
                    let b = joined.eval_unchecked(&[n1 + 3 * n2, n3]);
                    assert!((a - b).abs() <= 1e-12);
                    let back = split_joined_index(&t.shape(), 2, &MultiIndex::from_zero_based(vec![n1 + 3 * n2, n3]));
                    assert_eq!(back.as_slice(), &[n1, n2, n3]);
                }
            }
        }
    }

    #[test]
    fn join_budget() {
        let t = tt_random(&[10, 10, 10, 2], &[2, 2, 2], 2).unwrap();
        assert!(join_first_indices_with_budget(&t, 3, 100).unwrap_err().is_resource());
    }

    #[test]
    fn pruning_bound_cases() {
        let shape = [4, 5, 6];
        assert_eq!(pruning_bound(&shape, 1), 1.0 / 30.0);
        assert_eq!(pruning_bound(&shape, 3), 1.0 / 30.0);
        assert_eq!(pruning_bound(&shape, 4), 1.0 / 6.0);
        assert_eq!(pruning_bound(&shape, 19), 1.0 / 6.0);
        assert_eq!(pruning_bound(&shape, 20), 1.0);
        assert_eq!(pruning_bound(&[7], 1), 1.0);
    }

    #[test]
    fn palindromic_tensor_passes_agree() {
        let a = tt_random(&[4, 3], &[2], 6).unwrap();
        let c0 = a.cores()[0].clone();
        let mid = TtCore::from_vec((2, 5, 2), {
            // symmetric in the rank axes so that reversal maps the core onto itself
            let mut v = vec![0.0; 20];
            for n in 0..5 {
                for p in 0..2 {
                    for q in 0..2 {
                        v[p * 10 + n * 2 + q] = (n as f64 + 1.0) * if p == q { 1.0 } else { 0.3 };
                    }
                }
            }
            v
        })
        .unwrap();
        let t = TtTensor::new(vec![c0.clone(), mid, c0.transposed()]).unwrap();
        assert_eq!(t.reversed(), t);
        let fwd = optima_tt_max_directed(&t, 2, Direction::Forward).unwrap();
        let bwd = optima_tt_max_directed(&t, 2, Direction::Backward).unwrap();
        assert_eq!(t.eval(&fwd).unwrap().abs(), t.eval(&bwd).unwrap().abs());
    }
}
