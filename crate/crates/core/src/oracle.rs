//! Exhaustive ground truth over dense arrays.
//!
//! Nothing here touches the TT types: every function scans a plain
//! `ndarray::ArrayD` in row-major order, so results stay independent of the
//! code paths they are used to check. Ties resolve to the first element in
//! lexicographic index order.

use ndarray::{ArrayD, ArrayViewD, Axis};

use crate::error::{Result, TtError};
use crate::index::MultiIndex;

/// Exact extremes of a dense array.
#[derive(Clone, Debug, PartialEq)]
pub struct Extremes {
    pub i_min: MultiIndex,
    pub y_min: f64,
    pub i_max: MultiIndex,
    pub y_max: f64,
}

pub fn brute_min_max(full: &ArrayD<f64>) -> Result<Extremes> {
    if full.is_empty() {
        return Err(TtError::InvalidArgument("empty array".into()));
    }
    let (mut lo, mut hi) = ((0, f64::INFINITY), (0, f64::NEG_INFINITY));
    for (off, &v) in full.iter().enumerate() {
        if v < lo.1 {
            lo = (off, v);
        }
        if v > hi.1 {
            hi = (off, v);
        }
    }
    let shape = full.shape();
    Ok(Extremes {
        i_min: MultiIndex::from_flat_offset(lo.0, shape),
        y_min: lo.1,
        i_max: MultiIndex::from_flat_offset(hi.0, shape),
        y_max: hi.1,
    })
}

/// Index and value of the largest `|y|`.
pub fn brute_argmax_abs(full: &ArrayD<f64>) -> Result<(MultiIndex, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (off, &v) in full.iter().enumerate() {
        if best.is_none_or(|(_, b)| v.abs() > b.abs()) {
            best = Some((off, v));
        }
    }
    let (off, v) = best.ok_or_else(|| TtError::InvalidArgument("empty array".into()))?;
    Ok((MultiIndex::from_flat_offset(off, full.shape()), v))
}

/// The `k` largest-modulus entries, best first, ties by index order.
pub fn brute_top_abs(full: &ArrayD<f64>, k: usize) -> Vec<(MultiIndex, f64)> {
    let mut entries: Vec<(usize, f64)> = full.iter().copied().enumerate().collect();
    entries.sort_by(|a, b| b.1.abs().total_cmp(&a.1.abs()).then(a.0.cmp(&b.0)));
    entries.into_iter().take(k).map(|(off, v)| (MultiIndex::from_flat_offset(off, full.shape()), v)).collect()
}

fn fix_prefix<'a>(full: &'a ArrayD<f64>, prefix: &MultiIndex) -> Result<ArrayViewD<'a, f64>> {
    if prefix.len() >= full.ndim() {
        return Err(TtError::InvalidArgument(format!(
            "prefix of length {} leaves no free mode in a {}-dimensional array",
            prefix.len(),
            full.ndim()
        )));
    }
    prefix.check_within(full.shape())?;
    let mut view = full.view();
    for &i in prefix.as_slice() {
        view = view.index_axis_move(Axis(0), i);
    }
    Ok(view)
}

/// Unnormalized masses `sum Y[prefix, l, ...]^2` for each `l` of the mode
/// following `prefix`.
pub fn brute_prefix_masses(full: &ArrayD<f64>, prefix: &MultiIndex) -> Result<Vec<f64>> {
    let view = fix_prefix(full, prefix)?;
    Ok(view.outer_iter().map(|slab| slab.iter().map(|v| v * v).sum()).collect())
}

/// Conditional distribution of the next mode given `prefix`, under
/// `p ∝ Y^2`.
pub fn brute_marginal(full: &ArrayD<f64>, prefix: &MultiIndex) -> Result<Vec<f64>> {
    let masses = brute_prefix_masses(full, prefix)?;
    let total: f64 = masses.iter().sum();
    if total == 0.0 {
        return Err(TtError::ZeroMass(format!("prefix {prefix} has no mass")));
    }
    Ok(masses.into_iter().map(|m| m / total).collect())
}

/// `p(idx) = Y[idx]^2 / sum Y^2`.
pub fn brute_probability(full: &ArrayD<f64>, idx: &MultiIndex) -> f64 {
    let total: f64 = full.iter().map(|v| v * v).sum();
    let v = full[idx.as_slice()];
    v * v / total
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::{arr2, Array, IxDyn};

    #[test]
    fn min_max_of_small_matrix() {
        let full = arr2(&[[1.0, 2.0], [3.0, 0.0]]).into_dyn();
        let e = brute_min_max(&full).unwrap();
        assert_eq!((e.y_min, e.i_min.to_one_based()), (0.0, vec![2, 2]));
        assert_eq!((e.y_max, e.i_max.to_one_based()), (3.0, vec![2, 1]));
    }

    #[test]
    fn constant_array_first_occurrence() {
        let full = Array::from_elem(IxDyn(&[2, 3]), 4.0);
        let e = brute_min_max(&full).unwrap();
        assert_eq!(e.y_min, e.y_max);
        assert_eq!(e.i_min.to_one_based(), vec![1, 1]);
        assert_eq!(e.i_max.to_one_based(), vec![1, 1]);
        assert_eq!(brute_argmax_abs(&full).unwrap().0.to_one_based(), vec![1, 1]);
    }

    #[test]
    fn empty_array_is_an_error() {
        let full = ArrayD::<f64>::zeros(IxDyn(&[0, 3]));
        assert!(brute_min_max(&full).is_err());
        assert!(brute_argmax_abs(&full).is_err());
    }

    #[test]
    fn top_abs_orders_and_agrees_with_argmax() {
        let full = Array::from_shape_vec(IxDyn(&[2, 2]), vec![1.0, -5.0, 5.0, 2.0]).unwrap();
        let top = brute_top_abs(&full, 4);
        let order: Vec<f64> = top.iter().map(|t| t.1).collect();
        assert_eq!(order, vec![-5.0, 5.0, 2.0, 1.0]);
        assert_eq!(brute_top_abs(&full, 1)[0].0, brute_argmax_abs(&full).unwrap().0);
    }

    #[test]
    fn marginals_sum_squares() {
        let full = Array::from_shape_vec(IxDyn(&[2, 2]), vec![1.0, 1.0, 2.0, 0.0]).unwrap();
        let p = brute_marginal(&full, &MultiIndex::empty()).unwrap();
        assert!((p[0] - 2.0 / 6.0).abs() < 1e-15 && (p[1] - 4.0 / 6.0).abs() < 1e-15);
        let p = brute_marginal(&full, &MultiIndex::from_zero_based(vec![1])).unwrap();
        assert_eq!(p, vec![1.0, 0.0]);
        let zero = ArrayD::<f64>::zeros(IxDyn(&[2, 2]));
        assert!(matches!(brute_marginal(&zero, &MultiIndex::empty()), Err(TtError::ZeroMass(_))));
        assert!(brute_marginal(&full, &MultiIndex::from_zero_based(vec![0, 0])).is_err());
    }
}
