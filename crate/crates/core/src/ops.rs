//! Element-wise arithmetic in the TT format: constants, sums and differences.

use ndarray::{s, Array3};

use crate::error::{Result, TtError};
use crate::tensor::{TtCore, TtTensor};

/// Rank-1 tensor whose every element equals `value`.
///
/// Every core holds `|value|^(1/d)`; the last core also carries the sign.
/// A zero value gives all-zero cores.
pub fn tt_const(shape: &[usize], value: f64) -> Result<TtTensor> {
    if shape.is_empty() {
        return Err(TtError::InvalidArgument("shape must have at least one mode".into()));
    }
    if let Some(mode) = shape.iter().position(|&n| n == 0) {
        return Err(TtError::InvalidArgument(format!("mode {} has size 0", mode + 1)));
    }
    if !value.is_finite() {
        return Err(TtError::InvalidArgument(format!("constant {value} is not finite")));
    }
    let d = shape.len();
    let root = value.abs().powf(1.0 / d as f64);
    let cores = shape
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let fill = if i + 1 == d { root * sign(value) } else { root };
            TtCore::from_vec((1, n, 1), vec![fill; n]).expect("finite fill")
        })
        .collect();
    Ok(TtTensor::from_cores_unchecked(cores))
}

fn sign(v: f64) -> f64 {
    if v < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Element-wise sum. Inner ranks add up: `R_i = R_i^a + R_i^b`.
pub fn tt_add(a: &TtTensor, b: &TtTensor) -> Result<TtTensor> {
    combine(a, b, 1.0)
}

/// Element-wise difference `a - b`: the sum with `b`'s last core negated.
pub fn tt_dif(a: &TtTensor, b: &TtTensor) -> Result<TtTensor> {
    combine(a, b, -1.0)
}

fn combine(a: &TtTensor, b: &TtTensor, b_scale: f64) -> Result<TtTensor> {
    if a.shape() != b.shape() {
        return Err(TtError::ShapeMismatch(format!(
            "cannot combine tensors of shapes {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    let d = a.ndim();
    if d == 1 {
        let data = a.cores()[0].data() + &(b.cores()[0].data() * b_scale);
        return TtTensor::from_arrays(vec![data]);
    }

    let cores = a
        .cores()
        .iter()
        .zip(b.cores())
        .enumerate()
        .map(|(i, (ca, cb))| {
            let (ra0, n, ra1) = ca.data().dim();
            let (rb0, _, rb1) = cb.data().dim();
            let scale = if i + 1 == d { b_scale } else { 1.0 };
            let mut out = if i == 0 {
                Array3::zeros((1, n, ra1 + rb1))
            } else if i + 1 == d {
                Array3::zeros((ra0 + rb0, n, 1))
            } else {
                Array3::zeros((ra0 + rb0, n, ra1 + rb1))
            };
            // First core: block row. Last core: block column. Otherwise block diagonal.
            let (a_rows, b_rows) = if i == 0 { (0..1, 0..1) } else { (0..ra0, ra0..ra0 + rb0) };
            let (a_cols, b_cols) = if i + 1 == d { (0..1, 0..1) } else { (0..ra1, ra1..ra1 + rb1) };
            out.slice_mut(s![a_rows, .., a_cols]).assign(ca.data());
            out.slice_mut(s![b_rows, .., b_cols]).assign(&(cb.data() * scale));
            TtCore::new(out)
        })
        .collect::<Result<Vec<_>>>()?;
    TtTensor::new(cores)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::MultiIndex;
    use crate::tensor::tt_random;

    fn all_values(t: &TtTensor) -> Vec<f64> {
        let shape = t.shape();
        (0..t.numel() as usize)
            .map(|off| t.eval_unchecked(MultiIndex::from_flat_offset(off, &shape).as_slice()))
            .collect()
    }

    #[test]
    fn constant_zero_has_zero_cores() {
        let t = tt_const(&[2, 2], 0.0).unwrap();
        assert!(t.cores().iter().all(|c| c.data().iter().all(|&v| v == 0.0)));
        assert!(all_values(&t).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn constant_single_mode_keeps_sign() {
        let t = tt_const(&[4], -8.0).unwrap();
        assert!(t.cores()[0].data().iter().all(|&v| v == -8.0));
    }

    #[test]
    fn constant_every_element() {
        let t = tt_const(&[3, 3, 3], 2.5).unwrap();
        assert_eq!(t.ranks(), vec![1, 1, 1, 1]);
        for v in t.to_full().unwrap() {
            assert!((v - 2.5).abs() <= 1e-14);
        }
        let t = tt_const(&[3, 4, 5], 7.5).unwrap();
        for v in all_values(&t) {
            assert!((v - 7.5).abs() <= 7.5 * 1e-12);
        }
    }

    #[test]
    fn constants_add() {
        let t = tt_add(&tt_const(&[2, 3], 1.0).unwrap(), &tt_const(&[2, 3], 2.0).unwrap()).unwrap();
        assert_eq!(t.ranks(), vec![1, 2, 1]);
        for v in all_values(&t) {
            assert!((v - 3.0).abs() < 1e-14);
        }
        let t = tt_dif(&tt_const(&[2, 2], 5.0).unwrap(), &tt_const(&[2, 2], 3.0).unwrap()).unwrap();
        for v in all_values(&t) {
            assert!((v - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn random_sum_ranks_and_values() {
        let a = tt_random(&[4, 5, 3], &[2, 2], 1).unwrap();
        let b = tt_random(&[4, 5, 3], &[3, 3], 2).unwrap();
        let s = tt_add(&a, &b).unwrap();
        assert_eq!(s.ranks(), vec![1, 5, 5, 1]);
        let (fa, fb, fs) = (a.to_full().unwrap(), b.to_full().unwrap(), s.to_full().unwrap());
        for ((x, y), z) in fa.iter().zip(&fb).zip(&fs) {
            assert!((x + y - z).abs() <= 1e-12 * (1.0 + z.abs()));
        }
        let diff = tt_dif(&a, &b).unwrap();
        for ((x, y), z) in fa.iter().zip(&fb).zip(&diff.to_full().unwrap()) {
            assert!((x - y - z).abs() <= 1e-12 * (1.0 + z.abs()));
        }
    }

    #[test]
    fn additive_identity_and_self_difference() {
        let a = tt_random(&[3, 4, 5, 2], &[2, 3, 2], 5).unwrap();
        let z = tt_add(&a, &tt_const(&a.shape(), 0.0).unwrap()).unwrap();
        let d = tt_dif(&a, &a).unwrap();
        let max = all_values(&a).iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for ((x, y), w) in all_values(&a).iter().zip(all_values(&z)).zip(all_values(&d)) {
            assert!((x - y).abs() <= 1e-12);
            assert!(w.abs() <= 1e-12 * max);
        }
    }

    #[test]
    fn single_mode_sum() {
        let a = tt_random(&[6], &[], 1).unwrap();
        let b = tt_random(&[6], &[], 2).unwrap();
        let s = tt_dif(&a, &b).unwrap();
        assert_eq!(s.ranks(), vec![1, 1]);
        for k in 0..6 {
            assert!((s.eval_unchecked(&[k]) - (a.eval_unchecked(&[k]) - b.eval_unchecked(&[k]))).abs() < 1e-15);
        }
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let a = tt_const(&[2, 3], 1.0).unwrap();
        let b = tt_const(&[3, 2], 1.0).unwrap();
        assert!(matches!(tt_add(&a, &b), Err(TtError::ShapeMismatch(_))));
    }
}
