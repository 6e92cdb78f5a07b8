use faer::Mat;
use ndarray::{Array3, ArrayD};

use crate::error::{Result, TtError};
use crate::tensor::{TtCore, TtTensor};

/// Compress a dense tensor to TT format by sequential truncated SVDs.
///
/// Each of the `d - 1` truncations discards singular values with total
/// energy at most `rel_tol * |A|_F / sqrt(d - 1)`, so the relative
/// Frobenius error of the result is at most `rel_tol`.
pub fn tt_svd(full: &ArrayD<f64>, rel_tol: f64) -> Result<TtTensor> {
    if rel_tol.is_nan() || rel_tol < 0.0 {
        return Err(TtError::InvalidArgument(format!("tolerance must be non-negative, got {rel_tol}")));
    }
    let shape = full.shape().to_vec();
    let d = shape.len();
    if d == 0 || shape.contains(&0) {
        return Err(TtError::InvalidArgument(format!("cannot decompose a tensor of shape {shape:?}")));
    }
    let mut data: Vec<f64> = full.as_standard_layout().iter().copied().collect();
    if d == 1 {
        return TtTensor::new(vec![TtCore::from_vec((1, shape[0], 1), data)?]);
    }
    let norm = data.iter().map(|v| v * v).sum::<f64>().sqrt();
    let delta = rel_tol * norm / ((d - 1) as f64).sqrt();

    let mut cores = Vec::with_capacity(d);
    let mut r = 1usize;
    for &n in &shape[..d - 1] {
        let rows = r * n;
        let cols = data.len() / rows;
        let c = Mat::<f64>::from_fn(rows, cols, |a, j| data[a * cols + j]);
        let svd = c.thin_svd().map_err(|e| TtError::InvalidArgument(format!("SVD did not converge: {e:?}")))?;
        let (u, v) = (svd.U(), svd.V());
        let s = svd.S().column_vector();

        let mut keep = s.nrows();
        let mut tail = 0.0;
        while keep > 1 {
            let next = tail + s[keep - 1] * s[keep - 1];
            if next.sqrt() > delta {
                break;
            }
            tail = next;
            keep -= 1;
        }
        // An all-zero unfolding still needs rank >= 1.
        let core = Array3::from_shape_fn((r, n, keep), |(a, k, c)| u[(a * n + k, c)]);
        cores.push(TtCore::new(core)?);
        data = Vec::with_capacity(keep * cols);
        for c in 0..keep {
            data.extend((0..cols).map(|j| s[c] * v[(j, c)]));
        }
        r = keep;
    }
    cores.push(TtCore::from_vec((r, shape[d - 1], 1), data)?);
    TtTensor::new(cores)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::tt_random;

    fn rel_err(a: &ArrayD<f64>, b: &ArrayD<f64>) -> f64 {
        let num: f64 = a.iter().zip(b.iter()).map(|(x, y)| (x - y).powi(2)).sum();
        let den: f64 = b.iter().map(|y| y * y).sum();
        (num / den).sqrt()
    }

    #[test]
    fn recovers_low_rank_tensor() {
        let t = tt_random(&[4, 5, 6, 3], &[2, 3, 2], 11).unwrap();
        let full = t.to_full().unwrap();
        let back = tt_svd(&full, 1e-10).unwrap();
        assert_eq!(back.ranks(), vec![1, 2, 3, 2, 1]);
        assert!(rel_err(&back.to_full().unwrap(), &full) < 1e-12);
    }

    #[test]
    fn truncation_respects_tolerance() {
        let t = tt_random(&[5, 5, 5, 5], &[4, 4, 4], 3).unwrap();
        let full = t.to_full().unwrap();
        for tol in [1e-1, 1e-2, 0.3] {
            let back = tt_svd(&full, tol).unwrap();
            assert!(rel_err(&back.to_full().unwrap(), &full) <= tol * (1.0 + 1e-9));
        }
    }

    #[test]
    fn zero_tensor_and_one_mode() {
        let z = ArrayD::zeros(vec![3, 4]);
        assert_eq!(tt_svd(&z, 1e-10).unwrap().ranks(), vec![1, 1, 1]);
        let v = ArrayD::from_shape_vec(vec![3], vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(tt_svd(&v, 0.0).unwrap().to_full().unwrap(), v);
        assert!(tt_svd(&v, -1.0).is_err());
    }
}
