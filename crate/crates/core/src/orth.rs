//! Right-to-left orthogonalization.
//!
//! After the sweep every core `G_i`, `i >= 2`, satisfies
//! `sum_j G_i[:, j, :] G_i[:, j, :]^T = I`, i.e. its `(R_{i-1}, N_i R_i)`
//! unfolding has orthonormal rows. Each step factors that unfolding as
//! `R Q` (computed as the QR factorization of its transpose), keeps `Q` as
//! the new core and pushes `R` into the left neighbour.

use faer::Mat;
use ndarray::{Array2, Array3};

use crate::error::{Result, TtError};
use crate::tensor::{TtCore, TtTensor};

/// What to do when a core's left rank exceeds `N_i R_i`, so that its
/// unfolding cannot have orthonormal rows at that rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankPolicy {
    /// Fail with [`TtError::RankDeficient`].
    Reject,
    /// Lower the rank to `N_i R_i`. Element values are unchanged.
    Shrink,
}

/// Orthogonalizes cores `2..d`, rejecting rank chains with `R_{i-1} > N_i R_i`.
pub fn tt_orth(t: &TtTensor) -> Result<TtTensor> {
    tt_orth_with(t, RankPolicy::Reject)
}

pub fn tt_orth_with(t: &TtTensor, policy: RankPolicy) -> Result<TtTensor> {
    let mut cores: Vec<TtCore> = t.cores().to_vec();
    for i in (1..cores.len()).rev() {
        let (m, n, r1) = cores[i].data().dim();
        let k = n * r1;
        if m > k && policy == RankPolicy::Reject {
            return Err(TtError::RankDeficient { core: i + 1, left: m, rows: k });
        }

        let unfolding = cores[i].left_unfolding();
        let qr = Mat::<f64>::from_fn(k, m, |a, b| unfolding[[b, a]]).qr();
        let (q, r) = (qr.compute_thin_Q(), qr.thin_R());
        let p = q.ncols();

        // unfolding = r^T q^T
        let new_core = Array3::from_shape_fn((p, n, r1), |(c, l, b)| q[(l * r1 + b, c)]);
        let factor = Array2::from_shape_fn((m, p), |(a, c)| r[(c, a)]);

        let (l0, ln, _) = cores[i - 1].data().dim();
        let left = cores[i - 1].right_unfolding().dot(&factor);
        let left = left.into_shape_with_order((l0, ln, p)).expect("contiguous product");

        cores[i] = TtCore::validated(new_core, i + 1)?;
        cores[i - 1] = TtCore::validated(left, i)?;
    }
    TtTensor::new(cores)
}

/// Frobenius norm of `sum_j G[:, j, :] G[:, j, :]^T - I`.
pub fn gram_residual(core: &TtCore) -> f64 {
    let u = core.left_unfolding();
    let mut gram = u.dot(&u.t());
    for k in 0..gram.nrows() {
        gram[[k, k]] -= 1.0;
    }
    gram.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Largest Gram residual over cores `2..d` (0 for a single core).
pub fn max_gram_residual(t: &TtTensor) -> f64 {
    t.cores().iter().skip(1).map(gram_residual).fold(0.0, f64::max)
}

/// Fails with [`TtError::NotOrthogonal`] naming the first core whose Gram
/// residual exceeds `tol`.
pub fn check_right_orthogonal(t: &TtTensor, tol: f64) -> Result<()> {
    for (i, core) in t.cores().iter().enumerate().skip(1) {
        let residual = gram_residual(core);
        if residual > tol {
            return Err(TtError::NotOrthogonal { core: i + 1, residual });
        }
    }
    Ok(())
}
