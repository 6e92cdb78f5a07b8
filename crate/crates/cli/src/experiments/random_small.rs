use rand::Rng;
use serde::Serialize;
use tt_optima::oracle::brute_min_max;
use tt_optima::tensor::tt_random_with_rng;

use super::{search, trial_rng};
use crate::config::ExperimentConfig;
use crate::error::Result;

/// Absolute error below which a trial counts as exact.
pub const EXACT_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RandomSmallRow {
    pub d: usize,
    pub rank: usize,
    pub k: usize,
    pub reps: usize,
    pub max_err_min: f64,
    pub max_err_max: f64,
    /// Trials with both errors at most 1e-10.
    pub exact_trials: usize,
}

/// For every (d, rank, K): draw mode sizes uniformly from the size range,
/// fill a TT-tensor with standard normal cores, search it, and compare with
/// a brute-force scan of the dense tensor. Tensors depend on (d, rank,
/// trial) only, so every K sees the same tensors.
pub fn run_random_small(cfg: &ExperimentConfig) -> Result<Vec<RandomSmallRow>> {
    let mut rows = Vec::new();
    for &d in &cfg.dims {
        for &rank in &cfg.ranks {
            for &k in &cfg.ks {
                let mut row =
                    RandomSmallRow { d, rank, k, reps: cfg.reps, max_err_min: 0.0, max_err_max: 0.0, exact_trials: 0 };
                for trial in 0..cfg.reps {
                    let stream = ((d as u64) << 48) | ((rank as u64) << 32) | trial as u64;
                    let mut rng = trial_rng(cfg.seed, stream);
                    let shape: Vec<usize> = (0..d).map(|_| rng.random_range(cfg.sizes.min..=cfg.sizes.max)).collect();
                    let t = tt_random_with_rng(&mut rng, &shape, &vec![rank; d - 1])?;
                    let truth = brute_min_max(&t.to_full_with_budget(cfg.budget as u128)?)?;
                    let found = search(&t, k, cfg)?;
                    let (e_min, e_max) = ((found.y_min - truth.y_min).abs(), (found.y_max - truth.y_max).abs());
                    row.max_err_min = row.max_err_min.max(e_min);
                    row.max_err_max = row.max_err_max.max(e_max);
                    if e_min <= EXACT_TOL && e_max <= EXACT_TOL {
                        row.exact_trials += 1;
                    }
                }
                rows.push(row);
            }
        }
    }
    Ok(rows)
}
