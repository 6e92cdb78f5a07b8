use serde::Serialize;
use tt_optima::oracle::brute_min_max;
use tt_optima::{tt_svd, Benchmark};

use super::search;
use crate::config::ExperimentConfig;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuncSmallRow {
    pub function: String,
    pub d: usize,
    pub n: usize,
    pub k: usize,
    pub avg_rank: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub y_min_real: f64,
    pub y_max_real: f64,
    pub err_min: f64,
    pub err_max: f64,
}

/// Discretize each benchmark on the Chebyshev grid, compress with TT-SVD,
/// search, and compare with the extremes of the dense grid values.
pub fn run_func_small(cfg: &ExperimentConfig) -> Result<Vec<FuncSmallRow>> {
    let n = cfg.sizes.max;
    let mut rows = Vec::new();
    for &d in &cfg.dims {
        for &kind in &cfg.functions {
            let b = Benchmark::new(kind, d)?;
            let full = b.discretize_full_with_budget(&b.grid(n)?, cfg.budget as u128)?;
            let truth = brute_min_max(&full)?;
            let t = tt_svd(&full, cfg.tol)?;
            drop(full);
            for &k in &cfg.ks {
                let r = search(&t, k, cfg)?;
                rows.push(FuncSmallRow {
                    function: kind.name().to_string(),
                    d,
                    n,
                    k,
                    avg_rank: t.mean_rank(),
                    y_min: r.y_min,
                    y_max: r.y_max,
                    y_min_real: truth.y_min,
                    y_max_real: truth.y_max,
                    err_min: (r.y_min - truth.y_min).abs(),
                    err_max: (r.y_max - truth.y_max).abs(),
                });
            }
        }
    }
    Ok(rows)
}
