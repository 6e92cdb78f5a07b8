use std::time::Instant;

use serde::Serialize;
use tt_optima::Benchmark;

use super::search;
use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuncBigRow {
    pub function: String,
    pub d: usize,
    pub n: usize,
    pub k: usize,
    pub avg_rank: f64,
    pub y_min: f64,
    /// Tensor value at the grid node nearest to the known minimizer.
    pub y_min_tens: f64,
    pub err_min: f64,
    /// Optimizer wall time in seconds; 0 when timing is disabled.
    pub time_s: f64,
}

/// Build each benchmark from closed-form cores, search it, and compare the
/// minimum with the tensor value nearest to the known minimizer. Only the
/// search itself is timed.
pub fn run_func_big(cfg: &ExperimentConfig) -> Result<Vec<FuncBigRow>> {
    let n = cfg.sizes.max;
    let mut rows = Vec::new();
    for &d in &cfg.dims {
        for &kind in &cfg.functions {
            let b = Benchmark::new(kind, d)?;
            let grid = b.grid(n)?;
            let t = b.explicit_cores(&grid)?;
            let x_star = b.argmin().ok_or_else(|| CliError::Config(format!("{kind} has no known minimizer")))?;
            let y_min_tens = t.eval(&grid.nearest_index(&x_star)?)?;
            for &k in &cfg.ks {
                let start = Instant::now();
                let r = search(&t, k, cfg)?;
                let elapsed = start.elapsed().as_secs_f64();
                rows.push(FuncBigRow {
                    function: kind.name().to_string(),
                    d,
                    n,
                    k,
                    avg_rank: t.mean_rank(),
                    y_min: r.y_min,
                    y_min_tens,
                    err_min: (r.y_min - y_min_tens).abs(),
                    time_s: if cfg.timing { elapsed } else { 0.0 },
                });
            }
        }
    }
    Ok(rows)
}
