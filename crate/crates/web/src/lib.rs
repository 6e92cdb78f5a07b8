//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each exported function returns a JSON string; errors are reported as a
//! JSON object with a single `error` field so the page can show them inline.
//! The `*_report` functions hold the logic and are plain Rust, so they are
//! tested natively.

use serde::Serialize;
use tt_optima::oracle::brute_argmax_abs;
use tt_optima::{
    optima_tt, optima_tt_max, sample, tt_random, tt_svd, Benchmark, GridSpec, MultiIndex, Result, TtTensor,
};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest dense grid the demo compresses with TT-SVD in the browser.
pub const MAX_DENSE_ELEMENTS: usize = 1 << 20;

/// Beam widths compared by [`k_dependence_report`].
pub const K_VALUES: [usize; 5] = [1, 2, 5, 10, 25];

/// Relative tolerance of the TT-SVD compression.
const SVD_TOL: f64 = 1e-10;

#[derive(Debug, Serialize)]
pub struct OptimizeReport {
    pub function: String,
    pub d: usize,
    pub n: usize,
    pub k: usize,
    /// Whether the tensor came from closed-form cores or from TT-SVD.
    pub construction: &'static str,
    pub ranks: Vec<usize>,
    pub y_min: f64,
    pub x_min: Vec<f64>,
    pub y_max: f64,
    pub x_max: Vec<f64>,
    /// Grid values for `d = 2`, row `i` holding the first coordinate's node `i`.
    pub heatmap: Option<Heatmap>,
}

#[derive(Debug, Serialize)]
pub struct Heatmap {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize)]
pub struct KPoint {
    pub k: usize,
    /// Fraction of trials whose found modulus is within 0.1% of the largest.
    pub success: f64,
    /// Mean of `max|t| / |found|` over the trials.
    pub mean_ratio: f64,
}

#[derive(Debug, Serialize)]
pub struct KDependenceReport {
    pub d: usize,
    pub n: usize,
    pub rank: usize,
    pub trials: usize,
    pub points: Vec<KPoint>,
}

#[derive(Debug, Serialize)]
pub struct SampleReport {
    pub function: String,
    pub n: usize,
    pub heatmap: Heatmap,
    /// Drawn grid points with probability proportional to the squared value.
    pub points: Vec<[f64; 2]>,
}

fn coordinates(grid: &GridSpec, idx: &MultiIndex) -> Vec<f64> {
    idx.as_slice().iter().zip(&grid.modes).map(|(&i, m)| m.node(i)).collect()
}

fn benchmark_tensor(b: &Benchmark, grid: &GridSpec) -> Result<(TtTensor, &'static str)> {
    if b.kind.has_explicit_tt() {
        return Ok((b.explicit_cores(grid)?, "closed-form cores"));
    }
    let full = b.discretize_full_with_budget(grid, MAX_DENSE_ELEMENTS as u128)?;
    Ok((tt_svd(&full, SVD_TOL)?, "TT-SVD"))
}

fn heatmap(t: &TtTensor, grid: &GridSpec) -> Result<Heatmap> {
    let full = t.to_full()?;
    let n = t.shape();
    let values = (0..n[0]).map(|i| (0..n[1]).map(|j| full[[i, j].as_slice()]).collect()).collect();
    Ok(Heatmap { x: grid.modes[0].nodes(), y: grid.modes[1].nodes(), values })
}

/// Minimum and maximum of a benchmark function on an `n`-node Chebyshev grid.
pub fn optimize_report(name: &str, d: usize, n: usize, k: usize) -> Result<OptimizeReport> {
    let b = Benchmark::by_name(name, d)?;
    let grid = b.grid(n)?;
    let (t, construction) = benchmark_tensor(&b, &grid)?;
    let r = optima_tt(&t, k)?;
    Ok(OptimizeReport {
        function: b.name().to_string(),
        d,
        n,
        k,
        construction,
        ranks: t.ranks(),
        y_min: r.y_min,
        x_min: coordinates(&grid, &r.i_min),
        y_max: r.y_max,
        x_max: coordinates(&grid, &r.i_max),
        heatmap: if d == 2 { Some(heatmap(&t, &grid)?) } else { None },
    })
}

/// How often the largest-modulus search finds the true largest modulus of
/// random TT tensors, for each beam width in [`K_VALUES`].
pub fn k_dependence_report(d: usize, n: usize, rank: usize, trials: usize, seed: u64) -> Result<KDependenceReport> {
    let shape = vec![n; d];
    let ranks = vec![rank; d.saturating_sub(1)];
    let mut found = vec![(0usize, 0f64); K_VALUES.len()];
    for trial in 0..trials {
        let t = tt_random(&shape, &ranks, seed.wrapping_add(trial as u64))?;
        let (_, best) = brute_argmax_abs(&t.to_full_with_budget(MAX_DENSE_ELEMENTS as u128)?)?;
        for (slot, &k) in found.iter_mut().zip(&K_VALUES) {
            let value = t.eval(&optima_tt_max(&t, k)?.0)?;
            let ratio = best.abs() / value.abs();
            slot.0 += usize::from(ratio <= 1.001);
            slot.1 += ratio;
        }
    }
    let points = found
        .iter()
        .zip(&K_VALUES)
        .map(|(&(hits, sum), &k)| KPoint { k, success: hits as f64 / trials as f64, mean_ratio: sum / trials as f64 })
        .collect();
    Ok(KDependenceReport { d, n, rank, trials, points })
}

/// Draws grid points of a two-dimensional benchmark with probability
/// proportional to the squared function value.
pub fn sample_report(name: &str, n: usize, count: usize, seed: u64) -> Result<SampleReport> {
    let b = Benchmark::by_name(name, 2)?;
    let grid = b.grid(n)?;
    let (t, _) = benchmark_tensor(&b, &grid)?;
    let points = sample(&t, count, seed)?
        .iter()
        .map(|idx| {
            let x = coordinates(&grid, idx);
            [x[0], x[1]]
        })
        .collect();
    Ok(SampleReport { function: b.name().to_string(), n, heatmap: heatmap(&t, &grid)?, points })
}

fn to_json<T: Serialize>(r: Result<T>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).unwrap_or_else(|e| error_json(&e.to_string())),
        Err(e) => error_json(&e.to_string()),
    }
}

fn error_json(message: &str) -> String {
    serde_json::json!({ "error": message }).to_string()
}

#[wasm_bindgen]
pub fn optimize_function(name: &str, d: usize, n: usize, k: usize) -> String {
    to_json(optimize_report(name, d, n, k))
}

#[wasm_bindgen]
pub fn k_dependence(d: usize, n: usize, rank: usize, trials: usize, seed: u64) -> String {
    to_json(k_dependence_report(d, n, rank, trials, seed))
}

#[wasm_bindgen]
pub fn sample_function(name: &str, n: usize, count: usize, seed: u64) -> String {
    to_json(sample_report(name, n, count, seed))
}
