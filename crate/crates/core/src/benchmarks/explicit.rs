//! Closed-form TT cores for separable benchmarks.
//!
//! A sum `g_1(x_1) + ... + g_d(x_d)` has TT rank 2:
//! first core `[g_1, 1]`, middle cores `[[1, 0], [g_i, 1]]`, last core `[1, g_d]^T`.
//! A product `c * h_1(x_1) ... h_d(x_d)` has rank 1.

use std::f64::consts::PI;

use ndarray::Array3;

use super::{BenchmarkKind, GridSpec};
use crate::error::{Result, TtError};
use crate::ops::tt_add;
use crate::tensor::{TtCore, TtTensor};

pub(super) fn build(kind: BenchmarkKind, grid: &GridSpec) -> Result<TtTensor> {
    let d = grid.ndim();
    match kind {
        BenchmarkKind::Exponential => product_tt(grid, -1.0, |_, x| (-0.5 * x * x).exp()),
        BenchmarkKind::Qing => sum_tt(grid, |i, x| (x * x - (i + 1) as f64).powi(2)),
        BenchmarkKind::Rastrigin => sum_tt(grid, |_, x| 10.0 + x * x - 10.0 * (2.0 * PI * x).cos()),
        BenchmarkKind::Schwefel => sum_tt(grid, |_, x| 418.9829 - x * x.abs().sqrt().sin()),
        BenchmarkKind::Grienwank => {
            let sum = sum_tt(grid, |i, x| x * x / 4000.0 + if i == 0 { 1.0 } else { 0.0 })?;
            let prod = product_tt(grid, -1.0, |i, x| (x / ((i + 1) as f64).sqrt()).cos())?;
            if d == 1 {
                // both parts are rank 1; fold them into a single core
                let v: Vec<f64> = (0..grid.modes[0].size)
                    .map(|n| sum.cores()[0].data()[[0, n, 0]] + prod.cores()[0].data()[[0, n, 0]])
                    .collect();
                return TtTensor::new(vec![TtCore::from_vec((1, v.len(), 1), v)?]);
            }
            tt_add(&sum, &prod)
        }
        other => Err(TtError::InvalidArgument(format!("{other} has no closed-form TT representation"))),
    }
}

fn sum_tt(grid: &GridSpec, g: impl Fn(usize, f64) -> f64) -> Result<TtTensor> {
    let d = grid.ndim();
    let vals: Vec<Vec<f64>> =
        grid.modes.iter().enumerate().map(|(i, m)| m.nodes().into_iter().map(|x| g(i, x)).collect()).collect();
    if d == 1 {
        let n = vals[0].len();
        return TtTensor::new(vec![TtCore::from_vec((1, n, 1), vals[0].clone())?]);
    }
    let mut cores = Vec::with_capacity(d);
    for (i, v) in vals.iter().enumerate() {
        let n = v.len();
        let core = if i == 0 {
            Array3::from_shape_fn((1, n, 2), |(_, k, c)| if c == 0 { v[k] } else { 1.0 })
        } else if i == d - 1 {
            Array3::from_shape_fn((2, n, 1), |(a, k, _)| if a == 0 { 1.0 } else { v[k] })
        } else {
            Array3::from_shape_fn((2, n, 2), |(a, k, c)| match (a, c) {
                (0, 0) | (1, 1) => 1.0,
                (1, 0) => v[k],
                _ => 0.0,
            })
        };
        cores.push(TtCore::new(core)?);
    }
    TtTensor::new(cores)
}

fn product_tt(grid: &GridSpec, scale: f64, h: impl Fn(usize, f64) -> f64) -> Result<TtTensor> {
    let d = grid.ndim();
    let cores = grid
        .modes
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let s = if i == d - 1 { scale } else { 1.0 };
            let v: Vec<f64> = m.nodes().into_iter().map(|x| s * h(i, x)).collect();
            TtCore::from_vec((1, v.len(), 1), v)
        })
        .collect::<Result<Vec<_>>>()?;
    TtTensor::new(cores)
}
