//! Benchmark functions, their grid discretizations and TT builders.
//!
//! | name        | f(x)                                                        | box              | minimum                        |
//! |-------------|-------------------------------------------------------------|------------------|--------------------------------|
//! | Ackley      | -20 e^{-0.2 sqrt(mean x^2)} - e^{mean cos 2 pi x} + 20 + e   | [-32.768, 32.768]| 0 at 0                         |
//! | Alpine      | sum abs(x sin x + 0.1 x)                                     | [-10, 10]        | 0 at 0                         |
//! | Dixon       | (x_1 - 1)^2 + sum_{i>=2} i (2 x_i^2 - x_{i-1})^2             | [-10, 10]        | 0 at x_i = 2^{-(2^i - 2)/2^i}  |
//! | Exponential | -exp(-sum x^2 / 2)                                           | [-1, 1]          | -1 at 0                        |
//! | Grienwank   | 1 + sum x^2 / 4000 - prod cos(x_i / sqrt i)                  | [-600, 600]      | 0 at 0                         |
//! | Michalewicz | -sum sin(x_i) sin^20(i x_i^2 / pi)                           | [0, pi]          | not known in closed form       |
//! | Qing        | sum (x_i^2 - i)^2                                            | [-500, 500]      | 0 at x_i = sqrt i              |
//! | Rastrigin   | 10 d + sum (x^2 - 10 cos 2 pi x)                             | [-5.12, 5.12]    | 0 at 0                         |
//! | Schaffer    | (mean_{i<d} sqrt s_i (1 + sin^2(50 s_i^0.2)))^2, s_i = sqrt(x_i^2 + x_{i+1}^2) | [-100, 100] | 0 at 0       |
//! | Schwefel    | 418.9829 d - sum x sin sqrt(abs x)                           | [-500, 500]      | ~0 at x_i = 420.9687           |
//!
//! Indices `i` are one-based in the formulas.

mod explicit;
pub mod grid;
mod tt_svd;

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use ndarray::{ArrayD, IxDyn};
use serde::{Deserialize, Serialize};

use crate::error::{Result, TtError};
use crate::index::MultiIndex;
use crate::tensor::{TtTensor, DEFAULT_ELEMENT_BUDGET};

pub use grid::{GridSpec, ModeGrid};
pub use tt_svd::tt_svd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BenchmarkKind {
    Ackley,
    Alpine,
    Dixon,
    Exponential,
    Grienwank,
    Michalewicz,
    Qing,
    Rastrigin,
    Schaffer,
    Schwefel,
}

impl BenchmarkKind {
    pub const ALL: [BenchmarkKind; 10] = [
        BenchmarkKind::Ackley,
        BenchmarkKind::Alpine,
        BenchmarkKind::Dixon,
        BenchmarkKind::Exponential,
        BenchmarkKind::Grienwank,
        BenchmarkKind::Michalewicz,
        BenchmarkKind::Qing,
        BenchmarkKind::Rastrigin,
        BenchmarkKind::Schaffer,
        BenchmarkKind::Schwefel,
    ];

    /// The functions with a closed-form TT representation.
    pub const EXPLICIT: [BenchmarkKind; 5] = [
        BenchmarkKind::Exponential,
        BenchmarkKind::Grienwank,
        BenchmarkKind::Qing,
        BenchmarkKind::Rastrigin,
        BenchmarkKind::Schwefel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchmarkKind::Ackley => "Ackley",
            BenchmarkKind::Alpine => "Alpine",
            BenchmarkKind::Dixon => "Dixon",
            BenchmarkKind::Exponential => "Exponential",
            BenchmarkKind::Grienwank => "Grienwank",
            BenchmarkKind::Michalewicz => "Michalewicz",
            BenchmarkKind::Qing => "Qing",
            BenchmarkKind::Rastrigin => "Rastrigin",
            BenchmarkKind::Schaffer => "Schaffer",
            BenchmarkKind::Schwefel => "Schwefel",
        }
    }

    pub fn domain(self) -> (f64, f64) {
        match self {
            BenchmarkKind::Ackley => (-32.768, 32.768),
            BenchmarkKind::Alpine | BenchmarkKind::Dixon => (-10.0, 10.0),
            BenchmarkKind::Exponential => (-1.0, 1.0),
            BenchmarkKind::Grienwank => (-600.0, 600.0),
            BenchmarkKind::Michalewicz => (0.0, PI),
            BenchmarkKind::Qing | BenchmarkKind::Schwefel => (-500.0, 500.0),
            BenchmarkKind::Rastrigin => (-5.12, 5.12),
            BenchmarkKind::Schaffer => (-100.0, 100.0),
        }
    }

    pub fn has_explicit_tt(self) -> bool {
        Self::EXPLICIT.contains(&self)
    }
}

impl fmt::Display for BenchmarkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Case-insensitive; also accepts the usual spellings `griewank`,
/// `dixon-price`, `alpine1`, `schaffer-f7`.
impl FromStr for BenchmarkKind {
    type Err = TtError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let kind = match key.as_str() {
            "ackley" => BenchmarkKind::Ackley,
            "alpine" | "alpine1" => BenchmarkKind::Alpine,
            "dixon" | "dixon-price" | "dixonprice" => BenchmarkKind::Dixon,
            "exponential" | "exp" => BenchmarkKind::Exponential,
            "grienwank" | "griewank" => BenchmarkKind::Grienwank,
            "michalewicz" => BenchmarkKind::Michalewicz,
            "qing" => BenchmarkKind::Qing,
            "rastrigin" => BenchmarkKind::Rastrigin,
            "schaffer" | "schaffer-f7" => BenchmarkKind::Schaffer,
            "schwefel" => BenchmarkKind::Schwefel,
            _ => return Err(TtError::UnknownBenchmark(s.to_string())),
        };
        Ok(kind)
    }
}

/// A benchmark function fixed to a dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Benchmark {
    pub kind: BenchmarkKind,
    pub dim: usize,
}

impl Benchmark {
    pub fn new(kind: BenchmarkKind, dim: usize) -> Result<Self> {
        let min_dim = if kind == BenchmarkKind::Schaffer { 2 } else { 1 };
        if dim < min_dim {
            return Err(TtError::InvalidArgument(format!("{kind} needs dimension >= {min_dim}, got {dim}")));
        }
        Ok(Benchmark { kind, dim })
    }

    pub fn by_name(name: &str, dim: usize) -> Result<Self> {
        Self::new(name.parse()?, dim)
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn domain(&self) -> (f64, f64) {
        self.kind.domain()
    }

    /// Grid with `n` Chebyshev nodes per mode over the function's box.
    pub fn grid(&self, n: usize) -> Result<GridSpec> {
        let (a, b) = self.domain();
        GridSpec::uniform(self.dim, a, b, n)
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        let d = self.dim as f64;
        match self.kind {
            BenchmarkKind::Ackley => {
                let sq = x.iter().map(|v| v * v).sum::<f64>() / d;
                let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / d;
                -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
            }
            BenchmarkKind::Alpine => x.iter().map(|v| (v * v.sin() + 0.1 * v).abs()).sum(),
            BenchmarkKind::Dixon => {
                let head = (x[0] - 1.0).powi(2);
                head + x
                    .windows(2)
                    .enumerate()
                    .map(|(k, w)| (k + 2) as f64 * (2.0 * w[1] * w[1] - w[0]).powi(2))
                    .sum::<f64>()
            }
            BenchmarkKind::Exponential => -(-0.5 * x.iter().map(|v| v * v).sum::<f64>()).exp(),
            BenchmarkKind::Grienwank => {
                let sum = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
                let prod: f64 = x.iter().enumerate().map(|(k, v)| (v / ((k + 1) as f64).sqrt()).cos()).product();
                1.0 + sum - prod
            }
            BenchmarkKind::Michalewicz => {
                -x.iter().enumerate().map(|(k, v)| v.sin() * ((k + 1) as f64 * v * v / PI).sin().powi(20)).sum::<f64>()
            }
            BenchmarkKind::Qing => x.iter().enumerate().map(|(k, v)| (v * v - (k + 1) as f64).powi(2)).sum(),
            BenchmarkKind::Rastrigin => 10.0 * d + x.iter().map(|v| v * v - 10.0 * (2.0 * PI * v).cos()).sum::<f64>(),
            BenchmarkKind::Schaffer => {
                let mean = x
                    .windows(2)
                    .map(|w| {
                        let s = (w[0] * w[0] + w[1] * w[1]).sqrt();
                        s.sqrt() * (1.0 + (50.0 * s.powf(0.2)).sin().powi(2))
                    })
                    .sum::<f64>()
                    / (d - 1.0);
                mean * mean
            }
            BenchmarkKind::Schwefel => 418.9829 * d - x.iter().map(|v| v * v.abs().sqrt().sin()).sum::<f64>(),
        }
    }

    /// Location of the global minimum, when known.
    pub fn argmin(&self) -> Option<Vec<f64>> {
        let d = self.dim;
        match self.kind {
            BenchmarkKind::Michalewicz => None,
            BenchmarkKind::Dixon => Some(
                (1..=d)
                    .map(|i| {
                        let p = 2f64.powi(i as i32);
                        2f64.powf(-(p - 2.0) / p)
                    })
                    .collect(),
            ),
            BenchmarkKind::Qing => Some((1..=d).map(|i| (i as f64).sqrt()).collect()),
            BenchmarkKind::Schwefel => Some(vec![420.9687; d]),
            _ => Some(vec![0.0; d]),
        }
    }

    /// Whether [`Benchmark::min_value`] is the exact global minimum.
    pub fn min_is_exact(&self) -> bool {
        !matches!(self.kind, BenchmarkKind::Michalewicz | BenchmarkKind::Schwefel)
    }

    /// Declared minimum value: exact where known, otherwise `f(argmin)`.
    pub fn min_value(&self) -> Option<f64> {
        match self.kind {
            BenchmarkKind::Exponential => Some(-1.0),
            BenchmarkKind::Michalewicz => None,
            BenchmarkKind::Schwefel => self.argmin().map(|x| self.evaluate(&x)),
            _ => Some(0.0),
        }
    }

    /// Values of the function at every grid point, row-major.
    pub fn discretize_full(&self, grid: &GridSpec) -> Result<ArrayD<f64>> {
        self.discretize_full_with_budget(grid, DEFAULT_ELEMENT_BUDGET)
    }

    pub fn discretize_full_with_budget(&self, grid: &GridSpec, budget: u128) -> Result<ArrayD<f64>> {
        self.check_grid(grid)?;
        let numel = grid.numel();
        if numel > budget {
            return Err(TtError::Budget { what: "dense grid", requested: numel, limit: budget });
        }
        let shape = grid.shape();
        let nodes: Vec<Vec<f64>> = grid.modes.iter().map(ModeGrid::nodes).collect();
        let mut idx = vec![0usize; shape.len()];
        let mut x: Vec<f64> = nodes.iter().map(|n| n[0]).collect();
        let mut values = Vec::with_capacity(numel as usize);
        for _ in 0..numel {
            values.push(self.evaluate(&x));
            // odometer increment, last mode fastest
            for m in (0..shape.len()).rev() {
                idx[m] += 1;
                if idx[m] < shape[m] {
                    x[m] = nodes[m][idx[m]];
                    break;
                }
                idx[m] = 0;
                x[m] = nodes[m][0];
            }
        }
        Ok(ArrayD::from_shape_vec(IxDyn(&shape), values).expect("sized"))
    }

    /// Function value at a grid node.
    pub fn evaluate_at(&self, grid: &GridSpec, idx: &MultiIndex) -> Result<f64> {
        self.check_grid(grid)?;
        Ok(self.evaluate(&grid.point(idx)?))
    }

    /// Closed-form TT representation on `grid`; see [`BenchmarkKind::EXPLICIT`].
    pub fn explicit_cores(&self, grid: &GridSpec) -> Result<TtTensor> {
        self.check_grid(grid)?;
        explicit::build(self.kind, grid)
    }

    fn check_grid(&self, grid: &GridSpec) -> Result<()> {
        if grid.ndim() != self.dim {
            return Err(TtError::ShapeMismatch(format!(
                "{} has dimension {} but the grid has {} modes",
                self.name(),
                self.dim,
                grid.ndim()
            )));
        }
        Ok(())
    }
}

/// Per-mode nearest grid node to `x`; ties go to the lower index.
pub fn nearest_grid_index(grid: &GridSpec, x: &[f64]) -> Result<MultiIndex> {
    grid.nearest_index(x)
}

/// Closed-form TT representation of a named benchmark on `grid`.
pub fn explicit_cores(name: &str, grid: &GridSpec) -> Result<TtTensor> {
    Benchmark::by_name(name, grid.ndim())?.explicit_cores(grid)
}
