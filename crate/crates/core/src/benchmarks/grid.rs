//! Chebyshev–Gauss–Lobatto grids.
//!
//! Node `i` (zero-based) of a mode on `[a, b]` with `N` nodes is
//! `(a + b) / 2 + (b - a) / 2 * cos(pi * i / (N - 1))`, so node 0 is `b` and
//! node `N - 1` is `a`. The cosine is evaluated as
//! `sin(pi * (N - 1 - 2 i) / (2 (N - 1)))`, which makes the nodes exactly
//! antisymmetric about the centre.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, TtError};
use crate::index::MultiIndex;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeGrid {
    pub lower: f64,
    pub upper: f64,
    pub size: usize,
}

impl ModeGrid {
    pub fn new(lower: f64, upper: f64, size: usize) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() || lower >= upper {
            return Err(TtError::InvalidArgument(format!("grid bounds [{lower}, {upper}] are invalid")));
        }
        if size < 2 {
            return Err(TtError::InvalidArgument(format!("a grid needs at least 2 nodes, got {size}")));
        }
        Ok(ModeGrid { lower, upper, size })
    }

    pub fn node(&self, i: usize) -> f64 {
        let m = self.size - 1;
        if i == 0 {
            return self.upper;
        }
        if i == m {
            return self.lower;
        }
        let t = (PI * (m as f64 - 2.0 * i as f64) / (2.0 * m as f64)).sin();
        0.5 * (self.lower + self.upper) + 0.5 * (self.upper - self.lower) * t
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.size).map(|i| self.node(i)).collect()
    }

    /// Closest node to `x`; equidistant nodes resolve to the lower index.
    pub fn nearest(&self, x: f64) -> Result<usize> {
        if !(self.lower <= x && x <= self.upper) {
            return Err(TtError::OutOfDomain(format!("{x} is outside [{}, {}]", self.lower, self.upper)));
        }
        let mut best = (0, f64::INFINITY);
        for (i, node) in self.nodes().into_iter().enumerate() {
            let dist = (node - x).abs();
            if dist < best.1 {
                best = (i, dist);
            }
        }
        Ok(best.0)
    }
}

/// Per-mode discretization of a box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub modes: Vec<ModeGrid>,
}

impl GridSpec {
    pub fn new(modes: Vec<ModeGrid>) -> Result<Self> {
        if modes.is_empty() {
            return Err(TtError::InvalidArgument("a grid needs at least one mode".into()));
        }
        Ok(GridSpec { modes })
    }

    /// Same bounds and node count for all `d` modes.
    pub fn uniform(d: usize, lower: f64, upper: f64, size: usize) -> Result<Self> {
        Self::new(vec![ModeGrid::new(lower, upper, size)?; d])
    }

    pub fn ndim(&self) -> usize {
        self.modes.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.modes.iter().map(|m| m.size).collect()
    }

    pub fn numel(&self) -> u128 {
        self.modes.iter().fold(1u128, |n, m| n.saturating_mul(m.size as u128))
    }

    /// Coordinates of a grid point.
    pub fn point(&self, idx: &MultiIndex) -> Result<Vec<f64>> {
        if idx.len() != self.ndim() {
            return Err(TtError::ShapeMismatch(format!(
                "index has {} entries, grid has {} modes",
                idx.len(),
                self.ndim()
            )));
        }
        idx.check_within(&self.shape())?;
        Ok(self.modes.iter().zip(idx.as_slice()).map(|(m, &i)| m.node(i)).collect())
    }

    /// Per-mode nearest node to `x`.
    pub fn nearest_index(&self, x: &[f64]) -> Result<MultiIndex> {
        if x.len() != self.ndim() {
            return Err(TtError::ShapeMismatch(format!(
                "point has {} coordinates, grid has {} modes",
                x.len(),
                self.ndim()
            )));
        }
        self.modes
            .iter()
            .zip(x)
            .map(|(m, &xi)| m.nearest(xi))
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex::from_zero_based)
    }
}
