//! The distribution `p(idx) ∝ Y[idx]^2` of a TT-tensor.
//!
//! For a right-orthogonal tensor the mass of every prefix is a squared norm:
//!
//! ```text
//! sum over n_{l+1}..n_d of Y[n_1, .., n_d]^2 = |G_1[0, n_1, :] ... G_l[:, n_l, :]|^2
//! ```
//!
//! so conditional marginals cost a few vector-matrix products and multi-indices
//! can be drawn one mode at a time. No global normalization constant is
//! computed; each table carries only its own prefix mass.

use ndarray::{Array1, ArrayD};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Result, TtError};
use crate::index::MultiIndex;
use crate::optima::run_beam;
use crate::oracle::brute_prefix_masses;
use crate::orth::{check_right_orthogonal, tt_orth_with, RankPolicy};
use crate::tensor::{TtTensor, DEFAULT_ELEMENT_BUDGET};

/// Gram residual above which a tensor does not count as right-orthogonal.
pub const ORTHOGONALITY_TOL: f64 = 1e-8;

/// How to obtain right-orthogonal cores.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preparation {
    /// The caller already orthogonalized; fail if the cores disagree.
    Verify,
    /// Orthogonalize a copy first.
    Orthogonalize,
}

/// Conditional distribution of one mode given a fixed prefix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarginalTable {
    pub probs: Vec<f64>,
    pub conditioning: MultiIndex,
    /// Unnormalized mass of the conditioning prefix.
    pub norm_const: f64,
}

/// A right-orthogonal tensor ready for marginal queries and sampling.
#[derive(Clone, Debug)]
pub struct Marginals {
    ortho: TtTensor,
}

impl Marginals {
    pub fn new(t: &TtTensor, prep: Preparation) -> Result<Self> {
        let ortho = match prep {
            Preparation::Verify => {
                check_right_orthogonal(t, ORTHOGONALITY_TOL)?;
                t.clone()
            }
            Preparation::Orthogonalize => tt_orth_with(t, RankPolicy::Shrink)?,
        };
        Ok(Marginals { ortho })
    }

    pub fn tensor(&self) -> &TtTensor {
        &self.ortho
    }

    fn prefix_product(&self, prefix: &[usize]) -> Array1<f64> {
        let mut q = Array1::ones(1);
        for (core, &n) in self.ortho.cores().iter().zip(prefix) {
            q = q.dot(&core.slice(n));
        }
        q
    }

    /// Squared norms of the prefix extended by each index of the next mode.
    fn masses_after(&self, q: &Array1<f64>, mode: usize) -> Vec<(f64, Array1<f64>)> {
        let core = &self.ortho.cores()[mode];
        (0..core.mode_size())
            .map(|n| {
                let w = q.dot(&core.slice(n));
                (w.dot(&w), w)
            })
            .collect()
    }

    /// Distribution of mode `partial.len() + 1` given the fixed `partial` prefix.
    pub fn table(&self, partial: &MultiIndex) -> Result<MarginalTable> {
        let d = self.ortho.ndim();
        if partial.len() >= d {
            return Err(TtError::InvalidArgument(format!(
                "prefix of length {} leaves no free mode in a {d}-dimensional tensor",
                partial.len()
            )));
        }
        partial.check_within(&self.ortho.shape())?;
        let q = self.prefix_product(partial.as_slice());
        let masses: Vec<f64> = self.masses_after(&q, partial.len()).into_iter().map(|(m, _)| m).collect();
        let total: f64 = masses.iter().sum();
        if total == 0.0 {
            return Err(TtError::ZeroMass(format!("prefix {partial} has no mass")));
        }
        Ok(MarginalTable {
            probs: masses.into_iter().map(|m| m / total).collect(),
            conditioning: partial.clone(),
            norm_const: total,
        })
    }

    /// Draws `count` independent multi-indices from `p ∝ Y^2`, one mode at a
    /// time. The generator is ChaCha8 seeded with `seed`.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<MultiIndex>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = self.ortho.ndim();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let mut q = Array1::ones(1);
            let mut idx = Vec::with_capacity(d);
            for mode in 0..d {
                let mut options = self.masses_after(&q, mode);
                let weights = WeightedIndex::new(options.iter().map(|(m, _)| *m)).map_err(|_| {
                    TtError::ZeroMass(format!("prefix {} has no mass", MultiIndex::from_zero_based(idx.clone())))
                })?;
                let pick = weights.sample(&mut rng);
                q = options.swap_remove(pick).1;
                idx.push(pick);
            }
            out.push(MultiIndex::from_zero_based(idx));
        }
        Ok(out)
    }
}

/// Conditional marginal of mode `partial.len() + 1`; see [`Marginals::table`].
pub fn prefix_marginal(t: &TtTensor, partial: &MultiIndex, prep: Preparation) -> Result<MarginalTable> {
    Marginals::new(t, prep)?.table(partial)
}

/// Draws `count` multi-indices with probability `Y[idx]^2 / sum Y^2`.
pub fn sample(t: &TtTensor, count: usize, seed: u64) -> Result<Vec<MultiIndex>> {
    if count == 0 {
        return Err(TtError::InvalidArgument("sample count must be at least 1".into()));
    }
    Marginals::new(t, Preparation::Orthogonalize)?.sample(count, seed)
}

/// Outcome of [`beam_marginal_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BeamCheckReport {
    /// Largest `|row norm^2 - brute mass| / sum Y^2` over all steps and rows.
    pub max_discrepancy: f64,
    /// The same maximum in absolute mass units.
    pub max_abs_mass_discrepancy: f64,
    /// Largest discrepancy per mode.
    pub per_step: Vec<f64>,
    /// Squared row norms of every expanded row, per mode.
    pub row_masses: Vec<Vec<f64>>,
    pub total_mass: f64,
}

/// Replays the beam search and compares, at every step and for every
/// expanded row, the squared prefix norm with the brute-force mass
/// `sum Y[prefix, l, ...]^2` of the same partial index. The tensor is
/// densified, so it must fit the default element budget.
pub fn beam_marginal_check(t: &TtTensor, k: usize) -> Result<BeamCheckReport> {
    if k == 0 {
        return Err(TtError::InvalidArgument("beam width K must be at least 1".into()));
    }
    let full: ArrayD<f64> = t.to_full_with_budget(DEFAULT_ELEMENT_BUDGET)?;
    let total_mass: f64 = full.iter().map(|v| v * v).sum();
    let ortho = tt_orth_with(t, RankPolicy::Shrink)?;

    let mut per_step = vec![0.0f64; t.ndim()];
    let mut row_masses = vec![Vec::new(); t.ndim()];
    let mut max_abs = 0.0f64;
    let mut failure = None;
    run_beam(&ortho, k, |step| {
        let n = t.shape()[step.mode];
        for (p, parent) in step.parents.rows().into_iter().enumerate() {
            let prefix = MultiIndex::from_zero_based(parent.to_vec());
            let brute = match brute_prefix_masses(&full, &prefix) {
                Ok(b) => b,
                Err(e) => {
                    failure.get_or_insert(e);
                    return;
                }
            };
            for (l, &mass) in brute.iter().enumerate() {
                let row = step.expanded.row(p * n + l);
                let norm2 = row.dot(&row);
                row_masses[step.mode].push(norm2);
                let diff = (norm2 - mass).abs();
                max_abs = max_abs.max(diff);
                let rel = if total_mass > 0.0 { diff / total_mass } else { diff };
                per_step[step.mode] = per_step[step.mode].max(rel);
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(BeamCheckReport {
        max_discrepancy: per_step.iter().copied().fold(0.0, f64::max),
        max_abs_mass_discrepancy: max_abs,
        per_step,
        row_masses,
        total_mass,
    })
}
