//! The four experiment series. Each is a pure function of its configuration:
//! every trial draws from its own ChaCha8 stream keyed by the master seed and
//! the trial's coordinates, so results do not depend on evaluation order.

mod func_big;
mod func_small;
mod kdep_hist;
mod random_small;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tt_optima::optima::{join_first_indices_with_budget, split_joined_index};
use tt_optima::{optima_tt_with, Direction, OptimaResult, TtTensor};

pub use func_big::{run_func_big, FuncBigRow};
pub use func_small::{run_func_small, FuncSmallRow};
pub use kdep_hist::{run_kdep_hist, KdepRow, HIST_BINS, HIST_WIDTH, SUCCESS_RATIO};
pub use random_small::{run_random_small, RandomSmallRow};

use crate::config::{Experiment, ExperimentConfig};
use crate::error::Result;

/// Result rows, tagged by experiment.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "experiment", content = "rows", rename_all = "kebab-case")]
pub enum Rows {
    RandomSmall(Vec<RandomSmallRow>),
    FuncSmall(Vec<FuncSmallRow>),
    FuncBig(Vec<FuncBigRow>),
    KdepHist(Vec<KdepRow>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub config: ExperimentConfig,
    #[serde(flatten)]
    pub rows: Rows,
}

pub fn run(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let rows = match cfg.experiment {
        Experiment::RandomSmall => Rows::RandomSmall(run_random_small(cfg)?),
        Experiment::FuncSmall => Rows::FuncSmall(run_func_small(cfg)?),
        Experiment::FuncBig => Rows::FuncBig(run_func_big(cfg)?),
        Experiment::KdepHist => Rows::KdepHist(run_kdep_hist(cfg)?),
    };
    Ok(Report { config: cfg.clone(), rows })
}

/// Generator for one trial: the master seed selects the key, the trial
/// coordinates select the stream.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn direction(cfg: &ExperimentConfig) -> Direction {
    if cfg.bidir {
        Direction::BestOfBoth
    } else {
        Direction::Forward
    }
}

/// Min/max search honoring `--bidir` and `--join-j`; indices are always
/// reported in the original mode layout.
pub(crate) fn search(t: &TtTensor, k: usize, cfg: &ExperimentConfig) -> Result<OptimaResult> {
    match cfg.join_j {
        Some(j) if j > 1 => {
            let joined = join_first_indices_with_budget(t, j, cfg.budget as u128)?;
            let mut r = optima_tt_with(&joined, k, direction(cfg))?;
            let shape = t.shape();
            r.i_min = split_joined_index(&shape, j, &r.i_min);
            r.i_max = split_joined_index(&shape, j, &r.i_max);
            Ok(r)
        }
        _ => Ok(optima_tt_with(t, k, direction(cfg))?),
    }
}
