use serde::Serialize;
use tt_optima::optima::{join_first_indices_with_budget, optima_tt_max_directed, split_joined_index};
use tt_optima::oracle::brute_argmax_abs;
use tt_optima::tensor::tt_random_with_rng;
use tt_optima::MultiIndex;

use super::{direction, trial_rng};
use crate::config::ExperimentConfig;
use crate::error::Result;

pub const HIST_BINS: usize = 50;
pub const HIST_WIDTH: f64 = 0.01;
/// A trial succeeds when the true maximum modulus exceeds the found one by
/// at most this factor.
pub const SUCCESS_RATIO: f64 = 1.001;

/// One line of the ratio data. `kind` is `trial` (ratio of one trial),
/// `bin` (histogram count over `[lo, hi)`; the last bin is open-ended) or
/// `success` (fraction of trials with ratio at most `hi`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KdepRow {
    pub kind: String,
    pub k: usize,
    pub index: usize,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub value: f64,
}

/// For every trial draw one random tensor with the configured shape and
/// rank, then search it with every beam width and record
/// `max |Y| / |Y[found]|` (at least 1).
pub fn run_kdep_hist(cfg: &ExperimentConfig) -> Result<Vec<KdepRow>> {
    let (d, n, rank) = (cfg.dims[0], cfg.sizes.max, cfg.ranks[0]);
    let shape = vec![n; d];
    let mut ratios: Vec<Vec<f64>> = vec![Vec::with_capacity(cfg.reps); cfg.ks.len()];
    for trial in 0..cfg.reps {
        let mut rng = trial_rng(cfg.seed, trial as u64);
        let t = tt_random_with_rng(&mut rng, &shape, &vec![rank; d - 1])?;
        let (_, best) = brute_argmax_abs(&t.to_full_with_budget(cfg.budget as u128)?)?;
        for (ki, &k) in cfg.ks.iter().enumerate() {
            let idx = find_max(&t, k, cfg)?;
            ratios[ki].push(best.abs() / t.eval(&idx)?.abs());
        }
    }

    let mut rows = Vec::new();
    for (ki, &k) in cfg.ks.iter().enumerate() {
        let rs = &ratios[ki];
        rows.extend(rs.iter().enumerate().map(|(i, &r)| KdepRow {
            kind: "trial".into(),
            k,
            index: i,
            lo: None,
            hi: None,
            value: r,
        }));
        let mut counts = [0usize; HIST_BINS + 1];
        for &r in rs {
            let bin = ((r - 1.0) / HIST_WIDTH).floor().max(0.0) as usize;
            counts[bin.min(HIST_BINS)] += 1;
        }
        rows.extend(counts.iter().enumerate().map(|(b, &c)| KdepRow {
            kind: "bin".into(),
            k,
            index: b,
            lo: Some(1.0 + b as f64 * HIST_WIDTH),
            hi: (b < HIST_BINS).then(|| 1.0 + (b + 1) as f64 * HIST_WIDTH),
            value: c as f64,
        }));
        let ok = rs.iter().filter(|&&r| r <= SUCCESS_RATIO).count();
        rows.push(KdepRow {
            kind: "success".into(),
            k,
            index: 0,
            lo: None,
            hi: Some(SUCCESS_RATIO),
            value: ok as f64 / rs.len() as f64,
        });
    }
    Ok(rows)
}

fn find_max(t: &tt_optima::TtTensor, k: usize, cfg: &ExperimentConfig) -> Result<MultiIndex> {
    match cfg.join_j {
        Some(j) if j > 1 => {
            let joined = join_first_indices_with_budget(t, j, cfg.budget as u128)?;
            let idx = optima_tt_max_directed(&joined, k, direction(cfg))?;
            Ok(split_joined_index(&t.shape(), j, &idx))
        }
        _ => Ok(optima_tt_max_directed(t, k, direction(cfg))?),
    }
}
