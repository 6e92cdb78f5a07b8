use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use serde::Serialize;
use tt_optima::{BenchmarkKind, DEFAULT_K};

use crate::error::{CliError, Result};

/// Dense-tensor budget for the experiments: large enough for the random
/// protocol's worst case of six modes of size 20 (6.4e7 elements).
pub const EXPERIMENT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// Random Gaussian TT-tensors, min/max error against brute force.
    RandomSmall,
    /// Benchmarks on a 16-point grid, compressed by TT-SVD.
    FuncSmall,
    /// Benchmarks in 100 dimensions from closed-form cores.
    FuncBig,
    /// Found-vs-true maximum ratios for several beam widths.
    KdepHist,
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Inclusive range of mode sizes; a single value means every mode has that size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SizeRange {
    pub min: usize,
    pub max: usize,
}

impl SizeRange {
    pub fn fixed(n: usize) -> Self {
        SizeRange { min: n, max: n }
    }
}

/// Accepts `16`, `5..20` or `5..=20`; both range forms are inclusive.
impl FromStr for SizeRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad mode size {t:?}: {e}"));
        match s.split_once("..") {
            None => Ok(SizeRange::fixed(parse(s)?)),
            Some((lo, hi)) => {
                let (min, max) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
                if min > max {
                    return Err(format!("empty size range {s}"));
                }
                Ok(SizeRange { min, max })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub dims: Vec<usize>,
    pub sizes: SizeRange,
    pub ranks: Vec<usize>,
    pub ks: Vec<usize>,
    /// Trials per cell (random-small, kdep-hist).
    pub reps: usize,
    pub seed: u64,
    pub bidir: bool,
    pub join_j: Option<usize>,
    pub functions: Vec<BenchmarkKind>,
    /// Relative tolerance of the TT-SVD used by func-small.
    pub tol: f64,
    pub budget: u64,
    /// Record optimizer wall time (func-big); off gives byte-stable output.
    pub timing: bool,
}

impl ExperimentConfig {
    /// The full-size setup of each experiment.
    pub fn defaults(experiment: Experiment) -> Self {
        let base = ExperimentConfig {
            experiment,
            dims: vec![6],
            sizes: SizeRange::fixed(16),
            ranks: vec![],
            ks: vec![DEFAULT_K],
            reps: 1,
            seed: 0,
            bidir: false,
            join_j: None,
            functions: vec![],
            tol: 1e-10,
            budget: EXPERIMENT_BUDGET,
            timing: false,
        };
        match experiment {
            Experiment::RandomSmall => ExperimentConfig {
                dims: vec![4, 5, 6],
                sizes: SizeRange { min: 5, max: 20 },
                ranks: (1..=5).collect(),
                reps: 100,
                ..base
            },
            Experiment::FuncSmall => ExperimentConfig { functions: BenchmarkKind::ALL.to_vec(), ..base },
            Experiment::FuncBig => ExperimentConfig {
                dims: vec![100],
                sizes: SizeRange::fixed(1024),
                functions: BenchmarkKind::EXPLICIT.to_vec(),
                timing: true,
                ..base
            },
            Experiment::KdepHist => ExperimentConfig { ranks: vec![3], ks: vec![1, 10, 25], reps: 1000, ..base },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        let uses_ranks = matches!(self.experiment, Experiment::RandomSmall | Experiment::KdepHist);
        let uses_functions = matches!(self.experiment, Experiment::FuncSmall | Experiment::FuncBig);
        if self.dims.is_empty() || self.dims.contains(&0) {
            return bad("--d needs at least one positive dimension".into());
        }
        if self.ks.is_empty() || self.ks.contains(&0) {
            return bad("--k needs at least one positive beam width".into());
        }
        if self.sizes.min == 0 {
            return bad("mode sizes must be positive".into());
        }
        if uses_functions && self.sizes.min < 2 {
            return bad("a Chebyshev grid needs at least 2 nodes per mode".into());
        }
        if uses_ranks && (self.ranks.is_empty() || self.ranks.contains(&0)) {
            return bad("--rank needs at least one positive rank".into());
        }
        if uses_ranks && self.reps == 0 {
            return bad("--reps must be positive".into());
        }
        if uses_functions && self.functions.is_empty() {
            return bad("--functions is empty".into());
        }
        if self.tol.is_nan() || self.tol < 0.0 {
            return bad(format!("--tol must be non-negative, got {}", self.tol));
        }
        if self.experiment == Experiment::FuncBig {
            if let Some(f) = self.functions.iter().find(|f| !f.has_explicit_tt()) {
                return bad(format!(
                    "{f} has no closed-form TT cores; func-big supports {:?}",
                    BenchmarkKind::EXPLICIT
                ));
            }
        }
        if let Some(j) = self.join_j {
            let min_d = *self.dims.iter().min().expect("non-empty");
            if j == 0 || j >= min_d {
                return bad(format!("--join-j must be in 1..{min_d}, got {j}"));
            }
        }
        if uses_functions && self.functions.contains(&BenchmarkKind::Schaffer) && self.dims.contains(&1) {
            return bad("Schaffer needs d >= 2".into());
        }
        Ok(())
    }
}

/// Comma-separated list of dimensions, ranks or beam widths; `a..b` ranges
/// (inclusive) are expanded.
pub fn parse_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let r: SizeRange = part.parse()?;
        out.extend(r.min..=r.max);
    }
    Ok(out)
}

/// [`parse_list`] as a command-line value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsizeList(pub Vec<usize>);

impl FromStr for UsizeList {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        parse_list(s).map(UsizeList)
    }
}

pub fn parse_functions(s: &str) -> Result<Vec<BenchmarkKind>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(BenchmarkKind::ALL.to_vec());
    }
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|e: tt_optima::TtError| CliError::Config(e.to_string())))
        .collect()
}
