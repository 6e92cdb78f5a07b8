use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tt_optima_cli::config::{parse_functions, UsizeList};
use tt_optima_cli::output::write_report;
use tt_optima_cli::{run, CliError, Experiment, ExperimentConfig, OutputFormat, Result, SizeRange};

/// Run a seeded tt-optima experiment and write its results.
///
/// Unset options take the experiment's full-size defaults (see README).
#[derive(Debug, Parser)]
#[command(name = "tt-optima", version)]
struct Args {
    #[arg(long, value_enum)]
    experiment: Experiment,
    /// Dimensions, e.g. `4,5,6` or `4..6`.
    #[arg(long = "d")]
    dims: Option<UsizeList>,
    /// Mode size `N`, or an inclusive range `5..20` to draw sizes from.
    #[arg(long = "n")]
    sizes: Option<SizeRange>,
    /// TT-ranks, e.g. `1..5`.
    #[arg(long = "rank")]
    ranks: Option<UsizeList>,
    /// Beam widths, e.g. `1,10,25`.
    #[arg(long = "k")]
    ks: Option<UsizeList>,
    /// Trials per cell.
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Search from both ends and keep the better candidate.
    #[arg(long)]
    bidir: bool,
    /// Merge the first J modes before searching.
    #[arg(long = "join-j")]
    join_j: Option<usize>,
    /// Benchmarks, comma-separated, or `all`.
    #[arg(long)]
    functions: Option<String>,
    /// Relative TT-SVD tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Largest dense tensor (elements) an experiment may form.
    #[arg(long)]
    budget: Option<u64>,
    /// Write zeros instead of wall times, for byte-stable output.
    #[arg(long)]
    no_timing: bool,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

impl Args {
    fn config(self) -> Result<(ExperimentConfig, Option<PathBuf>, OutputFormat)> {
        let mut cfg = ExperimentConfig::defaults(self.experiment);
        cfg.seed = self.seed;
        cfg.bidir = self.bidir;
        cfg.join_j = self.join_j;
        if let Some(UsizeList(v)) = self.dims {
            cfg.dims = v;
        }
        if let Some(v) = self.sizes {
            cfg.sizes = v;
        }
        if let Some(UsizeList(v)) = self.ranks {
            cfg.ranks = v;
        }
        if let Some(UsizeList(v)) = self.ks {
            cfg.ks = v;
        }
        if let Some(v) = self.reps {
            cfg.reps = v;
        }
        if let Some(f) = self.functions {
            cfg.functions = parse_functions(&f)?;
        }
        if let Some(v) = self.tol {
            cfg.tol = v;
        }
        if let Some(v) = self.budget {
            cfg.budget = v;
        }
        if self.no_timing {
            cfg.timing = false;
        }
        cfg.validate()?;
        Ok((cfg, self.out, self.format))
    }
}

fn main() -> ExitCode {
    match Args::parse().config().and_then(|(cfg, out, format)| execute(&cfg, out, format)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tt-optima: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cfg: &ExperimentConfig, out: Option<PathBuf>, format: OutputFormat) -> Result<()> {
    let report = run(cfg)?;
    let mut sink: Box<dyn Write> = match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(&path).map_err(|e| CliError::Output(format!("cannot create {}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    write_report(&report, format, &mut sink)?;
    sink.flush()?;
    Ok(())
}
