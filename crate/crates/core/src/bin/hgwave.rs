//! Command-line entry point: parses the experiment configuration, runs the
//! selected verification suite, writes summary.json plus the CSV/SVG
//! artifacts, and encodes the outcome in the exit status
//! (0 pass, 1 criterion failure, 2 configuration error, 3 numerical error).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hgwave::config::ExperimentConfig;
use hgwave::harness::{self, RunOutput};
use hgwave::report::write_text;
use hgwave::Error;

#[derive(Parser)]
#[command(name = "hgwave", version, about = "Dispersive-decay verification suites for radial Fourier calculus on the Heisenberg group")]
struct Cli {
    /// Path to the TOML experiment configuration (defaults apply if omitted).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory; overrides both the config file and HGWAVE_OUT.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Size of the global worker pool (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Uniform tolerance multiplier; values > 1 coarsen grids for quick runs.
    #[arg(long, global = true)]
    tol_scale: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Special-function oracles, growth proxies, phase hypotheses, van der Corput.
    VerifyLemmas,
    /// Partition of unity, evenness and support of the dyadic window.
    PartitionCheck,
    /// Kernel fields at t = 0, scaling identity, round-trip, conservation laws.
    KernelEval,
    /// Time-decay and dyadic-scaling regressions with theta = 0 bound.
    DecayFit,
    /// Critical points, normalized magnitudes, leading-term ratios.
    Sharpness,
    /// Boundedness of the pointwise dispersive inequality.
    DispersiveRatio,
    /// Every suite above; the full acceptance run.
    All,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Config(_) | Error::InvalidParameter(_) | Error::Io(_) => 2,
        Error::QuadratureNonconvergence { .. }
        | Error::PanelBudgetExceeded { .. }
        | Error::GridMismatch(_)
        | Error::DegeneratePhase(_)
        | Error::NoSignChange(_, _)
        | Error::UnresolvedTail { .. }
        | Error::BoundaryArgmax { .. }
        | Error::CurvatureBoundViolated { .. }
        | Error::ZeroInput(_) => 3,
    }
}

fn run(cli: &Cli) -> Result<RunOutput, Error> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(scale) = cli.tol_scale {
        cfg.apply_tol_scale(scale)?;
    }
    if let Some(threads) = cli.threads {
        // ignore the error if a global pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let out = match &cli.out {
        Some(dir) => dir.clone(),
        None => cfg.output_dir(),
    };
    let output = match cli.command {
        Command::VerifyLemmas => harness::run_verify_lemmas(&cfg)?,
        Command::PartitionCheck => harness::run_partition_check(&cfg)?,
        Command::KernelEval => harness::run_kernel_eval(&cfg)?,
        Command::DecayFit => harness::run_decay_fit(&cfg)?,
        Command::Sharpness => harness::run_sharpness(&cfg)?,
        Command::DispersiveRatio => harness::run_dispersive_ratio(&cfg)?,
        Command::All => harness::run_all(&cfg)?,
    };
    for (name, contents) in &output.artifacts {
        write_text(&out.join(name), contents)?;
    }
    write_text(&out.join("summary.json"), &output.summary.to_json())?;
    Ok(output)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            for v in &output.summary.verdicts {
                println!("{}: {} - {}", v.criterion, if v.pass { "PASS" } else { "FAIL" }, v.detail);
            }
            println!(
                "{}: {} verdicts in {:.1} s",
                output.summary.command,
                output.summary.verdicts.len(),
                output.summary.wall_clock_seconds
            );
            if output.summary.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
