//! Batch front-end: loads a run configuration, executes classification,
//! duality, dispersion, and entropy sweeps over k-grids, and emits CSV or
//! JSON.
//!
//! Exit codes: 0 success, 1 validation, 2 duality infeasibility, 3 numeric
//! (including oracle-check failures), 4 I/O.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use magnon_torus::config::{EntropyBase, OutputFormat, RunConfig};
use magnon_torus::error::{Error, Result};
use magnon_torus::oracle;
use magnon_torus::runner::{self, ReportOutput};

#[derive(Parser)]
#[command(
    name = "magnon-torus",
    version,
    about = "Toroidal classification, FM/AFM duality, and two-mode magnon \
             entanglement sweeps for bipartite spin lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the couplings onto their torus and report curvature
    Classify(RunArgs),
    /// Construct and verify the canonical dual configuration
    Dual(RunArgs),
    /// Hybridized magnon dispersions over the k-grid
    Dispersion(RunArgs),
    /// Splitting entanglement entropies over the k-grid
    #[command(name = "entropy-sp")]
    EntropySp(RunArgs),
    /// Squeezing entanglement entropies over the k-grid
    #[command(name = "entropy-sq")]
    EntropySq(RunArgs),
    /// Full sweep: gauge parameters, dispersions, and both entropies
    Sweep(RunArgs),
    /// Cross-validate the closed forms against the truncated-Fock oracle
    #[command(name = "oracle-check")]
    OracleCheck,
}

#[derive(Args)]
struct RunArgs {
    /// Run configuration file
    #[arg(long)]
    config: PathBuf,
    /// Output file; overrides the config's output key (default stdout)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output format; overrides the config
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Entropy log base; overrides the config
    #[arg(long, value_enum)]
    base: Option<BaseArg>,
    /// Worker threads (fallback: MAGNON_TORUS_THREADS, then all cores)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BaseArg {
    Nats,
    Bits,
}

fn load_config(args: &RunArgs) -> Result<RunConfig> {
    let mut cfg = RunConfig::from_path(&args.config)?;
    if let Some(f) = args.format {
        cfg.output_format = match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        };
    }
    if let Some(b) = args.base {
        cfg.entropy_base = match b {
            BaseArg::Nats => EntropyBase::Nats,
            BaseArg::Bits => EntropyBase::Bits,
        };
    }
    if let Some(o) = &args.output {
        cfg.output_path = Some(o.display().to_string());
    }
    Ok(cfg)
}

fn emit_table(args: &RunArgs, run: fn(&RunConfig, usize) -> Result<ReportOutput>) -> Result<()> {
    let cfg = load_config(args)?;
    let threads = runner::resolve_threads(args.threads);
    let out = run(&cfg, threads)?;
    if out.all_unstable() {
        eprintln!(
            "warning: all {} k-points are unstable (|Γ̃| ≥ 1); squeezing columns are empty",
            out.total_points
        );
    }
    runner::write_output(cfg.output_path.as_deref(), &out.text)
}

fn run_oracle_check() -> Result<()> {
    let results = oracle::cross_check();
    let mut failures = 0;
    println!("{:<48} {:<6} detail", "check", "status");
    for r in &results {
        println!(
            "{:<48} {:<6} {}",
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.detail
        );
        if !r.passed {
            failures += 1;
        }
    }
    if failures > 0 {
        return Err(Error::Numeric(format!(
            "{failures}/{} oracle checks failed",
            results.len()
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Classify(args) => {
            let cfg = load_config(&args)?;
            let text = runner::run_classify(&cfg)?;
            runner::write_output(cfg.output_path.as_deref(), &text)
        }
        Command::Dual(args) => {
            let cfg = load_config(&args)?;
            let text = runner::run_dual(&cfg)?;
            runner::write_output(cfg.output_path.as_deref(), &text)
        }
        Command::Dispersion(args) => emit_table(&args, runner::run_dispersion),
        Command::EntropySp(args) => emit_table(&args, runner::run_entropy_sp),
        Command::EntropySq(args) => emit_table(&args, runner::run_entropy_sq),
        Command::Sweep(args) => emit_table(&args, runner::run_sweep),
        Command::OracleCheck => run_oracle_check(),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests exit 0; usage mistakes are
            // validation failures.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
