//! `helicap`: helicity profiles, recognition verdicts, capacity bounds.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage
//! or input errors.

use clap::{Args, Parser, Subcommand};
use helicap_cli::commands::{self, RegionArgs};
use helicap_cli::config::RunConfig;
use helicap_cli::report;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "helicap", version, about = "Helicity profiles, recognition verdicts, and capacity bounds on model domains")]
struct Cli {
    /// JSON config file (same schema as the report's config echo).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Uniform per-axis quadrature points (default: calibrated per-axis).
    #[arg(long, global = true)]
    quad_order: Option<usize>,
    /// Cap on enumerated assignments.
    #[arg(long, global = true)]
    cap: Option<u128>,
    /// Seed for randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Report sink (appended as JSON lines); profiles are written whole.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RegionFlags {
    /// Region kind: ball, shell, ellipsoid, cylinder.
    #[arg(long)]
    region: String,
    /// Ambient dimension (ellipsoids take it from --widths).
    #[arg(long, default_value_t = 4)]
    dim: usize,
    /// Radius (ball), inner radius (shell), disc radius (cylinder).
    #[arg(long)]
    r: Option<f64>,
    /// Outer radius (shell) or half-length (cylinder).
    #[arg(long = "R")]
    r_out: Option<f64>,
    /// Comma-separated ellipsoid widths, e.g. 1,2.
    #[arg(long)]
    widths: Option<String>,
}

impl RegionFlags {
    fn to_args(&self) -> RegionArgs {
        RegionArgs {
            region: self.region.clone(),
            dim: self.dim,
            r: self.r,
            r_out: self.r_out,
            widths: self.widths.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Helicity computations.
    Helicity {
        #[command(subcommand)]
        action: HelicityAction,
    },
    /// Stokes' theorem for helicity on a region.
    Stokes {
        #[command(flatten)]
        region: RegionFlags,
    },
    /// Feasibility analysis of a helicity profile.
    Recognition {
        #[command(subcommand)]
        action: RecognitionAction,
    },
    /// Certified capacity bounds and axiom checks.
    Capacity {
        #[command(subcommand)]
        action: CapacityAction,
    },
    /// End-to-end reproduction pipelines.
    Pipeline {
        #[command(subcommand)]
        action: PipelineAction,
    },
    /// Seeded randomized verification suites.
    Suite {
        /// Batch size per suite (0 for an empty pass report).
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum HelicityAction {
    /// Boundary helicity profile of a region with the standard form.
    Compute {
        #[command(flatten)]
        region: RegionFlags,
    },
}

#[derive(Subcommand)]
enum RecognitionAction {
    /// The thresholds c1, c2, c0 of a profile.
    C0 {
        #[arg(long)]
        profile: PathBuf,
    },
    /// Verify that sign-mixing assignments are infeasible above c0.
    Keylemma {
        #[arg(long)]
        profile: PathBuf,
    },
    /// Verify the forced rescaling C = 1.
    Verify {
        #[arg(long)]
        profile: PathBuf,
    },
    /// Emit the feasible-C spectrum.
    Spectrum {
        #[arg(long)]
        profile: PathBuf,
        /// Write the spectrum intervals as CSV.
        #[arg(long)]
        emit_csv: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CapacityAction {
    /// Certified interval for an embedding capacity.
    Bounds {
        /// Domain spec, e.g. ball:1, cylinder, shell:1:2, ellipsoid:1:2.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 1.0)]
        from_scale: f64,
        #[arg(long, default_value_t = 1.0)]
        to_scale: f64,
    },
    /// Monotonicity/conformality axiom suite over the catalog.
    Axioms {
        /// Suite selector (only "full" is defined).
        #[arg(long, default_value = "full")]
        suite: String,
        #[arg(long)]
        emit_csv: Option<PathBuf>,
    },
    /// The non-compact slit-shell pair and its linear flow.
    Counterexample,
}

#[derive(Subcommand)]
enum PipelineAction {
    /// Shell profile -> thresholds -> separation -> forced rescaling.
    Shell {
        #[arg(long)]
        r: f64,
        #[arg(long = "R")]
        r_out: f64,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

fn effective_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(q) = cli.quad_order {
        config.quad_order = Some(q);
    }
    if let Some(c) = cli.cap {
        config.cap = c;
    }
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    if cli.out.is_some() {
        config.out = cli.out.clone();
    }
    config.validate()?;
    Ok(config)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let config = effective_config(&cli)?;
    let report = match &cli.command {
        Command::Helicity {
            action: HelicityAction::Compute { region },
        } => {
            let (_, text) = commands::cmd_helicity_compute(&region.to_args(), &config)?;
            println!("{text}");
            return Ok(true);
        }
        Command::Stokes { region } => commands::cmd_stokes(&region.to_args(), &config)?,
        Command::Recognition { action } => match action {
            RecognitionAction::C0 { profile } => commands::cmd_recognition_c0(profile, &config)?,
            RecognitionAction::Keylemma { profile } => {
                commands::cmd_recognition_keylemma(profile, &config)?
            }
            RecognitionAction::Verify { profile } => {
                commands::cmd_recognition_verify(profile, &config)?
            }
            RecognitionAction::Spectrum { profile, emit_csv } => {
                commands::cmd_recognition_spectrum(profile, emit_csv.as_ref(), &config)?
            }
        },
        Command::Capacity { action } => match action {
            CapacityAction::Bounds {
                from,
                to,
                dim,
                from_scale,
                to_scale,
            } => commands::cmd_capacity_bounds(from, to, *dim, *from_scale, *to_scale, &config)?,
            CapacityAction::Axioms { suite, emit_csv } => {
                if suite != "full" {
                    anyhow::bail!("unknown axiom suite {suite:?} (expected \"full\")");
                }
                commands::cmd_capacity_axioms(emit_csv.as_ref(), &config)?
            }
            CapacityAction::Counterexample => commands::cmd_capacity_counterexample(&config)?,
        },
        Command::Pipeline {
            action: PipelineAction::Shell { r, r_out, n },
        } => commands::cmd_pipeline_shell(*r, *r_out, *n, &config)?,
        Command::Suite { count } => commands::cmd_suite(*count, &config)?,
    };
    report::emit(&report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
