//! `jacobi-flow`: coefficient tables, verification, contour integrals and
//! parameter sweeps for the inverted spectral flow of the free Jacobi process.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use jacobi_flow::contour::IntegralForm;
use jacobi_flow::powerseries::DEFAULT_ORDER;
use jacobi_flow::FlowParams;
use jacobi_flow_cli::commands::{cmd_coeffs, cmd_integral, cmd_sweep, cmd_verify, emit};
use jacobi_flow_cli::config::Config;
use jacobi_flow_cli::error::{EXIT_OK, EXIT_USAGE};
use jacobi_flow_cli::suite::Level;
use jacobi_flow_cli::table::Format;
use jacobi_flow_cli::{CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "jacobi-flow",
    version,
    about = "Taylor coefficients and integral representations of the inverted free Jacobi flow"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PointArgs {
    /// Trace asymmetry, |kappa| < 1
    #[arg(long, allow_negative_numbers = true)]
    kappa: Option<f64>,
    /// Time, t > 0
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    /// key=value file supplying kappa, t, n_max and format; flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Table of a_n, b_n, S_n and the Phi^{-1} and M coefficients
    Coeffs {
        #[command(flatten)]
        point: PointArgs,
        /// Number of rows, 1..=64
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite at one parameter point
    Verify {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = Level::Fast)]
        level: Level,
    },
    /// Evaluate M(z) by its contour-integral representation
    Integral {
        #[command(flatten)]
        point: PointArgs,
        /// Evaluation point as re,im
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z: Complex64,
        #[arg(long, default_value_t = IntegralForm::Corollary)]
        form: IntegralForm,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One coefficient table per (kappa, t) grid point plus a manifest
    Sweep {
        /// Comma-separated kappa values
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            required = true
        )]
        kappa: Vec<f64>,
        /// Comma-separated t values
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            required = true
        )]
        t: Vec<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        format: Option<Format>,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; 0 uses one per core
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected re,im, got {s:?}"))?;
    let part = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok(Complex64::new(part(re)?, part(im)?))
}

fn load_config(path: Option<&Path>) -> CliResult<Config> {
    path.map_or_else(|| Ok(Config::default()), Config::load)
}

fn resolve_point(point: &PointArgs) -> CliResult<(FlowParams, Config)> {
    let cfg = load_config(point.config.as_deref())?;
    let kappa = point
        .kappa
        .or(cfg.kappa)
        .ok_or_else(|| CliError::Usage("--kappa is required".into()))?;
    let t = point
        .t
        .or(cfg.t)
        .ok_or_else(|| CliError::Usage("--t is required".into()))?;
    Ok((FlowParams::new(kappa, t)?, cfg))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Coeffs {
            point,
            n,
            format,
            out,
        } => {
            let (p, cfg) = resolve_point(&point)?;
            let n = n.or(cfg.n_max).unwrap_or(DEFAULT_ORDER);
            let format = format.or(cfg.format).unwrap_or_default();
            emit(&cmd_coeffs(&p, n)?.render(format), out.as_deref())
        }
        Command::Verify { point, level } => {
            let (p, _) = resolve_point(&point)?;
            let report = cmd_verify(&p, level);
            let failures = report.failures().count();
            let summary = if failures == 0 { "PASS" } else { "FAIL" };
            let text = format!(
                "{report}overall {summary}: {} of {} checks passed\n",
                report.entries.len() - failures,
                report.entries.len()
            );
            emit(&text, None)?;
            if failures > 0 {
                return Err(CliError::VerifyFailed(failures));
            }
            Ok(())
        }
        Command::Integral {
            point,
            z,
            form,
            format,
            out,
        } => {
            let (p, cfg) = resolve_point(&point)?;
            let format = format.or(cfg.format).unwrap_or_default();
            emit(&cmd_integral(&p, z, form)?.render(format), out.as_deref())
        }
        Command::Sweep {
            kappa,
            t,
            n,
            format,
            out,
            jobs,
            config,
        } => {
            let cfg = load_config(config.as_deref())?;
            let n = n.or(cfg.n_max).unwrap_or(DEFAULT_ORDER);
            let format = format.or(cfg.format).unwrap_or_default();
            let outcome = cmd_sweep(&kappa, &t, n, format, &out, jobs)?;
            for d in &outcome.duplicates {
                eprintln!(
                    "warning: duplicate grid point kappa={} t={} skipped",
                    d.kappa, d.t
                );
            }
            println!("{}", outcome.manifest.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
