use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use osp22::coherent::CoherentParams;
use osp22::config::{OutputFormat, RunConfig, CONFIG_ENV};
use osp22::export::{self, Grid};
use osp22::harness::{self, Suite, VerificationReport};
use osp22::report::parse_complex;
use osp22::{Complex64, Error};

/// Verification suites and data export for supercoherent states of the free
/// particle.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on a
/// usage or configuration error.
#[derive(Debug, Parser)]
#[command(name = "osp22", version)]
struct Cli {
    #[command(flatten)]
    opts: Overrides,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a verification suite and write its report.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
    },
    /// Sample ψ_z and φ_z on a grid and write profile.csv.
    Profile {
        /// Grid as min:max:points; defaults to eight envelope widths each side.
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        grid: Option<Grid>,
    },
    /// Tabulate the symbols of the eight generators.
    Symbols,
    /// Sample the odd-sector trajectory and write trajectory.csv.
    Trajectory,
}

/// Command-line values override the config file, which overrides defaults.
#[derive(Debug, Args)]
struct Overrides {
    /// Flat TOML config file.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,

    /// Modes per sector of the truncated superspace.
    #[arg(long, global = true)]
    nmax: Option<usize>,

    /// Gauss-Hermite nodes.
    #[arg(long, global = true)]
    nodes: Option<usize>,

    #[arg(long, global = true)]
    tol_algebra: Option<f64>,
    #[arg(long, global = true)]
    tol_quadrature: Option<f64>,
    #[arg(long, global = true)]
    tol_coherent: Option<f64>,
    #[arg(long, global = true)]
    tol_residual: Option<f64>,
    #[arg(long, global = true)]
    tol_isometry: Option<f64>,

    /// Disk point such as 0.3, 0.5i or -0.2+0.1i; repeat for several samples.
    #[arg(long, global = true, value_parser = parse_z, allow_hyphen_values = true)]
    z: Vec<Complex64>,

    /// Coefficient of the Grassmann generator α.
    #[arg(long, global = true, value_parser = parse_z, allow_hyphen_values = true)]
    alpha: Option<Complex64>,

    /// Time; repeat for several. Sets the t-samples of `verify` and the
    /// sampled times of `trajectory`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    t: Vec<f64>,

    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<OutputFormat>,

    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Most modes per sector a coherent-state series may use.
    #[arg(long, global = true)]
    series_cap: Option<usize>,
}

fn parse_z(s: &str) -> Result<Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Overrides {
    fn apply(&self, cfg: &mut RunConfig, samples_from_flags: bool) -> Result<(), Error> {
        macro_rules! set {
            ($($flag:ident => $target:expr),* $(,)?) => {
                $(if let Some(v) = self.$flag.clone() { $target = v; })*
            };
        }
        set!(
            nmax => cfg.nmax,
            nodes => cfg.nodes,
            tol_algebra => cfg.tolerances.algebra,
            tol_quadrature => cfg.tolerances.quadrature,
            tol_coherent => cfg.tolerances.coherent,
            tol_residual => cfg.tolerances.residual,
            tol_isometry => cfg.tolerances.isometry,
            alpha => cfg.alpha,
            out => cfg.out_dir,
            format => cfg.format,
            seed => cfg.seed,
            series_cap => cfg.series_cap,
        );
        if samples_from_flags {
            if !self.z.is_empty() {
                cfg.z_samples = self.z.clone();
            }
            if !self.t.is_empty() {
                cfg.t_samples = self.t.clone();
            }
        }
        Ok(())
    }

    /// The single disk point for `profile` and `trajectory`.
    fn point(&self, cfg: &RunConfig) -> Result<CoherentParams, Error> {
        let z = self.z.first().copied().unwrap_or(cfg.z_samples[0]);
        if self.z.len() > 1 {
            return Err(Error::Config("this command takes a single --z".into()));
        }
        CoherentParams::new(z, cfg.alpha)
    }
}

/// Exit status for an error: bad input is a usage error, anything the
/// numerics report is a failed check.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Numeric { .. } | Error::Calibration(_) => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let mut cfg = RunConfig::load(cli.opts.config.as_deref())?;
    let is_verify = matches!(cli.command, Command::Verify { .. });
    cli.opts.apply(&mut cfg, is_verify || matches!(cli.command, Command::Symbols))?;
    cfg.validate()?;

    match cli.command {
        Command::Verify { suite } => {
            let report = VerificationReport::run(suite, &cfg)?;
            let path = report.write(&cfg.out_dir, cfg.format)?;
            let checks = &report.payload.checks;
            for ch in checks.iter().filter(|c| !c.pass) {
                println!("FAIL {} [{}]: defect {:e} > tolerance {:e}", ch.id, ch.anchor, ch.defect, ch.tolerance);
            }
            println!(
                "verify {suite}: {} of {} checks pass in {:.2}s; report {}",
                checks.iter().filter(|c| c.pass).count(),
                checks.len(),
                report.wall_time.as_secs_f64(),
                path.display()
            );
            Ok(report.pass())
        }
        Command::Profile { grid } => {
            let p = cli.opts.point(&cfg)?;
            let t = match cli.opts.t.as_slice() {
                [] => 0.0,
                [t] => *t,
                _ => return Err(Error::Config("profile takes a single --t".into())),
            };
            let prof = export::profile(&p, t, grid)?;
            let path = export::write_file(&cfg.out_dir, "profile.csv", &export::profile_csv(&prof)?)?;
            println!(
                "profile at z = {}, t = {t}: {} points, Σ|ψ|²Δx = {:.12}; wrote {}",
                p.z,
                prof.rows.len(),
                prof.psi_mass(),
                path.display()
            );
            Ok(true)
        }
        Command::Symbols => {
            let report = harness::symbol_report(&cfg)?;
            let checks = harness::symbol_checks_from(&report, cfg.tolerances.coherent);
            let name = format!("symbols.{}", cfg.format);
            let path = export::write_file(&cfg.out_dir, &name, &export::symbols_bytes(&report, cfg.format)?)?;
            let worst = report.records.iter().map(|r| r.defect).fold(0.0, f64::max);
            println!(
                "symbols: {} rows, convention {:?}, worst defect {worst:e}; wrote {}",
                report.records.len(),
                report.convention,
                path.display()
            );
            Ok(checks.iter().all(|c| c.pass))
        }
        Command::Trajectory => {
            let p = cli.opts.point(&cfg)?;
            let times = if cli.opts.t.is_empty() { cfg.times.clone() } else { cli.opts.t.clone() };
            let report = harness::trajectory_report(&p, &times, &cfg)?;
            let path = export::write_file(&cfg.out_dir, "trajectory.csv", &export::trajectory_csv(&report)?)?;
            println!(
                "trajectory at z = {}: {} times, affine-fit residual {:e}; wrote {}",
                p.z,
                report.points.len(),
                report.fit_residual,
                path.display()
            );
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
