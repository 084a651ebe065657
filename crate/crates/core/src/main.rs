use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use holinv::harness::config::{parse_complex, parse_complex_list, parse_grid, parse_range, DEFAULT_SEED};
use holinv::harness::{execute, CommandKind, OutputFormat, RadiusSpec, RunConfig};
use holinv::ComplexPoint;

/// Carathéodory distance, squeezing-type invariants and ball topology on
/// punctured discs and annuli.
#[derive(Parser, Debug)]
#[command(name = "holinv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Carathéodory distance between --z and --w.
    Dist,
    /// Squeezing function, Fridman invariant and injectivity radius at --z.
    Squeeze,
    /// Run verification suites or suite groups.
    Verify {
        #[arg(required = true)]
        suites: Vec<String>,
    },
    /// Sample a Carathéodory ball on a grid and classify its topology.
    Ball,
    /// Sweep a quantity over a parameter range.
    Sweep { target: String },
}

#[derive(Args, Debug)]
struct Common {
    /// Inner radius of the annulus A_r; the unit disc when omitted.
    #[arg(long, global = true)]
    r: Option<f64>,
    /// Comma-separated punctures, e.g. `0.5,-0.2+0.1i`.
    #[arg(long, global = true, value_parser = parse_points, allow_hyphen_values = true)]
    punctures: Option<Points>,
    #[arg(long, global = true, value_parser = parse_point, allow_hyphen_values = true)]
    z: Option<ComplexPoint>,
    #[arg(long, global = true, value_parser = parse_point, allow_hyphen_values = true)]
    w: Option<ComplexPoint>,
    /// Ball radius on the hyperbolic scale.
    #[arg(long, global = true, conflicts_with = "tanh_radius")]
    radius: Option<f64>,
    /// Ball radius on the tanh scale.
    #[arg(long, global = true)]
    tanh_radius: Option<f64>,
    #[arg(long, global = true, value_parser = parse_grid_arg, default_value = "1024x1024")]
    grid: (usize, usize),
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Parameter range `a..b`.
    #[arg(long, global = true, value_parser = parse_range_arg, allow_hyphen_values = true)]
    range: Option<(f64, f64)>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

fn parse_point(s: &str) -> Result<ComplexPoint, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone)]
struct Points(Vec<ComplexPoint>);

fn parse_points(s: &str) -> Result<Points, String> {
    parse_complex_list(s).map(Points).map_err(|e| e.to_string())
}

fn parse_grid_arg(s: &str) -> Result<(usize, usize), String> {
    parse_grid(s).map_err(|e| e.to_string())
}

fn parse_range_arg(s: &str) -> Result<(f64, f64), String> {
    parse_range(s).map_err(|e| e.to_string())
}

impl Cli {
    fn into_config(self) -> RunConfig {
        let (command, targets) = match self.command {
            Command::Dist => (CommandKind::Dist, vec![]),
            Command::Squeeze => (CommandKind::Squeeze, vec![]),
            Command::Verify { suites } => (CommandKind::Verify, suites),
            Command::Ball => (CommandKind::Ball, vec![]),
            Command::Sweep { target } => (CommandKind::Sweep, vec![target]),
        };
        let c = self.common;
        let mut config = RunConfig::new(command);
        config.targets = targets;
        config.r = c.r;
        config.punctures = c.punctures.map(|p| p.0).unwrap_or_default();
        config.z = c.z;
        config.w = c.w;
        config.radius = c.radius.map(RadiusSpec::Hyperbolic).or(c.tanh_radius.map(RadiusSpec::Tanh));
        config.grid = c.grid;
        config.tol = c.tol;
        config.seed = c.seed;
        config.samples = c.samples;
        config.range = c.range;
        config.out = c.out;
        config.format = c.format;
        config
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let config = cli.into_config();
    match execute(&config) {
        Ok(out) => {
            for r in out.results.iter().filter(|r| !r.passed) {
                eprintln!("FAIL {}: {} of {} cases, max error {:e}. {}", r.suite, r.cases_passed, r.cases_run, r.max_error, r.detail);
            }
            ExitCode::from(out.verdict().exit_code())
        }
        Err(e) => {
            eprintln!("holinv: {e}");
            ExitCode::from(2)
        }
    }
}
