//! `blocklab` command line: block decompositions, convergence curves,
//! boundedness sweeps and Bessel tables.
//!
//! Exit codes: 0 PASS, 1 property FAIL, 2 hypothesis refusal, 3 configuration
//! or usage error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use blocklab::{Error, Result};
use clap::{Args, Parser, Subcommand};

use commands::Outcome;
use config::Settings;

#[derive(Parser)]
#[command(name = "blocklab", version, about = "Experiments on weighted block spaces")]
struct Cli {
    /// Flat key = value file; command-line flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a payload into blocks and write the manifest.
    Decompose(DecomposeArgs),
    /// Norm-convergence curve of an approximate identity.
    Converge(ConvergeArgs),
    /// Operator norms over a block family.
    Sweep(SweepArgs),
    /// Tabulate J_m (and optionally the Bochner–Riesz kernel).
    Bessel(BesselArgs),
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(long = "n")]
    n: Option<String>,
    #[arg(long = "N")]
    size: Option<String>,
    #[arg(long = "L")]
    extent: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    p: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    s: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<String>,
}

impl SpaceArgs {
    fn pairs(&self) -> Vec<(&'static str, Option<String>)> {
        vec![
            ("n", self.n.clone()),
            ("N", self.size.clone()),
            ("L", self.extent.clone()),
            ("p", self.p.clone()),
            ("s", self.s.clone()),
            ("alpha", self.alpha.clone()),
        ]
    }
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// simple, annuli, tail, schwartz or maximal_whitney.
    #[arg(long)]
    algo: Option<String>,
    /// Function descriptor, e.g. `gaussian(a=1)`.
    #[arg(long)]
    payload: Option<String>,
    /// Cubes of a simple function: `coef@x:y:z@side;...`.
    #[arg(long)]
    cubes: Option<String>,
    /// Decay constant to check instead of the smallest valid one.
    #[arg(long)]
    certificate: Option<String>,
    /// Manifest path (default manifest.json).
    #[arg(long)]
    out: Option<String>,
    /// Binary payload sidecar path.
    #[arg(long)]
    sidecar: Option<String>,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// e.g. `bochner_riesz(lambda=1)`, `spherical(method=multiplier)`, `carleson()`.
    #[arg(long)]
    family: Option<String>,
    /// Index grid `a:b:c` or `lo..hi`.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    payload: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// CSV path (stdout if absent).
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    json: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Operator descriptor; bare `hl_maximal` uses dyadic radii up to L.
    #[arg(long)]
    op: Option<String>,
    /// Block radii `a:b:c` or `lo..hi`.
    #[arg(long)]
    radii: Option<String>,
    #[arg(long)]
    offset: bool,
    #[arg(long)]
    random: bool,
    #[arg(long)]
    seed: Option<String>,
    /// Run on the excluded boundary and expect growth.
    #[arg(long)]
    contrast: bool,
    /// Skip the range and resolution doublings.
    #[arg(long)]
    no_stability: bool,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    json: Option<String>,
}

#[derive(Args)]
struct BesselArgs {
    #[arg(long, allow_negative_numbers = true)]
    order: Option<String>,
    #[arg(long = "t-min")]
    t_min: Option<String>,
    #[arg(long = "t-max")]
    t_max: Option<String>,
    #[arg(long)]
    points: Option<String>,
    /// Adds a kernel column for this order lambda at radius 1.
    #[arg(long)]
    lambda: Option<String>,
    /// Dimension of the kernel column.
    #[arg(long)]
    dim: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

fn on(b: bool) -> Option<String> {
    b.then(|| "true".to_string())
}

fn run(cli: Cli) -> Result<Outcome> {
    let file = cli.config.as_deref();
    let (allowed, mut flags): (&[&str], _) = match &cli.command {
        Command::Decompose(a) => {
            let mut f = a.space.pairs();
            f.extend([
                ("algo", a.algo.clone()),
                ("payload", a.payload.clone()),
                ("cubes", a.cubes.clone()),
                ("certificate", a.certificate.clone()),
                ("out", a.out.clone()),
                ("sidecar", a.sidecar.clone()),
            ]);
            (commands::DECOMPOSE_KEYS, f)
        }
        Command::Converge(a) => {
            let mut f = a.space.pairs();
            f.extend([
                ("family", a.family.clone()),
                ("grid", a.grid.clone()),
                ("payload", a.payload.clone()),
                ("seed", a.seed.clone()),
                ("out", a.out.clone()),
                ("json", a.json.clone()),
            ]);
            (commands::CONVERGE_KEYS, f)
        }
        Command::Sweep(a) => {
            let mut f = a.space.pairs();
            f.extend([
                ("op", a.op.clone()),
                ("radii", a.radii.clone()),
                ("offset", on(a.offset)),
                ("random", on(a.random)),
                ("seed", a.seed.clone()),
                ("contrast", on(a.contrast)),
                ("stability", a.no_stability.then(|| "false".to_string())),
                ("out", a.out.clone()),
                ("json", a.json.clone()),
            ]);
            (commands::SWEEP_KEYS, f)
        }
        Command::Bessel(a) => (
            commands::BESSEL_KEYS,
            vec![
                ("order", a.order.clone()),
                ("t_min", a.t_min.clone()),
                ("t_max", a.t_max.clone()),
                ("points", a.points.clone()),
                ("lambda", a.lambda.clone()),
                ("dim", a.dim.clone()),
                ("out", a.out.clone()),
            ],
        ),
    };
    flags.push(("jobs", cli.jobs.map(|j| j.to_string())));
    let cfg = Settings::load(file, allowed, flags)?;
    if let Some(jobs) = cfg.get("jobs").map(|_| cfg.usize_or("jobs", None)).transpose()? {
        if jobs == 0 {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Error::Config(format!("cannot size the worker pool: {e}")))?;
    }
    match &cli.command {
        Command::Decompose(_) => commands::decompose(&cfg),
        Command::Converge(_) => commands::converge(&cfg),
        Command::Sweep(_) => commands::sweep(&cfg),
        Command::Bessel(_) => commands::bessel(&cfg),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Hypothesis(_) => 2,
        Error::Precision(_) | Error::Certificate(_) => 1,
        Error::Domain(_) | Error::Usage(_) | Error::Config(_) | Error::Io(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
