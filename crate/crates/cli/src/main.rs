//! `fhp`: instance generation, solving, reduction and verification.

mod checks;
mod config;
mod error;
mod run;
mod verify;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{Command, Inner, RunConfig, Solver};
use error::{write, CliError};

#[derive(Parser)]
#[command(name = "fhp", version, about = "Furthest hyperplane and maximum margin clustering toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gaussian,
    Circle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Study {
    RandomMargin,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a point set.
    Gen {
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Reduce a bounded-occurrence 3SAT formula (DIMACS) to a point set.
    Reduce {
        #[arg(long, visible_alias = "in")]
        cnf: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Solve an `fhp v1` instance.
    Solve {
        solver: Option<Solver>,
        #[arg(long = "solver", value_name = "SOLVER")]
        solver_flag: Option<Solver>,
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        args: SolveArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Empirical studies.
    Study {
        study: Study,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 60)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Integrality gap of the relaxation on the regular n-gon.
    GapDemo {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check every replayable invariant of a report or instance.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// Approximation parameter of the reweighting solver.
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    /// Gaussian combinations tried by the reweighting solver.
    #[arg(long)]
    trials: Option<usize>,
    /// Random-hyperplane draws (initial round size without --theta-lower).
    #[arg(long)]
    budget: Option<u64>,
    /// Known lower bound on the optimal margin.
    #[arg(long)]
    theta_lower: Option<f64>,
    /// Exponent constant of the random-hyperplane sample count.
    #[arg(long, default_value_t = 4.0)]
    c_rh: f64,
    /// Through-origin solver used inside `mmc`.
    #[arg(long, value_enum, default_value = "bfs")]
    inner: Inner,
    #[arg(long, default_value_t = 20_000_000)]
    max_net_points: usize,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instance output for gen/reduce, report output otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report output for gen/reduce (default: stdout).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Add wall time to the report.
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    tol_norm: Option<f64>,
    #[arg(long)]
    tol_unit: Option<f64>,
    #[arg(long)]
    tol_feas: Option<f64>,
    #[arg(long)]
    tol_mnp: Option<f64>,
}

impl Common {
    fn apply(&self, cfg: &mut RunConfig) {
        cfg.seed = self.seed;
        cfg.out = self.out.clone();
        let t = &mut cfg.tol;
        t.norm = self.tol_norm.unwrap_or(t.norm);
        t.unit = self.tol_unit.unwrap_or(t.unit);
        t.feas = self.tol_feas.unwrap_or(t.feas);
        t.mnp = self.tol_mnp.unwrap_or(t.mnp);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("FHP_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("fhp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<ExitCode, CliError> {
    let (cfg, common) = match cmd {
        Cmd::Verify { input } => {
            let report = verify::verify(&input)?;
            print!("{}", report.to_text());
            let failed = report.failed_checks();
            if failed.is_empty() {
                return Ok(ExitCode::SUCCESS);
            }
            eprintln!("fhp: failed checks: {}", failed.join(", "));
            return Ok(ExitCode::from(4));
        }
        Cmd::Gen { family, n, d, common } => {
            let mut cfg = RunConfig::new(match family {
                Family::Gaussian => Command::GenGaussian,
                Family::Circle => Command::GenCircle,
            });
            cfg.n = Some(n);
            cfg.d = d;
            (cfg, common)
        }
        Cmd::Reduce { cnf, common } => {
            let mut cfg = RunConfig::new(Command::Reduce);
            cfg.input = Some(cnf);
            (cfg, common)
        }
        Cmd::Solve { solver, solver_flag, input, args, common } => {
            let solver = match (solver, solver_flag) {
                (Some(a), Some(b)) if a != b => return Err(CliError::Usage("conflicting solver names".into())),
                (Some(s), _) | (None, Some(s)) => s,
                (None, None) => return Err(CliError::Usage("solve needs a solver name".into())),
            };
            let mut cfg = RunConfig::new(Command::Solve(solver));
            cfg.input = Some(input);
            cfg.alpha = args.alpha;
            cfg.trials = args.trials;
            cfg.budget = args.budget;
            cfg.theta_lower = args.theta_lower;
            cfg.c_rh = args.c_rh;
            cfg.inner = args.inner;
            cfg.max_net_points = args.max_net_points;
            (cfg, common)
        }
        Cmd::Study { study: Study::RandomMargin, n, d, trials, common } => {
            let mut cfg = RunConfig::new(Command::StudyRandomMargin);
            cfg.n = Some(n);
            cfg.d = Some(d);
            cfg.trials = Some(trials);
            (cfg, common)
        }
        Cmd::GapDemo { n, common } => {
            let mut cfg = RunConfig::new(Command::GapDemo);
            cfg.n = Some(n);
            (cfg, common)
        }
    };
    let mut cfg = cfg;
    common.apply(&mut cfg);

    let started = Instant::now();
    let mut outcome = run::execute(&cfg)?;
    if common.timing {
        outcome.report.set_f64("timing.elapsed_s", started.elapsed().as_secs_f64());
    }
    for (path, text) in &outcome.artifacts {
        write(path, text)?;
    }
    let text = outcome.report.to_text();
    let destination = match cfg.command {
        Command::GenGaussian | Command::GenCircle | Command::Reduce => common.report.as_ref(),
        _ => cfg.out.as_ref(),
    };
    match destination {
        Some(path) => write(path, &text)?,
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    let failed = outcome.report.failed_checks();
    if failed.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("fhp: failed checks: {}", failed.join(", "));
        Ok(ExitCode::from(4))
    }
}
