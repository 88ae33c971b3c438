//! Validated run configuration, embedded in every report so a run can be
//! replayed from its report alone.

use std::path::PathBuf;

use fhp_core::approx::ApproxParams;
use fhp_core::geometry::fmt_f64;
use fhp_core::report::Report;
use fhp_core::Tolerances;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    GenGaussian,
    GenCircle,
    Reduce,
    Solve(Solver),
    StudyRandomMargin,
    GapDemo,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::GenGaussian => "gen-gaussian",
            Command::GenCircle => "gen-circle",
            Command::Reduce => "reduce",
            Command::Solve(s) => match s {
                Solver::Bfs => "solve-bfs",
                Solver::Net => "solve-net",
                Solver::Random => "solve-random",
                Solver::Approx => "solve-approx",
                Solver::Mmc => "solve-mmc",
            },
            Command::StudyRandomMargin => "study-random-margin",
            Command::GapDemo => "gap-demo",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "gen-gaussian" => Command::GenGaussian,
            "gen-circle" => Command::GenCircle,
            "reduce" => Command::Reduce,
            "solve-bfs" => Command::Solve(Solver::Bfs),
            "solve-net" => Command::Solve(Solver::Net),
            "solve-random" => Command::Solve(Solver::Random),
            "solve-approx" => Command::Solve(Solver::Approx),
            "solve-mmc" => Command::Solve(Solver::Mmc),
            "study-random-margin" => Command::StudyRandomMargin,
            "gap-demo" => Command::GapDemo,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Solver {
    Bfs,
    Net,
    Random,
    Approx,
    Mmc,
}

/// Through-origin solver run around each pair midpoint by `solve mmc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Inner {
    Bfs,
    Net,
    Random,
}

impl Inner {
    fn name(&self) -> &'static str {
        match self {
            Inner::Bfs => "bfs",
            Inner::Net => "net",
            Inner::Random => "random",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub alpha: f64,
    pub trials: Option<usize>,
    pub budget: Option<u64>,
    pub theta_lower: Option<f64>,
    pub c_rh: f64,
    pub inner: Inner,
    pub max_net_points: usize,
    pub tol: Tolerances,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            seed: 0,
            input: None,
            out: None,
            n: None,
            d: None,
            alpha: 0.1,
            trials: None,
            budget: None,
            theta_lower: None,
            c_rh: 4.0,
            inner: Inner::Bfs,
            max_net_points: 20_000_000,
            tol: Tolerances::DEFAULT,
        }
    }

    pub fn approx_params(&self) -> ApproxParams {
        ApproxParams { alpha: self.alpha, trials: self.trials.unwrap_or(32), seed: self.seed, ..ApproxParams::default() }
    }

    /// Rejects missing or out-of-range fields for the chosen command.
    pub fn validate(&self) -> Result<(), CliError> {
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(CliError::Usage(format!("{} requires {what}", self.command.name())))
            }
        };
        match self.command {
            Command::GenGaussian => {
                need(self.n.is_some_and(|n| n >= 1), "--n ≥ 1")?;
                need(self.d.is_some_and(|d| d >= 1), "--d ≥ 1")?;
                need(self.out.is_some(), "--out")?;
            }
            Command::GenCircle => {
                need(self.n.is_some_and(|n| n >= 2), "--n ≥ 2")?;
                need(self.out.is_some(), "--out")?;
            }
            Command::Reduce => {
                need(self.input.is_some(), "--cnf")?;
                need(self.out.is_some(), "--out")?;
            }
            Command::Solve(_) => need(self.input.is_some(), "--in")?,
            Command::StudyRandomMargin => {
                need(self.n.is_some_and(|n| n >= 1), "--n ≥ 1")?;
                need(self.d.is_some_and(|d| d >= 1), "--d ≥ 1")?;
                need(self.trials.is_some_and(|t| t >= 1), "--trials ≥ 1")?;
            }
            Command::GapDemo => need(self.n.is_some_and(|n| n >= 4 && n % 2 == 0), "an even --n ≥ 4")?,
        }
        if let Command::Solve(Solver::Approx) = self.command {
            self.approx_params().validate()?;
        }
        if let Some(t) = self.theta_lower {
            need(t > 0.0 && t <= 1.0, "--theta-lower in (0, 1]")?;
        }
        need(self.budget != Some(0), "--budget ≥ 1")?;
        need(self.c_rh > 0.0 && self.c_rh.is_finite(), "--c-rh > 0")?;
        need(self.max_net_points > 0, "--max-net-points ≥ 1")?;
        let t = &self.tol;
        for (name, v) in [("norm", t.norm), ("unit", t.unit), ("feas", t.feas), ("mnp", t.mnp)] {
            need(v > 0.0 && v < 1.0, &format!("--tol-{name} in (0, 1)"))?;
        }
        Ok(())
    }

    /// Key/value pairs in a fixed order.
    pub fn to_entries(&self) -> Vec<(&'static str, String)> {
        let mut e = vec![("command", self.command.name().to_string()), ("seed", self.seed.to_string())];
        let path = |p: &PathBuf| p.to_string_lossy().into_owned();
        if let Some(p) = &self.input {
            e.push(("in", path(p)));
        }
        if let Some(p) = &self.out {
            e.push(("out", path(p)));
        }
        if let Some(n) = self.n {
            e.push(("n", n.to_string()));
        }
        if let Some(d) = self.d {
            e.push(("d", d.to_string()));
        }
        if let Some(t) = self.trials {
            e.push(("trials", t.to_string()));
        }
        if let Some(b) = self.budget {
            e.push(("budget", b.to_string()));
        }
        if let Some(t) = self.theta_lower {
            e.push(("theta_lower", fmt_f64(t)));
        }
        e.extend([
            ("alpha", fmt_f64(self.alpha)),
            ("c_rh", fmt_f64(self.c_rh)),
            ("inner", self.inner.name().to_string()),
            ("max_net_points", self.max_net_points.to_string()),
            ("tol_norm", fmt_f64(self.tol.norm)),
            ("tol_unit", fmt_f64(self.tol.unit)),
            ("tol_feas", fmt_f64(self.tol.feas)),
            ("tol_mnp", fmt_f64(self.tol.mnp)),
        ]);
        e
    }

    pub fn embed(&self, report: &mut Report) {
        for (k, v) in self.to_entries() {
            report.set(&format!("config.{k}"), v);
        }
    }

    /// Rebuilds a configuration from a report's `config.*` section.
    pub fn from_report(report: &Report) -> Result<Self, CliError> {
        let bad = |k: &str, v: &str| CliError::Usage(format!("config.{k} has invalid value `{v}`"));
        let command = report
            .get("config.command")
            .and_then(Command::parse)
            .ok_or_else(|| CliError::Usage("report has no valid config.command".into()))?;
        let mut cfg = RunConfig::new(command);
        for (k, v) in report.section("config") {
            let num = || v.parse::<usize>().map_err(|_| bad(k, v));
            let float = || v.parse::<f64>().map_err(|_| bad(k, v));
            match k {
                "command" => {}
                "seed" => cfg.seed = v.parse().map_err(|_| bad(k, v))?,
                "in" => cfg.input = Some(PathBuf::from(v)),
                "out" => cfg.out = Some(PathBuf::from(v)),
                "n" => cfg.n = Some(num()?),
                "d" => cfg.d = Some(num()?),
                "trials" => cfg.trials = Some(num()?),
                "budget" => cfg.budget = Some(v.parse().map_err(|_| bad(k, v))?),
                "theta_lower" => cfg.theta_lower = Some(float()?),
                "alpha" => cfg.alpha = float()?,
                "c_rh" => cfg.c_rh = float()?,
                "inner" => {
                    cfg.inner = match v {
                        "bfs" => Inner::Bfs,
                        "net" => Inner::Net,
                        "random" => Inner::Random,
                        _ => return Err(bad(k, v)),
                    }
                }
                "max_net_points" => cfg.max_net_points = num()?,
                "tol_norm" => cfg.tol.norm = float()?,
                "tol_unit" => cfg.tol.unit = float()?,
                "tol_feas" => cfg.tol.feas = float()?,
                "tol_mnp" => cfg.tol.mnp = float()?,
                other => return Err(CliError::Usage(format!("unknown config key `{other}`"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
