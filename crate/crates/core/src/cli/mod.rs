//! Batch front end: problem files in, tables or JSON out.

mod render;

use std::collections::HashMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::arith::parse::{parse_expr, split_indexed_name, Expr};
use crate::arith::rational::parse_rational;
use crate::arith::{MPoly, Rational};
use crate::certify::HessianConvention;
use crate::error::{Error, Result};
use crate::par::{with_threads, Exec};
use crate::solve::{
    gralom, gralom_plus, perturb_solve, solve_inequalities, Problem, SolveOptions, SolveReport, Status, TrajectoryPoint,
};

pub use render::{render_json, render_table};

const EXIT_HELP: &str = "Exit codes: 0 ok, 1 parse or internal error, 2 precondition failed \
(including an empty real critical set), 3 positive-dimensional critical set.";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Local minimizers (second-order certified).
    #[default]
    Local,
    /// Smallest critical value and its critical points.
    Global,
    /// Local minimizers with inequalities through squared slack variables.
    Inequality,
    /// Global solve of `f + εᵀx` along an ε schedule.
    Perturb,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Local => "local",
            Mode::Global => "global",
            Mode::Inequality => "inequality",
            Mode::Perturb => "perturb",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    #[default]
    Direct,
    Congruent,
}

impl From<ConventionArg> for HessianConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Direct => HessianConvention::Direct,
            ConventionArg::Congruent => HessianConvention::Congruent,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "polyloc", version, about = "Exact local and global minimizers of polynomials", after_help = EXIT_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the problem in a file with `objective:`, `equalities:` and `inequalities:` sections.
    #[command(after_help = EXIT_HELP)]
    Solve(SolveArgs),
}

#[derive(Debug, clap::Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Local)]
    pub mode: Mode,
    /// Significant digits of printed floats.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    pub digits: u32,
    /// Treat the smallest critical value as the global minimum.
    #[arg(long)]
    pub assume_attained: bool,
    /// ε schedule: comma-separated scalars, each repeated over all variables
    /// (optionally `xN` to state N), or `a:b:c` vectors.
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    pub eps: Vec<String>,
    #[arg(long)]
    pub json: bool,
    #[arg(long, value_enum, default_value_t = ConventionArg::Direct)]
    pub hessian: ConventionArg,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub digits: u32,
    pub assume_attained: bool,
    /// Entries are scalars to replicate or full vectors.
    pub eps_schedule: Option<Vec<EpsEntry>>,
    pub output: OutputFormat,
    pub hessian_convention: HessianConvention,
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: Mode::Local,
            digits: 10,
            assume_attained: false,
            eps_schedule: None,
            output: OutputFormat::Table,
            hessian_convention: HessianConvention::Direct,
            threads: Some(1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EpsEntry {
    Scalar(Rational),
    Vector(Vec<Rational>),
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.digits == 0 {
            return Err(Error::Precondition("digits must be at least 1".into()));
        }
        if self.mode == Mode::Perturb && self.eps_schedule.as_ref().is_none_or(Vec::is_empty) {
            return Err(Error::Precondition("perturb mode needs an --eps schedule".into()));
        }
        Ok(())
    }

    fn options(&self) -> SolveOptions {
        SolveOptions {
            exec: Exec::Parallel,
            convention: self.hessian_convention,
            assume_attained: self.assume_attained,
        }
    }

    /// The ε vectors for a problem in `n` variables.
    pub fn eps_vectors(&self, n: usize) -> Result<Vec<Vec<Rational>>> {
        self.eps_schedule
            .iter()
            .flatten()
            .map(|e| match e {
                EpsEntry::Scalar(s) => Ok(vec![s.clone(); n]),
                EpsEntry::Vector(v) if v.len() == n => Ok(v.clone()),
                EpsEntry::Vector(v) => Err(Error::Dimension(format!(
                    "ε vector of length {} for {n} variables",
                    v.len()
                ))),
            })
            .collect()
    }
}

impl TryFrom<&SolveArgs> for RunConfig {
    type Error = Error;
    fn try_from(a: &SolveArgs) -> Result<Self> {
        Ok(RunConfig {
            mode: a.mode,
            digits: a.digits,
            assume_attained: a.assume_attained,
            eps_schedule: if a.eps.is_empty() {
                None
            } else {
                Some(parse_eps(&a.eps)?)
            },
            output: if a.json {
                OutputFormat::Json
            } else {
                OutputFormat::Table
            },
            hessian_convention: a.hessian.into(),
            threads: Some(a.threads.max(1)),
        })
    }
}

fn eps_error(msg: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column: 1,
        message: format!("--eps: {}", msg.into()),
    }
}

/// Parses `--eps` tokens: `1e-5,1e-7 x3`, `1e-5,1e-7x3` or `1e-5:0:0,1e-7:0:0`.
pub fn parse_eps(tokens: &[String]) -> Result<Vec<EpsEntry>> {
    let joined = tokens.join(" ");
    let mut text = joined.trim().to_string();
    let mut count: Option<usize> = None;
    if let Some(pos) = text.rfind('x') {
        let tail = &text[pos + 1..];
        if !tail.is_empty() && tail.chars().all(|c| c.is_ascii_digit()) {
            count = Some(tail.parse().map_err(|_| eps_error("bad repetition count"))?);
            text.truncate(pos);
        }
    }
    let mut out = Vec::new();
    for item in text.split([',', ' ']).filter(|s| !s.is_empty()) {
        if item.contains(':') {
            let v = item
                .split(':')
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()
                .map_err(|e| eps_error(e.to_string()))?;
            out.push(EpsEntry::Vector(v));
        } else {
            let s = parse_rational(item).map_err(|e| eps_error(e.to_string()))?;
            out.push(match count {
                Some(k) => EpsEntry::Vector(vec![s; k]),
                None => EpsEntry::Scalar(s),
            });
        }
    }
    if out.is_empty() {
        return Err(eps_error("empty schedule"));
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Objective,
    Equalities,
    Inequalities,
}

/// Parses a problem file; the number of variables is the largest `xk` used.
pub fn parse_problem(text: &str) -> Result<Problem> {
    let mut section = Section::None;
    let mut objective: Vec<(Expr, usize)> = Vec::new();
    let mut equalities = Vec::new();
    let mut inequalities = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut content = body;
        let mut offset = 0;
        for (name, sec) in [
            ("objective:", Section::Objective),
            ("equalities:", Section::Equalities),
            ("inequalities:", Section::Inequalities),
        ] {
            let trimmed = body.trim_start();
            if let Some(rest) = trimmed.strip_prefix(name) {
                section = sec;
                offset = body.chars().count() - rest.chars().count();
                content = rest;
            }
        }
        if content.trim().is_empty() {
            continue;
        }
        let expr = parse_expr(content, line).map_err(|e| match e {
            Error::Parse { line, column, message } => Error::Parse {
                line,
                column: column + offset,
                message,
            },
            other => other,
        })?;
        match section {
            Section::None => {
                return Err(Error::Parse {
                    line,
                    column: 1,
                    message: "expression outside a section (expected `objective:`)".into(),
                })
            }
            Section::Objective => objective.push((expr, line)),
            Section::Equalities => equalities.push((expr, line)),
            Section::Inequalities => inequalities.push((expr, line)),
        }
    }
    if objective.len() != 1 {
        return Err(Error::Parse {
            line: objective.get(1).map_or(1, |o| o.1),
            column: 1,
            message: format!("expected exactly one objective, found {}", objective.len()),
        });
    }
    let mut n = 0;
    for (e, _) in objective.iter().chain(&equalities).chain(&inequalities) {
        for (name, _) in e.variables() {
            match split_indexed_name(&name) {
                Some(("x", k)) => n = n.max(k),
                _ => return Err(Error::UnknownVariable(name)),
            }
        }
    }
    let n = n.max(1);
    let index: HashMap<String, usize> = (1..=n).map(|k| (format!("x{k}"), k - 1)).collect();
    let conv = |v: &[(Expr, usize)]| -> Result<Vec<MPoly>> { v.iter().map(|(e, _)| e.to_mpoly(n, &index)).collect() };
    let f = objective[0].0.to_mpoly(n, &index)?;
    Problem::new(f, conv(&equalities)?, conv(&inequalities)?)
}

/// Outcome of one CLI run.
#[derive(Clone, Debug)]
pub enum RunOutcome {
    Single(Box<SolveReport>),
    Trajectory(Vec<TrajectoryPoint>),
}

pub fn exit_code_for_status(s: Status) -> i32 {
    match s {
        Status::Ok => 0,
        Status::PreconditionFailed => 2,
        Status::PositiveDimensional => 3,
    }
}

pub fn exit_code_for_error(e: &Error) -> i32 {
    match e {
        Error::Precondition(_) | Error::EmptyCriticalSet => 2,
        Error::PositiveDimensional => 3,
        _ => 1,
    }
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunOutcome::Single(r) => exit_code_for_status(r.status),
            RunOutcome::Trajectory(t) => t
                .iter()
                .map(|p| match &p.outcome {
                    Ok(r) => exit_code_for_status(r.status),
                    Err(e) => exit_code_for_error(e),
                })
                .find(|&c| c != 0)
                .unwrap_or(0),
        }
    }
}

/// Dispatches to the solver selected by the mode and the problem's constraints.
pub fn solve_problem(config: &RunConfig, problem: &Problem) -> Result<RunOutcome> {
    config.validate()?;
    let opts = config.options();
    let f = &problem.objective;
    let (h, g) = (&problem.equalities[..], &problem.inequalities[..]);
    let run = || -> Result<RunOutcome> {
        let single = |r: SolveReport| RunOutcome::Single(Box::new(r));
        Ok(match config.mode {
            Mode::Local if g.is_empty() => single(gralom(f, h, &opts)?),
            Mode::Global if g.is_empty() => single(gralom_plus(f, h, &opts)?),
            Mode::Local | Mode::Inequality => single(solve_inequalities(f, g, h, false, &opts)?),
            Mode::Global => single(solve_inequalities(f, g, h, true, &opts)?),
            Mode::Perturb => {
                if !g.is_empty() {
                    return Err(Error::IllPosed("perturb mode takes equality constraints only".into()));
                }
                let schedule = config.eps_vectors(problem.nvars)?;
                RunOutcome::Trajectory(perturb_solve(f, h, &schedule, &opts))
            }
        })
    };
    with_threads(config.threads, run)
}

/// Solves and renders; returns the exit code and the text to print.
pub fn run(config: &RunConfig, problem: &Problem) -> (i32, String) {
    match solve_problem(config, problem) {
        Ok(outcome) => {
            let text = match config.output {
                OutputFormat::Json => render_json(config, problem, &outcome).to_string(),
                OutputFormat::Table => render_table(config, problem, &outcome),
            };
            (outcome.exit_code(), text)
        }
        Err(e) => (exit_code_for_error(&e), error_text(config, &e)),
    }
}

fn error_text(config: &RunConfig, e: &Error) -> String {
    match config.output {
        OutputFormat::Json => serde_json::json!({
            "status": "error",
            "mode": config.mode.as_str(),
            "error": e.to_string(),
        })
        .to_string(),
        OutputFormat::Table => format!("error: {e}"),
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let Command::Solve(args) = cli.command;
    let config = match RunConfig::try_from(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input.display());
            return 1;
        }
    };
    let problem = match parse_problem(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let (code, out) = run(&config, &problem);
    use std::io::Write;
    let _ = if code == 1 {
        writeln!(std::io::stderr(), "{out}")
    } else {
        writeln!(std::io::stdout(), "{out}")
    };
    code
}
