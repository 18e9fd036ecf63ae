//! `qwalk`: simulate quantum walks on Z, build uniform stationary states and compare with limit laws.
//!
//! Exit codes: 0 success, 1 a numerical check failed, 2 invalid input.

mod cases;
mod config;
mod parse;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use qwalk_core::evolution::{evolve, time_averaged_measure, Trajectory};
use qwalk_core::field::{fmt_real, phi_measure};
use qwalk_core::limits::{density_grid, empirical_vs_density, DensityModel};
use qwalk_core::stationary::{eigen_residual, stationarity_defect};
use qwalk_core::uniform::{scale_to_probability, uniform_probability_check};
use qwalk_core::{Coin, MeasureWindow, WalkError, WaveWindow};
use serde_json::{json, Value};

use cases::CaseArgs;

/// Invalid input of any kind; always exit code 2.
#[derive(Debug)]
pub struct CliError(String);

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<WalkError> for CliError {
    fn from(e: WalkError) -> Self {
        CliError(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "qwalk", version, about = "Discrete-time quantum walks on the integer line")]
struct Cli {
    /// Write the main output (CSV, or JSON for `stationary`) here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON summary on stdout (the CSV then goes only to --out).
    #[arg(long, global = true)]
    json: bool,
    /// Tolerance for pass/fail checks.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// JSON object whose keys are flag names; flags on the command line take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Measure mu_n of a walk started from a given state.
    #[command(args_override_self = true)]
    Evolve(EvolveArgs),
    /// Build a closed-form eigenstate and verify it.
    #[command(args_override_self = true)]
    Stationary(StationaryArgs),
    /// Uniform probability on [-M, M] from a truncated eigenstate.
    #[command(args_override_self = true)]
    UniformWindow(UniformArgs),
    /// Limit density on a grid, optionally compared with a simulation.
    #[command(args_override_self = true)]
    Density(DensityArgs),
    /// Time-averaged measure (1/T) sum_{n<T} mu_n.
    #[command(args_override_self = true)]
    Timeavg(TimeavgArgs),
}

#[derive(Args, Debug)]
struct EvolveArgs {
    #[arg(long)]
    coin: String,
    /// origin:C1,C2[,...] or file:PATH
    #[arg(long)]
    init: String,
    #[arg(long)]
    steps: usize,
    /// Emit every time from this one up to --steps, as n,x,value rows.
    #[arg(long)]
    from: Option<usize>,
}

#[derive(Args, Debug)]
struct StationaryArgs {
    #[command(flatten)]
    case: CaseArgs,
    /// Half-width of the window for the residual check.
    #[arg(long, default_value_t = 100)]
    width: i64,
    /// Steps of the stationarity check (run on a window of half-width width + steps).
    #[arg(long, default_value_t = 50)]
    steps: usize,
}

#[derive(Args, Debug)]
struct UniformArgs {
    #[command(flatten)]
    case: CaseArgs,
    #[arg(long = "M")]
    m: i64,
}

#[derive(Args, Debug)]
struct DensityArgs {
    /// konno or grover3
    #[arg(long)]
    model: String,
    /// Coin angle for the konno model; overridden by --coin.
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    coin: Option<String>,
    #[arg(long, default_value = "1")]
    alpha: String,
    #[arg(long, default_value = "0")]
    beta: String,
    #[arg(long, default_value = "0")]
    gamma: String,
    /// Number of grid intervals on [-1, 1].
    #[arg(long, default_value_t = 1000)]
    grid: usize,
    /// Also compare with the walk at this time.
    #[arg(long)]
    compare: Option<usize>,
    /// Fail (exit 1) when the comparison distance exceeds this.
    #[arg(long)]
    max_ks: Option<f64>,
}

#[derive(Args, Debug)]
struct TimeavgArgs {
    #[arg(long)]
    coin: String,
    #[arg(long)]
    init: String,
    /// Number of terms T.
    #[arg(long)]
    steps: usize,
}

/// Where the main artifact and the summary go.
struct Sink<'a> {
    out: Option<&'a PathBuf>,
    json: bool,
}

impl Sink<'_> {
    fn artifact(&self, text: &str) -> Result<(), CliError> {
        match self.out {
            Some(path) => fs::write(path, text).map_err(|e| CliError::invalid(format!("{}: {e}", path.display()))),
            None if !self.json => {
                print!("{text}");
                Ok(())
            }
            None => Ok(()),
        }
    }

    fn summary(&self, value: &Value) {
        if self.json || self.out.is_some() {
            println!("{value}");
        } else {
            eprintln!("{value}");
        }
    }
}

fn measure_json(mu: &MeasureWindow, extra: Value) -> Value {
    let mut v = json!({ "offset": mu.offset(), "values": mu.values() });
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

fn cmd_evolve(a: &EvolveArgs, sink: &Sink) -> Result<ExitCode, CliError> {
    let coin = parse::coin(&a.coin)?;
    let psi0 = parse::initial_state(&a.init)?;
    match a.from {
        None => {
            let mu = phi_measure(&evolve(&coin, &psi0, a.steps)?);
            if sink.json && sink.out.is_none() {
                sink.summary(&measure_json(&mu, json!({ "steps": a.steps })));
            } else {
                sink.artifact(&mu.to_csv("x,value"))?;
            }
        }
        Some(from) => {
            if from > a.steps {
                return Err(CliError::invalid(format!("--from {from} is after --steps {}", a.steps)));
            }
            let mut csv = String::from("n,x,value\n");
            for (n, psi) in Trajectory::new(&coin, &psi0)?.enumerate().take(a.steps + 1).skip(from) {
                for (x, v) in phi_measure(&psi).iter() {
                    csv.push_str(&format!("{n},{x},{}\n", fmt_real(v)));
                }
            }
            sink.artifact(&csv)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_timeavg(a: &TimeavgArgs, sink: &Sink) -> Result<ExitCode, CliError> {
    let coin = parse::coin(&a.coin)?;
    let psi0 = parse::initial_state(&a.init)?;
    let avg = time_averaged_measure(&coin, &psi0, a.steps)?;
    if sink.json && sink.out.is_none() {
        sink.summary(&measure_json(&avg.measure, json!({ "T": avg.steps })));
    } else {
        sink.artifact(&avg.measure.to_csv("x,value"))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn lambda_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn cmd_stationary(a: &StationaryArgs, tol: f64, sink: &Sink) -> Result<ExitCode, CliError> {
    let (coin, ep) = cases::build(&a.case)?;
    let residual = eigen_residual(&coin, &ep, a.width)?;
    let reach = coin.max_shift() * a.steps as i64;
    let max_dev = stationarity_defect(&coin, &ep, a.width + reach, a.steps)?;
    let report = json!({
        "case": ep.label().as_str(),
        "lambda": lambda_json(ep.lambda()),
        "residual": residual,
        "per_site_measure": ep.per_site_measure(),
        "max_dev": max_dev,
    });
    match sink.out {
        Some(_) => sink.artifact(&format!("{report}\n"))?,
        None => println!("{report}"),
    }
    Ok(if residual <= tol && max_dev <= tol { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_uniform(a: &UniformArgs, tol: f64, sink: &Sink) -> Result<ExitCode, CliError> {
    if a.m < 1 {
        return Err(CliError::invalid(format!("M must be >= 1, got {}", a.m)));
    }
    let (coin, ep) = cases::build(&a.case)?;
    let ep = scale_to_probability(&ep, a.m)?;
    let report = uniform_probability_check(&coin, &ep, a.m)?;
    let mut csv = String::from("x,mu_M\n");
    for (x, v) in report.interval() {
        csv.push_str(&format!("{x},{}\n", fmt_real(v)));
    }
    sink.artifact(&csv)?;
    sink.summary(&json!({
        "case": ep.label().as_str(),
        "M": report.m,
        "max_dev": report.max_dev,
        "interval_mass": report.interval_mass,
        "outside_mass": report.outside_mass,
    }));
    Ok(if report.max_dev <= tol { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Normalizes `v` if its squared norm is within `1e-9` of one.
fn unit_vector(v: Vec<Complex64>) -> Result<Vec<Complex64>, CliError> {
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(CliError::invalid(format!("initial vector has squared norm {norm}, expected 1")));
    }
    let s = norm.sqrt();
    Ok(v.into_iter().map(|z| z / s).collect())
}

fn cmd_density(a: &DensityArgs, sink: &Sink) -> Result<ExitCode, CliError> {
    if a.grid == 0 {
        return Err(CliError::invalid("--grid must be at least 1"));
    }
    let c = parse::complex;
    let (coin, v, model, mut summary) = match a.model.to_ascii_lowercase().as_str() {
        "konno" | "two_state_konno" | "two-state-konno" => {
            let coin = match (&a.coin, &a.theta) {
                (Some(spec), _) => parse::coin(spec)?,
                (None, Some(t)) => Coin::from_theta(parse::angle(t)?),
                (None, None) => return Err(CliError::invalid("konno model needs --theta or --coin")),
            };
            let v = unit_vector(vec![c(&a.alpha)?, c(&a.beta)?])?;
            let model = DensityModel::konno(&coin, v[0], v[1])?;
            let summary = json!({ "model": "konno", "C": model.konno_c(), "r": model.support_radius() });
            (coin, v, model, summary)
        }
        "grover3" | "grover3_weak" | "grover3-weak" => {
            let v = unit_vector(vec![c(&a.alpha)?, c(&a.beta)?, c(&a.gamma)?])?;
            let model = DensityModel::grover3_weak(v[0], v[1], v[2])?;
            let summary = json!({ "model": "grover3", "coefficients": model.grover3_coefficients() });
            (Coin::grover(3)?, v, model, summary)
        }
        other => return Err(CliError::invalid(format!("unknown model '{other}' (konno or grover3)"))),
    };
    let mut csv = String::from("x,f\n");
    for (x, f) in density_grid(&model, a.grid)? {
        csv.push_str(&format!("{},{}\n", fmt_real(x), fmt_real(f)));
    }
    sink.artifact(&csv)?;
    summary["delta_mass"] = json!(model.delta_mass());
    let mut code = ExitCode::SUCCESS;
    if let Some(n) = a.compare {
        let cmp = empirical_vs_density(&coin, &WaveWindow::delta(&v)?, n, &model)?;
        summary["n"] = json!(cmp.n);
        summary["ks_distance"] = json!(cmp.ks_distance);
        summary["raw_sup"] = json!(cmp.raw_sup);
        if a.max_ks.is_some_and(|m| cmp.ks_distance > m) {
            code = ExitCode::from(1);
        }
    }
    sink.summary(&summary);
    Ok(code)
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let sink = Sink { out: cli.out.as_ref(), json: cli.json };
    match &cli.command {
        Command::Evolve(a) => cmd_evolve(a, &sink),
        Command::Stationary(a) => cmd_stationary(a, cli.tol, &sink),
        Command::UniformWindow(a) => cmd_uniform(a, cli.tol, &sink),
        Command::Density(a) => cmd_density(a, &sink),
        Command::Timeavg(a) => cmd_timeavg(a, &sink),
    }
}

fn main() -> ExitCode {
    let argv = match config::expand(std::env::args().collect()) {
        Ok(argv) => argv,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(argv);
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
