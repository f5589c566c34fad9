//! Command-line front end for the Riemann solvers and the limit laboratory.
//!
//! Exit codes: 0 success, 1 malformed arguments, 2 validation error,
//! 3 numerical error, 4 failed convergence assertion.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fluxlab_core::error::Error;
use fluxlab_core::isentropic::{
    classify_region, solve_isentropic, vacuum_threshold, Region, VacuumThreshold,
};
use fluxlab_core::limit_lab::{build_schedule, sweep_two_rarefaction, sweep_two_shock, SweepPath};
use fluxlab_core::perturbed;
use fluxlab_core::profile::{sample_profile, ProfileFlag, ProfileSample};
use fluxlab_core::state::{shock_rh_residual, validate};
use fluxlab_core::testfn::default_suite;
use fluxlab_core::transport::{self, weak_form_residual_zp};
use fluxlab_core::wave::Wave;
use fluxlab_core::{FluxParams, RiemannSolution, State, SystemKind};

use config::{parse_f64_list, parse_state, parse_system, require, SeedConfig};
use output::{num, opt_num, DeltaOut, Diagnostics, IntermediateOut, SolveOutput};

#[derive(Debug)]
enum CliError {
    /// Malformed arguments: exit 1.
    Usage(String),
    /// Validation (exit 2) or numerical (exit 3) error from the solvers.
    Core(Error),
    /// A convergence assertion failed: table is still printed, exit 4.
    Convergence { table: String, message: String },
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Parser)]
#[command(
    name = "fluxlab",
    version,
    about = "Exact Riemann solvers for pressureless gas dynamics and its flux approximations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one Riemann problem and print the wave structure
    Solve(SolveArgs),
    /// Sample a solution profile on a xi grid at time t
    Sample(SampleArgs),
    /// Sweep the flux perturbation toward zero and tabulate limit columns
    Sweep(SweepArgs),
    /// Locate the vacuum threshold eps0 for spreading data
    Threshold(ThresholdArgs),
    /// Evaluate jump-relation and weak-form residuals
    Residual(ResidualArgs),
}

#[derive(Args, Clone, Default)]
struct SolveSpec {
    /// System to solve: zp | pt | ise
    #[arg(long)]
    system: Option<String>,
    /// Left state as RHO,U
    #[arg(long)]
    left: Option<String>,
    /// Right state as RHO,U
    #[arg(long)]
    right: Option<String>,
    /// Transport flux perturbation (default 0)
    #[arg(long, allow_negative_numbers = true)]
    eps1: Option<f64>,
    /// Pressure flux perturbation (default 0)
    #[arg(long, allow_negative_numbers = true)]
    eps2: Option<f64>,
    /// Adiabatic exponent (default 2)
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// JSON file mirroring the flags; explicit flags win
    #[arg(long = "seed-config", value_name = "FILE")]
    seed_config: Option<PathBuf>,
}

#[derive(Args, Default)]
struct SolveArgs {
    #[command(flatten)]
    spec: SolveSpec,
    /// Output format: json | csv (default json)
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    spec: SolveSpec,
    /// Sampling time (default 1)
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    #[arg(long = "x-min", allow_negative_numbers = true)]
    x_min: Option<f64>,
    #[arg(long = "x-max", allow_negative_numbers = true)]
    x_max: Option<f64>,
    /// Number of grid points
    #[arg(long)]
    n: Option<usize>,
    /// Explicit comma-separated xi list instead of a grid
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    spec: SolveSpec,
    /// Decreasing comma-separated base values (default 1e-2,...,1e-6)
    #[arg(long)]
    schedule: Option<String>,
    /// Path through (eps1, eps2): eq | e1sq | e2sq (ise only, default eq)
    #[arg(long)]
    path: Option<String>,
    /// Sample the profile at this xi along a two-rarefaction sweep
    #[arg(long = "sample-xi", allow_negative_numbers = true)]
    sample_xi: Option<f64>,
}

#[derive(Args)]
struct ThresholdArgs {
    #[command(flatten)]
    spec: SolveSpec,
}

#[derive(Args)]
struct ResidualArgs {
    #[command(flatten)]
    spec: SolveSpec,
    /// Test-function suite for weak-form residuals (default: default)
    #[arg(long)]
    tests: Option<String>,
}

/// Solve specification after merging flags with the seed config.
struct ResolvedSpec {
    system: SystemKind,
    left: State,
    right: State,
    params: FluxParams,
    seed: SeedConfig,
}

fn resolve_spec(spec: &SolveSpec) -> Result<ResolvedSpec, CliError> {
    let seed = SeedConfig::load(spec.seed_config.as_deref())?;
    let system_text = spec.system.clone().or_else(|| seed.system.clone());
    let system = parse_system(&require(system_text, "system")?)?;
    let left_text = spec.left.clone().or_else(|| seed.left.clone());
    let right_text = spec.right.clone().or_else(|| seed.right.clone());
    let left = parse_state(&require(left_text, "left")?, "left")?;
    let right = parse_state(&require(right_text, "right")?, "right")?;
    let eps1 = spec.eps1.or(seed.eps1).unwrap_or(0.0);
    let eps2 = spec.eps2.or(seed.eps2).unwrap_or(0.0);
    let gamma = spec.gamma.or(seed.gamma).unwrap_or(2.0);
    let params = FluxParams::new(eps1, eps2, gamma);
    if gamma > 3.0 {
        eprintln!("fluxlab: warning: gamma = {gamma} is outside the tested range (1, 3]");
    }
    validate(left, right, &params, system)?;
    Ok(ResolvedSpec {
        system,
        left,
        right,
        params,
        seed,
    })
}

fn solve(spec: &ResolvedSpec) -> Result<RiemannSolution, CliError> {
    Ok(match spec.system {
        SystemKind::ZeroPressure => transport::solve_zero_pressure(spec.left, spec.right)?,
        SystemKind::PerturbedTransport => {
            perturbed::solve_perturbed_transport(spec.left, spec.right, spec.params.eps1)?
        }
        SystemKind::Isentropic => solve_isentropic(spec.left, spec.right, &spec.params)?,
    })
}

fn region_name(region: Region) -> &'static str {
    match region {
        Region::TwoShock => "two_shock",
        Region::ShockRarefaction => "shock_rarefaction",
        Region::RarefactionShock => "rarefaction_shock",
        Region::TwoRarefaction => "two_rarefaction",
        Region::ConstantDensity => "constant_density",
    }
}

fn diagnostics(spec: &ResolvedSpec, sol: &RiemannSolution) -> Result<Diagnostics, CliError> {
    let region = match spec.system {
        SystemKind::Isentropic => {
            Some(region_name(classify_region(spec.left, spec.right, &spec.params)?).to_string())
        }
        _ => None,
    };
    let intermediate = match spec.system {
        SystemKind::Isentropic if sol.middles.len() == 1 => {
            let star = sol.middles[0];
            let mut sigma1 = None;
            let mut sigma2 = None;
            for (i, w) in sol.waves.iter().enumerate() {
                if let Wave::Shock { speed, .. } = *w {
                    if i == 0 {
                        sigma1 = Some(speed);
                    } else {
                        sigma2 = Some(speed);
                    }
                }
            }
            Some(IntermediateOut {
                rho_star: star.rho,
                u_star: star.u,
                sigma1,
                sigma2,
            })
        }
        _ => None,
    };
    let delta = sol.waves.iter().find_map(|w| match *w {
        Wave::DeltaShock {
            sigma,
            weight_rate_mass,
            weight_rate_momentum,
        } => Some(DeltaOut {
            sigma,
            w_rate: weight_rate_mass / (1.0 + sigma * sigma).sqrt(),
            weight_rate_mass,
            weight_rate_momentum,
        }),
        _ => None,
    });
    Ok(Diagnostics {
        region,
        intermediate,
        delta,
    })
}

fn cmd_solve(args: &SolveArgs) -> Result<String, CliError> {
    let spec = resolve_spec(&args.spec)?;
    let format = args
        .format
        .clone()
        .or_else(|| spec.seed.format.clone())
        .unwrap_or_else(|| "json".to_string());
    let sol = solve(&spec)?;
    match format.as_str() {
        "json" => {
            let diagnostics = diagnostics(&spec, &sol)?;
            Ok(output::solve_json(&SolveOutput {
                solution: sol,
                diagnostics,
            }))
        }
        "csv" => Ok(output::solve_csv(&sol)),
        other => Err(CliError::Usage(format!(
            "--format must be json or csv, got {other:?}"
        ))),
    }
}

fn flag_name(flag: ProfileFlag) -> &'static str {
    match flag {
        ProfileFlag::Constant => "const",
        ProfileFlag::Fan => "fan",
        ProfileFlag::ShockBoundary => "shock",
    }
}

fn cmd_sample(args: &SampleArgs) -> Result<String, CliError> {
    let spec = resolve_spec(&args.spec)?;
    let t = args.t.or(spec.seed.t).unwrap_or(1.0);
    if !(t.is_finite() && t > 0.0) {
        return Err(CliError::Usage(format!("--t must be positive, got {t}")));
    }
    let xi_text = args.xi.clone().or_else(|| spec.seed.xi.clone());
    let xis: Vec<f64> = match xi_text {
        Some(list) => {
            let mut v = parse_f64_list(&list, "xi")?;
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v
        }
        None => {
            let x_min = require(args.x_min.or(spec.seed.x_min), "x-min")?;
            let x_max = require(args.x_max.or(spec.seed.x_max), "x-max")?;
            let n = require(args.n.or(spec.seed.n), "n")?;
            if n == 0 || x_max < x_min {
                return Err(CliError::Usage("need n >= 1 and x-max >= x-min".into()));
            }
            (0..n)
                .map(|i| {
                    let x = if n == 1 {
                        x_min
                    } else {
                        x_min + (x_max - x_min) * i as f64 / (n - 1) as f64
                    };
                    x / t
                })
                .collect()
        }
    };

    let sol = solve(&spec)?;
    let arc = |sigma: f64| (1.0 + sigma * sigma).sqrt();

    let mut rows: Vec<(f64, String)> = Vec::new();
    let mut deltas_hit: Vec<f64> = Vec::new();
    for &xi in &xis {
        match sample_profile(&sol, xi)? {
            ProfileSample::Regular { state, flag } => {
                rows.push((
                    xi,
                    format!(
                        "{},{},{},{},,,",
                        num(xi),
                        num(state.rho),
                        num(state.u),
                        flag_name(flag)
                    ),
                ));
            }
            ProfileSample::Singular {
                sigma,
                weight_rate_mass,
                weight_rate_momentum,
            } => {
                deltas_hit.push(sigma);
                rows.push((
                    xi,
                    format!(
                        "{},,,delta,{},{},{}",
                        num(xi),
                        num(sigma),
                        num(weight_rate_mass / arc(sigma) * t),
                        num(weight_rate_momentum / arc(sigma) * t)
                    ),
                ));
            }
        }
    }
    // singular points the grid missed appear as extra rows
    for wave in &sol.waves {
        if let Wave::DeltaShock {
            sigma,
            weight_rate_mass,
            weight_rate_momentum,
        } = *wave
        {
            if !deltas_hit.contains(&sigma) {
                rows.push((
                    sigma,
                    format!(
                        "{},,,delta,{},{},{}",
                        num(sigma),
                        num(sigma),
                        num(weight_rate_mass / arc(sigma) * t),
                        num(weight_rate_momentum / arc(sigma) * t)
                    ),
                ));
            }
        }
    }
    rows.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let mut out = String::from("xi,rho,u,flag,sigma,w_mass,w_mom\n");
    for (_, row) in rows {
        out.push_str(&row);
        out.push('\n');
    }
    Ok(out)
}

fn parse_path(text: &str) -> Result<SweepPath, CliError> {
    match text {
        "eq" => Ok(SweepPath::Equal),
        "e1sq" => Ok(SweepPath::Eps1Squared),
        "e2sq" => Ok(SweepPath::Eps2Squared),
        other => Err(CliError::Usage(format!(
            "--path must be one of eq, e1sq, e2sq; got {other:?}"
        ))),
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<String, CliError> {
    let seed = SeedConfig::load(args.spec.seed_config.as_deref())?;
    let system_text = args.spec.system.clone().or_else(|| seed.system.clone());
    let system = parse_system(&require(system_text, "system")?)?;
    let left_text = args.spec.left.clone().or_else(|| seed.left.clone());
    let right_text = args.spec.right.clone().or_else(|| seed.right.clone());
    let left = parse_state(&require(left_text, "left")?, "left")?;
    let right = parse_state(&require(right_text, "right")?, "right")?;
    let schedule_text = args
        .schedule
        .clone()
        .or_else(|| seed.schedule.clone())
        .unwrap_or_else(|| "1e-2,1e-3,1e-4,1e-5,1e-6".to_string());
    let base = parse_f64_list(&schedule_text, "schedule")?;
    let gamma = args.spec.gamma.or(seed.gamma).unwrap_or(2.0);

    match system {
        SystemKind::ZeroPressure => Err(CliError::Usage(
            "sweep needs a perturbed system: --system pt or ise".into(),
        )),
        SystemKind::PerturbedTransport => {
            if args.path.is_some() || seed.path.is_some() {
                return Err(CliError::Usage(
                    "--path applies only to --system ise".into(),
                ));
            }
            let rows = perturbed::limit_table(left, right, &base)?;
            let mut out = String::from("eps1,sigma,w_rate\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{}\n",
                    num(r.eps1),
                    num(r.sigma),
                    num(r.w_rate)
                ));
            }
            if rows.len() >= 2 && !perturbed::gaps_decreasing(&rows) {
                return Err(CliError::Convergence {
                    table: out,
                    message: "limit-table gaps are not decreasing along the schedule".into(),
                });
            }
            Ok(out)
        }
        SystemKind::Isentropic => {
            let path_text = args.path.clone().or_else(|| seed.path.clone());
            let path = match path_text {
                Some(p) => parse_path(&p)?,
                None => SweepPath::Equal,
            };
            let schedule = build_schedule(&base, path);
            if left.u > right.u {
                let sweep = sweep_two_shock(left, right, gamma, &schedule)?;
                let mut out =
                    String::from("eps1,eps2,rho_star,u_star,sigma1,sigma2,p_scaled,mass_gap\n");
                for r in &sweep.records {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{}\n",
                        num(r.eps1),
                        num(r.eps2),
                        num(r.rho_star),
                        num(r.u_star),
                        num(r.sigma1),
                        num(r.sigma2),
                        num(r.p_scaled),
                        num(r.mass_gap)
                    ));
                }
                let violations = sweep.convergence_violations();
                if sweep.records.len() >= 2 && !violations.is_empty() {
                    return Err(CliError::Convergence {
                        table: out,
                        message: violations.join("; "),
                    });
                }
                Ok(out)
            } else if left.u < right.u {
                let sample_xi = args.sample_xi.or(seed.sample_xi);
                let sweep = sweep_two_rarefaction(left, right, gamma, &schedule, sample_xi)?;
                let mut out =
                    String::from("eps1,eps2,u1,u2,rho_mid,sample_xi,sample_rho,sample_u\n");
                for r in &sweep.records {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{}\n",
                        num(r.eps1),
                        num(r.eps2),
                        num(r.u1),
                        num(r.u2),
                        num(r.rho_mid),
                        opt_num(sample_xi),
                        opt_num(r.sample.map(|s| s.0)),
                        opt_num(r.sample.map(|s| s.1))
                    ));
                }
                if sweep.records.len() >= 2 && !sweep.edges_converging() {
                    return Err(CliError::Convergence {
                        table: out,
                        message: "fan edges are not converging along the schedule".into(),
                    });
                }
                Ok(out)
            } else {
                Err(CliError::Core(Error::Contract(
                    "sweep requires u- != u+: nothing concentrates or cavitates".into(),
                )))
            }
        }
    }
}

fn cmd_threshold(args: &ThresholdArgs) -> Result<String, CliError> {
    let seed = SeedConfig::load(args.spec.seed_config.as_deref())?;
    let left_text = args.spec.left.clone().or_else(|| seed.left.clone());
    let right_text = args.spec.right.clone().or_else(|| seed.right.clone());
    let left = parse_state(&require(left_text, "left")?, "left")?;
    let right = parse_state(&require(right_text, "right")?, "right")?;
    let gamma = args.spec.gamma.or(seed.gamma).unwrap_or(2.0);
    let mut out = String::from("eps0,note\n");
    match vacuum_threshold(left, right, gamma)? {
        VacuumThreshold::Root(eps0) => out.push_str(&format!("{},\n", num(eps0))),
        VacuumThreshold::AlwaysConstantDensity => {
            out.push_str(",constant density fan persists on (0; min(rho)/2)\n")
        }
    }
    Ok(out)
}

fn cmd_residual(args: &ResidualArgs) -> Result<String, CliError> {
    let spec = resolve_spec(&args.spec)?;
    let suite_name = args
        .tests
        .clone()
        .or_else(|| spec.seed.tests.clone())
        .unwrap_or_else(|| "default".to_string());
    if suite_name != "default" {
        return Err(CliError::Usage(format!(
            "unknown test suite {suite_name:?}"
        )));
    }

    let sol = solve(&spec)?;
    let mut out = String::from("check,test,r1,r2,r3\n");
    let mut worst_grh: f64 = 0.0;
    let mut worst_weak: f64 = 0.0;

    match spec.system {
        SystemKind::ZeroPressure | SystemKind::PerturbedTransport => {
            if spec.left.u > spec.right.u {
                let d = match spec.system {
                    SystemKind::ZeroPressure => transport::delta_shock_data(spec.left, spec.right)?,
                    _ => perturbed::delta_shock_data(spec.left, spec.right, spec.params.eps1)?,
                };
                let (r1, r2, r3) = match spec.system {
                    SystemKind::ZeroPressure => {
                        transport::grh_residual_zp(&d, spec.left, spec.right)
                    }
                    _ => perturbed::grh_residual(&d, spec.left, spec.right, spec.params.eps1),
                };
                out.push_str(&format!("grh,,{},{},{}\n", num(r1), num(r2), num(r3)));
                worst_grh = r1.abs().max(r2.abs()).max(r3.abs());
            }
            if spec.system == SystemKind::ZeroPressure {
                for tf in default_suite() {
                    let (rm, rp) = weak_form_residual_zp(&sol, &tf)?;
                    out.push_str(&format!("weak_form,{},{},{},\n", tf.name, num(rm), num(rp)));
                    worst_weak = worst_weak.max(rm.abs()).max(rp.abs());
                }
            }
        }
        SystemKind::Isentropic => {
            for (i, wave) in sol.waves.iter().enumerate() {
                if let Wave::Shock {
                    speed, left, right, ..
                } = *wave
                {
                    let (r1, r2) = shock_rh_residual(speed, left, right, &spec.params);
                    out.push_str(&format!("rh,wave{i},{},{},\n", num(r1), num(r2)));
                    worst_grh = worst_grh.max(r1.abs()).max(r2.abs());
                }
            }
        }
    }

    let scale = 1.0
        + spec.left.rho.max(spec.right.rho)
            * (1.0 + spec.left.u.abs().max(spec.right.u.abs())).powi(2);
    if worst_grh > 1e-12 * scale || worst_weak > 1e-8 {
        return Err(CliError::Convergence {
            table: out,
            message: format!(
                "residuals exceed tolerance: jump {worst_grh:e}, weak form {worst_weak:e}"
            ),
        });
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Sample(args) => cmd_sample(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Threshold(args) => cmd_threshold(args),
        Command::Residual(args) => cmd_residual(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            // malformed arguments: usage on stderr, exit 1
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(table) => {
            print!("{table}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("fluxlab: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Core(e)) => {
            eprintln!("fluxlab: {e}");
            match e {
                Error::Numerics(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
        Err(CliError::Convergence { table, message }) => {
            print!("{table}");
            eprintln!("fluxlab: convergence assertion failed: {message}");
            ExitCode::from(4)
        }
    }
}
