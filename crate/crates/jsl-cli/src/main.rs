//! Command-line front end for the expansion/summability library.
//!
//! Payloads (CSV tables, condition reports, path dumps) go to stdout or, with
//! `--out`, to a file written atomically; progress notes go to stderr.
//!
//! Exit codes: 0 success; 2 usage error (bad flags or descriptors); 3 config
//! file problem; 4 runtime failure (numeric or I/O).

mod config;
mod output;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jsl_core::fourier::coefficients_with_points;
use jsl_core::jacobi::default_rule_size;
use jsl_core::summation::{
    check_theta_conditions, silverman_toeplitz_check, GeneralizedNorlundWeights, Method,
    DEFAULT_PROBE,
};
use jsl_core::{
    deterministic_convergence_probe, generalized_norlund_hypotheses, lemma_tail_scaling_check,
    norlund_hypotheses, run_experiment, JacobiParams, PathSeed, StableIndex, StablePath,
    TargetFunction, WeightParams,
};

#[derive(Parser)]
#[command(
    name = "jsl",
    version,
    about = "Weighted Jacobi expansions, summability methods, and stable-process experiments"
)]
struct Cli {
    /// Worker threads for path ensembles (0 = one per logical CPU).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expansion coefficients a_n of a catalog function, as CSV.
    Coeffs(CoeffsArgs),
    /// Term-weight matrix rows of a matrix-family method, as CSV.
    Theta(ThetaArgs),
    /// Condition checks for a summation method.
    Conditions(ConditionsArgs),
    /// Sample one stable path and dump it as two-column text.
    Simulate(SimulateArgs),
    /// Monte Carlo convergence experiment driven by a config file.
    Experiment(ExperimentArgs),
    /// Deterministic approximation table or stochastic tail-scaling check.
    Probe(ProbeArgs),
}

#[derive(Args)]
struct CoeffsArgs {
    /// Target descriptor: one, identity, poly:c0,c1,..., abs, sqrt1my, step.
    #[arg(long)]
    f: String,

    /// Highest coefficient order; the CSV has N+1 rows.
    #[arg(long = "N")]
    n: usize,

    #[arg(long, default_value_t = 0.0)]
    gamma: f64,

    #[arg(long, default_value_t = 0.0)]
    delta: f64,

    /// Quadrature size override; defaults to a size picked from N.
    #[arg(long)]
    points: Option<usize>,

    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ThetaArgs {
    /// Matrix-family descriptor: identity, cesaro:phi=, riesz:nu=,mu=, vp:s=, rogosinski.
    #[arg(long)]
    method: String,

    /// Largest order; rows are emitted for every n up to this.
    #[arg(long = "N")]
    n: usize,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConditionsArgs {
    /// Any method descriptor; the check set follows the method family.
    #[arg(long)]
    method: String,

    /// Probe sizes, comma separated; defaults to 8,16,32,64,128,256
    /// (for matrix files: the available rows of that shape).
    #[arg(long, value_delimiter = ',')]
    probe: Option<Vec<usize>>,

    /// Target function for the checks that involve one.
    #[arg(long, default_value = "abs")]
    f: String,

    #[arg(long, default_value_t = 0.0)]
    gamma: f64,

    #[arg(long, default_value_t = 0.0)]
    delta: f64,

    /// Split point b in (-1, 1] for endpoint integrability checks.
    #[arg(long, default_value_t = 0.0)]
    split: f64,

    /// Constant level subtracted in point-mode local-mean checks.
    #[arg(long, default_value_t = 1.0)]
    level: f64,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Stability index in [1, 2].
    #[arg(long)]
    alpha: f64,

    /// Grid steps G; the dump has G+1 points on [-1, 1].
    #[arg(long, default_value_t = 512)]
    grid: usize,

    /// Master seed recorded in the dump header.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Sub-stream index under the master seed.
    #[arg(long, default_value_t = 0)]
    stream: u64,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Path to a key=value config file (see the config module docs).
    #[arg(long)]
    config: PathBuf,

    /// Output directory for the CSV and gate report (created if missing).
    #[arg(long, default_value = ".")]
    out: PathBuf,

    /// Also write an SVG plot of p_hat against n.
    #[arg(long)]
    plot: bool,
}

#[derive(Args)]
struct ProbeArgs {
    #[command(subcommand)]
    which: ProbeCommand,
}

#[derive(Subcommand)]
enum ProbeCommand {
    /// Weighted sup-norm error of a matrix-family approximation per order.
    Sup(ProbeSupArgs),
    /// Empirical tail probabilities of a stochastic integral against the
    /// epsilon^-alpha envelope.
    Tail(ProbeTailArgs),
}

#[derive(Args)]
struct ProbeSupArgs {
    #[arg(long)]
    f: String,

    #[arg(long, default_value_t = 0.0)]
    gamma: f64,

    #[arg(long, default_value_t = 0.0)]
    delta: f64,

    #[arg(long, default_value_t = 0.0)]
    eta: f64,

    #[arg(long, default_value_t = 0.0)]
    tau: f64,

    /// Matrix-family method descriptor.
    #[arg(long)]
    method: String,

    /// Orders to tabulate, comma separated.
    #[arg(long, value_delimiter = ',')]
    schedule: Option<Vec<usize>>,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProbeTailArgs {
    /// Integrand descriptor from the target catalog.
    #[arg(long, default_value = "one")]
    g: String,

    #[arg(long)]
    alpha: f64,

    /// Epsilon grid, comma separated and increasing.
    #[arg(long, value_delimiter = ',')]
    epsilons: Option<Vec<f64>>,

    /// Monte Carlo paths (at least 10000).
    #[arg(long, default_value_t = 10_000)]
    paths: usize,

    #[arg(long, default_value_t = 256)]
    grid: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Config(String),
    Runtime(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Config(_) => 3,
            Failure::Runtime(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Config(m) | Failure::Runtime(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn runtime(e: impl std::fmt::Display) -> Failure {
    Failure::Runtime(e.to_string())
}

/// Experiment-time library failures: config violations keep their own exit
/// code, everything else is a runtime failure.
fn core_failure(e: jsl_core::Error) -> Failure {
    match e {
        jsl_core::Error::Config(_) => Failure::Config(e.to_string()),
        other => Failure::Runtime(other.to_string()),
    }
}

/// Sends a payload to stdout, or atomically to `--out`.
fn emit(out: Option<&Path>, payload: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            output::write_atomic(path, payload)
                .map_err(|e| Failure::Runtime(format!("write {}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn cmd_coeffs(args: CoeffsArgs) -> Result<(), Failure> {
    let f = TargetFunction::from_descriptor(&args.f).map_err(usage)?;
    let params = JacobiParams::new(args.gamma, args.delta).map_err(usage)?;
    let points = args.points.unwrap_or_else(|| default_rule_size(args.n));
    if points == 0 {
        return Err(Failure::Usage("--points must be at least 1".into()));
    }
    let expansion = coefficients_with_points(&f, args.n, &params, points).map_err(runtime)?;
    eprintln!("quadrature points: {points}");
    let mut csv = String::from("n,a_n\n");
    for (n, a) in expansion.values().iter().enumerate() {
        let _ = writeln!(csv, "{n},{a}");
    }
    emit(args.out.as_deref(), &csv)
}

fn cmd_theta(args: ThetaArgs) -> Result<(), Failure> {
    let method = Method::parse(&args.method).map_err(usage)?;
    let theta = method.theta_matrix(args.n).map_err(usage)?;
    let mut csv = String::from("n,k,theta\n");
    for n in 1..=args.n {
        // entry() extends each stored row by the implied zero at k = n, so
        // every group is the complete weight vector of order n.
        for k in 0..=n {
            let v = theta.entry(k, n).map_err(runtime)?;
            let _ = writeln!(csv, "{n},{k},{v}");
        }
    }
    emit(args.out.as_deref(), &csv)
}

fn cmd_conditions(args: ConditionsArgs) -> Result<(), Failure> {
    let method = Method::parse(&args.method).map_err(usage)?;
    let basis = JacobiParams::new(args.gamma, args.delta).map_err(usage)?;
    let f = TargetFunction::from_descriptor(&args.f).map_err(usage)?;
    let default_probe = || DEFAULT_PROBE.to_vec();
    let report = match &method {
        Method::Theta(_) => {
            let probe = args.probe.clone().unwrap_or_else(default_probe);
            let n_max = probe.iter().copied().max().unwrap_or(0);
            let theta = method.theta_matrix(n_max).map_err(usage)?;
            check_theta_conditions(&theta, &probe).map_err(usage)?
        }
        Method::Norlund(preset) => {
            let probe = args.probe.clone().unwrap_or_else(default_probe);
            let len = probe.iter().copied().max().unwrap_or(0) + 1;
            let weights = preset.weights(len).map_err(usage)?;
            norlund_hypotheses(&weights, &f, &basis, args.split, &probe).map_err(usage)?
        }
        Method::GenNorlund { q, r } => {
            let probe = args.probe.clone().unwrap_or_else(default_probe);
            let len = probe.iter().copied().max().unwrap_or(0) + 1;
            let q = q.weights(len).map_err(usage)?.p().to_vec();
            let r = r.weights(len).map_err(usage)?.p().to_vec();
            let weights = GeneralizedNorlundWeights::new(q, r).map_err(usage)?;
            generalized_norlund_hypotheses(&weights, &f, &basis, args.level, args.split, &probe)
                .map_err(usage)?
        }
        Method::Triangular { matrix, .. } => {
            // Default probe rows must exist in the file, so shrink to fit.
            let probe = args.probe.clone().unwrap_or_else(|| {
                let fitted: Vec<usize> = DEFAULT_PROBE
                    .iter()
                    .copied()
                    .filter(|&n| n < matrix.len())
                    .collect();
                if fitted.is_empty() {
                    vec![matrix.len() - 1]
                } else {
                    fitted
                }
            });
            silverman_toeplitz_check(matrix, &probe).map_err(usage)?
        }
    };
    emit(args.out.as_deref(), &report.to_string())
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), Failure> {
    let alpha = StableIndex::new(args.alpha).map_err(usage)?;
    let seed = PathSeed::new(args.seed, args.stream);
    let path = StablePath::sample(alpha, args.grid, seed).map_err(usage)?;
    emit(args.out.as_deref(), &path.dump(seed))
}

fn cmd_experiment(args: ExperimentArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Failure::Config(format!("config {}: {e}", args.config.display())))?;
    let mut cfg = config::parse_experiment_config(&text)
        .map_err(|e| Failure::Config(format!("config {}: {e}", args.config.display())))?;
    if let Ok(raw) = std::env::var("JSL_SEED") {
        cfg.seed = raw.trim().parse::<u64>().map_err(|_| {
            Failure::Config(format!("JSL_SEED must be an unsigned integer, got {raw:?}"))
        })?;
        eprintln!("seed overridden by JSL_SEED: {}", cfg.seed);
    }
    std::fs::create_dir_all(&args.out)
        .map_err(|e| Failure::Runtime(format!("create {}: {e}", args.out.display())))?;

    let report = run_experiment(&cfg).map_err(core_failure)?;

    let stem = args
        .config
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "experiment".into());
    let write = |name: String, payload: &str| -> Result<PathBuf, Failure> {
        let path = args.out.join(name);
        output::write_atomic(&path, payload)
            .map_err(|e| Failure::Runtime(format!("write {}: {e}", path.display())))?;
        Ok(path)
    };

    for row in &report.rows {
        println!(
            "n={} p_hat={:.6} wilson=[{:.6}, {:.6}]",
            row.n, row.p_hat, row.wilson_lo, row.wilson_hi
        );
    }
    let csv_path = write(format!("{stem}.csv"), &report.csv_body())?;
    println!("wrote {}", csv_path.display());
    let gate_path = write(format!("{stem}.gate.txt"), &report.gate_text())?;
    println!("wrote {}", gate_path.display());
    if args.plot {
        let svg_path = write(format!("{stem}.svg"), &report.svg_plot())?;
        println!("wrote {}", svg_path.display());
    }
    Ok(())
}

fn cmd_probe_sup(args: ProbeSupArgs) -> Result<(), Failure> {
    let f = TargetFunction::from_descriptor(&args.f).map_err(usage)?;
    let basis = JacobiParams::new(args.gamma, args.delta).map_err(usage)?;
    let weight = WeightParams::new(args.eta, args.tau).map_err(usage)?;
    let method = Method::parse(&args.method).map_err(usage)?;
    let schedule = args.schedule.unwrap_or_else(|| vec![8, 16, 32, 64]);
    let table =
        deterministic_convergence_probe(&f, &basis, &weight, &method, &schedule).map_err(usage)?;
    let mut csv = String::from("n,weighted_sup_error\n");
    for (n, e) in &table {
        let _ = writeln!(csv, "{n},{e}");
    }
    emit(args.out.as_deref(), &csv)
}

fn cmd_probe_tail(args: ProbeTailArgs) -> Result<(), Failure> {
    let g = TargetFunction::from_descriptor(&args.g).map_err(usage)?;
    let alpha = StableIndex::new(args.alpha).map_err(usage)?;
    let epsilons = args
        .epsilons
        .unwrap_or_else(|| vec![0.5, 1.0, 2.0, 4.0, 8.0]);
    let report = lemma_tail_scaling_check(&g, alpha, &epsilons, args.paths, args.grid, args.seed)
        .map_err(usage)?;
    emit(args.out.as_deref(), &report.to_string())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Coeffs(args) => cmd_coeffs(args),
        Command::Theta(args) => cmd_theta(args),
        Command::Conditions(args) => cmd_conditions(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Probe(args) => match args.which {
            ProbeCommand::Sup(sup) => cmd_probe_sup(sup),
            ProbeCommand::Tail(tail) => cmd_probe_tail(tail),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    jsl_core::set_thread_count(cli.threads);
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
