//! Monte Carlo convergence-in-probability experiments.
//!
//! One experiment fixes a target function, a basis, a summability method,
//! and a stability index, then draws `M` independent paths. Path `j` is
//! seeded with stream `j` under the master seed, so the ensemble is
//! reproducible and any path can be replayed in isolation. For each size
//! `n` in the schedule the run records the empirical probability that the
//! summed estimator misses its per-path target by more than `epsilon`,
//! with a Wilson score interval around each estimate.
//!
//! Two evaluation modes exist:
//!
//! - sup mode pairs a weighted-sup statement with a theta matrix: the
//!   statistic is `T_n = sum_k theta_{k,n} a_k A_k` against the target
//!   `integral of f(t) (1-t)^eta (1+t)^tau dX(t)`;
//! - point mode pairs an endpoint statement with a sequence mean: partial
//!   sums `s_v = sum_{j<=v} a_j A_j p_j(1)` are averaged by the chosen
//!   mean and compared against `A * integral of rho dX` at the mean index
//!   `n - 1`.
//!
//! Aggregation walks paths in a fixed order whatever the thread count, so
//! equal seeds give byte-identical CSV output.

use crate::error::{Error, Result};
use crate::fourier::{coefficients, random_coefficients_all, TargetFunction};
use crate::jacobi::{JacobiParams, OrthonormalBasis, WeightParams};
use crate::lab::conditions::{
    generalized_norlund_hypotheses, norlund_hypotheses, triangular_hypotheses,
    TriangularHypothesisOptions, ANTIPOLE_SPLIT_DEFAULT,
};
use crate::lab::gate::{parameter_gate, GateTag, ParameterGate};
use crate::report::ConditionReport;
use crate::stable::{stochastic_integral, PathSeed, StableIndex, StablePath};
use crate::summation::{
    check_theta_conditions, generalized_norlund_means, norlund_means, theta_apply, theta_sum,
    triangular_means, GeneralizedNorlundWeights, Method, MethodFamily, NorlundWeights, ThetaMatrix,
    TriangularMatrix,
};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::time::Instant;

/// Normal quantile for two-sided 95% Wilson intervals.
pub const WILSON_Z: f64 = 1.959964;

/// Fewer paths than this is a configuration error, not a warning.
pub const MIN_PATHS: usize = 100;

/// Points in the fixed Chebyshev grid for the sup-mode deterministic
/// diagnostic.
const CHEB_POINTS: usize = 33;

/// Where the estimator is compared against its target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    /// Weighted sup over the interval; requires a theta-family method.
    SupYGrid,
    /// The endpoint `y = 1`; requires a sequence-mean method.
    PointAtOne,
}

impl EvalMode {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "sup" => Ok(EvalMode::SupYGrid),
            "point" => Ok(EvalMode::PointAtOne),
            _ => Err(Error::Parse(format!(
                "unknown mode {text:?}; expected sup or point"
            ))),
        }
    }
}

impl std::fmt::Display for EvalMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EvalMode::SupYGrid => "sup",
            EvalMode::PointAtOne => "point",
        })
    }
}

/// Full description of one experiment run.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub target: TargetFunction,
    pub basis: JacobiParams,
    /// Evaluation weight exponents; sup mode only, but always recorded.
    pub weight: WeightParams,
    pub method: Method,
    pub alpha: StableIndex,
    /// Strictly increasing sizes at which the estimator is probed.
    pub n_schedule: Vec<usize>,
    /// Number of Monte Carlo paths `M`.
    pub paths: usize,
    /// Path grid steps `G`.
    pub grid_steps: usize,
    pub epsilon: f64,
    pub mode: EvalMode,
    pub seed: u64,
    /// Point-mode limit constant `A`; defaults to `f(1)` when absent.
    pub point_level: Option<f64>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_schedule.is_empty() {
            return Err(Error::Config("schedule must not be empty".into()));
        }
        if self.n_schedule[0] == 0 {
            return Err(Error::Config("schedule sizes must be >= 1".into()));
        }
        if !self.n_schedule.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Config("schedule must be strictly increasing".into()));
        }
        if self.paths < MIN_PATHS {
            return Err(Error::Config(format!(
                "M >= {MIN_PATHS} required for probability estimates, got M={}",
                self.paths
            )));
        }
        if self.grid_steps < 2 {
            return Err(Error::Config(format!(
                "path grid needs at least 2 steps, got {}",
                self.grid_steps
            )));
        }
        if !self.epsilon.is_finite() || self.epsilon <= 0.0 {
            return Err(Error::Config(format!(
                "epsilon must be finite and positive, got {}",
                self.epsilon
            )));
        }
        if let Some(a) = self.point_level {
            if !a.is_finite() {
                return Err(Error::Config(format!(
                    "point level must be finite, got {a}"
                )));
            }
            if self.mode == EvalMode::SupYGrid {
                return Err(Error::Config(
                    "point level only applies to point mode".into(),
                ));
            }
        }
        match (self.mode, self.method.family()) {
            (EvalMode::SupYGrid, MethodFamily::Theta) => {}
            (EvalMode::PointAtOne, MethodFamily::Sequence) => {}
            (EvalMode::SupYGrid, MethodFamily::Sequence) => {
                return Err(Error::Config(format!(
                    "sup mode needs a theta-family method, got {}",
                    self.method.descriptor()
                )));
            }
            (EvalMode::PointAtOne, MethodFamily::Theta) => {
                return Err(Error::Config(format!(
                    "point mode needs a sequence-family method, got {}",
                    self.method.descriptor()
                )));
            }
        }
        if let Method::Triangular { matrix, .. } = &self.method {
            let nmax = *self.n_schedule.last().unwrap();
            if matrix.len() < nmax {
                return Err(Error::Config(format!(
                    "triangular matrix has {} rows but the schedule needs {nmax}",
                    matrix.len()
                )));
            }
        }
        Ok(())
    }

    /// Resolved point-mode limit constant.
    pub fn resolved_point_level(&self) -> f64 {
        self.point_level.unwrap_or_else(|| self.target.eval(1.0))
    }

    /// Deterministic textual echo of every knob, for the gate sidecar.
    pub fn echo(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "target={}", self.target.descriptor());
        let _ = writeln!(out, "gamma={}", self.basis.gamma());
        let _ = writeln!(out, "delta={}", self.basis.delta());
        let _ = writeln!(out, "eta={}", self.weight.eta());
        let _ = writeln!(out, "tau={}", self.weight.tau());
        let _ = writeln!(out, "method={}", self.method.descriptor());
        let _ = writeln!(out, "alpha={}", self.alpha.value());
        let schedule: Vec<String> = self.n_schedule.iter().map(|n| n.to_string()).collect();
        let _ = writeln!(out, "schedule={}", schedule.join(","));
        let _ = writeln!(out, "paths={}", self.paths);
        let _ = writeln!(out, "grid={}", self.grid_steps);
        let _ = writeln!(out, "epsilon={}", self.epsilon);
        let _ = writeln!(out, "mode={}", self.mode);
        let _ = writeln!(out, "seed={}", self.seed);
        if self.mode == EvalMode::PointAtOne {
            let _ = writeln!(out, "point_level={}", self.resolved_point_level());
        }
        out
    }
}

/// Empirical exceedance estimate at one schedule size.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleRow {
    pub n: usize,
    pub exceed: usize,
    pub p_hat: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

/// Everything one run produces: the estimates, the parameter gate, the
/// method conditions, the deterministic diagnostic, and the per-path
/// target values.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub rows: Vec<ScheduleRow>,
    pub paths: usize,
    pub epsilon: f64,
    pub mode: EvalMode,
    pub gate: ParameterGate,
    pub method_conditions: ConditionReport,
    /// Sup mode only: weighted sup error of the deterministic sum per
    /// schedule size, on a fixed 33-point Chebyshev grid.
    pub deterministic_sup: Vec<(usize, f64)>,
    /// Target value of every path in stream order.
    pub target_estimates: Vec<f64>,
    pub config_echo: String,
    pub wall_secs: f64,
}

impl ConvergenceReport {
    /// CSV with a fixed header; byte-identical across runs with equal
    /// configuration and seed.
    pub fn csv_body(&self) -> String {
        let mut out = String::from("n,p_hat,wilson_lo,wilson_hi,M,epsilon,mode\n");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{},{:.6},{:.6},{:.6},{},{},{}",
                row.n, row.p_hat, row.wilson_lo, row.wilson_hi, self.paths, self.epsilon, self.mode
            );
        }
        out
    }

    /// Plain-text sidecar: config echo, gate, method conditions, the
    /// deterministic diagnostic, and a target-estimate summary. Contains no
    /// wall-clock values, so it is as reproducible as the CSV.
    pub fn gate_text(&self) -> String {
        let mut out = String::from("# gate report\n[config]\n");
        out.push_str(&self.config_echo);
        out.push_str("[gate]\n");
        out.push_str(&self.gate.render());
        out.push_str("[method conditions]\n");
        let _ = writeln!(out, "{}", self.method_conditions);
        if !self.deterministic_sup.is_empty() {
            out.push_str("[deterministic sup diagnostic]\n");
            for &(n, err) in &self.deterministic_sup {
                let _ = writeln!(out, "n={n} weighted_sup_error={err:.6e}");
            }
        }
        out.push_str("[target estimates]\n");
        let mut sorted = self.target_estimates.clone();
        sorted.sort_by(f64::total_cmp);
        let median = sorted[sorted.len() / 2];
        let _ = writeln!(
            out,
            "paths={} min={:.6e} median={:.6e} max={:.6e}",
            sorted.len(),
            sorted[0],
            median,
            sorted[sorted.len() - 1]
        );
        out
    }

    /// Minimal standalone SVG of `p_hat` against the schedule, with the
    /// Wilson band drawn as vertical whiskers.
    pub fn svg_plot(&self) -> String {
        let (w, h, margin) = (640.0, 400.0, 60.0);
        let span = w - 2.0 * margin;
        let x = |i: usize| {
            if self.rows.len() <= 1 {
                w / 2.0
            } else {
                margin + span * i as f64 / (self.rows.len() - 1) as f64
            }
        };
        let y = |p: f64| margin + (1.0 - p) * (h - 2.0 * margin);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
        );
        let _ = writeln!(out, "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>");
        let _ = writeln!(
            out,
            "<text x=\"{:.1}\" y=\"28\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\">P(|error| &gt; {}) by n, mode={}, M={}</text>",
            w / 2.0,
            self.epsilon,
            self.mode,
            self.paths
        );
        for (tick, label) in [(0.0, "0.0"), (0.5, "0.5"), (1.0, "1.0")] {
            let ty = y(tick);
            let _ = writeln!(
                out,
                "<line x1=\"{margin}\" y1=\"{ty:.1}\" x2=\"{:.1}\" y2=\"{ty:.1}\" stroke=\"#cccccc\"/>",
                w - margin
            );
            let _ = writeln!(
                out,
                "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">{label}</text>",
                margin - 8.0,
                ty + 4.0
            );
        }
        let mut points = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            let (px, py) = (x(i), y(row.p_hat));
            let _ = write!(points, "{px:.1},{py:.1} ");
            let _ = writeln!(
                out,
                "<line x1=\"{px:.1}\" y1=\"{:.1}\" x2=\"{px:.1}\" y2=\"{:.1}\" stroke=\"#888888\"/>",
                y(row.wilson_hi),
                y(row.wilson_lo)
            );
            let _ = writeln!(
                out,
                "<circle cx=\"{px:.1}\" cy=\"{py:.1}\" r=\"3\" fill=\"#1f4e9c\"/>"
            );
            let _ = writeln!(
                out,
                "<text x=\"{px:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
                h - margin + 20.0,
                row.n
            );
        }
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\"/>",
            points.trim_end()
        );
        let _ = writeln!(
            out,
            "<line x1=\"{margin}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>",
            h - margin,
            w - margin,
            h - margin
        );
        let _ = writeln!(
            out,
            "<line x1=\"{margin}\" y1=\"{margin}\" x2=\"{margin}\" y2=\"{:.1}\" stroke=\"black\"/>",
            h - margin
        );
        out.push_str("</svg>\n");
        out
    }
}

/// 95% Wilson score interval for `count` successes out of `m` trials,
/// clamped to `[0, 1]`.
pub fn wilson_interval(count: usize, m: usize) -> (f64, f64) {
    if m == 0 {
        return (0.0, 1.0);
    }
    let z = WILSON_Z;
    let m = m as f64;
    let p = count as f64 / m;
    let denom = 1.0 + z * z / m;
    let center = p + z * z / (2.0 * m);
    let radius = z * (p * (1.0 - p) / m + z * z / (4.0 * m * m)).sqrt();
    (
        ((center - radius) / denom).clamp(0.0, 1.0),
        ((center + radius) / denom).clamp(0.0, 1.0),
    )
}

enum Machinery {
    Theta(ThetaMatrix),
    Norlund(NorlundWeights),
    GenNorlund(GeneralizedNorlundWeights),
    Triangular(TriangularMatrix),
}

fn build_machinery(method: &Method, nmax: usize) -> Result<Machinery> {
    Ok(match method {
        Method::Theta(_) => Machinery::Theta(method.theta_matrix(nmax)?),
        Method::Norlund(preset) => Machinery::Norlund(preset.weights(nmax)?),
        Method::GenNorlund { q, r } => {
            let q = q.weights(nmax)?.p().to_vec();
            let r = r.weights(nmax)?.p().to_vec();
            Machinery::GenNorlund(GeneralizedNorlundWeights::new(q, r)?)
        }
        Method::Triangular { matrix, .. } => Machinery::Triangular(matrix.clone()),
    })
}

struct PathOutcome {
    target: f64,
    errors: Vec<f64>,
}

/// Runs the experiment with paths drawn by [`StablePath::sample`].
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ConvergenceReport> {
    let alpha = cfg.alpha;
    let grid = cfg.grid_steps;
    run_experiment_with_paths(cfg, &move |seed| StablePath::sample(alpha, grid, seed))
}

/// Runs the experiment with an injected path source. The source is called
/// once per path with that path's seed; tests use this to substitute
/// degenerate or pre-built paths.
pub fn run_experiment_with_paths(
    cfg: &ExperimentConfig,
    sample: &(dyn Fn(PathSeed) -> Result<StablePath> + Sync),
) -> Result<ConvergenceReport> {
    cfg.validate()?;
    let start = Instant::now();
    let nmax = *cfg.n_schedule.last().unwrap();
    let coeffs = coefficients(&cfg.target, nmax - 1, &cfg.basis)?;
    let a = coeffs.values();
    let machinery = build_machinery(&cfg.method, nmax)?;

    // Sup mode integrates the coefficients against the evaluation weight;
    // point mode against the basis weight itself.
    let a_weight = match cfg.mode {
        EvalMode::SupYGrid => cfg.weight,
        EvalMode::PointAtOne => cfg.basis.as_weight(),
    };
    let point_level = cfg.resolved_point_level();
    let p_at_one = match cfg.mode {
        EvalMode::PointAtOne => OrthonormalBasis::new(cfg.basis, nmax - 1)?.eval_all(1.0),
        EvalMode::SupYGrid => Vec::new(),
    };
    let (eta, tau) = (cfg.weight.eta(), cfg.weight.tau());
    let (gamma, delta) = (cfg.basis.gamma(), cfg.basis.delta());
    let target_fn = cfg.target.clone();

    let outcomes: Vec<Result<PathOutcome>> = (0..cfg.paths)
        .into_par_iter()
        .map(|j| {
            let seed = PathSeed::new(cfg.seed, j as u64);
            let path = sample(seed)?;
            let random = random_coefficients_all(&path, nmax - 1, &cfg.basis, &a_weight, seed)?;
            let big_a = random.values();
            match &machinery {
                Machinery::Theta(theta) => {
                    let target = stochastic_integral(
                        |t| target_fn.eval(t) * ((1.0 - t).powf(eta) * (1.0 + t).powf(tau)),
                        &path,
                    )?;
                    let c: Vec<f64> = a.iter().zip(big_a).map(|(&ak, &bk)| ak * bk).collect();
                    let errors = cfg
                        .n_schedule
                        .iter()
                        .map(|&n| Ok((theta_apply(theta, &c, n)? - target).abs()))
                        .collect::<Result<Vec<f64>>>()?;
                    Ok(PathOutcome { target, errors })
                }
                seq => {
                    let target = point_level
                        * stochastic_integral(
                            |t| (1.0 - t).powf(gamma) * (1.0 + t).powf(delta),
                            &path,
                        )?;
                    let mut s = Vec::with_capacity(nmax);
                    let mut acc = 0.0;
                    for v in 0..nmax {
                        acc += a[v] * big_a[v] * p_at_one[v];
                        s.push(acc);
                    }
                    let means = match seq {
                        Machinery::Norlund(w) => norlund_means(w, &s)?,
                        Machinery::GenNorlund(w) => generalized_norlund_means(w, &s)?,
                        Machinery::Triangular(m) => triangular_means(m, &s)?,
                        Machinery::Theta(_) => unreachable!("mode pairing validated"),
                    };
                    let errors = cfg
                        .n_schedule
                        .iter()
                        .map(|&n| (means[n - 1] - target).abs())
                        .collect();
                    Ok(PathOutcome { target, errors })
                }
            }
        })
        .collect();

    // Fixed-order aggregation: thread count cannot change the output.
    let mut exceed = vec![0usize; cfg.n_schedule.len()];
    let mut target_estimates = Vec::with_capacity(cfg.paths);
    for outcome in outcomes {
        let outcome = outcome?;
        for (slot, err) in exceed.iter_mut().zip(&outcome.errors) {
            if *err > cfg.epsilon {
                *slot += 1;
            }
        }
        target_estimates.push(outcome.target);
    }
    let rows: Vec<ScheduleRow> = cfg
        .n_schedule
        .iter()
        .zip(&exceed)
        .map(|(&n, &count)| {
            let (wilson_lo, wilson_hi) = wilson_interval(count, cfg.paths);
            ScheduleRow {
                n,
                exceed: count,
                p_hat: count as f64 / cfg.paths as f64,
                wilson_lo,
                wilson_hi,
            }
        })
        .collect();

    let (tag, method_conditions) = match &machinery {
        Machinery::Theta(theta) => (
            GateTag::SupWindow,
            check_theta_conditions(theta, &cfg.n_schedule)?,
        ),
        Machinery::Norlund(w) => {
            let probe: Vec<usize> = cfg.n_schedule.iter().map(|&n| n - 1).collect();
            (
                GateTag::PointNorlund,
                norlund_hypotheses(w, &cfg.target, &cfg.basis, ANTIPOLE_SPLIT_DEFAULT, &probe)?,
            )
        }
        Machinery::GenNorlund(w) => {
            let probe: Vec<usize> = cfg.n_schedule.iter().map(|&n| n - 1).collect();
            (
                GateTag::PointGenNorlund,
                generalized_norlund_hypotheses(
                    w,
                    &cfg.target,
                    &cfg.basis,
                    point_level,
                    ANTIPOLE_SPLIT_DEFAULT,
                    &probe,
                )?,
            )
        }
        Machinery::Triangular(m) => {
            let probe: Vec<usize> = cfg.n_schedule.iter().map(|&n| n - 1).collect();
            (
                GateTag::PointTriangular,
                triangular_hypotheses(
                    m,
                    &cfg.target,
                    &cfg.basis,
                    point_level,
                    &TriangularHypothesisOptions::default(),
                    &probe,
                )?,
            )
        }
    };
    let gate = parameter_gate(&cfg.basis, &cfg.weight, tag);

    let deterministic_sup = match &machinery {
        Machinery::Theta(theta) => deterministic_sup_diagnostic(cfg, theta, &coeffs)?,
        _ => Vec::new(),
    };

    Ok(ConvergenceReport {
        rows,
        paths: cfg.paths,
        epsilon: cfg.epsilon,
        mode: cfg.mode,
        gate,
        method_conditions,
        deterministic_sup,
        target_estimates,
        config_echo: cfg.echo(),
        wall_secs: start.elapsed().as_secs_f64(),
    })
}

/// Weighted sup error of the deterministic theta sum on the Chebyshev grid
/// `y_i = cos(pi i / 32)`, one value per schedule size.
fn deterministic_sup_diagnostic(
    cfg: &ExperimentConfig,
    theta: &ThetaMatrix,
    coeffs: &crate::fourier::ExpansionCoefficients,
) -> Result<Vec<(usize, f64)>> {
    let (eta, tau) = (cfg.weight.eta(), cfg.weight.tau());
    let grid: Vec<f64> = (0..CHEB_POINTS)
        .map(|i| (std::f64::consts::PI * i as f64 / (CHEB_POINTS - 1) as f64).cos())
        .collect();
    let mut out = Vec::with_capacity(cfg.n_schedule.len());
    for &n in &cfg.n_schedule {
        let mut sup = 0.0_f64;
        for &y in &grid {
            let w = (1.0 - y).powf(eta) * (1.0 + y).powf(tau);
            let err = w * (theta_sum(theta, coeffs, n, y)? - cfg.target.eval(y));
            sup = sup.max(err.abs());
        }
        out.push((n, sup));
    }
    Ok(out)
}
