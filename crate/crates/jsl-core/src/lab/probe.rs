//! Standalone probes: a deterministic weighted-sup convergence table for
//! theta methods, and a Monte Carlo check that tail probabilities of
//! stable integrals scale like `epsilon^-alpha`.

use crate::error::{Error, Result};
use crate::fourier::{coefficients, TargetFunction};
use crate::jacobi::{JacobiParams, WeightParams};
use crate::report::{vanishing_verdict, ConditionEntry, ConditionReport, Verdict};
use crate::stable::{stochastic_integral, PathSeed, StableIndex, StablePath};
use crate::summation::{theta_sum, Method};
use rayon::prelude::*;

/// Uniform grid resolution of the deterministic probe.
pub const PROBE_GRID_POINTS: usize = 201;

/// The tail-scaling check refuses fewer paths than this; its smallest
/// probabilities need the resolution.
pub const MIN_TAIL_PATHS: usize = 10_000;

/// The scaled tail witness may grow by at most this factor over the last
/// epsilon step and still count as flat.
const NO_GROWTH_RATIO: f64 = 1.2;

/// Weighted sup error `max_y |w(y) (theta-sum_n(f, y) - f(y))|` over a
/// uniform 201-point grid, one row per schedule size. Only theta-family
/// methods define a function of `y`; sequence means are rejected.
pub fn deterministic_convergence_probe(
    f: &TargetFunction,
    basis: &JacobiParams,
    weight: &WeightParams,
    method: &Method,
    n_schedule: &[usize],
) -> Result<Vec<(usize, f64)>> {
    if n_schedule.is_empty() {
        return Err(Error::InvalidParameter("schedule must not be empty".into()));
    }
    if n_schedule[0] == 0 || !n_schedule.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidParameter(
            "schedule must be strictly increasing with sizes >= 1".into(),
        ));
    }
    let Method::Theta(_) = method else {
        return Err(Error::InvalidParameter(format!(
            "the deterministic probe needs a theta-family method; {} averages partial sums and does not define a function of y",
            method.descriptor()
        )));
    };
    let nmax = *n_schedule.last().unwrap();
    let theta = method.theta_matrix(nmax)?;
    let coeffs = coefficients(f, nmax - 1, basis)?;
    let (eta, tau) = (weight.eta(), weight.tau());
    let mut out = Vec::with_capacity(n_schedule.len());
    for &n in n_schedule {
        let mut sup = 0.0_f64;
        for i in 0..PROBE_GRID_POINTS {
            let y = -1.0 + 2.0 * i as f64 / (PROBE_GRID_POINTS - 1) as f64;
            let w = (1.0 - y).powf(eta) * (1.0 + y).powf(tau);
            let err = w * (theta_sum(&theta, &coeffs, n, y)? - f.eval(y));
            sup = sup.max(err.abs());
        }
        out.push((n, sup));
    }
    Ok(out)
}

/// Monte Carlo check of the tail law for `I = integral of g dX`: the
/// witness `epsilon^alpha P(|I| > epsilon) / integral of |g|^alpha dt`
/// should flatten as epsilon grows. Draws `m` paths on `grid_steps` steps
/// under `seed` and evaluates every epsilon on the same ensemble.
pub fn lemma_tail_scaling_check(
    g: &TargetFunction,
    alpha: StableIndex,
    epsilons: &[f64],
    m: usize,
    grid_steps: usize,
    seed: u64,
) -> Result<ConditionReport> {
    if m < MIN_TAIL_PATHS {
        return Err(Error::InvalidParameter(format!(
            "{m} paths cannot resolve tail probabilities; need at least {MIN_TAIL_PATHS}"
        )));
    }
    if epsilons.is_empty() {
        return Err(Error::InvalidParameter(
            "epsilon grid must not be empty".into(),
        ));
    }
    if epsilons.iter().any(|e| !e.is_finite() || *e <= 0.0)
        || !epsilons.windows(2).all(|w| w[0] < w[1])
    {
        return Err(Error::InvalidParameter(
            "epsilon grid must be positive, finite, and strictly increasing".into(),
        ));
    }
    if grid_steps < 2 {
        return Err(Error::InvalidParameter(format!(
            "path grid needs at least 2 steps, got {grid_steps}"
        )));
    }

    // Same left-endpoint discretization as the stochastic integral itself.
    let dt = 2.0 / grid_steps as f64;
    let a = alpha.value();
    let denominator: f64 = (0..grid_steps)
        .map(|i| g.eval(-1.0 + i as f64 * dt).abs().powf(a) * dt)
        .sum();

    let values: Vec<Result<f64>> = (0..m)
        .into_par_iter()
        .map(|j| {
            let path = StablePath::sample(alpha, grid_steps, PathSeed::new(seed, j as u64))?;
            stochastic_integral(|t| g.eval(t), &path)
        })
        .collect();
    let mut magnitudes = Vec::with_capacity(m);
    for v in values {
        magnitudes.push(v?.abs());
    }

    let mut report = ConditionReport::new(format!(
        "tail scaling for g={} with alpha={}",
        g.descriptor(),
        a
    ));
    let mut probabilities = Vec::with_capacity(epsilons.len());
    let mut scaled = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let count = magnitudes.iter().filter(|&&v| v > eps).count();
        let p_hat = count as f64 / m as f64;
        probabilities.push((eps, p_hat));
        let witness = if denominator > 0.0 {
            eps.powf(a) * p_hat / denominator
        } else if count == 0 {
            0.0
        } else {
            f64::INFINITY
        };
        scaled.push((eps, witness));
    }
    report.push(ConditionEntry::new(
        "tail_probability_decays",
        vanishing_verdict(&probabilities),
        probabilities,
        "empirical P(|I| > epsilon) over the epsilon grid",
    ));
    let verdict = match scaled.as_slice() {
        [] => Verdict::Undefined,
        [(_, only)] => {
            if only.is_finite() {
                Verdict::Holds
            } else {
                Verdict::Fails
            }
        }
        [.., (_, prev), (_, last)] => {
            if last.is_finite()
                && prev.is_finite()
                && *last <= NO_GROWTH_RATIO * prev.max(f64::MIN_POSITIVE)
            {
                Verdict::Holds
            } else {
                Verdict::Fails
            }
        }
    };
    report.push(ConditionEntry::new(
        "tail_scaling_no_growth",
        verdict,
        scaled,
        format!(
            "epsilon^alpha P(|I| > epsilon) / integral of |g|^alpha; growth above {NO_GROWTH_RATIO}x over the last step flags the law"
        ),
    ));
    Ok(report)
}
