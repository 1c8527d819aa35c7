//! Hypothesis checkers for the sequence-mean convergence statements.
//!
//! Each checker evaluates the assumptions a mean family places on its
//! weights, on the target function near the evaluation endpoint, and on an
//! integrability condition at the opposite endpoint (the "antipole").
//! Conditions that are limits or O-bounds are probed on finite grids and
//! decided by the shared witness heuristics; every entry keeps its witness
//! sequence so a reader can audit the verdict.
//!
//! Probe values index directly into the weight or row arrays of the method
//! under test (row `n` of a triangular matrix averages `n + 1` partial sums).

use crate::error::{Error, Result};
use crate::fourier::TargetFunction;
use crate::jacobi::{gauss_jacobi_rule, JacobiParams};
use crate::report::{bounded_verdict, vanishing_verdict, ConditionEntry, ConditionReport, Verdict};
use crate::summation::{
    silverman_toeplitz_check, GeneralizedNorlundWeights, NorlundWeights, TriangularMatrix,
};

/// Default split point for antipole integrals: the interval `[-1, b]`.
pub const ANTIPOLE_SPLIT_DEFAULT: f64 = 0.0;

/// Node counts for the node-doubling stability check on antipole integrals.
const ANTIPOLE_NODE_SCHEDULE: [usize; 3] = [32, 64, 128];

/// Dyadic levels `t = 2^-j` used for local-mean integrals near the endpoint.
const DYADIC_LEVELS: std::ops::RangeInclusive<u32> = 2..=12;

/// A partial-sum sequence is treated as convergent when one probe doubling
/// grows it by at most this factor.
const SERIES_PLATEAU_RATIO: f64 = 1.05;

/// A cumulative-weight sequence is treated as divergent while one probe
/// doubling still grows it by at least this factor.
const DIVERGENCE_GROWTH_MIN: f64 = 1.01;

/// Scale factor applied to tail-sum cutoffs, parsed from `one`, `log`, or
/// `power:<a>`. Evaluations are clamped so the factor stays positive and
/// nondecreasing for arguments below one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum XiKind {
    One,
    Log,
    Power(f64),
}

impl XiKind {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "one" => Ok(XiKind::One),
            "log" => Ok(XiKind::Log),
            _ => {
                if let Some(arg) = text.strip_prefix("power:") {
                    let a: f64 = arg
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad power exponent {arg:?}")))?;
                    if !a.is_finite() || a < 0.0 {
                        return Err(Error::InvalidParameter(format!(
                            "power exponent must be finite and >= 0, got {a}"
                        )));
                    }
                    Ok(XiKind::Power(a))
                } else {
                    Err(Error::Parse(format!(
                        "unknown scale factor {text:?}; expected one, log, or power:<a>"
                    )))
                }
            }
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            XiKind::One => 1.0,
            XiKind::Log => t.max(std::f64::consts::E).ln(),
            XiKind::Power(a) => t.max(1.0).powf(*a),
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            XiKind::One => "one".to_owned(),
            XiKind::Log => "log".to_owned(),
            XiKind::Power(a) => format!("power:{a}"),
        }
    }
}

/// Knobs for [`triangular_hypotheses`]: the two tail-cutoff parameters, the
/// scale factor, and the antipole split point.
#[derive(Debug, Clone)]
pub struct TriangularHypothesisOptions {
    /// Tail cutoff `floor(1/beta)` for the checked vanishing condition;
    /// admissible range `0 < beta < pi`.
    pub beta: f64,
    /// Companion cutoff `floor(1/phi)`; reported alongside `beta` because the
    /// relation between the two is left open. Must be positive.
    pub phi: f64,
    pub xi: XiKind,
    pub antipole_split: f64,
}

impl Default for TriangularHypothesisOptions {
    fn default() -> Self {
        Self {
            beta: 1.0,
            phi: 1.0,
            xi: XiKind::One,
            antipole_split: ANTIPOLE_SPLIT_DEFAULT,
        }
    }
}

fn sorted_probe(probe: &[usize], len: usize, what: &str) -> Result<Vec<usize>> {
    if probe.is_empty() {
        return Err(Error::InvalidParameter("probe set is empty".into()));
    }
    let mut sizes = probe.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let max = *sizes.last().unwrap();
    if max >= len {
        return Err(Error::InvalidParameter(format!(
            "probe index {max} out of range for {what} of length {len}"
        )));
    }
    Ok(sizes)
}

/// Holds when the final witness grew by at most `ratio` over the previous
/// probe step. A single finite witness holds vacuously.
fn plateau_verdict(witnesses: &[(f64, f64)], ratio: f64) -> Verdict {
    match witnesses {
        [] => Verdict::Undefined,
        [(_, w)] => {
            if w.is_finite() {
                Verdict::Holds
            } else {
                Verdict::Fails
            }
        }
        [.., (_, prev), (_, last)] => {
            if !last.is_finite() || !prev.is_finite() {
                Verdict::Fails
            } else if *last <= ratio * prev.max(f64::MIN_POSITIVE) {
                Verdict::Holds
            } else {
                Verdict::Fails
            }
        }
    }
}

/// Holds while growth continues: the final witness exceeds the previous one
/// by at least `DIVERGENCE_GROWTH_MIN`.
fn divergence_verdict(witnesses: &[(f64, f64)]) -> Verdict {
    match witnesses {
        [] | [_] => Verdict::Undefined,
        [.., (_, prev), (_, last)] => {
            if !last.is_finite() || !prev.is_finite() {
                Verdict::Fails
            } else if *last >= DIVERGENCE_GROWTH_MIN * prev {
                Verdict::Holds
            } else {
                Verdict::Fails
            }
        }
    }
}

/// `integral of f over [lo, hi]` by a mapped 64-point Gauss-Legendre rule.
fn legendre_integral(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> Result<f64> {
    let rule = gauss_jacobi_rule(64, &JacobiParams::new(0.0, 0.0)?)?;
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    Ok(half * rule.integrate(|u| f(mid + half * u)))
}

/// `integral of (1+x)^exponent |f(x)| over [-1, b]`, with the endpoint weight
/// absorbed into a Gauss-Jacobi rule so the singularity is integrated
/// exactly rather than sampled.
fn antipole_integral(f: &TargetFunction, exponent: f64, b: f64, nodes: usize) -> Result<f64> {
    let rule = gauss_jacobi_rule(nodes, &JacobiParams::new(0.0, exponent)?)?;
    let half = (b + 1.0) / 2.0;
    let value = rule.integrate(|u| f.eval(-1.0 + half * (1.0 + u)).abs());
    Ok(half.powf(exponent + 1.0) * value)
}

/// Antipole entry shared by the checkers: node-doubled estimates of the
/// weighted integral, failing outright when the weight exponent is not
/// integrable at the endpoint.
fn antipole_entry(f: &TargetFunction, exponent: f64, b: f64) -> Result<ConditionEntry> {
    let note = format!("integral of (1+y)^{exponent:.3}|f| over [-1, {b}], node-doubled estimates");
    if exponent <= -1.0 {
        return Ok(ConditionEntry::new(
            "antipole_integrable",
            Verdict::Fails,
            vec![(exponent, f64::INFINITY)],
            format!("weight exponent {exponent:.3} <= -1 is not integrable at the endpoint"),
        ));
    }
    let mut witnesses = Vec::new();
    for &m in &ANTIPOLE_NODE_SCHEDULE {
        witnesses.push((m as f64, antipole_integral(f, exponent, b, m)?));
    }
    let verdict = plateau_verdict(&witnesses, 1.02);
    Ok(ConditionEntry::new(
        "antipole_integrable",
        verdict,
        witnesses,
        note,
    ))
}

fn validate_split(b: f64) -> Result<()> {
    if !b.is_finite() || b <= -1.0 || b > 1.0 {
        return Err(Error::InvalidParameter(format!(
            "antipole split must lie in (-1, 1], got {b}"
        )));
    }
    Ok(())
}

/// Checks the Norlund-mean hypotheses: nonnegative nonincreasing weights,
/// divergent cumulative sums, a summability condition on the inverse
/// cumulative weights, and antipole integrability of `f` against
/// `(1+y)^(delta/2 - 3/4)`. One stated bound involves a modulus with no
/// definition to evaluate; it is recorded unchecked.
pub fn norlund_hypotheses(
    weights: &NorlundWeights,
    f: &TargetFunction,
    basis: &JacobiParams,
    antipole_split: f64,
    probe: &[usize],
) -> Result<ConditionReport> {
    validate_split(antipole_split)?;
    let probe = sorted_probe(probe, weights.len(), "weight sequence")?;
    let gamma = basis.gamma();
    let p = weights.p();
    let cumulative = weights.cumulative();
    let mut report = ConditionReport::new(format!(
        "norlund hypotheses for f={} with gamma={}, delta={}",
        f.descriptor(),
        gamma,
        basis.delta()
    ));

    // Largest adjacent increase over the first n+1 weights; exact zero means
    // the sequence is nonincreasing that far.
    let min_weight = p.iter().copied().fold(f64::INFINITY, f64::min);
    let witnesses: Vec<(f64, f64)> = probe
        .iter()
        .map(|&n| {
            let rise = p[..=n]
                .windows(2)
                .map(|w| (w[1] - w[0]).max(0.0))
                .fold(0.0_f64, f64::max);
            (n as f64, rise)
        })
        .collect();
    let monotone = min_weight >= 0.0 && witnesses.iter().all(|&(_, w)| w == 0.0);
    report.push(ConditionEntry::new(
        "weights_nonneg_nonincreasing",
        if monotone {
            Verdict::Holds
        } else {
            Verdict::Fails
        },
        witnesses,
        format!("largest adjacent increase per probe; min weight {min_weight:.6e}"),
    ));

    let witnesses: Vec<(f64, f64)> = probe.iter().map(|&n| (n as f64, cumulative[n])).collect();
    report.push(ConditionEntry::new(
        "cumulative_weights_diverge",
        divergence_verdict(&witnesses),
        witnesses,
        format!(
            "cumulative weight at each probe; still growing by >= {DIVERGENCE_GROWTH_MIN} per doubling"
        ),
    ));

    report.push(ConditionEntry::new(
        "rate_bound_unspecified",
        Verdict::Undefined,
        Vec::new(),
        "bound references a smoothness modulus with no definition to evaluate; recorded unchecked",
    ));

    // Partial sums of m^(gamma+1/2) / P_m, starting at m = 1.
    let exponent = gamma + 0.5;
    let mut partial = 0.0;
    let mut next = 1usize;
    let mut witnesses = Vec::new();
    for &n in &probe {
        while next <= n {
            partial += (next as f64).powf(exponent) / cumulative[next];
            next += 1;
        }
        witnesses.push((n as f64, partial));
    }
    report.push(ConditionEntry::new(
        "inverse_weight_series_converges",
        plateau_verdict(&witnesses, SERIES_PLATEAU_RATIO),
        witnesses,
        format!(
            "partial sums of n^{exponent:.3}/P_n; plateau ratio <= {SERIES_PLATEAU_RATIO} per doubling"
        ),
    ));

    report.push(antipole_entry(
        f,
        basis.delta() / 2.0 - 0.75,
        antipole_split,
    )?);
    Ok(report)
}

/// Checks the generalized-Norlund hypotheses: positive convolution weights, a
/// partial-sum growth rate on the convolution, a local mean rate for `f`
/// near the evaluation endpoint, and antipole integrability against
/// `(1+y)^((delta-gamma-1)/2)`.
pub fn generalized_norlund_hypotheses(
    weights: &GeneralizedNorlundWeights,
    f: &TargetFunction,
    basis: &JacobiParams,
    point_level: f64,
    antipole_split: f64,
    probe: &[usize],
) -> Result<ConditionReport> {
    validate_split(antipole_split)?;
    if !point_level.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "point level must be finite, got {point_level}"
        )));
    }
    let probe = sorted_probe(probe, weights.len(), "convolution sequence")?;
    let gamma = basis.gamma();
    let conv = weights.convolution();
    let mut report = ConditionReport::new(format!(
        "generalized norlund hypotheses for f={} with gamma={}, delta={}",
        f.descriptor(),
        gamma,
        basis.delta()
    ));

    let witnesses: Vec<(f64, f64)> = probe
        .iter()
        .map(|&n| {
            let min = conv[..=n].iter().copied().fold(f64::INFINITY, f64::min);
            (n as f64, min)
        })
        .collect();
    let positive = witnesses.iter().all(|&(_, w)| w > 0.0);
    report.push(ConditionEntry::new(
        "convolution_positive",
        if positive {
            Verdict::Holds
        } else {
            Verdict::Fails
        },
        witnesses,
        "smallest convolution weight up to each probe",
    ));

    // Ratio of the log-damped convolution partial sum to its stated envelope.
    let exponent = gamma + 0.5;
    let mut partial = 0.0;
    let mut next = 2usize;
    let mut witnesses = Vec::new();
    for &n in &probe {
        while next <= n {
            partial += conv[next] / ((next as f64).powf(exponent) * (next as f64).ln());
            next += 1;
        }
        let envelope = conv[n] / (n as f64).powf(exponent);
        let w = if envelope > 0.0 {
            partial / envelope
        } else {
            f64::INFINITY
        };
        witnesses.push((n as f64, w));
    }
    report.push(ConditionEntry::new(
        "convolution_partial_sum_rate",
        bounded_verdict(&witnesses),
        witnesses,
        format!("partial sum of c_k/(k^{exponent:.3} log k) against c_n/n^{exponent:.3}"),
    ));

    // Local mean of |f - A| over [1-t, 1] against t / log(1/t), dyadic t.
    let mut witnesses = Vec::new();
    for j in DYADIC_LEVELS {
        let t = 0.5_f64.powi(j as i32);
        let integral = legendre_integral(1.0 - t, 1.0, |u| (f.eval(u) - point_level).abs())?;
        witnesses.push((j as f64, integral * (1.0 / t).ln() / t));
    }
    report.push(ConditionEntry::new(
        "local_mean_rate",
        bounded_verdict(&witnesses),
        witnesses,
        "mean of |f - A| over [1-t, 1] scaled by log(1/t)/t at t = 2^-k",
    ));

    report.push(antipole_entry(
        f,
        (basis.delta() - gamma - 1.0) / 2.0,
        antipole_split,
    )?);
    Ok(report)
}

/// Checks the triangular-mean hypotheses: the regularity conditions of
/// [`silverman_toeplitz_check`], vanishing scaled tail sums at the cutoffs
/// `floor(1/beta)` and `floor(1/phi)`, a scaled local mean rate, a tail-block
/// sum rate, and a vanishing antipole integral in the angle variable.
pub fn triangular_hypotheses(
    matrix: &TriangularMatrix,
    f: &TargetFunction,
    basis: &JacobiParams,
    point_level: f64,
    opts: &TriangularHypothesisOptions,
    probe: &[usize],
) -> Result<ConditionReport> {
    validate_split(opts.antipole_split)?;
    if !point_level.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "point level must be finite, got {point_level}"
        )));
    }
    if !opts.beta.is_finite() || opts.beta <= 0.0 || opts.beta >= std::f64::consts::PI {
        return Err(Error::InvalidParameter(format!(
            "beta must lie in (0, pi), got {}",
            opts.beta
        )));
    }
    if !opts.phi.is_finite() || opts.phi <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "phi must be positive, got {}",
            opts.phi
        )));
    }
    let probe = sorted_probe(probe, matrix.len(), "triangular matrix")?;
    let gamma = basis.gamma();
    let delta = basis.delta();

    let regular = silverman_toeplitz_check(matrix, &probe)?;
    let mut report = ConditionReport::new(format!(
        "triangular hypotheses for f={} with gamma={}, delta={}",
        f.descriptor(),
        gamma,
        delta
    ));
    for entry in regular.entries {
        report.push(entry);
    }

    let exponent = gamma + 0.5;
    for (name, cutoff_param, extra) in [
        ("tail_sum_vanishing", opts.beta, ""),
        (
            "tail_sum_at_phi_depth",
            opts.phi,
            "; companion cutoff, relation to beta left open",
        ),
    ] {
        let cutoff = (1.0 / cutoff_param).floor() as usize;
        let witnesses: Vec<(f64, f64)> = probe
            .iter()
            .map(|&n| {
                let tail = matrix
                    .tail_sum(n, cutoff.min(n))
                    .expect("cutoff clamped to row");
                (n as f64, (n.max(1) as f64).powf(exponent) * tail)
            })
            .collect();
        report.push(ConditionEntry::new(
            name,
            vanishing_verdict(&witnesses),
            witnesses,
            format!("n^{exponent:.3} times the tail sum of depth {cutoff}{extra}"),
        ));
    }

    // Local mean of |f - A| against t / (xi(1/t) log(1/t)), dyadic t.
    let mut witnesses = Vec::new();
    for j in DYADIC_LEVELS {
        let t = 0.5_f64.powi(j as i32);
        let integral = legendre_integral(1.0 - t, 1.0, |u| (f.eval(u) - point_level).abs())?;
        witnesses.push((
            j as f64,
            integral * opts.xi.eval(1.0 / t) * (1.0 / t).ln() / t,
        ));
    }
    report.push(ConditionEntry::new(
        "local_mean_rate_scaled",
        vanishing_verdict(&witnesses),
        witnesses,
        format!(
            "mean of |f - A| over [1-t, 1] scaled by xi(1/t)log(1/t)/t, xi={}, t = 2^-k",
            opts.xi.descriptor()
        ),
    ));

    // Scaled sum of tail blocks with log-damped polynomial weights.
    let block_exponent = (2.0 * gamma + 3.0) / 2.0;
    let scale_exponent = (2.0 * gamma + 1.0) / 2.0;
    let witnesses: Vec<(f64, f64)> = probe
        .iter()
        .map(|&n| {
            let mut sum = 0.0;
            for k in 2..=n {
                let depth = matrix.tail_sum(n, k).expect("depth <= row index");
                sum += depth
                    / ((k as f64).powf(block_exponent) * opts.xi.eval(k as f64) * (k as f64).ln());
            }
            (n as f64, sum * (n as f64).powf(scale_exponent))
        })
        .collect();
    report.push(ConditionEntry::new(
        "tail_block_sum_rate",
        bounded_verdict(&witnesses),
        witnesses,
        format!(
            "sum of tail sums over k^{block_exponent:.3} xi(k) log k, scaled by n^{scale_exponent:.3}"
        ),
    ));

    // Angle-variable antipole integral over [0, 1/n].
    let angle_exponent = delta - 0.5;
    if angle_exponent <= -1.0 {
        report.push(ConditionEntry::new(
            "antipole_cosine_vanishing",
            Verdict::Fails,
            vec![(angle_exponent, f64::INFINITY)],
            format!("angle weight exponent {angle_exponent:.3} <= -1 is not integrable at zero"),
        ));
    } else {
        let rule = gauss_jacobi_rule(64, &JacobiParams::new(0.0, angle_exponent)?)?;
        let witnesses: Vec<(f64, f64)> = probe
            .iter()
            .map(|&n| {
                let upper = 1.0 / n.max(1) as f64;
                let half = upper / 2.0;
                let value =
                    rule.integrate(|u| (f.eval(-(half * (1.0 + u)).cos()) - point_level).abs());
                (n as f64, half.powf(angle_exponent + 1.0) * value)
            })
            .collect();
        report.push(ConditionEntry::new(
            "antipole_cosine_vanishing",
            vanishing_verdict(&witnesses),
            witnesses,
            format!("integral of t^{angle_exponent:.3}|f(-cos t) - A| over [0, 1/n]"),
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::summation::NorlundPreset;

    const PROBE: [usize; 6] = [8, 16, 32, 64, 128, 256];

    fn basis(g: f64, d: f64) -> JacobiParams {
        JacobiParams::new(g, d).unwrap()
    }

    #[test]
    fn xi_parse_and_eval() {
        assert_eq!(XiKind::parse("one").unwrap(), XiKind::One);
        assert_eq!(XiKind::parse("log").unwrap(), XiKind::Log);
        assert_eq!(XiKind::parse("power:0.5").unwrap(), XiKind::Power(0.5));
        assert!(XiKind::parse("power:-1").is_err());
        assert!(XiKind::parse("cube").is_err());
        // clamped below their fixed points so the factor never dips under 1
        assert_eq!(XiKind::Log.eval(1.0), 1.0);
        assert_eq!(XiKind::Power(2.0).eval(0.5), 1.0);
        assert!((XiKind::Log.eval(100.0) - 100.0_f64.ln()).abs() < 1e-15);
        assert_eq!(XiKind::One.descriptor(), "one");
        assert_eq!(XiKind::Power(0.5).descriptor(), "power:0.5");
    }

    #[test]
    fn harmonic_norlund_report() {
        let weights = NorlundPreset::Harmonic.weights(257).unwrap();
        let report = norlund_hypotheses(
            &weights,
            &TargetFunction::Abs,
            &basis(0.25, 0.5),
            ANTIPOLE_SPLIT_DEFAULT,
            &PROBE,
        )
        .unwrap();
        assert_eq!(
            report.verdict("weights_nonneg_nonincreasing"),
            Some(Verdict::Holds)
        );
        assert_eq!(
            report.verdict("cumulative_weights_diverge"),
            Some(Verdict::Holds)
        );
        assert_eq!(
            report.verdict("rate_bound_unspecified"),
            Some(Verdict::Undefined)
        );
        // n^(3/4) / log n sums grow without bound, and the checker says so
        assert_eq!(
            report.verdict("inverse_weight_series_converges"),
            Some(Verdict::Fails)
        );
        assert_eq!(report.verdict("antipole_integrable"), Some(Verdict::Holds));
    }

    #[test]
    fn delta_weights_fail_divergence() {
        let weights = NorlundPreset::Delta.weights(257).unwrap();
        let report = norlund_hypotheses(
            &weights,
            &TargetFunction::One,
            &basis(0.0, 0.0),
            0.0,
            &PROBE,
        )
        .unwrap();
        assert_eq!(
            report.verdict("cumulative_weights_diverge"),
            Some(Verdict::Fails)
        );
    }

    #[test]
    fn antipole_quadrature_matches_closed_form() {
        // (1+y)^(-1/2)|y| over [-1, 0] integrates to 4/3
        let value = antipole_integral(&TargetFunction::Abs, -0.5, 0.0, 64).unwrap();
        assert!((value - 4.0 / 3.0).abs() < 1e-12, "got {value}");
    }

    #[test]
    fn non_integrable_antipole_exponent_fails() {
        // delta = -0.6 puts the weight exponent at -1.05
        let weights = NorlundPreset::Ones.weights(257).unwrap();
        let report = norlund_hypotheses(
            &weights,
            &TargetFunction::One,
            &basis(0.25, -0.6),
            0.0,
            &PROBE,
        )
        .unwrap();
        assert_eq!(report.verdict("antipole_integrable"), Some(Verdict::Fails));
    }

    #[test]
    fn gennorlund_ones_report() {
        let ones = vec![1.0; 257];
        let weights = GeneralizedNorlundWeights::new(ones.clone(), ones).unwrap();
        let report = generalized_norlund_hypotheses(
            &weights,
            &TargetFunction::Abs,
            &basis(0.0, 1.5),
            1.0,
            ANTIPOLE_SPLIT_DEFAULT,
            &PROBE,
        )
        .unwrap();
        assert_eq!(report.verdict("convolution_positive"), Some(Verdict::Holds));
        // linear convolution growth cannot keep up with the damped partial sum
        assert_eq!(
            report.verdict("convolution_partial_sum_rate"),
            Some(Verdict::Fails)
        );
        // near y = 1, |abs - 1| integrates to t^2/2, well inside t/log(1/t)
        assert_eq!(report.verdict("local_mean_rate"), Some(Verdict::Holds));
        assert_eq!(report.verdict("antipole_integrable"), Some(Verdict::Holds));
    }

    #[test]
    fn cesaro_triangle_report() {
        let matrix = TriangularMatrix::cesaro_one(257).unwrap();
        let report = triangular_hypotheses(
            &matrix,
            &TargetFunction::Abs,
            &basis(0.25, 0.5),
            1.0,
            &TriangularHypothesisOptions::default(),
            &PROBE,
        )
        .unwrap();
        // regularity entries are carried over
        assert_eq!(
            report.verdict("row_sums_approach_one"),
            Some(Verdict::Holds)
        );
        assert_eq!(
            report.verdict("entries_nondecreasing_in_k"),
            Some(Verdict::Holds)
        );
        // tail depth 1 scales like n^(gamma - 1/2) -> 0
        assert_eq!(report.verdict("tail_sum_vanishing"), Some(Verdict::Holds));
        assert_eq!(
            report.verdict("tail_sum_at_phi_depth"),
            Some(Verdict::Holds)
        );
        assert_eq!(
            report.verdict("local_mean_rate_scaled"),
            Some(Verdict::Holds)
        );
        assert_eq!(report.verdict("tail_block_sum_rate"), Some(Verdict::Holds));
        assert_eq!(
            report.verdict("antipole_cosine_vanishing"),
            Some(Verdict::Holds)
        );
    }

    #[test]
    fn triangular_cutoff_validation() {
        let matrix = TriangularMatrix::cesaro_one(64).unwrap();
        let mut opts = TriangularHypothesisOptions::default();
        opts.beta = 3.5;
        let err = triangular_hypotheses(
            &matrix,
            &TargetFunction::One,
            &basis(0.0, 0.0),
            1.0,
            &opts,
            &[8, 16, 32],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn probe_bounds_are_enforced() {
        let weights = NorlundPreset::Ones.weights(100).unwrap();
        let err = norlund_hypotheses(
            &weights,
            &TargetFunction::One,
            &basis(0.0, 0.0),
            0.0,
            &[8, 200],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }
}
