//! Numerical core for weighted Jacobi expansions and their summability.
//!
//! The crate is organized around five building blocks:
//!
//! | module      | contents                                                        |
//! |-------------|-----------------------------------------------------------------|
//! | [`jacobi`]  | Jacobi weights, orthonormal polynomials, Gauss-Jacobi quadrature |
//! | [`fourier`] | target-function catalog, expansion coefficients, partial sums    |
//! | [`summation`] | triangular summability matrices, sequence means, condition checks |
//! | [`stable`]  | symmetric alpha-stable increments, paths, stochastic integrals   |
//! | [`lab`]     | parameter gates, Monte Carlo convergence experiments, probes     |
//!
//! Everything downstream (CLI, benchmarks) consumes the types re-exported
//! from the crate root.

pub mod error;
pub mod fourier;
pub mod jacobi;
pub mod lab;
pub mod report;
pub mod stable;
pub mod summation;

pub use error::{Error, Result};
pub use fourier::{ExpansionCoefficients, RandomCoefficients, Smoothness, TargetFunction};
pub use jacobi::{JacobiParams, OrthonormalBasis, QuadratureRule, WeightParams};
pub use lab::{
    deterministic_convergence_probe, generalized_norlund_hypotheses, lemma_tail_scaling_check,
    norlund_hypotheses, parameter_gate, run_experiment, run_experiment_with_paths,
    triangular_hypotheses, wilson_interval, ConvergenceReport, EvalMode, ExperimentConfig, GateTag,
    ParameterGate, ScheduleRow, TriangularHypothesisOptions, XiKind,
};
pub use report::{ConditionEntry, ConditionReport, Verdict};
pub use stable::{PathSeed, StableIndex, StablePath};
pub use summation::{
    GeneralizedNorlundWeights, Method, MethodFamily, NorlundPreset, NorlundWeights, ThetaKind,
    ThetaMatrix, TriangularMatrix,
};

/// Configures the global worker pool used by the experiment driver.
///
/// `n = 0` keeps the library default (one worker per logical CPU).
/// Calling this more than once has no effect after the pool is built.
pub fn set_thread_count(n: usize) {
    if n > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}
