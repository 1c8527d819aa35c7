//! Convergence laboratory: parameter gates, hypothesis checkers, the Monte
//! Carlo experiment driver, and standalone probes.
//!
//! The building blocks compose in one direction: [`gate`] decides whether
//! the run sits inside a stated parameter window, [`conditions`] audits the
//! method-specific hypotheses on finite probes, and [`experiment`] draws
//! the path ensemble and reports exceedance probabilities with both
//! attached. [`probe`] holds the two standalone diagnostics.

pub mod conditions;
pub mod experiment;
pub mod gate;
pub mod probe;

pub use conditions::{
    generalized_norlund_hypotheses, norlund_hypotheses, triangular_hypotheses,
    TriangularHypothesisOptions, XiKind, ANTIPOLE_SPLIT_DEFAULT,
};
pub use experiment::{
    run_experiment, run_experiment_with_paths, wilson_interval, ConvergenceReport, EvalMode,
    ExperimentConfig, ScheduleRow, MIN_PATHS, WILSON_Z,
};
pub use gate::{parameter_gate, GateCheck, GateTag, ParameterGate};
pub use probe::{
    deterministic_convergence_probe, lemma_tail_scaling_check, MIN_TAIL_PATHS, PROBE_GRID_POINTS,
};
