//! Summability methods and their structural checks.
//!
//! Two families live here. Matrix methods weight the *terms* of a series:
//! a [`ThetaMatrix`] row of size `n` holds `θ_{0,n}..θ_{n-1,n}` and the
//! convention `θ_{n,n} = 0` is implied everywhere differences are taken.
//! Sequence methods (Norlund, generalized Norlund, general lower-triangular)
//! transform *partial sums* `s_k = c_0 + ... + c_k`.
//!
//! The two indexings meet through means of partial sums: the Cesaro row of
//! size `n` applied to terms `c_0..c_{n-1}` equals the arithmetic mean of
//! `s_0..s_{n-1}`, which is the Norlund mean `h_{n-1}` for constant weights.
//! Comparisons between the families in tests and experiments always go
//! through that correspondence.

mod descriptor;
mod sequence;
mod theta;

pub use descriptor::{Method, MethodFamily};
pub use sequence::{
    generalized_norlund_means, norlund_means, silverman_toeplitz_check, triangular_means,
    GeneralizedNorlundWeights, NorlundPreset, NorlundWeights, TriangularMatrix,
};
pub use theta::{
    check_theta_conditions, theta_apply, theta_sum, theta_sum_random, ThetaKind, ThetaMatrix,
};

/// Probe sizes used by the condition checkers when the caller has no
/// preference.
pub const DEFAULT_PROBE: [usize; 6] = [8, 16, 32, 64, 128, 256];
