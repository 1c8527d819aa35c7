//! Symmetric alpha-stable variates, sample paths on a uniform grid over
//! `[-1, 1]`, and left-endpoint stochastic integrals against those paths.
//!
//! Variates follow the Chambers-Mallows-Stuck construction under the
//! characteristic function convention `exp(-|scale * u|^alpha)`. With
//! `alpha = 2` the construction reduces exactly to a Gaussian with variance
//! `2 scale^2`; with `alpha = 1` it reduces to the Cauchy quantile transform.

use crate::error::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::fmt::Write as _;

/// Stability index, restricted to `[1, 2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableIndex(f64);

impl StableIndex {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || !(1.0..=2.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!(
                "stability index must lie in [1, 2], got {alpha}"
            )));
        }
        Ok(Self(alpha))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn is_gaussian(&self) -> bool {
        self.0 == 2.0
    }
}

/// Master seed plus a per-path stream, so ensembles draw independent paths
/// and any single path can be replayed bit for bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathSeed {
    pub master: u64,
    pub stream: u64,
}

impl PathSeed {
    pub fn new(master: u64, stream: u64) -> Self {
        Self { master, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(self.stream);
        rng
    }
}

/// One standard symmetric alpha-stable variate (unit scale).
pub fn sample_sas(alpha: StableIndex, rng: &mut impl Rng) -> f64 {
    sample_sas_scaled(alpha, 1.0, rng)
}

/// One symmetric alpha-stable variate with the given scale.
pub fn sample_sas_scaled(alpha: StableIndex, scale: f64, rng: &mut impl Rng) -> f64 {
    let a = alpha.value();
    // Clamp away from {0, 1} so logs and tangents stay finite.
    let u1: f64 = rng.random::<f64>().clamp(1e-12, 1.0 - 1e-12);
    let u2: f64 = rng.random::<f64>().clamp(1e-12, 1.0 - 1e-12);
    let v = PI * (u1 - 0.5);
    let w = -u2.ln();
    if a == 1.0 {
        return scale * v.tan();
    }
    scale
        * ((a * v).sin() / v.cos().powf(1.0 / a))
        * (((1.0 - a) * v).cos() / w).powf((1.0 - a) / a)
}

/// Sample path of the symmetric alpha-stable motion on the uniform grid
/// `t_i = -1 + 2 i / grid_steps`, pinned to zero at the left endpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct StablePath {
    alpha: StableIndex,
    values: Vec<f64>,
}

impl StablePath {
    /// Draws a fresh path with `grid_steps` increments (`grid_steps + 1`
    /// stored values). Increments are independent stable variates scaled by
    /// `dt^(1/alpha)`.
    pub fn sample(alpha: StableIndex, grid_steps: usize, seed: PathSeed) -> Result<Self> {
        if grid_steps < 2 {
            return Err(Error::InvalidParameter(format!(
                "path grid needs at least 2 steps, got {grid_steps}"
            )));
        }
        let mut rng = seed.rng();
        let dt = 2.0 / grid_steps as f64;
        let scale = dt.powf(1.0 / alpha.value());
        let mut values = Vec::with_capacity(grid_steps + 1);
        let mut x = 0.0;
        values.push(x);
        for _ in 0..grid_steps {
            x += sample_sas_scaled(alpha, scale, &mut rng);
            values.push(x);
        }
        Ok(Self { alpha, values })
    }

    /// Wraps precomputed values; the first must be zero and there must be at
    /// least two of them.
    pub fn from_values(alpha: StableIndex, values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "a path needs at least 2 values, got {}",
                values.len()
            )));
        }
        if values[0] != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "a path starts at zero, got {}",
                values[0]
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("path value is not finite".into()));
        }
        Ok(Self { alpha, values })
    }

    pub fn alpha(&self) -> StableIndex {
        self.alpha
    }

    /// Number of increments (grid cells).
    pub fn grid_steps(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Grid point `t_i = -1 + 2 i / G`.
    pub fn time(&self, i: usize) -> f64 {
        -1.0 + 2.0 * i as f64 / self.grid_steps() as f64
    }

    /// `X(1) - X(-1)`, the total increment over the interval.
    pub fn total_increment(&self) -> f64 {
        self.values[self.values.len() - 1] - self.values[0]
    }

    /// Successive differences `X(t_{i+1}) - X(t_i)`.
    pub fn increments(&self) -> Vec<f64> {
        self.values.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Restriction of the same path to every `factor`-th grid point. The
    /// coarse path visits exactly the points the fine path visits, so the two
    /// differ only by discretization, not by randomness.
    pub fn coarsen(&self, factor: usize) -> Result<Self> {
        if factor == 0 || self.grid_steps() % factor != 0 {
            return Err(Error::InvalidParameter(format!(
                "coarsening factor {factor} does not divide {} grid steps",
                self.grid_steps()
            )));
        }
        let values: Vec<f64> = self.values.iter().copied().step_by(factor).collect();
        Self::from_values(self.alpha, values)
    }

    /// Dump with one `# alpha=.. seed=.. G=..` header line and `t X(t)`
    /// pairs, suitable for plotting or replay comparison.
    pub fn dump(&self, seed: PathSeed) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# alpha={} seed={} G={}",
            self.alpha.value(),
            seed.master,
            self.grid_steps()
        );
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{:.10} {:.17e}", self.time(i), v);
        }
        out
    }
}

/// Left-endpoint stochastic integral of `g` against the path:
/// `sum_i g(t_i) (X(t_{i+1}) - X(t_i))` in ascending grid order.
pub fn stochastic_integral(g: impl Fn(f64) -> f64, path: &StablePath) -> Result<f64> {
    let steps = path.grid_steps();
    let values = path.values();
    let mut acc = 0.0;
    for i in 0..steps {
        let gi = g(path.time(i));
        if !gi.is_finite() {
            return Err(Error::NonFiniteIntegrand(format!(
                "integrand is {gi} at t = {}",
                path.time(i)
            )));
        }
        acc += gi * (values[i + 1] - values[i]);
    }
    Ok(acc)
}
