//! Jacobi weights `(1-y)^a (1+y)^b` on `[-1, 1]`, the associated orthonormal
//! polynomial family, and Gauss-Jacobi quadrature.
//!
//! Polynomial values come from the classical three-term recurrence; squared
//! norms come from the Gamma-function closed form. Quadrature rules are built
//! by the Golub-Welsch method: eigenvalues of the symmetric tridiagonal
//! recurrence matrix are the nodes, squared first eigenvector components
//! scaled by the total weight mass are the weights.

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use statrs::function::gamma::ln_gamma;

const LN_2: f64 = std::f64::consts::LN_2;

/// Exponent pair of the basis weight. Both exponents must exceed -1 so the
/// weight is integrable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    gamma: f64,
    delta: f64,
}

impl JacobiParams {
    pub fn new(gamma: f64, delta: f64) -> Result<Self> {
        validate_exponent("gamma", gamma)?;
        validate_exponent("delta", delta)?;
        Ok(Self { gamma, delta })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Same exponents with the roles of the endpoints swapped.
    pub fn swapped(&self) -> Self {
        Self {
            gamma: self.delta,
            delta: self.gamma,
        }
    }

    /// Reinterprets the basis exponents as an integration weight.
    pub fn as_weight(&self) -> WeightParams {
        WeightParams {
            eta: self.gamma,
            tau: self.delta,
        }
    }
}

/// Exponent pair of an integration weight, kept as a separate type because
/// several operations pair one basis with a different weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightParams {
    eta: f64,
    tau: f64,
}

impl WeightParams {
    pub fn new(eta: f64, tau: f64) -> Result<Self> {
        validate_exponent("eta", eta)?;
        validate_exponent("tau", tau)?;
        Ok(Self { eta, tau })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// True when both exponents are nonnegative, so the weight is continuous
    /// up to the endpoints.
    pub fn is_nonnegative(&self) -> bool {
        self.eta >= 0.0 && self.tau >= 0.0
    }
}

fn validate_exponent(name: &str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= -1.0 {
        return Err(Error::InvalidParameter(format!(
            "{name} must be a finite number greater than -1, got {value}"
        )));
    }
    Ok(())
}

/// Anything that exposes a `(1-y)^a (1+y)^b` exponent pair.
pub trait WeightExponents {
    fn exponents(&self) -> (f64, f64);
}

impl WeightExponents for JacobiParams {
    fn exponents(&self) -> (f64, f64) {
        (self.gamma, self.delta)
    }
}

impl WeightExponents for WeightParams {
    fn exponents(&self) -> (f64, f64) {
        (self.eta, self.tau)
    }
}

/// Evaluates `(1-y)^a (1+y)^b` for `y` in `[-1, 1]`.
///
/// At an endpoint the IEEE conventions give exactly what the limit demands:
/// zero for a positive exponent, one for a zero exponent, and positive
/// infinity (returned as a marker, not an error) for a negative exponent.
pub fn weight_eval<W: WeightExponents>(params: &W, y: f64) -> Result<f64> {
    if !y.is_finite() || !(-1.0..=1.0).contains(&y) {
        return Err(Error::Domain(format!(
            "weight evaluation point {y} outside [-1, 1]"
        )));
    }
    let (a, b) = params.exponents();
    Ok((1.0 - y).powf(a) * (1.0 + y).powf(b))
}

/// Value of the classical degree-`n` Jacobi polynomial at `y`.
///
/// Degree one is handled by its closed form; the generic recurrence has a
/// vanishing leading coefficient there when the exponents sum to -1.
pub fn jacobi_eval(n: usize, params: &JacobiParams, y: f64) -> f64 {
    let (g, d) = (params.gamma, params.delta);
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 0.5 * ((g + d + 2.0) * y + (g - d));
    for m in 2..=n {
        let m = m as f64;
        let s = 2.0 * m + g + d;
        let lead = 2.0 * m * (m + g + d) * (s - 2.0);
        let mid = (s - 1.0) * ((s * (s - 2.0)) * y + g * g - d * d);
        let tail = 2.0 * (m + g - 1.0) * (m + d - 1.0) * s;
        let next = (mid * cur - tail * prev) / lead;
        prev = cur;
        cur = next;
    }
    cur
}

/// Squared weighted L2 norm of the classical degree-`n` Jacobi polynomial.
pub fn norm_square(n: usize, params: &JacobiParams) -> Result<f64> {
    let (g, d) = (params.gamma, params.delta);
    let log_value = if n == 0 {
        (g + d + 1.0) * LN_2 + ln_gamma(g + 1.0) + ln_gamma(d + 1.0) - ln_gamma(g + d + 2.0)
    } else {
        let nf = n as f64;
        (g + d + 1.0) * LN_2 - (2.0 * nf + g + d + 1.0).ln()
            + ln_gamma(nf + g + 1.0)
            + ln_gamma(nf + d + 1.0)
            - ln_gamma(nf + g + d + 1.0)
            - ln_gamma(nf + 1.0)
    };
    let value = log_value.exp();
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::Overflow(format!(
            "norm of degree {n} for exponents ({g}, {d}) left the representable range"
        )));
    }
    Ok(value)
}

/// Value of the orthonormal polynomial of degree `n` at `y`.
pub fn orthonormal_eval(n: usize, params: &JacobiParams, y: f64) -> Result<f64> {
    Ok(jacobi_eval(n, params, y) / norm_square(n, params)?.sqrt())
}

/// Orthonormal family with cached normalization constants, for loops that
/// evaluate many degrees at many points.
#[derive(Debug, Clone)]
pub struct OrthonormalBasis {
    params: JacobiParams,
    inv_sqrt_norms: Vec<f64>,
}

impl OrthonormalBasis {
    /// Prepares degrees `0..=max_degree`.
    pub fn new(params: JacobiParams, max_degree: usize) -> Result<Self> {
        let mut inv_sqrt_norms = Vec::with_capacity(max_degree + 1);
        for n in 0..=max_degree {
            inv_sqrt_norms.push(1.0 / norm_square(n, &params)?.sqrt());
        }
        Ok(Self {
            params,
            inv_sqrt_norms,
        })
    }

    pub fn params(&self) -> JacobiParams {
        self.params
    }

    pub fn max_degree(&self) -> usize {
        self.inv_sqrt_norms.len() - 1
    }

    pub fn eval(&self, n: usize, y: f64) -> f64 {
        assert!(n <= self.max_degree(), "degree {n} beyond prepared range");
        jacobi_eval(n, &self.params, y) * self.inv_sqrt_norms[n]
    }

    /// Values of all prepared degrees at `y`, by a single pass of the
    /// recurrence.
    pub fn eval_all(&self, y: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.inv_sqrt_norms.len()];
        self.eval_all_into(y, &mut out);
        out
    }

    pub fn eval_all_into(&self, y: f64, out: &mut [f64]) {
        let count = self.inv_sqrt_norms.len();
        assert_eq!(out.len(), count, "output slice length mismatch");
        let (g, d) = (self.params.gamma, self.params.delta);
        let mut prev = 1.0;
        out[0] = prev * self.inv_sqrt_norms[0];
        if count == 1 {
            return;
        }
        let mut cur = 0.5 * ((g + d + 2.0) * y + (g - d));
        out[1] = cur * self.inv_sqrt_norms[1];
        for m in 2..count {
            let mf = m as f64;
            let s = 2.0 * mf + g + d;
            let lead = 2.0 * mf * (mf + g + d) * (s - 2.0);
            let mid = (s - 1.0) * ((s * (s - 2.0)) * y + g * g - d * d);
            let tail = 2.0 * (mf + g - 1.0) * (mf + d - 1.0) * s;
            let next = (mid * cur - tail * prev) / lead;
            prev = cur;
            cur = next;
            out[m] = cur * self.inv_sqrt_norms[m];
        }
    }

    /// Degree-major table of values over a grid: `table[n][i]` is the
    /// degree-`n` value at `grid[i]`.
    pub fn tabulate(&self, grid: &[f64]) -> Vec<Vec<f64>> {
        let count = self.inv_sqrt_norms.len();
        let mut table = vec![vec![0.0; grid.len()]; count];
        let mut column = vec![0.0; count];
        for (i, &y) in grid.iter().enumerate() {
            self.eval_all_into(y, &mut column);
            for (n, row) in table.iter_mut().enumerate() {
                row[i] = column[n];
            }
        }
        table
    }
}

/// Gauss-Jacobi rule: integrates `f` against the basis weight with nodes
/// inside `(-1, 1)` and positive weights summing to the weight's total mass.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    params: JacobiParams,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn params(&self) -> JacobiParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Total mass of the weight, `sum_i w_i`.
    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Approximates the weighted integral of `f`; exact for polynomials of
    /// degree at most `2 len - 1`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Default rule size for expanding up to degree `max_degree`.
pub fn default_rule_size(max_degree: usize) -> usize {
    (2 * max_degree + 16).max(64)
}

/// Builds the `m`-point Gauss-Jacobi rule for the given exponents.
pub fn gauss_jacobi_rule(m: usize, params: &JacobiParams) -> Result<QuadratureRule> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "quadrature rule needs at least one node".into(),
        ));
    }
    let (g, d) = (params.gamma, params.delta);
    let mass = norm_square(0, params)?;

    let diag: Vec<f64> = (0..m)
        .map(|k| {
            if k == 0 {
                (d - g) / (g + d + 2.0)
            } else {
                let s = 2.0 * k as f64 + g + d;
                (d * d - g * g) / (s * (s + 2.0))
            }
        })
        .collect();
    // off[k-1] couples degrees k-1 and k; the k = 1 entry uses the reduced
    // form whose removable factor (1 + g + d) has been cancelled.
    let off: Vec<f64> = (1..m)
        .map(|k| {
            let kf = k as f64;
            let s = 2.0 * kf + g + d;
            let beta = if k == 1 {
                4.0 * (1.0 + g) * (1.0 + d) / ((2.0 + g + d).powi(2) * (3.0 + g + d))
            } else {
                4.0 * kf * (kf + g) * (kf + d) * (kf + g + d) / (s * s * (s + 1.0) * (s - 1.0))
            };
            beta.sqrt()
        })
        .collect();

    let (mut pairs, iterations_ok) = if m == 1 {
        (vec![(diag[0], 1.0)], true)
    } else {
        let mut j = DMatrix::<f64>::zeros(m, m);
        for (k, &a) in diag.iter().enumerate() {
            j[(k, k)] = a;
        }
        for (k, &b) in off.iter().enumerate() {
            j[(k, k + 1)] = b;
            j[(k + 1, k)] = b;
        }
        match nalgebra::SymmetricEigen::try_new(j, f64::EPSILON, 50_000) {
            Some(eigen) => {
                let pairs = (0..m)
                    .map(|col| (eigen.eigenvalues[col], eigen.eigenvectors[(0, col)].powi(2)))
                    .collect();
                (pairs, true)
            }
            None => (Vec::new(), false),
        }
    };
    if !iterations_ok {
        return Err(Error::EigenFailure(format!(
            "tridiagonal eigen iteration did not converge for a {m}-point rule"
        )));
    }

    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let nodes: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let weights: Vec<f64> = pairs.iter().map(|p| mass * p.1).collect();

    for pair in nodes.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::EigenFailure(
                "quadrature nodes are not strictly increasing".into(),
            ));
        }
    }
    if nodes.first().copied().unwrap_or(0.0) <= -1.0 || nodes.last().copied().unwrap_or(0.0) >= 1.0
    {
        return Err(Error::EigenFailure(
            "quadrature node left the open interval (-1, 1)".into(),
        ));
    }
    if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
        return Err(Error::EigenFailure("non-positive quadrature weight".into()));
    }

    Ok(QuadratureRule {
        nodes,
        weights,
        params: *params,
    })
}
