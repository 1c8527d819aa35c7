//! Triangular Θ-matrices, the weighted sums they induce, and the structural
//! row conditions T1 through T5 with their class flags.

use crate::error::{Error, Result};
use crate::fourier::{ExpansionCoefficients, RandomCoefficients};
use crate::jacobi::OrthonormalBasis;
use crate::report::{bounded_verdict, vanishing_verdict, ConditionEntry, ConditionReport, Verdict};
use std::f64::consts::PI;

/// Entries this close to zero (relative to the row scale) count as exact
/// zeros when signs and sups of second differences are classified; rounding
/// in the row constructions leaves residue around 1e-16.
const SIGN_CLAMP: f64 = 1e-12;

/// Recipe that produced a matrix; also the text form the CLI accepts.
#[derive(Debug, Clone, PartialEq)]
pub enum ThetaKind {
    /// All weights one: the sums are the plain partial sums.
    Identity,
    /// Cesaro weights `B_{n-k-1} / B_{n-1}` of order `phi >= 0`.
    Cesaro { phi: f64 },
    /// Riesz weights `((n^nu - k^nu) / n^nu)^mu`.
    Riesz { nu: f64, mu: f64 },
    /// de la Vallee Poussin ramp: one up to `k/n = s`, then linear to zero.
    ValleePoussin { s: f64 },
    /// Rogosinski weights `cos(pi k / (2n))`.
    Rogosinski,
    /// Rows supplied directly rather than built from a recipe.
    Custom,
}

impl std::fmt::Display for ThetaKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ThetaKind::Identity => write!(f, "identity"),
            ThetaKind::Cesaro { phi } => write!(f, "cesaro:phi={phi}"),
            ThetaKind::Riesz { nu, mu } => write!(f, "riesz:nu={nu},mu={mu}"),
            ThetaKind::ValleePoussin { s } => write!(f, "vp:s={s}"),
            ThetaKind::Rogosinski => write!(f, "rogosinski"),
            ThetaKind::Custom => write!(f, "custom"),
        }
    }
}

/// Lower-triangular weight matrix: row `n` (1-based) holds
/// `θ_{0,n}..θ_{n-1,n}`, and `θ_{n,n} = 0` is implied.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaMatrix {
    rows: Vec<Vec<f64>>,
    kind: ThetaKind,
}

/// Raises to a power, keeping exponents zero and one exact so methods that
/// coincide algebraically (Riesz(1,1) and Cesaro(1)) coincide bit for bit.
fn pow_keeping_trivial_exponents(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else if e == 1.0 {
        x
    } else {
        x.powf(e)
    }
}

impl ThetaMatrix {
    /// All weights one; the induced sums are the partial sums.
    pub fn identity(n_max: usize) -> Result<Self> {
        Self::built(n_max, ThetaKind::Identity, |_, _| 1.0)
    }

    /// Cesaro weights of order `phi`: `θ_{k,n} = B_{n-k-1} / B_{n-1}` with
    /// `B_0 = 1`, `B_m = B_{m-1} (phi + m) / m`.
    pub fn cesaro(phi: f64, n_max: usize) -> Result<Self> {
        if !phi.is_finite() || phi < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "cesaro order must be a finite number >= 0, got {phi}"
            )));
        }
        require_rows(n_max)?;
        // Product recurrence instead of Gamma ratios: exact for small
        // integers and overflow-free for every row size used here.
        let mut b = vec![1.0; n_max];
        for m in 1..n_max {
            b[m] = b[m - 1] * (phi + m as f64) / m as f64;
        }
        let rows = (1..=n_max)
            .map(|n| (0..n).map(|k| b[n - k - 1] / b[n - 1]).collect())
            .collect();
        Ok(Self {
            rows,
            kind: ThetaKind::Cesaro { phi },
        })
    }

    /// Riesz weights `θ_{k,n} = ((n^nu - k^nu) / n^nu)^mu`.
    pub fn riesz(nu: f64, mu: f64, n_max: usize) -> Result<Self> {
        if !nu.is_finite() || nu < 0.0 || !mu.is_finite() || mu < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "riesz exponents must be finite numbers >= 0, got nu={nu}, mu={mu}"
            )));
        }
        Self::built(n_max, ThetaKind::Riesz { nu, mu }, |k, n| {
            let np = pow_keeping_trivial_exponents(n as f64, nu);
            let kp = pow_keeping_trivial_exponents(k as f64, nu);
            pow_keeping_trivial_exponents((np - kp) / np, mu)
        })
    }

    /// de la Vallee Poussin weights: one on the plateau `k/n <= s`, then the
    /// linear ramp `((k/n) - 1) / (s - 1)` down to zero at `k = n`. The tie
    /// `k/n = s` belongs to the plateau.
    pub fn vallee_poussin(s: f64, n_max: usize) -> Result<Self> {
        if !s.is_finite() || s <= 0.0 || s >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "vallee-poussin split must lie strictly inside (0, 1), got {s}"
            )));
        }
        Self::built(n_max, ThetaKind::ValleePoussin { s }, |k, n| {
            let ratio = k as f64 / n as f64;
            if ratio <= s {
                1.0
            } else {
                (ratio - 1.0) / (s - 1.0)
            }
        })
    }

    /// Rogosinski weights `θ_{k,n} = cos(pi k / (2n))`.
    pub fn rogosinski(n_max: usize) -> Result<Self> {
        Self::built(n_max, ThetaKind::Rogosinski, |k, n| {
            (PI * k as f64 / (2.0 * n as f64)).cos()
        })
    }

    /// Wraps explicit rows; row `n` (1-based) must have exactly `n` finite
    /// entries.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidParameter(
                "a matrix needs at least one row".into(),
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::InvalidParameter(format!(
                    "row {} must have {} entries, got {}",
                    i + 1,
                    i + 1,
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "row {} contains a non-finite entry",
                    i + 1
                )));
            }
        }
        Ok(Self {
            rows,
            kind: ThetaKind::Custom,
        })
    }

    fn built(n_max: usize, kind: ThetaKind, entry: impl Fn(usize, usize) -> f64) -> Result<Self> {
        require_rows(n_max)?;
        let rows = (1..=n_max)
            .map(|n| (0..n).map(|k| entry(k, n)).collect())
            .collect();
        Ok(Self { rows, kind })
    }

    pub fn kind(&self) -> &ThetaKind {
        &self.kind
    }

    /// Largest row size available.
    pub fn n_max(&self) -> usize {
        self.rows.len()
    }

    /// Row of size `n`, entries `θ_{0,n}..θ_{n-1,n}`.
    pub fn row(&self, n: usize) -> Result<&[f64]> {
        if n == 0 || n > self.rows.len() {
            return Err(Error::LengthMismatch(format!(
                "row {n} requested from a matrix with {} rows",
                self.rows.len()
            )));
        }
        Ok(&self.rows[n - 1])
    }

    /// `θ_{k,n}` under the convention `θ_{n,n} = 0`.
    pub fn entry(&self, k: usize, n: usize) -> Result<f64> {
        let row = self.row(n)?;
        if k == n {
            return Ok(0.0);
        }
        row.get(k).copied().ok_or_else(|| {
            Error::LengthMismatch(format!("entry ({k}, {n}) outside the triangular range"))
        })
    }

    /// Row of size `n` extended by the implied `θ_{n,n} = 0`.
    fn extended_row(&self, n: usize) -> Result<Vec<f64>> {
        let mut row = self.row(n)?.to_vec();
        row.push(0.0);
        Ok(row)
    }

    /// First differences `θ_{k+1,n} - θ_{k,n}` for `k = 0..n-1`, including
    /// the step onto the implied zero.
    pub fn first_differences(&self, n: usize) -> Result<Vec<f64>> {
        let row = self.extended_row(n)?;
        Ok(row.windows(2).map(|w| w[1] - w[0]).collect())
    }

    /// Second differences `θ_{j+2,n} - 2 θ_{j+1,n} + θ_{j,n}` for
    /// `j = 0..n-2`, on the row extended by the implied zero.
    pub fn second_differences(&self, n: usize) -> Result<Vec<f64>> {
        let row = self.extended_row(n)?;
        Ok(row.windows(3).map(|w| w[2] - 2.0 * w[1] + w[0]).collect())
    }
}

fn require_rows(n_max: usize) -> Result<()> {
    if n_max == 0 {
        return Err(Error::InvalidParameter(
            "a matrix needs at least one row".into(),
        ));
    }
    Ok(())
}

/// Weighted head sum `Σ_{k<n} θ_{k,n} values[k]`.
pub fn theta_apply(theta: &ThetaMatrix, values: &[f64], n: usize) -> Result<f64> {
    let row = theta.row(n)?;
    if values.len() < n {
        return Err(Error::LengthMismatch(format!(
            "row size {n} applied to {} values",
            values.len()
        )));
    }
    Ok(row.iter().zip(values).map(|(&t, &v)| t * v).sum())
}

/// Deterministic Θ-sum `Σ_{k<n} θ_{k,n} a_k p_k(y)`.
pub fn theta_sum(
    theta: &ThetaMatrix,
    coeffs: &ExpansionCoefficients,
    n: usize,
    y: f64,
) -> Result<f64> {
    let row = theta.row(n)?;
    if coeffs.len() < n {
        return Err(Error::LengthMismatch(format!(
            "row size {n} applied to {} coefficients",
            coeffs.len()
        )));
    }
    let basis = OrthonormalBasis::new(coeffs.params(), n - 1)?;
    let p = basis.eval_all(y);
    Ok(row
        .iter()
        .zip(coeffs.values())
        .zip(&p)
        .map(|((&t, &a), &pk)| t * a * pk)
        .sum())
}

/// Random Θ-sum `Σ_{k<n} θ_{k,n} a_k A_k p_k(y)` for one realized path.
pub fn theta_sum_random(
    theta: &ThetaMatrix,
    coeffs: &ExpansionCoefficients,
    random: &RandomCoefficients,
    n: usize,
    y: f64,
) -> Result<f64> {
    if random.basis_params() != coeffs.params() {
        return Err(Error::InvalidParameter(
            "deterministic and random coefficients use different basis parameters".into(),
        ));
    }
    let row = theta.row(n)?;
    if coeffs.len() < n || random.values().len() < n {
        return Err(Error::LengthMismatch(format!(
            "row size {n} applied to {} deterministic and {} random coefficients",
            coeffs.len(),
            random.values().len()
        )));
    }
    let basis = OrthonormalBasis::new(coeffs.params(), n - 1)?;
    let p = basis.eval_all(y);
    Ok(row
        .iter()
        .zip(coeffs.values())
        .zip(random.values())
        .zip(&p)
        .map(|(((&t, &a), &ra), &pk)| t * a * ra * pk)
        .sum())
}

fn clamped_sign(v: f64, clamp: f64) -> i8 {
    if v.abs() <= clamp {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

/// Shared sign of the nonzero entries, or `None` when signs mix.
fn row_sign(values: &[f64], clamp: f64) -> Option<i8> {
    let mut sign = 0i8;
    for &v in values {
        let s = clamped_sign(v, clamp);
        if s == 0 {
            continue;
        }
        if sign == 0 {
            sign = s;
        } else if sign != s {
            return None;
        }
    }
    Some(sign)
}

/// Evaluates the row conditions T1..T5 and the class flags over a probe set
/// of row sizes.
///
/// T1, T2, T3 are asymptotic statements; the checker records a witness per
/// probe size and applies the bounded or vanishing heuristic shared by all
/// condition reports. T4 and T5 are per-row sign statements checked exactly
/// after the zero clamp. Classes: (A) = T1 and T2 and T3, (B) = T1 and T2
/// and T4, (C) = T1 and T5.
pub fn check_theta_conditions(theta: &ThetaMatrix, n_probe: &[usize]) -> Result<ConditionReport> {
    if n_probe.is_empty() {
        return Err(Error::InvalidParameter(
            "probe set must not be empty".into(),
        ));
    }
    let mut probe: Vec<usize> = n_probe.to_vec();
    probe.sort_unstable();
    probe.dedup();
    if probe[0] == 0 {
        return Err(Error::InvalidParameter("probe sizes must be >= 1".into()));
    }
    if probe[probe.len() - 1] > theta.n_max() {
        return Err(Error::InvalidParameter(format!(
            "probe size {} exceeds the {} available rows",
            probe[probe.len() - 1],
            theta.n_max()
        )));
    }

    let fixed_k_limit = 4.min(probe[0] - 1);
    let mut t1 = Vec::new();
    let mut t2 = Vec::new();
    let mut t3 = Vec::new();
    let mut t4 = Vec::new();
    let mut t5 = Vec::new();
    for &n in &probe {
        let row = theta.row(n)?;
        let nf = n as f64;
        let scale = row.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
        let clamp = SIGN_CLAMP * scale;

        let head_err = (0..=fixed_k_limit).fold(0.0f64, |m, k| m.max((1.0 - row[k]).abs()));
        t1.push((nf, head_err));

        let last = row[n - 1];
        t2.push((nf, nf * last.abs()));

        let second = theta.second_differences(n)?;
        let clamped: Vec<f64> = second
            .iter()
            .map(|&v| if v.abs() <= clamp { 0.0 } else { v })
            .collect();
        let sup = clamped.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        t3.push((nf, nf * nf * sup));

        let sign = row_sign(&clamped, clamp);
        t4.push((nf, if sign.is_some() { 0.0 } else { 1.0 }));

        let matches = match sign {
            Some(s) => s == clamped_sign(last, clamp),
            None => false,
        };
        t5.push((nf, if matches { 0.0 } else { 1.0 }));
    }

    let exact_verdict = |witnesses: &[(f64, f64)]| {
        if witnesses.iter().all(|&(_, w)| w == 0.0) {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    };

    let mut report = ConditionReport::new(theta.kind().to_string());
    let t1_verdict = vanishing_verdict(&t1);
    report.push(ConditionEntry::new(
        "T1",
        t1_verdict,
        t1,
        format!("sup over k <= {fixed_k_limit} of |1 - entry|, per row size"),
    ));
    let t2_verdict = bounded_verdict(&t2);
    report.push(ConditionEntry::new(
        "T2",
        t2_verdict,
        t2,
        "n times |last entry| of each row",
    ));
    let t3_verdict = bounded_verdict(&t3);
    report.push(ConditionEntry::new(
        "T3",
        t3_verdict,
        t3,
        "n^2 times the sup of |second differences|",
    ));
    let t4_verdict = exact_verdict(&t4);
    report.push(ConditionEntry::new(
        "T4",
        t4_verdict,
        t4,
        "0 when second differences keep one sign in the row",
    ));
    let t5_verdict = exact_verdict(&t5);
    report.push(ConditionEntry::new(
        "T5",
        t5_verdict,
        t5,
        "0 when the second-difference sign equals the sign of the last entry",
    ));

    let class = |ok: bool| if ok { Verdict::Holds } else { Verdict::Fails };
    let (a, b, c) = (
        t1_verdict == Verdict::Holds
            && t2_verdict == Verdict::Holds
            && t3_verdict == Verdict::Holds,
        t1_verdict == Verdict::Holds
            && t2_verdict == Verdict::Holds
            && t4_verdict == Verdict::Holds,
        t1_verdict == Verdict::Holds && t5_verdict == Verdict::Holds,
    );
    report.push(ConditionEntry::new(
        "class_A",
        class(a),
        Vec::new(),
        "T1 and T2 and T3",
    ));
    report.push(ConditionEntry::new(
        "class_B",
        class(b),
        Vec::new(),
        "T1 and T2 and T4",
    ));
    report.push(ConditionEntry::new(
        "class_C",
        class(c),
        Vec::new(),
        "T1 and T5",
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::{coefficients, TargetFunction};
    use crate::jacobi::JacobiParams;
    use crate::summation::DEFAULT_PROBE;
    use approx::assert_abs_diff_eq;

    #[test]
    fn identity_rows_are_ones() {
        let m = ThetaMatrix::identity(3).unwrap();
        assert_eq!(m.row(3).unwrap(), &[1.0, 1.0, 1.0]);
        assert_eq!(m.entry(3, 3).unwrap(), 0.0);
        assert!(m.row(0).is_err());
        assert!(m.row(4).is_err());
    }

    #[test]
    fn cesaro_one_rows_are_linear() {
        let m = ThetaMatrix::cesaro(1.0, 4).unwrap();
        assert_eq!(m.row(4).unwrap(), &[1.0, 0.75, 0.5, 0.25]);
    }

    #[test]
    fn cesaro_zero_is_identity() {
        let c = ThetaMatrix::cesaro(0.0, 6).unwrap();
        let id = ThetaMatrix::identity(6).unwrap();
        for n in 1..=6 {
            assert_eq!(c.row(n).unwrap(), id.row(n).unwrap());
        }
        assert!(ThetaMatrix::cesaro(-0.5, 4).is_err());
    }

    #[test]
    fn riesz_one_one_equals_cesaro_one_bitwise() {
        let r = ThetaMatrix::riesz(1.0, 1.0, 64).unwrap();
        let c = ThetaMatrix::cesaro(1.0, 64).unwrap();
        for n in 1..=64 {
            assert_eq!(r.row(n).unwrap(), c.row(n).unwrap(), "row {n}");
        }
    }

    #[test]
    fn riesz_edges() {
        let m = ThetaMatrix::riesz(2.0, 3.0, 8).unwrap();
        assert_eq!(m.row(8).unwrap()[0], 1.0);
        let flat = ThetaMatrix::riesz(1.0, 0.0, 5).unwrap();
        assert!(flat.row(5).unwrap().iter().all(|&v| v == 1.0));
        assert!(ThetaMatrix::riesz(-1.0, 1.0, 4).is_err());
    }

    #[test]
    fn vallee_poussin_plateau_and_ramp() {
        let m = ThetaMatrix::vallee_poussin(0.5, 4).unwrap();
        let row = m.row(4).unwrap();
        assert_eq!(row[0], 1.0);
        assert_eq!(row[1], 1.0);
        // tie k/n = s stays on the plateau
        assert_eq!(row[2], 1.0);
        assert_abs_diff_eq!(row[3], 0.5, epsilon = 1e-15);
        assert!(ThetaMatrix::vallee_poussin(0.0, 4).is_err());
        assert!(ThetaMatrix::vallee_poussin(1.0, 4).is_err());
    }

    #[test]
    fn rogosinski_values() {
        let m = ThetaMatrix::rogosinski(2).unwrap();
        assert_eq!(m.row(2).unwrap()[0], 1.0);
        assert_abs_diff_eq!(
            m.row(2).unwrap()[1],
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
    }

    #[test]
    fn from_rows_validates_shape() {
        assert!(ThetaMatrix::from_rows(vec![]).is_err());
        assert!(ThetaMatrix::from_rows(vec![vec![1.0, 2.0]]).is_err());
        assert!(ThetaMatrix::from_rows(vec![vec![f64::NAN]]).is_err());
        let m = ThetaMatrix::from_rows(vec![vec![1.0], vec![1.0, 0.5]]).unwrap();
        assert_eq!(*m.kind(), ThetaKind::Custom);
    }

    #[test]
    fn differences_match_the_extended_row() {
        let m = ThetaMatrix::rogosinski(9).unwrap();
        let n = 9;
        let mut extended = m.row(n).unwrap().to_vec();
        extended.push(0.0);
        let first = m.first_differences(n).unwrap();
        assert_eq!(first.len(), n);
        for k in 0..n {
            assert_eq!(first[k], extended[k + 1] - extended[k]);
        }
        let second = m.second_differences(n).unwrap();
        assert_eq!(second.len(), n - 1);
        for j in 0..n - 1 {
            assert_eq!(
                second[j],
                extended[j + 2] - 2.0 * extended[j + 1] + extended[j]
            );
        }
    }

    #[test]
    fn theta_apply_weights_the_head() {
        let m = ThetaMatrix::cesaro(1.0, 4).unwrap();
        let values = [2.0, 4.0, 8.0, 16.0];
        let got = theta_apply(&m, &values, 4).unwrap();
        assert_abs_diff_eq!(got, 2.0 + 3.0 + 4.0 + 4.0, epsilon = 1e-12);
        assert!(theta_apply(&m, &values[..2], 4).is_err());
    }

    #[test]
    fn identity_theta_sum_is_partial_sum() {
        let params = JacobiParams::new(0.0, 0.5).unwrap();
        let coeffs = coefficients(&TargetFunction::Abs, 10, &params).unwrap();
        let theta = ThetaMatrix::identity(10).unwrap();
        for n in [1usize, 4, 9] {
            for &y in &[-0.8, 0.0, 0.55] {
                assert_abs_diff_eq!(
                    theta_sum(&theta, &coeffs, n, y).unwrap(),
                    coeffs.partial_sum(n, y).unwrap(),
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn cesaro_theta_sum_of_constant_target() {
        // Only the k = 0 term survives and its weight is one.
        let params = JacobiParams::new(0.0, 0.0).unwrap();
        let coeffs = coefficients(&TargetFunction::One, 6, &params).unwrap();
        let theta = ThetaMatrix::cesaro(1.0, 6).unwrap();
        assert_abs_diff_eq!(
            theta_sum(&theta, &coeffs, 5, 0.3).unwrap(),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn cesaro_theta_sum_is_mean_of_partial_sums() {
        let params = JacobiParams::new(0.25, -0.25).unwrap();
        let coeffs = coefficients(&TargetFunction::SqrtOneMinusY, 16, &params).unwrap();
        let theta = ThetaMatrix::cesaro(1.0, 16).unwrap();
        let y = 0.41;
        for n in [3usize, 8, 16] {
            let mean: f64 = (1..=n)
                .map(|v| coeffs.partial_sum(v, y).unwrap())
                .sum::<f64>()
                / n as f64;
            assert_abs_diff_eq!(
                theta_sum(&theta, &coeffs, n, y).unwrap(),
                mean,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn checker_classifies_cesaro_one() {
        let theta = ThetaMatrix::cesaro(1.0, 256).unwrap();
        let report = check_theta_conditions(&theta, &DEFAULT_PROBE).unwrap();
        assert_eq!(report.verdict("T1"), Some(Verdict::Holds));
        assert_eq!(report.verdict("T2"), Some(Verdict::Holds));
        assert_eq!(report.verdict("T3"), Some(Verdict::Holds));
        assert_eq!(report.verdict("T4"), Some(Verdict::Holds));
        assert_eq!(report.verdict("class_A"), Some(Verdict::Holds));
        assert_eq!(report.verdict("class_B"), Some(Verdict::Holds));
        // second differences vanish while the last entry is positive
        assert_eq!(report.verdict("T5"), Some(Verdict::Fails));
        assert_eq!(report.verdict("class_C"), Some(Verdict::Fails));
        // the clamp turns pure rounding residue into an exact zero witness
        assert_eq!(report.entry("T3").unwrap().max_witness(), Some(0.0));
    }

    #[test]
    fn checker_rejects_identity_for_t2() {
        let theta = ThetaMatrix::identity(256).unwrap();
        let report = check_theta_conditions(&theta, &DEFAULT_PROBE).unwrap();
        assert_eq!(report.verdict("T1"), Some(Verdict::Holds));
        assert_eq!(report.verdict("T2"), Some(Verdict::Fails));
        // witness is exactly n
        let witnesses = &report.entry("T2").unwrap().witnesses;
        assert!(witnesses.iter().all(|&(n, w)| w == n));
        assert_eq!(report.verdict("class_A"), Some(Verdict::Fails));
        assert_eq!(report.verdict("class_B"), Some(Verdict::Fails));
    }

    #[test]
    fn checker_bounds_rogosinski() {
        let theta = ThetaMatrix::rogosinski(256).unwrap();
        let report = check_theta_conditions(&theta, &DEFAULT_PROBE).unwrap();
        assert_eq!(report.verdict("T1"), Some(Verdict::Holds));
        assert_eq!(report.verdict("T2"), Some(Verdict::Holds));
        assert_eq!(report.verdict("T3"), Some(Verdict::Holds));
        assert_eq!(report.verdict("T4"), Some(Verdict::Holds));
        // n |last| -> pi/2, n^2 sup|second difference| -> pi^2/4
        let t2_last = report.entry("T2").unwrap().last_witness().unwrap();
        assert!((t2_last - PI / 2.0).abs() < 0.01, "T2 witness {t2_last}");
        let t3_last = report.entry("T3").unwrap().last_witness().unwrap();
        assert!(
            (t3_last - PI * PI / 4.0).abs() < 0.05,
            "T3 witness {t3_last}"
        );
        // cosine rows curve down while the last entry is positive
        assert_eq!(report.verdict("T5"), Some(Verdict::Fails));
    }

    #[test]
    fn checker_flags_vallee_poussin_second_differences() {
        let theta = ThetaMatrix::vallee_poussin(0.5, 256).unwrap();
        let report = check_theta_conditions(&theta, &DEFAULT_PROBE).unwrap();
        assert_eq!(report.verdict("T1"), Some(Verdict::Holds));
        assert_eq!(report.verdict("T2"), Some(Verdict::Holds));
        // the plateau-ramp junction contributes one O(1/n) spike
        assert_eq!(report.verdict("T3"), Some(Verdict::Fails));
        assert_eq!(report.verdict("T4"), Some(Verdict::Holds));
        assert_eq!(report.verdict("class_B"), Some(Verdict::Holds));
    }

    #[test]
    fn checker_validates_probe() {
        let theta = ThetaMatrix::identity(16).unwrap();
        assert!(check_theta_conditions(&theta, &[]).is_err());
        assert!(check_theta_conditions(&theta, &[0]).is_err());
        assert!(check_theta_conditions(&theta, &[8, 32]).is_err());
    }
}
