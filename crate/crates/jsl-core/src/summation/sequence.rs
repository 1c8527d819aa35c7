//! Sequence-to-sequence means: Norlund, generalized Norlund, and general
//! lower-triangular methods, plus the Silverman-Toeplitz regularity check.
//!
//! All three consume partial sums `s_k = c_0 + ... + c_k` (inclusive
//! indexing); see the module docs one level up for how that meshes with the
//! Θ-matrix convention.

use crate::error::{Error, Result};
use crate::report::{bounded_verdict, vanishing_verdict, ConditionEntry, ConditionReport, Verdict};

/// Named weight sequences accepted by the `norlund:` and `gennorlund:`
/// descriptors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NorlundPreset {
    /// `p_n = 1`: the means collapse to arithmetic means of partial sums.
    Ones,
    /// `p_n = 1/(n+1)`: non-negative, non-increasing, divergent cumulative.
    Harmonic,
    /// `p = (1, 0, 0, ...)`: the means return the partial sums unchanged.
    Delta,
}

impl NorlundPreset {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "ones" => Ok(Self::Ones),
            "harmonic" => Ok(Self::Harmonic),
            "delta" => Ok(Self::Delta),
            other => Err(Error::Parse(format!(
                "unknown weight preset {other:?}; available: ones, harmonic, delta"
            ))),
        }
    }

    pub fn weights(&self, len: usize) -> Result<NorlundWeights> {
        let p: Vec<f64> = match self {
            Self::Ones => vec![1.0; len],
            Self::Harmonic => (0..len).map(|n| 1.0 / (n as f64 + 1.0)).collect(),
            Self::Delta => {
                let mut p = vec![0.0; len];
                if let Some(first) = p.first_mut() {
                    *first = 1.0;
                }
                p
            }
        };
        NorlundWeights::new(p)
    }
}

impl std::fmt::Display for NorlundPreset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Self::Ones => "ones",
            Self::Harmonic => "harmonic",
            Self::Delta => "delta",
        };
        f.write_str(name)
    }
}

/// Weight sequence `p_0..p_N` with its running totals `P_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct NorlundWeights {
    p: Vec<f64>,
    cumulative: Vec<f64>,
}

impl NorlundWeights {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidParameter(
                "weight sequence must not be empty".into(),
            ));
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "weight sequence has a non-finite entry".into(),
            ));
        }
        let mut cumulative = Vec::with_capacity(p.len());
        let mut total = 0.0;
        for (n, &w) in p.iter().enumerate() {
            total += w;
            if total == 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "cumulative weight P_{n} is zero"
                )));
            }
            cumulative.push(total);
        }
        Ok(Self { p, cumulative })
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Exact comparison check of the hypothesis `p_0 >= p_1 >= ... >= 0`.
    pub fn is_nonneg_nonincreasing(&self) -> bool {
        self.p.iter().all(|&v| v >= 0.0) && self.p.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Norlund means `h_n = (1/P_n) Σ_{v<=n} p_{n-v} s_v` of the partial sums.
pub fn norlund_means(weights: &NorlundWeights, s: &[f64]) -> Result<Vec<f64>> {
    if weights.len() < s.len() {
        return Err(Error::LengthMismatch(format!(
            "{} weights cannot transform {} partial sums",
            weights.len(),
            s.len()
        )));
    }
    let p = weights.p();
    Ok(s.iter()
        .enumerate()
        .map(|(n, _)| {
            let acc: f64 = (0..=n).map(|v| p[n - v] * s[v]).sum();
            acc / weights.cumulative()[n]
        })
        .collect())
}

/// Two weight sequences and their convolution `(q*r)_n = Σ q_{n-k} r_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedNorlundWeights {
    q: Vec<f64>,
    r: Vec<f64>,
    convolution: Vec<f64>,
}

impl GeneralizedNorlundWeights {
    pub fn new(q: Vec<f64>, r: Vec<f64>) -> Result<Self> {
        if q.is_empty() || q.len() != r.len() {
            return Err(Error::InvalidParameter(format!(
                "weight sequences must be non-empty and equally long, got {} and {}",
                q.len(),
                r.len()
            )));
        }
        if q.iter().chain(&r).any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidParameter(
                "weight sequences must be finite and non-negative".into(),
            ));
        }
        let convolution: Vec<f64> = (0..q.len())
            .map(|n| (0..=n).map(|k| q[n - k] * r[k]).sum())
            .collect();
        Ok(Self { q, r, convolution })
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn convolution(&self) -> &[f64] {
        &self.convolution
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }
}

/// Generalized Norlund means `t_n = (1/(q*r)_n) Σ_{k<=n} q_{n-k} r_k s_k`.
pub fn generalized_norlund_means(
    weights: &GeneralizedNorlundWeights,
    s: &[f64],
) -> Result<Vec<f64>> {
    if weights.len() < s.len() {
        return Err(Error::LengthMismatch(format!(
            "{} weights cannot transform {} partial sums",
            weights.len(),
            s.len()
        )));
    }
    let (q, r) = (weights.q(), weights.r());
    s.iter()
        .enumerate()
        .map(|(n, _)| {
            let denom = weights.convolution()[n];
            if denom == 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "convolution weight (q*r)_{n} is zero"
                )));
            }
            let acc: f64 = (0..=n).map(|k| q[n - k] * r[k] * s[k]).sum();
            Ok(acc / denom)
        })
        .collect()
}

/// General lower-triangular method: row `n` (0-based) holds `b_{n,0}..b_{n,n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularMatrix {
    rows: Vec<Vec<f64>>,
}

impl TriangularMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidParameter(
                "a matrix needs at least one row".into(),
            ));
        }
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::InvalidParameter(format!(
                    "row {n} must have {} entries, got {}",
                    n + 1,
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "row {n} has a non-finite entry"
                )));
            }
        }
        Ok(Self { rows })
    }

    /// The arithmetic-mean matrix `b_{n,k} = 1/(n+1)`.
    pub fn cesaro_one(len: usize) -> Result<Self> {
        Self::from_rows(
            (0..len)
                .map(|n| vec![1.0 / (n as f64 + 1.0); n + 1])
                .collect(),
        )
    }

    /// `b_{n,n} = 1`, all other entries zero: the means are the partial sums.
    pub fn identity(len: usize) -> Result<Self> {
        Self::from_rows(
            (0..len)
                .map(|n| {
                    let mut row = vec![0.0; n + 1];
                    row[n] = 1.0;
                    row
                })
                .collect(),
        )
    }

    /// Parses a plain-text matrix: one row per line, whitespace-separated
    /// decimals, `#` opens a comment, blank lines skipped. Row `n` of the
    /// file must carry `n+1` entries.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let entries: Result<Vec<f64>> = line
                .split_whitespace()
                .map(|piece| {
                    piece.parse::<f64>().map_err(|_| {
                        Error::Parse(format!("line {}: bad entry {piece:?}", lineno + 1))
                    })
                })
                .collect();
            let entries = entries?;
            let expected = rows.len() + 1;
            if entries.len() != expected {
                return Err(Error::Parse(format!(
                    "line {}: expected {expected} entries, got {}",
                    lineno + 1,
                    entries.len()
                )));
            }
            rows.push(entries);
        }
        Self::from_rows(rows)
    }

    /// Number of stored rows; usable indexes are `0..len`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, n: usize) -> Result<&[f64]> {
        self.rows.get(n).map(|r| r.as_slice()).ok_or_else(|| {
            Error::LengthMismatch(format!(
                "row {n} requested from a matrix with {} rows",
                self.rows.len()
            ))
        })
    }

    /// Tail sum `D_{n,tau} = Σ_{k=n-tau}^{n} b_{n,k}`.
    pub fn tail_sum(&self, n: usize, tau: usize) -> Result<f64> {
        let row = self.row(n)?;
        if tau > n {
            return Err(Error::InvalidParameter(format!(
                "tail depth {tau} exceeds row index {n}"
            )));
        }
        Ok(row[n - tau..=n].iter().sum())
    }
}

/// Means `t_n = Σ_{k<=n} b_{n,k} s_k`.
pub fn triangular_means(matrix: &TriangularMatrix, s: &[f64]) -> Result<Vec<f64>> {
    if matrix.len() < s.len() {
        return Err(Error::LengthMismatch(format!(
            "{} rows cannot transform {} partial sums",
            matrix.len(),
            s.len()
        )));
    }
    Ok(s.iter()
        .enumerate()
        .map(|(n, _)| {
            let row = &matrix.rows[n];
            row.iter().zip(s).map(|(&b, &sv)| b * sv).sum()
        })
        .collect())
}

/// Regularity (Silverman-Toeplitz) and structural checks on a triangular
/// matrix over a probe set of row indexes.
pub fn silverman_toeplitz_check(
    matrix: &TriangularMatrix,
    n_probe: &[usize],
) -> Result<ConditionReport> {
    if n_probe.is_empty() {
        return Err(Error::InvalidParameter(
            "probe set must not be empty".into(),
        ));
    }
    let mut probe: Vec<usize> = n_probe.to_vec();
    probe.sort_unstable();
    probe.dedup();
    if probe[probe.len() - 1] >= matrix.len() {
        return Err(Error::InvalidParameter(format!(
            "probe row {} exceeds the {} available rows",
            probe[probe.len() - 1],
            matrix.len()
        )));
    }

    let fixed_k_limit = 4.min(probe[0]);
    let mut row_sums = Vec::new();
    let mut abs_sums = Vec::new();
    let mut columns = Vec::new();
    let mut positivity = Vec::new();
    let mut monotone = Vec::new();
    let mut full_tail = Vec::new();
    for &n in &probe {
        let row = matrix.row(n)?;
        let nf = n as f64;
        let sum: f64 = row.iter().sum();
        row_sums.push((nf, (sum - 1.0).abs()));
        abs_sums.push((nf, row.iter().map(|v| v.abs()).sum()));
        let head = row[..=fixed_k_limit]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        columns.push((nf, head));
        let min_entry = row.iter().fold(f64::INFINITY, |m, &v| m.min(v));
        positivity.push((nf, min_entry));
        let worst_drop =
            row.windows(2).fold(
                0.0f64,
                |m, w| if w[1] < w[0] { m.max(w[0] - w[1]) } else { m },
            );
        monotone.push((nf, worst_drop));
        full_tail.push((nf, (matrix.tail_sum(n, n)? - 1.0).abs()));
    }

    let mut report = ConditionReport::new("triangular matrix");
    report.push(ConditionEntry::new(
        "row_sums_approach_one",
        vanishing_verdict(&row_sums),
        row_sums,
        "|row sum - 1| per probe row",
    ));
    let m_witness = abs_sums.iter().map(|&(_, w)| w).fold(0.0f64, f64::max);
    report.push(ConditionEntry::new(
        "absolute_row_sums_bounded",
        bounded_verdict(&abs_sums),
        abs_sums,
        format!("sum of |entries| per row; M = {m_witness:.6}"),
    ));
    report.push(ConditionEntry::new(
        "columns_vanish",
        vanishing_verdict(&columns),
        columns,
        format!("sup over k <= {fixed_k_limit} of |entry|, per probe row"),
    ));
    let positive = positivity.iter().all(|&(_, w)| w > 0.0);
    report.push(ConditionEntry::new(
        "entries_positive",
        if positive {
            Verdict::Holds
        } else {
            Verdict::Fails
        },
        positivity,
        "smallest entry per probe row",
    ));
    let nondecreasing = monotone.iter().all(|&(_, w)| w == 0.0);
    report.push(ConditionEntry::new(
        "entries_nondecreasing_in_k",
        if nondecreasing {
            Verdict::Holds
        } else {
            Verdict::Fails
        },
        monotone,
        "largest decrease between adjacent entries (0 = monotone)",
    ));
    let full = full_tail.iter().all(|&(_, w)| w <= 1e-9);
    report.push(ConditionEntry::new(
        "full_tail_sum_one",
        if full { Verdict::Holds } else { Verdict::Fails },
        full_tail,
        "|D_{n,n} - 1| per probe row",
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn geometric_partial_sums(len: usize) -> Vec<f64> {
        // s_k for the series 1 + 1/2 + 1/4 + ...
        (0..len).map(|k| 2.0 - 0.5f64.powi(k as i32)).collect()
    }

    #[test]
    fn preset_construction() {
        let ones = NorlundPreset::Ones.weights(4).unwrap();
        assert_eq!(ones.cumulative(), &[1.0, 2.0, 3.0, 4.0]);
        let harmonic = NorlundPreset::Harmonic.weights(3).unwrap();
        assert_eq!(harmonic.p(), &[1.0, 0.5, 1.0 / 3.0]);
        assert!(harmonic.is_nonneg_nonincreasing());
        let delta = NorlundPreset::Delta.weights(3).unwrap();
        assert_eq!(delta.p(), &[1.0, 0.0, 0.0]);
        assert!(NorlundPreset::parse("fejer").is_err());
        assert_eq!(
            NorlundPreset::parse(" harmonic ").unwrap(),
            NorlundPreset::Harmonic
        );
    }

    #[test]
    fn weights_reject_zero_cumulative() {
        assert!(NorlundWeights::new(vec![]).is_err());
        assert!(NorlundWeights::new(vec![0.0, 1.0]).is_err());
        assert!(NorlundWeights::new(vec![1.0, -1.0]).is_err());
        assert!(NorlundWeights::new(vec![1.0, f64::INFINITY]).is_err());
        assert!(NorlundWeights::new(vec![1.0, -0.5]).is_ok());
    }

    #[test]
    fn monotonicity_check_is_exact() {
        let w = NorlundWeights::new(vec![1.0, 1.0, 1.0 - 1e-16]).unwrap();
        assert!(w.is_nonneg_nonincreasing());
        let v = NorlundWeights::new(vec![1.0, 1.0 + 1e-15]).unwrap();
        assert!(!v.is_nonneg_nonincreasing());
    }

    #[test]
    fn delta_weights_reproduce_partial_sums() {
        let s = geometric_partial_sums(12);
        let w = NorlundPreset::Delta.weights(12).unwrap();
        let h = norlund_means(&w, &s).unwrap();
        for (got, want) in h.iter().zip(&s) {
            assert_abs_diff_eq!(got, want, epsilon = 0.0);
        }
    }

    #[test]
    fn ones_weights_give_arithmetic_means() {
        let s = geometric_partial_sums(10);
        let w = NorlundPreset::Ones.weights(10).unwrap();
        let h = norlund_means(&w, &s).unwrap();
        for (n, &hn) in h.iter().enumerate() {
            let mean: f64 = s[..=n].iter().sum::<f64>() / (n as f64 + 1.0);
            assert_abs_diff_eq!(hn, mean, epsilon = 1e-12);
        }
    }

    #[test]
    fn constant_sequences_are_fixed_points() {
        let s = vec![4.25; 20];
        let w = NorlundPreset::Harmonic.weights(20).unwrap();
        for hn in norlund_means(&w, &s).unwrap() {
            assert_abs_diff_eq!(hn, 4.25, epsilon = 1e-12);
        }
        let g = GeneralizedNorlundWeights::new(vec![1.0; 20], vec![0.5; 20]).unwrap();
        for tn in generalized_norlund_means(&g, &s).unwrap() {
            assert_abs_diff_eq!(tn, 4.25, epsilon = 1e-12);
        }
        let m = TriangularMatrix::cesaro_one(20).unwrap();
        for tn in triangular_means(&m, &s).unwrap() {
            assert_abs_diff_eq!(tn, 4.25, epsilon = 1e-12);
        }
    }

    #[test]
    fn generalized_weights_validate() {
        assert!(GeneralizedNorlundWeights::new(vec![], vec![]).is_err());
        assert!(GeneralizedNorlundWeights::new(vec![1.0], vec![1.0, 1.0]).is_err());
        assert!(GeneralizedNorlundWeights::new(vec![-1.0], vec![1.0]).is_err());
        let g = GeneralizedNorlundWeights::new(vec![1.0; 5], vec![1.0; 5]).unwrap();
        assert_eq!(g.convolution(), &[1.0, 2.0, 3.0, 4.0, 5.0]);
    }

    #[test]
    fn zero_convolution_is_rejected_at_use() {
        let g = GeneralizedNorlundWeights::new(vec![0.0, 1.0, 0.0], vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(g.convolution()[0], 0.0);
        let s = vec![1.0, 1.0, 1.0];
        assert!(generalized_norlund_means(&g, &s).is_err());
    }

    #[test]
    fn generalized_collapses_to_norlund_when_r_is_flat() {
        let s = geometric_partial_sums(16);
        let q: Vec<f64> = (0..16).map(|n| 1.0 / (n as f64 + 1.0)).collect();
        let g = GeneralizedNorlundWeights::new(q.clone(), vec![1.0; 16]).unwrap();
        let w = NorlundWeights::new(q).unwrap();
        let lhs = generalized_norlund_means(&g, &s).unwrap();
        let rhs = norlund_means(&w, &s).unwrap();
        for (a, b) in lhs.iter().zip(&rhs) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn triangular_identity_and_shape() {
        let m = TriangularMatrix::identity(6).unwrap();
        let s = geometric_partial_sums(6);
        assert_eq!(triangular_means(&m, &s).unwrap(), s);
        assert!(TriangularMatrix::from_rows(vec![vec![1.0, 0.0]]).is_err());
        assert!(TriangularMatrix::from_rows(vec![vec![f64::NAN]]).is_err());
    }

    #[test]
    fn text_parsing_reports_line_numbers() {
        let m = TriangularMatrix::from_text("1\n0.5 0.5  # mean\n\n0.2 0.3 0.5\n").unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m.row(1).unwrap(), &[0.5, 0.5]);
        let bad_shape = TriangularMatrix::from_text("1\n0.5\n");
        assert!(matches!(bad_shape, Err(Error::Parse(msg)) if msg.starts_with("line 2:")));
        let bad_entry = TriangularMatrix::from_text("1\n0.5 x\n");
        assert!(matches!(bad_entry, Err(Error::Parse(msg)) if msg.contains("line 2")));
    }

    #[test]
    fn tail_sums() {
        let m = TriangularMatrix::cesaro_one(5).unwrap();
        assert_abs_diff_eq!(m.tail_sum(4, 1).unwrap(), 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(m.tail_sum(4, 4).unwrap(), 1.0, epsilon = 1e-12);
        assert!(m.tail_sum(4, 5).is_err());
        assert!(m.tail_sum(5, 0).is_err());
    }

    #[test]
    fn toeplitz_check_accepts_the_mean_matrix() {
        let m = TriangularMatrix::cesaro_one(257).unwrap();
        let report = silverman_toeplitz_check(&m, &[8, 16, 32, 64, 128, 256]).unwrap();
        for name in [
            "row_sums_approach_one",
            "absolute_row_sums_bounded",
            "columns_vanish",
            "entries_positive",
            "entries_nondecreasing_in_k",
            "full_tail_sum_one",
        ] {
            assert_eq!(report.verdict(name), Some(Verdict::Holds), "{name}");
        }
        let m_witness = report
            .entry("absolute_row_sums_bounded")
            .unwrap()
            .max_witness()
            .unwrap();
        assert!((m_witness - 1.0).abs() < 1e-9, "M witness {m_witness}");
    }

    #[test]
    fn toeplitz_check_flags_alternating_rows() {
        let rows: Vec<Vec<f64>> = (0..65)
            .map(|n| {
                (0..=n)
                    .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 })
                    .collect()
            })
            .collect();
        let m = TriangularMatrix::from_rows(rows).unwrap();
        // odd rows have as many -1s as 1s, so the row sums sit at 0, not 1
        let report = silverman_toeplitz_check(&m, &[7, 15, 31, 63]).unwrap();
        assert_eq!(report.verdict("entries_positive"), Some(Verdict::Fails));
        assert_eq!(
            report.verdict("absolute_row_sums_bounded"),
            Some(Verdict::Fails)
        );
        assert_eq!(
            report.verdict("row_sums_approach_one"),
            Some(Verdict::Fails)
        );
    }

    #[test]
    fn toeplitz_check_validates_probe() {
        let m = TriangularMatrix::cesaro_one(10).unwrap();
        assert!(silverman_toeplitz_check(&m, &[]).is_err());
        assert!(silverman_toeplitz_check(&m, &[10]).is_err());
    }
}
