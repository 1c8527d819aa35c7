//! Parameter gates: the inequality windows on the basis and weight exponents
//! under which each convergence statement applies, plus the comparison
//! windows quoted for the deterministic series.
//!
//! A gate never stops an experiment; it is evaluated and reported so that
//! runs outside a window are clearly labeled as probes.

use crate::jacobi::{JacobiParams, WeightParams};
use std::fmt::Write as _;

/// Which inequality set to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateTag {
    /// Window tying the evaluation weight `(eta, tau)` to the basis
    /// `(gamma, delta)`; the regime of the sup-mode statements.
    SupWindow,
    /// Point-mode regime for Norlund means.
    PointNorlund,
    /// Point-mode regime for generalized Norlund means.
    PointGenNorlund,
    /// Point-mode regime for general triangular means.
    PointTriangular,
}

impl std::fmt::Display for GateTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            GateTag::SupWindow => "sup-window",
            GateTag::PointNorlund => "point-norlund",
            GateTag::PointGenNorlund => "point-gennorlund",
            GateTag::PointTriangular => "point-triangular",
        };
        f.write_str(name)
    }
}

/// One named inequality and whether the parameters satisfy it.
#[derive(Debug, Clone, PartialEq)]
pub struct GateCheck {
    pub name: String,
    pub passed: bool,
}

impl GateCheck {
    fn new(name: impl Into<String>, passed: bool) -> Self {
        Self {
            name: name.into(),
            passed,
        }
    }
}

/// Result of evaluating one gate plus the informational comparison windows.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterGate {
    pub tag: GateTag,
    pub checks: Vec<GateCheck>,
    /// Windows quoted for the deterministic series with the same methods;
    /// informational, never part of [`ParameterGate::passed`].
    pub comparison: Vec<GateCheck>,
}

impl ParameterGate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Plain-text block for the gate sidecar.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "gate {} => {}",
            self.tag,
            if self.passed() { "pass" } else { "fail" }
        );
        for c in &self.checks {
            let _ = writeln!(
                out,
                "  {} {}",
                if c.passed { "pass" } else { "fail" },
                c.name
            );
        }
        let _ = writeln!(
            out,
            "comparison windows (deterministic series, informational)"
        );
        for c in &self.comparison {
            let _ = writeln!(
                out,
                "  {} {}",
                if c.passed { "pass" } else { "fail" },
                c.name
            );
        }
        out
    }
}

/// Evaluates the inequality set named by `tag`, with every boundary exactly
/// as strict or non-strict as stated.
pub fn parameter_gate(basis: &JacobiParams, weight: &WeightParams, tag: GateTag) -> ParameterGate {
    let (g, d) = (basis.gamma(), basis.delta());
    let (eta, tau) = (weight.eta(), weight.tau());
    let checks = match tag {
        GateTag::SupWindow => vec![
            GateCheck::new("gamma >= -1/2", g >= -0.5),
            GateCheck::new("delta >= -1/2", d >= -0.5),
            GateCheck::new("eta >= 0", eta >= 0.0),
            GateCheck::new("tau >= 0", tau >= 0.0),
            GateCheck::new(
                "gamma/2 - 1/4 < eta < gamma/2 + 3/4",
                g / 2.0 - 0.25 < eta && eta < g / 2.0 + 0.75,
            ),
            GateCheck::new(
                "delta/2 - 1/4 < tau < delta/2 + 3/4",
                d / 2.0 - 0.25 < tau && tau < d / 2.0 + 0.75,
            ),
        ],
        GateTag::PointNorlund => vec![
            GateCheck::new("0 <= gamma < 1/2", (0.0..0.5).contains(&g)),
            GateCheck::new("delta >= 0", d >= 0.0),
        ],
        GateTag::PointGenNorlund => vec![
            GateCheck::new("gamma >= 0", g >= 0.0),
            GateCheck::new("delta - gamma > 1", d - g > 1.0),
            GateCheck::new("delta + gamma > 0", d + g > 0.0),
        ],
        GateTag::PointTriangular => vec![
            GateCheck::new("0 <= gamma <= 1/2", (0.0..=0.5).contains(&g)),
            GateCheck::new("delta >= 0", d >= 0.0),
        ],
    };
    let comparison = vec![
        GateCheck::new(
            "series window (norlund): -1/2 <= gamma < 1/2 and delta > -1/2",
            (-0.5..0.5).contains(&g) && d > -0.5,
        ),
        GateCheck::new(
            "series window (gennorlund): gamma >= 0 and delta - gamma > 1 and delta + gamma >= -1",
            g >= 0.0 && d - g > 1.0 && d + g >= -1.0,
        ),
        GateCheck::new(
            "series window (triangular): -1/2 <= gamma <= 1/2 and delta > -1/2",
            (-0.5..=0.5).contains(&g) && d > -0.5,
        ),
    ];
    ParameterGate {
        tag,
        checks,
        comparison,
    }
}
