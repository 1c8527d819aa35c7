//! Condition reports: named verdicts backed by the numeric witnesses that
//! produced them.
//!
//! Asymptotic conditions can only be probed at finitely many sizes, so every
//! verdict here is a heuristic over a witness sequence, never a proof. The
//! two heuristics used throughout the crate are:
//!
//! * boundedness: flagged as failing when the ratio of the last two witnesses
//!   exceeds 1.5 (witnesses below 1e-9 are treated as zero);
//! * vanishing: holds when the last witness is below 1e-9 or has decayed to
//!   at most half of the first.

use std::fmt;

/// Absolute floor below which a witness is treated as exactly zero.
pub const WITNESS_FLOOR: f64 = 1e-9;

/// Growth factor between the last two witnesses that flags an unbounded trend.
pub const GROWTH_FLAG_RATIO: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// The condition could not be evaluated (missing input or a bound whose
    /// defining data is unavailable). Recorded, never counted as pass or fail.
    Undefined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails => write!(f, "fails"),
            Verdict::Undefined => write!(f, "unchecked"),
        }
    }
}

/// One named condition with its witness sequence.
///
/// Witness keys are probe sizes, scales, or thresholds depending on the
/// condition; the note says which.
#[derive(Debug, Clone)]
pub struct ConditionEntry {
    pub name: String,
    pub verdict: Verdict,
    pub witnesses: Vec<(f64, f64)>,
    pub note: String,
}

impl ConditionEntry {
    pub fn new(
        name: impl Into<String>,
        verdict: Verdict,
        witnesses: Vec<(f64, f64)>,
        note: impl Into<String>,
    ) -> Self {
        Self {
            name: name.into(),
            verdict,
            witnesses,
            note: note.into(),
        }
    }

    pub fn last_witness(&self) -> Option<f64> {
        self.witnesses.last().map(|&(_, w)| w)
    }

    pub fn max_witness(&self) -> Option<f64> {
        self.witnesses
            .iter()
            .map(|&(_, w)| w)
            .fold(None, |acc, w| Some(acc.map_or(w, |a: f64| a.max(w))))
    }
}

#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub subject: String,
    pub entries: Vec<ConditionEntry>,
}

impl ConditionReport {
    pub fn new(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, entry: ConditionEntry) {
        self.entries.push(entry);
    }

    pub fn entry(&self, name: &str) -> Option<&ConditionEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn verdict(&self, name: &str) -> Option<Verdict> {
        self.entry(name).map(|e| e.verdict)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "conditions for {}", self.subject)?;
        for e in &self.entries {
            write!(f, "  {:<32} {:<9}", e.name, e.verdict.to_string())?;
            if !e.witnesses.is_empty() {
                let rendered: Vec<String> = e
                    .witnesses
                    .iter()
                    .map(|(k, w)| format!("({k}, {w:.6e})"))
                    .collect();
                write!(f, " witnesses: [{}]", rendered.join(", "))?;
            }
            if !e.note.is_empty() {
                write!(f, "  # {}", e.note)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Heuristic verdict for an `O(.)`-type condition: the witness sequence must
/// not grow by more than [`GROWTH_FLAG_RATIO`] between the last two probes.
pub fn bounded_verdict(witnesses: &[(f64, f64)]) -> Verdict {
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
            if !last.is_finite() {
                return Verdict::Fails;
            }
            if last.abs() <= WITNESS_FLOOR {
                return Verdict::Holds;
            }
            if prev.abs() <= WITNESS_FLOOR {
                return Verdict::Fails;
            }
            if last.abs() > GROWTH_FLAG_RATIO * prev.abs() {
                Verdict::Fails
            } else {
                Verdict::Holds
            }
        }
    }
}

/// Heuristic verdict for an `o(.)`-type condition: the witness sequence must
/// end near zero or show clear decay from its first value.
pub fn vanishing_verdict(witnesses: &[(f64, f64)]) -> Verdict {
    match witnesses {
        [] => Verdict::Undefined,
        [(_, w)] => {
            if w.abs() <= WITNESS_FLOOR {
                Verdict::Holds
            } else {
                Verdict::Fails
            }
        }
        [(_, first), .., (_, last)] => {
            if !last.is_finite() {
                return Verdict::Fails;
            }
            if last.abs() <= WITNESS_FLOOR || last.abs() <= 0.5 * first.abs() {
                Verdict::Holds
            } else {
                Verdict::Fails
            }
        }
    }
}
