//! Flat key=value experiment configs.
//!
//! The format is line oriented. A line is one of:
//!
//! * blank, or a comment starting with `#` (full-line comments only, so
//!   values such as file paths never need escaping);
//! * a section header `[name]`;
//! * an assignment `key = value` under the current section.
//!
//! Sections and keys, with `*` marking optional keys:
//!
//! ```text
//! [target]   f, gamma, delta, eta*, tau*          eta and tau default to 0
//! [method]   descriptor
//! [process]  alpha, grid_steps*                   grid_steps defaults to 512
//! [run]      mode, schedule, paths, epsilon, seed, point_level*
//! ```
//!
//! `schedule` is a comma-separated strictly increasing list of truncation
//! orders; `mode` is `sup` or `point`; `point_level` is the constant level
//! targeted in point mode and defaults to the target function evaluated at 1.
//! Unknown sections, unknown keys, duplicate keys, and malformed values are
//! all rejected with the offending line number.

use std::collections::BTreeMap;
use std::fmt;

use jsl_core::summation::Method;
use jsl_core::{
    EvalMode, ExperimentConfig, JacobiParams, StableIndex, TargetFunction, WeightParams,
};

/// Default path-grid resolution when `grid_steps` is omitted.
pub const DEFAULT_GRID_STEPS: usize = 512;

/// A config-file problem, with the 1-based line number when one applies.
#[derive(Debug)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

fn at(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError {
        line: Some(line),
        message: message.into(),
    }
}

fn anywhere(message: impl Into<String>) -> ConfigError {
    ConfigError {
        line: None,
        message: message.into(),
    }
}

/// Allowed keys per section; anything else is rejected.
const SCHEMA: &[(&str, &[&str])] = &[
    ("target", &["f", "gamma", "delta", "eta", "tau"]),
    ("method", &["descriptor"]),
    ("process", &["alpha", "grid_steps"]),
    (
        "run",
        &[
            "mode",
            "schedule",
            "paths",
            "epsilon",
            "seed",
            "point_level",
        ],
    ),
];

fn section_keys(section: &str) -> Option<&'static [&'static str]> {
    SCHEMA
        .iter()
        .find(|(s, _)| *s == section)
        .map(|(_, keys)| *keys)
}

/// Raw `section.key => (line, text)` table with every structural rule of the
/// format already enforced.
fn raw_table(text: &str) -> Result<BTreeMap<String, (usize, String)>, ConfigError> {
    let mut values = BTreeMap::new();
    let mut section: Option<&str> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(at(lineno, format!("unterminated section header {line:?}")));
            };
            let name = name.trim();
            let Some((canon, _)) = SCHEMA.iter().find(|(s, _)| *s == name) else {
                let known: Vec<&str> = SCHEMA.iter().map(|(s, _)| *s).collect();
                return Err(at(
                    lineno,
                    format!("unknown section {name:?}; sections: {}", known.join(", ")),
                ));
            };
            section = Some(canon);
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(at(lineno, format!("expected key = value, got {line:?}")));
        };
        let (key, value) = (key.trim(), value.trim());
        let Some(section) = section else {
            return Err(at(
                lineno,
                format!("key {key:?} appears before any [section] header"),
            ));
        };
        let allowed = section_keys(section).expect("section came from the schema");
        if !allowed.contains(&key) {
            return Err(at(
                lineno,
                format!(
                    "unknown key {key:?} in [{section}]; allowed: {}",
                    allowed.join(", ")
                ),
            ));
        }
        if value.is_empty() {
            return Err(at(lineno, format!("key {key:?} has an empty value")));
        }
        let qualified = format!("{section}.{key}");
        if let Some(&(first, _)) = values.get(&qualified).as_ref() {
            return Err(at(
                lineno,
                format!("duplicate key {qualified} (first set on line {first})"),
            ));
        }
        values.insert(qualified, (lineno, value.to_string()));
    }
    Ok(values)
}

struct Table(BTreeMap<String, (usize, String)>);

impl Table {
    fn require(&mut self, key: &str) -> Result<(usize, String), ConfigError> {
        self.0
            .remove(key)
            .ok_or_else(|| anywhere(format!("missing required key {key}")))
    }

    fn optional(&mut self, key: &str) -> Option<(usize, String)> {
        self.0.remove(key)
    }
}

fn real((line, text): (usize, String), key: &str) -> Result<f64, ConfigError> {
    text.parse::<f64>()
        .map_err(|_| at(line, format!("{key} must be a number, got {text:?}")))
}

fn count((line, text): (usize, String), key: &str) -> Result<usize, ConfigError> {
    text.parse::<usize>().map_err(|_| {
        at(
            line,
            format!("{key} must be a non-negative integer, got {text:?}"),
        )
    })
}

fn seed_value((line, text): (usize, String)) -> Result<u64, ConfigError> {
    text.parse::<u64>().map_err(|_| {
        at(
            line,
            format!("seed must be an unsigned integer, got {text:?}"),
        )
    })
}

fn schedule((line, text): (usize, String)) -> Result<Vec<usize>, ConfigError> {
    text.split(',')
        .map(|piece| {
            piece.trim().parse::<usize>().map_err(|_| {
                at(
                    line,
                    format!("schedule entries must be integers, got {:?}", piece.trim()),
                )
            })
        })
        .collect()
}

/// Parses and validates a full experiment config.
pub fn parse_experiment_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut table = Table(raw_table(text)?);

    let (f_line, f_text) = table.require("target.f")?;
    let target = TargetFunction::from_descriptor(&f_text).map_err(|e| at(f_line, e.to_string()))?;
    let gamma = real(table.require("target.gamma")?, "gamma")?;
    let delta = real(table.require("target.delta")?, "delta")?;
    let basis = JacobiParams::new(gamma, delta).map_err(|e| anywhere(e.to_string()))?;
    let eta = match table.optional("target.eta") {
        Some(entry) => real(entry, "eta")?,
        None => 0.0,
    };
    let tau = match table.optional("target.tau") {
        Some(entry) => real(entry, "tau")?,
        None => 0.0,
    };
    let weight = WeightParams::new(eta, tau).map_err(|e| anywhere(e.to_string()))?;

    let (m_line, m_text) = table.require("method.descriptor")?;
    let method = Method::parse(&m_text).map_err(|e| at(m_line, e.to_string()))?;

    let alpha_value = real(table.require("process.alpha")?, "alpha")?;
    let alpha = StableIndex::new(alpha_value).map_err(|e| anywhere(e.to_string()))?;
    let grid_steps = match table.optional("process.grid_steps") {
        Some(entry) => count(entry, "grid_steps")?,
        None => DEFAULT_GRID_STEPS,
    };

    let (mode_line, mode_text) = table.require("run.mode")?;
    let mode = EvalMode::parse(&mode_text).map_err(|e| at(mode_line, e.to_string()))?;
    let n_schedule = schedule(table.require("run.schedule")?)?;
    let paths = count(table.require("run.paths")?, "paths")?;
    let epsilon = real(table.require("run.epsilon")?, "epsilon")?;
    let seed = seed_value(table.require("run.seed")?)?;
    let point_level = match table.optional("run.point_level") {
        Some(entry) => Some(real(entry, "point_level")?),
        None => None,
    };

    let cfg = ExperimentConfig {
        target,
        basis,
        weight,
        method,
        alpha,
        n_schedule,
        paths,
        grid_steps,
        epsilon,
        mode,
        seed,
        point_level,
    };
    cfg.validate().map_err(|e| anywhere(e.to_string()))?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FULL: &str = "\
# exercise every section
[target]
f = abs
gamma = 0
delta = 0
eta = 0.25
tau = 0.25

[method]
descriptor = cesaro:phi=1

[process]
alpha = 2
grid_steps = 128

[run]
mode = sup
schedule = 8,16,32
paths = 400
epsilon = 0.1
seed = 7
";

    #[test]
    fn parses_a_full_config() {
        let cfg = parse_experiment_config(FULL).unwrap();
        assert_eq!(cfg.target.descriptor(), "abs");
        assert_eq!(cfg.method.descriptor(), "cesaro:phi=1");
        assert_eq!(cfg.n_schedule, vec![8, 16, 32]);
        assert_eq!(cfg.grid_steps, 128);
        assert_eq!(cfg.weight.eta(), 0.25);
        assert_eq!(cfg.seed, 7);
        assert!(cfg.point_level.is_none());
    }

    #[test]
    fn optional_keys_default() {
        let text = FULL
            .lines()
            .filter(|l| {
                !l.starts_with("eta") && !l.starts_with("tau") && !l.starts_with("grid_steps")
            })
            .collect::<Vec<_>>()
            .join("\n");
        let cfg = parse_experiment_config(&text).unwrap();
        assert_eq!(cfg.weight.eta(), 0.0);
        assert_eq!(cfg.weight.tau(), 0.0);
        assert_eq!(cfg.grid_steps, DEFAULT_GRID_STEPS);
    }

    #[test]
    fn point_mode_round_trips() {
        let text = FULL
            .replace(
                "descriptor = cesaro:phi=1",
                "descriptor = norlund:p=harmonic",
            )
            .replace("mode = sup", "mode = point")
            + "point_level = 1.5\n";
        let cfg = parse_experiment_config(&text).unwrap();
        assert_eq!(cfg.point_level, Some(1.5));
        assert_eq!(cfg.resolved_point_level(), 1.5);
    }

    #[test]
    fn rejects_unknown_key_with_line_number() {
        let text = FULL.replace("paths = 400", "pathz = 400");
        let err = parse_experiment_config(&text).unwrap_err();
        assert!(err.message.contains("unknown key \"pathz\""), "{err}");
        assert!(err.line.is_some(), "{err}");
    }

    #[test]
    fn rejects_unknown_section() {
        let err = parse_experiment_config("[runs]\nmode = sup\n").unwrap_err();
        assert!(err.message.contains("unknown section"), "{err}");
    }

    #[test]
    fn rejects_duplicate_and_sectionless_keys() {
        let dup = format!("{FULL}epsilon = 0.2\n");
        let err = parse_experiment_config(&dup).unwrap_err();
        assert!(err.message.contains("duplicate key run.epsilon"), "{err}");

        let err = parse_experiment_config("mode = sup\n").unwrap_err();
        assert!(err.message.contains("before any [section]"), "{err}");
    }

    #[test]
    fn rejects_malformed_values() {
        for (needle, replacement, fragment) in [
            ("alpha = 2", "alpha = two", "alpha must be a number"),
            (
                "schedule = 8,16,32",
                "schedule = 8,sixteen",
                "schedule entries",
            ),
            ("seed = 7", "seed = -7", "seed must be an unsigned integer"),
            ("f = abs", "f = absolute", "unknown target"),
        ] {
            let text = FULL.replace(needle, replacement);
            let err = parse_experiment_config(&text).unwrap_err();
            assert!(err.message.contains(fragment), "{err}");
        }
    }

    #[test]
    fn missing_key_is_reported_without_line() {
        let text = FULL.replace("epsilon = 0.1", "");
        let err = parse_experiment_config(&text).unwrap_err();
        assert_eq!(err.message, "missing required key run.epsilon");
        assert!(err.line.is_none());
    }

    #[test]
    fn core_validation_runs_last() {
        let err = parse_experiment_config(&FULL.replace("paths = 400", "paths = 10")).unwrap_err();
        assert!(err.message.contains("M >= 100 required"), "{err}");

        let mismatched = FULL.replace("mode = sup", "mode = point");
        let err = parse_experiment_config(&mismatched).unwrap_err();
        assert!(
            err.message
                .contains("point mode needs a sequence-family method"),
            "{err}"
        );
    }
}
