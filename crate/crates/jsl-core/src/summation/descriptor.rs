//! Text descriptors naming a summation method, shared by the CLI and the
//! experiment configs.
//!
//! Grammar (whitespace-insensitive around `=` and `,`):
//!
//! ```text
//! identity
//! cesaro:phi=<real >= 0>
//! riesz:nu=<real >= 0>,mu=<real >= 0>
//! vp:s=<real in (0,1)>
//! rogosinski
//! norlund:p=<ones|harmonic|delta>
//! gennorlund:q=<preset>,r=<preset>
//! matrix:file=<path to a lower-triangular text matrix>
//! ```

use super::sequence::{NorlundPreset, TriangularMatrix};
use super::theta::{ThetaKind, ThetaMatrix};
use crate::error::{Error, Result};

/// Whether a method weights series terms (Θ-matrix) or transforms partial
/// sums (sequence mean).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodFamily {
    Theta,
    Sequence,
}

impl std::fmt::Display for MethodFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MethodFamily::Theta => f.write_str("theta"),
            MethodFamily::Sequence => f.write_str("sequence"),
        }
    }
}

/// A parsed method descriptor.
#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    Theta(ThetaKind),
    Norlund(NorlundPreset),
    GenNorlund {
        q: NorlundPreset,
        r: NorlundPreset,
    },
    /// Matrix loaded from a file; the path is kept for the round-trip
    /// descriptor.
    Triangular {
        path: String,
        matrix: TriangularMatrix,
    },
}

/// Splits `key=value` with a mandated key.
fn keyed<'a>(piece: &'a str, key: &str, descriptor: &str) -> Result<&'a str> {
    let mut it = piece.splitn(2, '=');
    let (k, v) = (it.next().unwrap_or("").trim(), it.next().map(str::trim));
    match v {
        Some(v) if k == key && !v.is_empty() => Ok(v),
        _ => Err(Error::Parse(format!(
            "descriptor {descriptor:?}: expected {key}=<value>, got {piece:?}"
        ))),
    }
}

fn real(text: &str, descriptor: &str) -> Result<f64> {
    text.parse::<f64>().map_err(|_| {
        Error::Parse(format!(
            "descriptor {descriptor:?}: {text:?} is not a number"
        ))
    })
}

impl Method {
    /// Parses a descriptor; `matrix:file=...` reads the file eagerly so a
    /// bad path or malformed row surfaces here.
    pub fn parse(descriptor: &str) -> Result<Self> {
        let text = descriptor.trim();
        let (head, args) = match text.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a.trim())),
            None => (text, None),
        };
        let want_no_args = |method: Method| match args {
            None => Ok(method),
            Some(_) => Err(Error::Parse(format!(
                "descriptor {text:?}: {head} takes no parameters"
            ))),
        };
        let args_list = || -> Result<Vec<&str>> {
            args.map(|a| a.split(',').map(str::trim).collect())
                .ok_or_else(|| {
                    Error::Parse(format!("descriptor {text:?}: {head} needs parameters"))
                })
        };
        match head {
            "identity" => want_no_args(Method::Theta(ThetaKind::Identity)),
            "rogosinski" => want_no_args(Method::Theta(ThetaKind::Rogosinski)),
            "cesaro" => {
                let list = args_list()?;
                let [phi] = list.as_slice() else {
                    return Err(Error::Parse(format!(
                        "descriptor {text:?}: cesaro takes exactly phi=<value>"
                    )));
                };
                let phi = real(keyed(phi, "phi", text)?, text)?;
                Ok(Method::Theta(ThetaKind::Cesaro { phi }))
            }
            "riesz" => {
                let list = args_list()?;
                let [nu, mu] = list.as_slice() else {
                    return Err(Error::Parse(format!(
                        "descriptor {text:?}: riesz takes nu=<value>,mu=<value>"
                    )));
                };
                let nu = real(keyed(nu, "nu", text)?, text)?;
                let mu = real(keyed(mu, "mu", text)?, text)?;
                Ok(Method::Theta(ThetaKind::Riesz { nu, mu }))
            }
            "vp" => {
                let list = args_list()?;
                let [s] = list.as_slice() else {
                    return Err(Error::Parse(format!(
                        "descriptor {text:?}: vp takes exactly s=<value>"
                    )));
                };
                let s = real(keyed(s, "s", text)?, text)?;
                Ok(Method::Theta(ThetaKind::ValleePoussin { s }))
            }
            "norlund" => {
                let list = args_list()?;
                let [p] = list.as_slice() else {
                    return Err(Error::Parse(format!(
                        "descriptor {text:?}: norlund takes exactly p=<preset>"
                    )));
                };
                Ok(Method::Norlund(NorlundPreset::parse(keyed(p, "p", text)?)?))
            }
            "gennorlund" => {
                let list = args_list()?;
                let [q, r] = list.as_slice() else {
                    return Err(Error::Parse(format!(
                        "descriptor {text:?}: gennorlund takes q=<preset>,r=<preset>"
                    )));
                };
                Ok(Method::GenNorlund {
                    q: NorlundPreset::parse(keyed(q, "q", text)?)?,
                    r: NorlundPreset::parse(keyed(r, "r", text)?)?,
                })
            }
            "matrix" => {
                let list = args_list()?;
                let [file] = list.as_slice() else {
                    return Err(Error::Parse(format!(
                        "descriptor {text:?}: matrix takes exactly file=<path>"
                    )));
                };
                let path = keyed(file, "file", text)?.to_string();
                let body = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Parse(format!("matrix file {path:?}: {e}")))?;
                let matrix = TriangularMatrix::from_text(&body)
                    .map_err(|e| Error::Parse(format!("matrix file {path:?}: {e}")))?;
                Ok(Method::Triangular { path, matrix })
            }
            other => Err(Error::Parse(format!(
                "unknown method {other:?}; available: identity, cesaro:phi=, riesz:nu=,mu=, \
                 vp:s=, rogosinski, norlund:p=, gennorlund:q=,r=, matrix:file="
            ))),
        }
    }

    pub fn family(&self) -> MethodFamily {
        match self {
            Method::Theta(_) => MethodFamily::Theta,
            _ => MethodFamily::Sequence,
        }
    }

    /// Canonical text form that parses back to the same method.
    pub fn descriptor(&self) -> String {
        match self {
            Method::Theta(kind) => kind.to_string(),
            Method::Norlund(p) => format!("norlund:p={p}"),
            Method::GenNorlund { q, r } => format!("gennorlund:q={q},r={r}"),
            Method::Triangular { path, .. } => format!("matrix:file={path}"),
        }
    }

    /// Builds the Θ rows up to `n_max` for matrix-family methods.
    pub fn theta_matrix(&self, n_max: usize) -> Result<ThetaMatrix> {
        let Method::Theta(kind) = self else {
            return Err(Error::InvalidParameter(format!(
                "{} is a sequence method, not a matrix of term weights",
                self.descriptor()
            )));
        };
        match *kind {
            ThetaKind::Identity => ThetaMatrix::identity(n_max),
            ThetaKind::Cesaro { phi } => ThetaMatrix::cesaro(phi, n_max),
            ThetaKind::Riesz { nu, mu } => ThetaMatrix::riesz(nu, mu, n_max),
            ThetaKind::ValleePoussin { s } => ThetaMatrix::vallee_poussin(s, n_max),
            ThetaKind::Rogosinski => ThetaMatrix::rogosinski(n_max),
            ThetaKind::Custom => Err(Error::InvalidParameter(
                "custom matrices carry no construction recipe".into(),
            )),
        }
    }
}
