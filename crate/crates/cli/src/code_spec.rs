use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qdecode::stabilizer::{build_bicycle, build_toric, load_code, StabilizerCode};

use crate::error::{CliError, CliResult};

const USAGE: &str = "expected toric:L, bicycle:n,k,w,seed or file:path";

/// Where a code comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeSpec {
    Toric(usize),
    Bicycle {
        n: usize,
        k: usize,
        row_weight: usize,
        seed: u64,
    },
    File(PathBuf),
}

impl CodeSpec {
    pub fn build(&self) -> CliResult<StabilizerCode> {
        Ok(match self {
            CodeSpec::Toric(l) => build_toric(*l)?,
            CodeSpec::Bicycle {
                n,
                k,
                row_weight,
                seed,
            } => build_bicycle(*n, *k, *row_weight, *seed)?,
            CodeSpec::File(path) => load_code(path)?,
        })
    }
}

fn number<T: FromStr>(text: &str, spec: &str) -> CliResult<T> {
    text.trim().parse().map_err(|_| {
        CliError::Config(format!(
            "bad number `{text}` in code spec `{spec}`; {USAGE}"
        ))
    })
}

impl FromStr for CodeSpec {
    type Err = CliError;

    fn from_str(spec: &str) -> CliResult<Self> {
        let (kind, rest) = spec
            .split_once(':')
            .ok_or_else(|| CliError::Config(format!("bad code spec `{spec}`; {USAGE}")))?;
        match kind {
            "toric" => Ok(CodeSpec::Toric(number(rest, spec)?)),
            "bicycle" => {
                let parts: Vec<&str> = rest.split(',').collect();
                let [n, k, w, seed] = parts[..] else {
                    return Err(CliError::Config(format!(
                        "bicycle spec needs four fields n,k,w,seed, got `{rest}`"
                    )));
                };
                Ok(CodeSpec::Bicycle {
                    n: number(n, spec)?,
                    k: number(k, spec)?,
                    row_weight: number(w, spec)?,
                    seed: number(seed, spec)?,
                })
            }
            "file" if !rest.is_empty() => Ok(CodeSpec::File(PathBuf::from(rest))),
            _ => Err(CliError::Config(format!("bad code spec `{spec}`; {USAGE}"))),
        }
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSpec::Toric(l) => write!(f, "toric:{l}"),
            CodeSpec::Bicycle {
                n,
                k,
                row_weight,
                seed,
            } => write!(f, "bicycle:{n},{k},{row_weight},{seed}"),
            CodeSpec::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}
