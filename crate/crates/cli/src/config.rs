use serde::Serialize;
use sha2::{Digest, Sha256};

use qdecode::decoder::{DecoderKind, DecoderParams};
use qdecode::imr::ImrConfig;
use qdecode::oracle::ProbabilityModel;
use qdecode::spa::{SpaConfig, WeightInterval};

use crate::args::{CommonArgs, Format};
use crate::code_spec::CodeSpec;
use crate::error::{CliError, CliResult};

/// Fully resolved settings of one invocation. Its JSON form heads every
/// output file and its SHA-256 is the `config_hash` column.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub version: &'static str,
    pub command: &'static str,
    pub code: String,
    pub decoders: Vec<DecoderKind>,
    pub p: Vec<f64>,
    pub seed: u64,
    pub max_iters: usize,
    pub damping: f64,
    pub imr_trials: usize,
    pub imr_range: (f64, f64),
    pub rr_range: (f64, f64),
    pub rr_trials: usize,
    pub ml_weight_cap: usize,
    pub ml_model: ProbabilityModel,
    pub budget: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_model: Option<qdecode::oracle::WeightModel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_weight: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub syndrome: Option<Vec<usize>>,
}

pub fn parse_decoders(names: &[String]) -> CliResult<Vec<DecoderKind>> {
    names
        .iter()
        .map(|name| {
            name.trim().parse().map_err(|_| {
                let known: Vec<&str> = DecoderKind::ALL.iter().map(|k| k.as_str()).collect();
                CliError::Config(format!(
                    "unknown decoder `{name}`; expected one of {}",
                    known.join(", ")
                ))
            })
        })
        .collect()
}

impl RunConfig {
    pub fn new(
        command: &'static str,
        code: &CodeSpec,
        decoders: Vec<DecoderKind>,
        common: &CommonArgs,
    ) -> CliResult<Self> {
        let default_p = if command == "verify" { 1e-3 } else { 0.01 };
        let p = common.p.clone().unwrap_or_else(|| vec![default_p]);
        if p.is_empty() {
            return Err(CliError::Config("--p needs at least one value".into()));
        }
        let cfg = Self {
            version: env!("CARGO_PKG_VERSION"),
            command,
            code: code.to_string(),
            decoders,
            p,
            seed: common.seed,
            max_iters: common.max_iters,
            damping: common.damping,
            imr_trials: common.imr_trials,
            imr_range: common.imr_range,
            rr_range: common.rr_range,
            rr_trials: common.rr_trials,
            ml_weight_cap: common.ml_weight_cap,
            ml_model: common.ml_model.into(),
            budget: common.budget.to_string(),
            trials: None,
            weight: None,
            weight_model: None,
            max_weight: None,
            error: None,
            syndrome: None,
        };
        // surface bad ranges and probabilities before any work starts
        for &p in &cfg.p {
            cfg.params(p)?;
        }
        Ok(cfg)
    }

    pub fn params(&self, p: f64) -> CliResult<DecoderParams> {
        if !(p > 0.0 && p < 1.0) {
            return Err(CliError::Config(format!("p must lie in (0, 1), got {p}")));
        }
        let interval = |(a, b): (f64, f64), what: &str| {
            WeightInterval::new(a, b).map_err(|e| CliError::Config(format!("{what}: {e}")))
        };
        let spa = SpaConfig {
            max_iters: self.max_iters,
            damping: self.damping,
        };
        spa.validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        let rr_interval = interval(self.rr_range, "--rr-range")?;
        if rr_interval.lo() <= 0.0 {
            return Err(CliError::Config(
                "--rr-range must be strictly positive".into(),
            ));
        }
        let imr = ImrConfig {
            interval: interval(self.imr_range, "--imr-range")?,
            max_trials: self.imr_trials,
            spa,
        };
        imr.validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(DecoderParams {
            p,
            spa,
            imr,
            rr_interval,
            rr_trials: self.rr_trials,
            ml_weight_cap: self.ml_weight_cap,
            ml_model: self.ml_model,
            budget: self.budget.parse().expect("formatted from u128"),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn hash(&self) -> String {
        format!("{:x}", Sha256::digest(self.to_json().as_bytes()))
    }
}

/// `--json` wins over `--format`; otherwise the command's default.
pub fn resolve_format(common: &CommonArgs, default: Format) -> Format {
    if common.json {
        Format::Json
    } else {
        common.format.unwrap_or(default)
    }
}
