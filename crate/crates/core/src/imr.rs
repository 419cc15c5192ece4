//! Initial-message-reweighted SPA: when plain SPA misses the syndrome, rerun
//! it on priors `alpha_i * gamma_i` with fresh random `alpha_i`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spa::{spa_decode, DecodeResult, SpaConfig, TannerGraph, WeightInterval};
use crate::stabilizer::Syndrome;

pub const DEFAULT_IMR_TRIALS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImrConfig {
    pub interval: WeightInterval,
    /// Reweighted reruns after the first, unweighted pass.
    pub max_trials: usize,
    pub spa: SpaConfig,
}

impl Default for ImrConfig {
    fn default() -> Self {
        Self {
            interval: WeightInterval::new(0.5, 1.5).expect("valid default"),
            max_trials: DEFAULT_IMR_TRIALS,
            spa: SpaConfig::default(),
        }
    }
}

impl ImrConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_trials == 0 {
            return Err(Error::InvalidParameter(
                "IMR needs at least one trial".into(),
            ));
        }
        self.spa.validate()
    }
}

/// `trials_used` counts the reweighted reruns (0 when the first pass
/// already matched).
pub fn imr_spa_decode<R: Rng + ?Sized>(
    graph: &TannerGraph,
    llrs: &[f64],
    s: &Syndrome,
    cfg: &ImrConfig,
    rng: &mut R,
) -> Result<DecodeResult> {
    cfg.validate()?;
    let mut result = spa_decode(graph, llrs, s, &cfg.spa)?;
    result.trials_used = 0;
    let mut weighted = vec![0.0; llrs.len()];
    for trial in 1..=cfg.max_trials {
        if result.converged {
            break;
        }
        for (w, &gamma) in weighted.iter_mut().zip(llrs) {
            *w = cfg.interval.sample(rng) * gamma;
        }
        result = spa_decode(graph, &weighted, s, &cfg.spa)?;
        result.trials_used = trial;
    }
    Ok(result)
}
