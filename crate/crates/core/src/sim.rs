//! Seeded Monte Carlo estimation of word error rates.
//!
//! Trial `i` draws from stream `i` of a ChaCha8 generator seeded with the
//! master seed. The error is drawn before the decoder touches the stream,
//! so two decoders run with the same master seed see the same errors.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::ChannelModel;
use crate::decoder::{Decoder, DecoderKind};
use crate::error::{Error, Result};
use crate::spa::DecodeStatus;
use crate::stabilizer::CosetClass;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959963984540054;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub error_weight: usize,
    pub status: CosetClass,
    pub decode_status: DecodeStatus,
    pub iterations: usize,
    pub trials_used: usize,
    pub decoder: DecoderKind,
}

impl TrialRecord {
    pub fn failed(&self) -> bool {
        self.status != CosetClass::SameCosetOfB
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WerStats {
    pub trials: u64,
    pub failures: u64,
    pub wer: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
    /// Error weight of failing trials -> count.
    pub failure_weight_histogram: BTreeMap<usize, u64>,
    pub min_failure_weight: Option<usize>,
    pub mean_failure_weight: Option<f64>,
}

impl WerStats {
    pub fn from_records(records: &[TrialRecord]) -> Self {
        let trials = records.len() as u64;
        let failures = records.iter().filter(|r| r.failed()).count() as u64;
        let (wilson_lo, wilson_hi) = wilson_interval(failures, trials);
        let weights = failure_weight_stats(records).ok();
        Self {
            trials,
            failures,
            wer: if trials == 0 {
                0.0
            } else {
                failures as f64 / trials as f64
            },
            wilson_lo,
            wilson_hi,
            failure_weight_histogram: weights
                .as_ref()
                .map(|w| w.histogram.clone())
                .unwrap_or_default(),
            min_failure_weight: weights.as_ref().map(|w| w.min),
            mean_failure_weight: weights.as_ref().map(|w| w.mean),
        }
    }

    /// True when the two 95% intervals are disjoint.
    pub fn separated_from(&self, other: &WerStats) -> bool {
        self.wilson_hi < other.wilson_lo || other.wilson_hi < self.wilson_lo
    }
}

/// Wilson score interval at 95% confidence; `(0, 1)` for zero trials.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = p + z2 / (2.0 * n);
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    // the bounds are exact at the ends; the formula leaves rounding noise
    let lo = if successes == 0 {
        0.0
    } else {
        ((centre - half) / denom).max(0.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        ((centre + half) / denom).min(1.0)
    };
    (lo, hi)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureWeights {
    pub min: usize,
    pub mean: f64,
    pub histogram: BTreeMap<usize, u64>,
}

/// Error-weight statistics over the failing records.
pub fn failure_weight_stats(records: &[TrialRecord]) -> Result<FailureWeights> {
    let mut histogram = BTreeMap::new();
    let mut total = 0usize;
    let mut count = 0u64;
    for r in records.iter().filter(|r| r.failed()) {
        *histogram.entry(r.error_weight).or_insert(0) += 1;
        total += r.error_weight;
        count += 1;
    }
    let min = *histogram.keys().next().ok_or(Error::NoFailures)?;
    Ok(FailureWeights {
        min,
        mean: total as f64 / count as f64,
        histogram,
    })
}

/// One record per trial, in trial order. The channel uses the decoder's `p`.
pub fn run_records(
    decoder: &Decoder<'_>,
    trials: u64,
    master_seed: u64,
) -> Result<Vec<TrialRecord>> {
    let code = decoder.code();
    let channel = ChannelModel::new(decoder.params().p)?;
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
            rng.set_stream(trial);
            let error = channel.sample_error(code.n(), &mut rng);
            let s = code.syndrome(&error)?;
            let result = decoder.decode(&s, &mut rng)?;
            Ok(TrialRecord {
                trial,
                error_weight: error.weight(),
                status: code.classify(&result.output, &error)?,
                decode_status: result.status,
                iterations: result.iterations_used,
                trials_used: result.trials_used,
                decoder: decoder.kind(),
            })
        })
        .collect()
}

pub fn run_trials(decoder: &Decoder<'_>, trials: u64, master_seed: u64) -> Result<WerStats> {
    Ok(WerStats::from_records(&run_records(
        decoder,
        trials,
        master_seed,
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(weight: usize, status: CosetClass) -> TrialRecord {
        TrialRecord {
            trial: 0,
            error_weight: weight,
            status,
            decode_status: DecodeStatus::SyndromeMatched,
            iterations: 1,
            trials_used: 1,
            decoder: DecoderKind::Spa,
        }
    }

    #[test]
    fn single_failure_stats() {
        let stats = failure_weight_stats(&[record(3, CosetClass::LogicalError)]).unwrap();
        assert_eq!(stats.min, 3);
        assert_eq!(stats.mean, 3.0);
        assert_eq!(stats.histogram, BTreeMap::from([(3, 1)]));
        assert_eq!(
            failure_weight_stats(&[record(2, CosetClass::SameCosetOfB)]).unwrap_err(),
            Error::NoFailures
        );
    }

    #[test]
    fn wilson_reference_values() {
        let (lo, hi) = wilson_interval(0, 10);
        assert_eq!(lo, 0.0);
        assert!((hi - 0.27753).abs() < 1e-4, "{hi}");
        let (lo, hi) = wilson_interval(50, 100);
        assert!((lo - 0.40383).abs() < 1e-4 && (hi - 0.59617).abs() < 1e-4);
        let wide = wilson_interval(10, 100);
        let narrow = wilson_interval(1000, 10000);
        assert!(narrow.1 - narrow.0 < wide.1 - wide.0);
    }
}
