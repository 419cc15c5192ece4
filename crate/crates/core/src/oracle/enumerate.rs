use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::check_budget;
use crate::decoder::Decoder;
use crate::error::Result;
use crate::gf2::BitVector;
use crate::spa::{DecodeStatus, Pseudocodeword};
use crate::stabilizer::{pattern_count, weight_patterns, CosetClass, PauliVector};

/// How the weight of an enumerated error is measured.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightModel {
    /// Number of qubits with a non-identity Pauli: `C(n, w) 3^w` errors.
    #[default]
    Pauli,
    /// Hamming weight of the `2n`-bit vector: `C(2n, w)` errors.
    Binary,
}

impl WeightModel {
    pub fn count(self, n: usize, weight: usize) -> u128 {
        match self {
            WeightModel::Pauli => pattern_count(n, weight),
            WeightModel::Binary => {
                let bits = 2 * n;
                if weight > bits {
                    return 0;
                }
                (0..weight as u128).fold(1, |acc, i| acc * (bits as u128 - i) / (i + 1))
            }
        }
    }

    /// All errors of the given weight, in a fixed order.
    pub fn errors(self, n: usize, weight: usize) -> Vec<PauliVector> {
        match self {
            WeightModel::Pauli => weight_patterns(n, weight)
                .map(|p| PauliVector::from_pattern(n, &p))
                .collect(),
            WeightModel::Binary => (0..2 * n)
                .combinations(weight)
                .map(|support| {
                    PauliVector::from_bits(BitVector::from_support(2 * n, &support))
                        .expect("even length")
                })
                .collect(),
        }
    }
}

/// When a decoder output counts as wrong.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FailureCriterion {
    /// Output differs from the error.
    Exact,
    /// Output is not in the error's coset of `B`.
    Coset,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FailureRecord {
    /// Index of the pattern in enumeration order.
    pub index: usize,
    pub error: PauliVector,
    pub output: PauliVector,
    pub class: CosetClass,
    pub status: DecodeStatus,
    pub pseudocodeword: Pseudocodeword,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FailureReport {
    pub weight: usize,
    pub criterion: FailureCriterion,
    /// Patterns decoded.
    pub total: usize,
    /// Failures in enumeration order.
    pub failures: Vec<FailureRecord>,
}

impl FailureReport {
    pub fn count(&self) -> usize {
        self.failures.len()
    }
}

/// Decodes the syndrome of every weight-`weight` Pauli error and collects
/// the failures under the decoder's own criterion. Pattern `i` gets RNG
/// stream `i` of `seed`, so results do not depend on the thread count.
pub fn enumerate_failures(
    decoder: &Decoder<'_>,
    weight: usize,
    seed: u64,
    budget: u128,
) -> Result<FailureReport> {
    enumerate_failures_with(decoder, weight, WeightModel::Pauli, seed, budget)
}

/// [`enumerate_failures`] with a choice of weight model.
pub fn enumerate_failures_with(
    decoder: &Decoder<'_>,
    weight: usize,
    model: WeightModel,
    seed: u64,
    budget: u128,
) -> Result<FailureReport> {
    let code = decoder.code();
    check_budget(model.count(code.n(), weight), budget)?;
    let criterion = decoder.kind().criterion();
    let patterns = model.errors(code.n(), weight);
    let outcomes: Vec<Option<FailureRecord>> = patterns
        .into_par_iter()
        .enumerate()
        .map(|(index, error)| {
            let s = code.syndrome(&error)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(index as u64);
            let result = decoder.decode(&s, &mut rng)?;
            let class = code.classify(&result.output, &error)?;
            let failed = match criterion {
                FailureCriterion::Exact => result.output != error,
                FailureCriterion::Coset => class != CosetClass::SameCosetOfB,
            };
            Ok(failed.then(|| FailureRecord {
                index,
                error,
                output: result.output,
                class,
                status: result.status,
                pseudocodeword: result.pseudocodeword,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(FailureReport {
        weight,
        criterion,
        total: outcomes.len(),
        failures: outcomes.into_iter().flatten().collect(),
    })
}
