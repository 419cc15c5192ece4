//! Exact reference decoders and the machinery for checking decoders
//! exhaustively on small codes.
//!
//! Ties between equally good candidates are always resolved towards the
//! smaller vector in [`BitVector`]'s order (lexicographic from bit 0).

mod cover;
mod enumerate;
mod report;
mod witness;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::stabilizer::{pattern_count, weight_patterns, PauliVector, StabilizerCode, Syndrome};

pub use cover::{two_cover_analysis, CoverConfiguration};
pub use enumerate::{
    enumerate_failures, enumerate_failures_with, FailureCriterion, FailureRecord, FailureReport,
    WeightModel,
};
pub use report::{verify_code, Check, VerifyReport};
pub use witness::{failing_witness_d, failing_witness_nd, Witness};

/// Default cap on the number of vectors an exhaustive search may visit.
pub const DEFAULT_BUDGET: u128 = 50_000_000;

fn check_budget(needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(Error::BudgetExceeded { needed, limit })
    } else {
        Ok(())
    }
}

/// Pauli weight of an interleaved bit vector, counted a word at a time.
fn pair_weight(v: &BitVector) -> usize {
    const LOW: u64 = 0x5555_5555_5555_5555;
    v.words()
        .iter()
        .map(|&w| ((w | (w >> 1)) & LOW).count_ones() as usize)
        .sum()
}

/// Patterns visited when scanning weights `0..=cap`.
pub fn patterns_up_to(n: usize, cap: usize) -> u128 {
    (0..=cap.min(n)).map(|w| pattern_count(n, w)).sum()
}

/// Smallest-weight vector for every syndrome reachable with weight at most
/// `cap`.
#[derive(Clone, Debug)]
pub struct SyndromeTable {
    cap: usize,
    n: usize,
    entries: HashMap<BitVector, (PauliVector, usize)>,
}

impl SyndromeTable {
    pub fn build(code: &StabilizerCode, cap: usize, budget: u128) -> Result<Self> {
        let n = code.n();
        check_budget(patterns_up_to(n, cap), budget)?;
        let mut entries: HashMap<BitVector, (PauliVector, usize)> = HashMap::new();
        for w in 0..=cap.min(n) {
            for pattern in weight_patterns(n, w) {
                let s = code.pattern_syndrome(&pattern).bits().clone();
                match entries.get_mut(&s) {
                    Some((best, bw)) if *bw == w => {
                        let v = PauliVector::from_pattern(n, &pattern);
                        if v < *best {
                            *best = v;
                        }
                    }
                    Some(_) => {}
                    None => {
                        entries.insert(s, (PauliVector::from_pattern(n, &pattern), w));
                    }
                }
            }
        }
        Ok(Self { cap, n, entries })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, s: &Syndrome) -> Option<(&PauliVector, usize)> {
        self.entries.get(s.bits()).map(|(v, w)| (v, *w))
    }
}

/// Non-degenerate ML decoding: a minimum-weight vector with syndrome `s`
/// among vectors of weight at most `weight_cap`, or `None` if there is
/// none. Weights are scanned upward and the scan stops at the first weight
/// that produces a match.
pub fn ml_nd(
    code: &StabilizerCode,
    s: &Syndrome,
    weight_cap: usize,
    budget: u128,
) -> Result<Option<PauliVector>> {
    if s.len() != code.num_checks() {
        return Err(Error::DimensionMismatch {
            expected: code.num_checks(),
            actual: s.len(),
        });
    }
    check_budget(patterns_up_to(code.n(), weight_cap), budget)?;
    for w in 0..=weight_cap.min(code.n()) {
        let best = weight_patterns(code.n(), w)
            .filter(|p| &code.pattern_syndrome(p) == s)
            .map(|p| PauliVector::from_pattern(code.n(), &p))
            .min();
        if best.is_some() {
            return Ok(best);
        }
    }
    Ok(None)
}

/// Degenerate decoder that returns the non-degenerate ML output; callers
/// interpret it up to the stabilizer.
pub fn ml_d_star(
    code: &StabilizerCode,
    s: &Syndrome,
    weight_cap: usize,
    budget: u128,
) -> Result<Option<PauliVector>> {
    ml_nd(code, s, weight_cap, budget)
}

/// Probability model used to score logical cosets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbabilityModel {
    /// `Pr(v) ∝ (p / (3 (1 - p)))^Wt(v)`: the depolarizing channel itself.
    #[default]
    Depolarizing,
    /// `Pr(v) ∝ (q / (1 - q))^|v|` with `q = 2p/3` over the `2n` bits: the
    /// independent-bit approximation the message-passing decoders use.
    TwoBsc,
}

/// A logical coset `t(s) + l + B` with its probability mass.
#[derive(Clone, Debug, PartialEq)]
pub struct CosetScore {
    /// Smallest-weight member (then smallest in bit order).
    pub representative: PauliVector,
    /// Unnormalized probability of the whole coset.
    pub mass: f64,
}

/// Degenerate ML decoding: the most probable coset `t(s) + l + B`. Needs
/// `2^(n + k)` vectors; ties in probability go to the smaller
/// representative.
pub fn ml_d(
    code: &StabilizerCode,
    s: &Syndrome,
    p: f64,
    model: ProbabilityModel,
    budget: u128,
) -> Result<PauliVector> {
    let scores = coset_scores(code, s, p, model, budget)?;
    let best = scores
        .into_iter()
        .reduce(|best, c| {
            if c.mass > best.mass || (c.mass == best.mass && c.representative < best.representative)
            {
                c
            } else {
                best
            }
        })
        .expect("at least the trivial logical coset");
    Ok(best.representative)
}

/// Scores of all `4^k` logical cosets inside `t(s) + N`, in the order of
/// the binary expansion of the logical index.
pub fn coset_scores(
    code: &StabilizerCode,
    s: &Syndrome,
    p: f64,
    model: ProbabilityModel,
    budget: u128,
) -> Result<Vec<CosetScore>> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "ml_d needs 0 < p < 1, got {p}"
        )));
    }
    let stab = code.generators_b().row_vectors();
    let logicals = code.logicals().row_vectors();
    let exponent = (stab.len() + logicals.len()) as u32;
    if exponent >= 127 {
        return Err(Error::BudgetExceeded {
            needed: u128::MAX,
            limit: budget,
        });
    }
    check_budget(1u128 << exponent, budget)?;

    let n = code.n();
    let ratio = match model {
        ProbabilityModel::Depolarizing => p / (3.0 * (1.0 - p)),
        ProbabilityModel::TwoBsc => {
            let q = 2.0 * p / 3.0;
            q / (1.0 - q)
        }
    };
    let max_weight = match model {
        ProbabilityModel::Depolarizing => n,
        ProbabilityModel::TwoBsc => 2 * n,
    };
    let weight_of = |v: &BitVector| match model {
        ProbabilityModel::Depolarizing => pair_weight(v),
        ProbabilityModel::TwoBsc => v.count_ones(),
    };

    let t = code.coset_representative(s)?;
    let mut scores = Vec::with_capacity(1 << logicals.len());
    for l_index in 0u64..(1u64 << logicals.len()) {
        let mut base = t.bits().clone();
        for (r, row) in logicals.iter().enumerate() {
            if l_index >> r & 1 == 1 {
                base.xor_assign(row);
            }
        }
        // Gray-code walk over B
        let mut hist = vec![0u64; max_weight + 1];
        let mut current = base;
        let mut best: Option<(usize, BitVector)> = None;
        for step in 0u64..(1u64 << stab.len()) {
            if step > 0 {
                current.xor_assign(&stab[step.trailing_zeros() as usize]);
            }
            let w = weight_of(&current);
            hist[w] += 1;
            let pauli_w = pair_weight(&current);
            let better = match &best {
                None => true,
                Some((bw, bv)) => pauli_w < *bw || (pauli_w == *bw && current < *bv),
            };
            if better {
                best = Some((pauli_w, current.clone()));
            }
        }
        let mass = hist
            .iter()
            .enumerate()
            .map(|(w, &c)| c as f64 * ratio.powi(w as i32))
            .sum();
        let (_, rep) = best.expect("B is nonempty");
        scores.push(CosetScore {
            representative: PauliVector::from_bits(rep)?,
            mass,
        });
    }
    Ok(scores)
}
