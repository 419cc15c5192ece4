use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{pattern_count, weight_patterns, PauliVector, StabilizerCode};
use crate::error::{Error, Result};
use crate::gf2::{BitVector, RowBasis};

/// Which minimum distance to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistanceMode {
    /// `d = min Wt(v)` over `N \ B`.
    D,
    /// `d_N = min Wt(v)` over nonzero `v` in `N`.
    DN,
}

/// Guards for exhaustive distance searches.
#[derive(Clone, Copy, Debug)]
pub struct DistanceLimits {
    /// Largest supported `2n`.
    pub max_bits: usize,
    /// Give up beyond this weight.
    pub max_weight: usize,
    /// Most half-weight patterns enumerated for a single weight.
    pub budget: u128,
}

impl Default for DistanceLimits {
    fn default() -> Self {
        Self {
            max_bits: 120,
            max_weight: 8,
            budget: 20_000_000,
        }
    }
}

/// Exact minimum Pauli weight over the set selected by `mode`.
pub fn min_distance(
    code: &StabilizerCode,
    mode: DistanceMode,
    limits: &DistanceLimits,
) -> Result<usize> {
    min_weight_element(code, mode, limits).map(|v| v.weight())
}

/// A minimum-weight element of `N \ B` (mode `D`) or `N \ {0}` (mode `DN`).
///
/// Meet in the middle: a zero-syndrome vector of weight `w` splits into
/// halves of weight `ceil(w/2)` and `floor(w/2)` with equal syndromes, so
/// weights are scanned upward, joining each larger half against a syndrome
/// table of the smaller halves. The first element found is returned; the
/// scan order is fixed, so the result is deterministic.
pub fn min_weight_element(
    code: &StabilizerCode,
    mode: DistanceMode,
    limits: &DistanceLimits,
) -> Result<PauliVector> {
    let n = code.n();
    if 2 * n > limits.max_bits {
        return Err(Error::BudgetExceeded {
            needed: 2 * n as u128,
            limit: limits.max_bits as u128,
        });
    }
    if mode == DistanceMode::D && code.k() == 0 {
        return Err(Error::InvalidParameter(
            "d is undefined for a code with k = 0".into(),
        ));
    }

    let mut b_basis = RowBasis::new(2 * n);
    for row in code.generators_b().row_vectors() {
        b_basis.insert(row);
    }
    let accept = |v: &PauliVector| match mode {
        DistanceMode::DN => true,
        DistanceMode::D => !b_basis.contains(v.bits()),
    };

    let mut tables: HashMap<usize, HashMap<BitVector, Vec<PauliVector>>> = HashMap::new();
    for w in 1..=limits.max_weight.min(n) {
        let big = w.div_ceil(2);
        let small = w / 2;
        let needed = pattern_count(n, big) + pattern_count(n, small);
        if needed > limits.budget {
            return Err(Error::BudgetExceeded {
                needed,
                limit: limits.budget,
            });
        }
        let table = tables.entry(small).or_insert_with(|| {
            let mut t: HashMap<BitVector, Vec<PauliVector>> = HashMap::new();
            for pattern in weight_patterns(n, small) {
                let s = code.pattern_syndrome(&pattern).bits().clone();
                t.entry(s)
                    .or_default()
                    .push(PauliVector::from_pattern(n, &pattern));
            }
            t
        });
        for pattern in weight_patterns(n, big) {
            let s = code.pattern_syndrome(&pattern);
            let Some(partners) = table.get(s.bits()) else {
                continue;
            };
            let half = PauliVector::from_pattern(n, &pattern);
            for other in partners {
                let v = half.add(other);
                if v.weight() == w && accept(&v) {
                    return Ok(v);
                }
            }
        }
    }
    Err(Error::BudgetExceeded {
        needed: limits.max_weight as u128 + 1,
        limit: limits.max_weight as u128,
    })
}
