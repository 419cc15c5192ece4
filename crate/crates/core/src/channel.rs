//! Depolarizing noise and its two-BSC approximation.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stabilizer::{Pauli, PauliVector};

/// Depolarizing channel with probability `p`: each qubit is hit by `X`, `Y`
/// or `Z` with probability `p/3` each.
///
/// The decoders see it as two independent binary symmetric channels (one
/// for the `x` bits, one for the `z` bits) with crossover `2p/3`, ignoring
/// the correlation introduced by `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    p: f64,
}

impl ChannelModel {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "depolarizing probability must lie in [0, 1), got {p}"
            )));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Per-bit flip probability `2p/3`.
    pub fn crossover(&self) -> f64 {
        2.0 * self.p / 3.0
    }

    /// `ln((1 - q) / q)` with `q = 2p/3`; rejects `p = 0`.
    pub fn llr(&self) -> Result<f64> {
        if self.p == 0.0 {
            return Err(Error::InvalidParameter("LLR is infinite for p = 0".into()));
        }
        let q = self.crossover();
        Ok(((1.0 - q) / q).ln())
    }

    /// Uniform prior LLRs for the `2n` bits.
    pub fn llr_vector(&self, n: usize) -> Result<Vec<f64>> {
        Ok(vec![self.llr()?; 2 * n])
    }

    /// Draws an `n`-qubit Pauli error.
    pub fn sample_error<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> PauliVector {
        let third = self.p / 3.0;
        let mut e = PauliVector::identity(n);
        for q in 0..n {
            let u: f64 = rng.gen();
            let pauli = if u >= self.p {
                continue;
            } else if u < third {
                Pauli::X
            } else if u < 2.0 * third {
                Pauli::Y
            } else {
                Pauli::Z
            };
            e.apply(q, pauli);
        }
        e
    }
}
