//! Named decoders behind one handle, as used by enumeration, simulation
//! and the command line.

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::channel::ChannelModel;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::imr::{imr_spa_decode, ImrConfig};
use crate::oracle::{ml_d, FailureCriterion, ProbabilityModel, SyndromeTable, DEFAULT_BUDGET};
use crate::pcwd::{spa_pcwd_decode, Selector};
use crate::spa::{
    build_tanner, rr_spa_retry, spa_decode, DecodeResult, DecodeStatus, Pseudocodeword, SpaConfig,
    TannerGraph, WeightInterval,
};
use crate::stabilizer::{PauliVector, StabilizerCode, Syndrome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecoderKind {
    Spa,
    RrSpa,
    ImrSpa,
    SpaPcwd,
    SpaLppcwd,
    MlNd,
    MlD,
    MlDStar,
}

impl DecoderKind {
    pub const ALL: [DecoderKind; 8] = [
        DecoderKind::Spa,
        DecoderKind::RrSpa,
        DecoderKind::ImrSpa,
        DecoderKind::SpaPcwd,
        DecoderKind::SpaLppcwd,
        DecoderKind::MlNd,
        DecoderKind::MlD,
        DecoderKind::MlDStar,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DecoderKind::Spa => "spa",
            DecoderKind::RrSpa => "rr-spa",
            DecoderKind::ImrSpa => "imr-spa",
            DecoderKind::SpaPcwd => "spa-pcwd",
            DecoderKind::SpaLppcwd => "spa-lppcwd",
            DecoderKind::MlNd => "ml-nd",
            DecoderKind::MlD => "ml-d",
            DecoderKind::MlDStar => "ml-d-star",
        }
    }

    /// What counts as a failure when the decoder is checked exhaustively:
    /// the non-degenerate decoder must return the error itself, all others
    /// only its coset.
    pub fn criterion(self) -> FailureCriterion {
        match self {
            DecoderKind::MlNd => FailureCriterion::Exact,
            _ => FailureCriterion::Coset,
        }
    }

    pub fn uses_rng(self) -> bool {
        matches!(self, DecoderKind::RrSpa | DecoderKind::ImrSpa)
    }

    pub fn needs_cycle_code(self) -> bool {
        matches!(self, DecoderKind::SpaPcwd | DecoderKind::SpaLppcwd)
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DecoderKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownDecoder(s.to_string()))
    }
}

/// Everything a decoder needs besides the code.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecoderParams {
    /// Depolarizing probability the priors are computed for.
    pub p: f64,
    pub spa: SpaConfig,
    pub imr: ImrConfig,
    pub rr_interval: WeightInterval,
    pub rr_trials: usize,
    /// Largest error weight the table-based ML decoders consider.
    pub ml_weight_cap: usize,
    pub ml_model: ProbabilityModel,
    pub budget: u128,
}

impl DecoderParams {
    pub fn new(p: f64) -> Self {
        Self {
            p,
            spa: SpaConfig::default(),
            imr: ImrConfig::default(),
            rr_interval: WeightInterval::new(0.8, 1.0).expect("valid default"),
            rr_trials: 10,
            ml_weight_cap: 3,
            ml_model: ProbabilityModel::default(),
            budget: DEFAULT_BUDGET,
        }
    }
}

/// A decoder bound to a code.
#[derive(Clone, Debug)]
pub struct Decoder<'c> {
    kind: DecoderKind,
    code: &'c StabilizerCode,
    graph: TannerGraph,
    llrs: Vec<f64>,
    params: DecoderParams,
    table: Option<SyndromeTable>,
}

impl<'c> Decoder<'c> {
    pub fn new(kind: DecoderKind, code: &'c StabilizerCode, params: DecoderParams) -> Result<Self> {
        let graph = build_tanner(code.parity_check());
        if kind.needs_cycle_code() {
            graph.require_cycle_code()?;
        }
        params.spa.validate()?;
        params.imr.validate()?;
        let llrs = match kind {
            DecoderKind::MlNd | DecoderKind::MlDStar => Vec::new(),
            _ => ChannelModel::new(params.p)?.llr_vector(code.n())?,
        };
        let table = match kind {
            DecoderKind::MlNd | DecoderKind::MlDStar => Some(SyndromeTable::build(
                code,
                params.ml_weight_cap,
                params.budget,
            )?),
            _ => None,
        };
        Ok(Self {
            kind,
            code,
            graph,
            llrs,
            params,
            table,
        })
    }

    pub fn kind(&self) -> DecoderKind {
        self.kind
    }

    pub fn code(&self) -> &'c StabilizerCode {
        self.code
    }

    pub fn graph(&self) -> &TannerGraph {
        &self.graph
    }

    pub fn params(&self) -> &DecoderParams {
        &self.params
    }

    pub fn llrs(&self) -> &[f64] {
        &self.llrs
    }

    /// Decodes `s`. Only the randomized decoders draw from `rng`.
    pub fn decode(&self, s: &Syndrome, rng: &mut ChaCha8Rng) -> Result<DecodeResult> {
        let (graph, llrs, spa) = (&self.graph, &self.llrs[..], &self.params.spa);
        match self.kind {
            DecoderKind::Spa => spa_decode(graph, llrs, s, spa),
            DecoderKind::RrSpa => rr_spa_retry(
                graph,
                llrs,
                s,
                spa,
                self.params.rr_interval,
                self.params.rr_trials,
                rng,
            ),
            DecoderKind::ImrSpa => imr_spa_decode(graph, llrs, s, &self.params.imr, rng),
            DecoderKind::SpaPcwd => spa_pcwd_decode(graph, llrs, s, spa, Selector::Greedy),
            DecoderKind::SpaLppcwd => spa_pcwd_decode(graph, llrs, s, spa, Selector::Lp),
            DecoderKind::MlNd | DecoderKind::MlDStar => {
                let table = self.table.as_ref().expect("built for table decoders");
                let output = match table.lookup(s) {
                    Some((v, _)) => v.clone(),
                    None => PauliVector::identity(self.code.n()),
                };
                self.oracle_result(output, s)
            }
            DecoderKind::MlD => {
                let v = ml_d(
                    self.code,
                    s,
                    self.params.p,
                    self.params.ml_model,
                    self.params.budget,
                )?;
                self.oracle_result(v, s)
            }
        }
    }

    fn oracle_result(&self, output: PauliVector, s: &Syndrome) -> Result<DecodeResult> {
        let bits: BitVector = output.into_bits();
        let omega =
            Pseudocodeword::new((0..bits.len()).map(|i| bits.get(i) as u8 as f64).collect());
        let result = DecodeResult::checked(&self.graph, bits, s, 0, 1, omega)?;
        debug_assert!(result.status == DecodeStatus::SyndromeMatched || self.table.is_some());
        Ok(result)
    }
}
