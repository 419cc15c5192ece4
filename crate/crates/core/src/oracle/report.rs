use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{coset_scores, enumerate_failures, failing_witness_d, failing_witness_nd, Witness};
use crate::decoder::{Decoder, DecoderKind, DecoderParams};
use crate::error::Result;
use crate::stabilizer::{pattern_count, CosetClass, DistanceLimits, StabilizerCode, Syndrome};

/// One expected-versus-observed line of a [`VerifyReport`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

/// Distances, witnesses and first-failure weights of the exact decoders.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub d_n: usize,
    pub t: usize,
    pub t_n: usize,
    pub witness_nd: Witness,
    pub witness_d: Witness,
    /// First weight (up to `t_n + 1`) at which `ml-nd` fails.
    pub ml_nd_first_failure: Option<usize>,
    /// First weight (up to `t + 1`) at which `ml-d-star` fails.
    pub ml_d_star_first_failure: Option<usize>,
    /// Same for `ml-d`; `None` when coset enumeration is over budget.
    pub ml_d_first_failure: Option<Option<usize>>,
    /// `ml-nd` returns something other than `v1` or `v2` on their syndrome.
    pub witness_nd_misdecoded: bool,
    /// `ml-d-star` puts `v1` or `v2` in the wrong coset.
    pub witness_d_misdecoded: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn first_failure(
    code: &StabilizerCode,
    kind: DecoderKind,
    params: DecoderParams,
    up_to: usize,
) -> Result<Option<usize>> {
    let decoder = Decoder::new(kind, code, params)?;
    for w in 1..=up_to {
        if enumerate_failures(&decoder, w, 0, params.budget)?.count() > 0 {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn witness_misdecoded(
    code: &StabilizerCode,
    w: &Witness,
    kind: DecoderKind,
    params: DecoderParams,
) -> Result<bool> {
    let decoder = Decoder::new(kind, code, params)?;
    let s = code.syndrome(&w.v1)?;
    let out = decoder
        .decode(&s, &mut ChaCha8Rng::seed_from_u64(0))?
        .output;
    let wrong = |e| -> Result<bool> {
        Ok(match kind {
            DecoderKind::MlNd => &out != e,
            _ => code.classify(&out, e)? != CosetClass::SameCosetOfB,
        })
    };
    Ok(wrong(&w.v1)? || wrong(&w.v2)?)
}

fn check(name: &str, expected: impl ToString, observed: impl ToString) -> Check {
    let (expected, observed) = (expected.to_string(), observed.to_string());
    Check {
        name: name.to_string(),
        pass: expected == observed,
        expected,
        observed,
    }
}

fn weight_label(w: Option<usize>) -> String {
    w.map_or_else(|| "none".to_string(), |w| w.to_string())
}

/// Computes `d`, `d_N`, the witnesses, and the first failing weights of
/// the exact decoders by exhaustive enumeration. `ml-d` is run at
/// probability `p` only when scoring every coset for every enumerated
/// syndrome fits in `budget`.
pub fn verify_code(
    code: &StabilizerCode,
    limits: &DistanceLimits,
    p: f64,
    budget: u128,
) -> Result<VerifyReport> {
    let witness_nd = failing_witness_nd(code, limits)?;
    let witness_d = failing_witness_d(code, limits)?;
    let (d, d_n) = (witness_d.distance, witness_nd.distance);
    let (t, t_n) = (witness_d.t, witness_nd.t);

    let params = |cap: usize| DecoderParams {
        ml_weight_cap: cap,
        budget,
        ..DecoderParams::new(p)
    };
    let ml_nd_first_failure = first_failure(code, DecoderKind::MlNd, params(t_n + 1), t_n + 1)?;
    let ml_d_star_first_failure = first_failure(code, DecoderKind::MlDStar, params(t + 1), t + 1)?;

    let per_syndrome = 1u128
        .checked_shl((code.generators_b().rows() + code.logicals().rows()) as u32)
        .unwrap_or(u128::MAX);
    let patterns: u128 = (1..=t + 1).map(|w| pattern_count(code.n(), w)).sum();
    let ml_d_first_failure = if per_syndrome.saturating_mul(patterns) <= budget {
        // fail fast on a bad p before enumerating
        coset_scores(
            code,
            &Syndrome::zeros(code.num_checks()),
            p,
            params(0).ml_model,
            budget,
        )?;
        Some(first_failure(code, DecoderKind::MlD, params(0), t + 1)?)
    } else {
        None
    };

    let witness_nd_misdecoded =
        witness_misdecoded(code, &witness_nd, DecoderKind::MlNd, params(t_n + 1))?;
    let witness_d_misdecoded =
        witness_misdecoded(code, &witness_d, DecoderKind::MlDStar, params(t + 1))?;

    let mut checks = vec![
        check(
            "ml-nd first failure weight (t_N + 1)",
            t_n + 1,
            weight_label(ml_nd_first_failure),
        ),
        check(
            "ml-d-star first failure weight (t + 1)",
            t + 1,
            weight_label(ml_d_star_first_failure),
        ),
    ];
    if let Some(first) = ml_d_first_failure {
        checks.push(check(
            "ml-d first failure weight (t + 1)",
            t + 1,
            weight_label(first),
        ));
    }
    checks.push(check(
        "d_N witness split (t_N + 1, d_N - t_N - 1)",
        format!("{} {}", t_n + 1, d_n - t_n - 1),
        format!("{} {}", witness_nd.v2.weight(), witness_nd.v1.weight()),
    ));
    checks.push(check(
        "d witness split (t + 1, d - t - 1)",
        format!("{} {}", t + 1, d - t - 1),
        format!("{} {}", witness_d.v2.weight(), witness_d.v1.weight()),
    ));
    checks.push(check(
        "d_N witness misdecoded by ml-nd",
        true,
        witness_nd_misdecoded,
    ));
    checks.push(check(
        "d witness misdecoded by ml-d-star",
        true,
        witness_d_misdecoded,
    ));

    Ok(VerifyReport {
        n: code.n(),
        k: code.k(),
        d,
        d_n,
        t,
        t_n,
        witness_nd,
        witness_d,
        ml_nd_first_failure,
        ml_d_star_first_failure,
        ml_d_first_failure,
        witness_nd_misdecoded,
        witness_d_misdecoded,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::build_toric;

    #[test]
    fn toric3_report() {
        let code = build_toric(3).unwrap();
        let r = verify_code(
            &code,
            &DistanceLimits::default(),
            1e-3,
            super::super::DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!((r.d, r.d_n, r.t, r.t_n), (3, 3, 1, 1));
        assert_eq!(r.ml_nd_first_failure, Some(2));
        assert_eq!(r.ml_d_star_first_failure, Some(2));
        assert!(r.all_pass(), "{:#?}", r.checks);
    }
}
