use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use qdecode::decoder::{Decoder, DecoderKind};
use qdecode::gf2::BitVector;
use qdecode::oracle::{enumerate_failures_with, verify_code, FailureRecord, WeightModel};
use qdecode::sim::run_trials;
use qdecode::spa::Pseudocodeword;
use qdecode::stabilizer::{DistanceLimits, PauliVector, StabilizerCode, Syndrome};

use crate::args::{CommonArgs, DecodeOneArgs, EnumerateArgs, Format, SimulateArgs, VerifyArgs};
use crate::code_spec::CodeSpec;
use crate::config::{parse_decoders, resolve_format, RunConfig};
use crate::error::{CliError, CliResult};

fn emit(common: &CommonArgs, text: &str) -> CliResult<()> {
    match &common.output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn header(cfg: &RunConfig) -> String {
    format!("# config: {}\n", cfg.to_json())
}

fn single<T: Copy>(values: &[T], flag: &str) -> CliResult<T> {
    match values {
        [v] => Ok(*v),
        _ => Err(CliError::Config(format!(
            "{flag} takes exactly one value here"
        ))),
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Nonzero components as `qubit.x=value` / `qubit.z=value`.
pub fn format_pseudocodeword(omega: &Pseudocodeword) -> String {
    let parts: Vec<String> = omega
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &w)| w != 0.0)
        .map(|(i, w)| format!("{}.{}={w}", i / 2, if i % 2 == 0 { 'x' } else { 'z' }))
        .collect();
    parts.join(" ")
}

pub fn simulate(args: &SimulateArgs) -> CliResult<()> {
    let common = &args.common;
    let spec: CodeSpec = common.code.parse()?;
    let decoders = parse_decoders(&args.decoder)?;
    let mut cfg = RunConfig::new("simulate", &spec, decoders, common)?;
    cfg.trials = Some(args.trials);
    let code = spec.build()?;
    let hash = cfg.hash();

    let mut rows = Vec::new();
    for &kind in &cfg.decoders {
        for &p in &cfg.p {
            let decoder = Decoder::new(kind, &code, cfg.params(p)?)?;
            rows.push((kind, p, run_trials(&decoder, args.trials, cfg.seed)?));
        }
    }

    let text = match resolve_format(common, Format::Csv) {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(kind, p, stats)| json!({"code": cfg.code, "decoder": kind, "p": p, "seed": cfg.seed, "stats": stats}))
                .collect();
            serde_json::to_string_pretty(
                &json!({"config": cfg, "config_hash": hash, "rows": rows}),
            )? + "\n"
        }
        Format::Csv | Format::Text => {
            let mut out = header(&cfg);
            out.push_str("code,decoder,p,trials,failures,wer,wilson_lo,wilson_hi,min_fail_weight,mean_fail_weight,seed,config_hash\n");
            for (kind, p, s) in &rows {
                writeln!(
                    out,
                    "{},{kind},{p},{},{},{},{},{},{},{},{},{hash}",
                    cfg.code,
                    s.trials,
                    s.failures,
                    s.wer,
                    s.wilson_lo,
                    s.wilson_hi,
                    opt(s.min_failure_weight),
                    opt(s.mean_failure_weight),
                    cfg.seed,
                )
                .unwrap();
            }
            out
        }
    };
    emit(common, &text)
}

fn failure_json(r: &FailureRecord) -> serde_json::Value {
    json!({
        "index": r.index,
        "error": r.error.to_sparse_string(),
        "output": r.output.to_sparse_string(),
        "class": r.class,
        "status": r.status,
        "pseudocodeword": format_pseudocodeword(&r.pseudocodeword),
    })
}

pub fn enumerate(args: &EnumerateArgs) -> CliResult<()> {
    let common = &args.common;
    let spec: CodeSpec = common.code.parse()?;
    let kind = single(
        &parse_decoders(std::slice::from_ref(&args.decoder))?,
        "--decoder",
    )?;
    let mut cfg = RunConfig::new("enumerate", &spec, vec![kind], common)?;
    let p = single(&cfg.p, "--p")?;
    let model: WeightModel = args.weight_model.into();
    cfg.weight = Some(args.weight);
    cfg.weight_model = Some(model);
    let code = spec.build()?;
    let params = cfg.params(p)?;
    let decoder = Decoder::new(kind, &code, params)?;
    let report = enumerate_failures_with(&decoder, args.weight, model, cfg.seed, params.budget)?;
    let hash = cfg.hash();

    let text = match resolve_format(common, Format::Text) {
        Format::Json => {
            let failures: Vec<_> = report.failures.iter().map(failure_json).collect();
            serde_json::to_string_pretty(&json!({
                "config": cfg,
                "config_hash": hash,
                "criterion": report.criterion,
                "total": report.total,
                "count": report.count(),
                "failures": failures,
            }))? + "\n"
        }
        Format::Csv | Format::Text => {
            let mut out = header(&cfg);
            writeln!(out, "# config_hash: {hash}").unwrap();
            writeln!(out, "count {} of {}", report.count(), report.total).unwrap();
            out.push_str("index\terror\toutput\tclass\tstatus\tpseudocodeword\n");
            for r in &report.failures {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    r.index,
                    r.error.to_sparse_string(),
                    r.output.to_sparse_string(),
                    r.class.as_str(),
                    r.status.as_str(),
                    format_pseudocodeword(&r.pseudocodeword)
                )
                .unwrap();
            }
            out
        }
    };
    emit(common, &text)
}

pub fn verify(args: &VerifyArgs) -> CliResult<bool> {
    let common = &args.common;
    let spec: CodeSpec = common.code.parse()?;
    let mut cfg = RunConfig::new(
        "verify",
        &spec,
        vec![DecoderKind::MlNd, DecoderKind::MlDStar, DecoderKind::MlD],
        common,
    )?;
    cfg.max_weight = Some(args.max_weight);
    let p = single(&cfg.p, "--p")?;
    let code = spec.build()?;
    let limits = DistanceLimits {
        max_weight: args.max_weight,
        ..DistanceLimits::default()
    };
    let budget = cfg.params(p)?.budget;
    let report = verify_code(&code, &limits, p, budget)?;
    let hash = cfg.hash();

    let text = match resolve_format(common, Format::Text) {
        Format::Json => {
            serde_json::to_string_pretty(
                &json!({"config": cfg, "config_hash": hash, "report": report}),
            )? + "\n"
        }
        Format::Csv | Format::Text => {
            let mut out = header(&cfg);
            writeln!(out, "# config_hash: {hash}").unwrap();
            writeln!(out, "code {} n {} k {}", cfg.code, report.n, report.k).unwrap();
            writeln!(
                out,
                "d {}\nd_N {}\nt {}\nt_N {}",
                report.d, report.d_n, report.t, report.t_n
            )
            .unwrap();
            for (name, w) in [("d_N", &report.witness_nd), ("d", &report.witness_d)] {
                writeln!(
                    out,
                    "witness {name}: v = {} | v1 = {} | v2 = {}",
                    w.v.to_sparse_string(),
                    w.v1.to_sparse_string(),
                    w.v2.to_sparse_string()
                )
                .unwrap();
            }
            if report.ml_d_first_failure.is_none() {
                out.push_str("ml-d: SKIP (coset enumeration exceeds the budget)\n");
            }
            for c in &report.checks {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{verdict}: {} (expected {}, observed {})",
                    c.name, c.expected, c.observed
                )
                .unwrap();
            }
            out
        }
    };
    emit(common, &text)?;
    Ok(report.all_pass())
}

fn syndrome_from_checks(code: &StabilizerCode, checks: &[usize]) -> CliResult<Syndrome> {
    if let Some(&bad) = checks.iter().find(|&&j| j >= code.num_checks()) {
        return Err(CliError::Config(format!(
            "check {bad} out of range; the code has {} checks",
            code.num_checks()
        )));
    }
    Ok(Syndrome::from_bits(BitVector::from_support(
        code.num_checks(),
        checks,
    )))
}

pub fn decode_one(args: &DecodeOneArgs) -> CliResult<()> {
    let common = &args.common;
    let spec: CodeSpec = common.code.parse()?;
    let kind = single(
        &parse_decoders(std::slice::from_ref(&args.decoder))?,
        "--decoder",
    )?;
    let mut cfg = RunConfig::new("decode-one", &spec, vec![kind], common)?;
    let p = single(&cfg.p, "--p")?;
    let code = spec.build()?;
    let error = match &args.error {
        Some(text) => Some(PauliVector::parse_sparse(code.n(), text)?),
        None => None,
    };
    let s = match (&error, &args.syndrome) {
        (Some(e), _) => code.syndrome(e)?,
        (None, Some(checks)) => syndrome_from_checks(&code, checks)?,
        (None, None) => return Err(CliError::Config("give --error or --syndrome".into())),
    };
    cfg.error = error.as_ref().map(|e| e.to_sparse_string());
    cfg.syndrome = Some(s.unsatisfied());

    let decoder = Decoder::new(kind, &code, cfg.params(p)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let result = decoder.decode(&s, &mut rng)?;
    let class = match &error {
        Some(e) => Some(code.classify(&result.output, e)?),
        None => None,
    };
    let value = json!({
        "config": cfg,
        "config_hash": cfg.hash(),
        "decoder": kind,
        "syndrome": s.unsatisfied(),
        "output": result.output.to_sparse_string(),
        "status": result.status,
        "class": class,
        "iterations": result.iterations_used,
        "trials_used": result.trials_used,
        "pseudocodeword": format_pseudocodeword(&result.pseudocodeword),
    });
    emit(common, &(serde_json::to_string_pretty(&value)? + "\n"))
}
