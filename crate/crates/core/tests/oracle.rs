mod common;

use proptest::prelude::*;

use qdecode::decoder::{Decoder, DecoderKind, DecoderParams};
use qdecode::gf2::{BitMatrix, BitVector};
use qdecode::oracle::*;
use qdecode::spa::build_tanner;
use qdecode::stabilizer::*;

use common::first_failure_weight;

fn data(name: &str) -> StabilizerCode {
    load_code(format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn decoder(kind: DecoderKind, code: &StabilizerCode) -> Decoder<'_> {
    Decoder::new(kind, code, DecoderParams::new(1e-3)).unwrap()
}

#[test]
fn shor_first_failures() {
    let code = data("shor9.code");
    let limits = DistanceLimits::default();
    let d = min_distance(&code, DistanceMode::D, &limits).unwrap();
    let dn = min_distance(&code, DistanceMode::DN, &limits).unwrap();
    assert_eq!((d, dn), (3, 2));
    // t_N = 0 and t = 1
    assert_eq!(
        first_failure_weight(&decoder(DecoderKind::MlNd, &code), 3),
        Some(1)
    );
    assert_eq!(
        first_failure_weight(&decoder(DecoderKind::MlDStar, &code), 3),
        Some(2)
    );
}

#[test]
fn toric3_first_failures() {
    let code = build_toric(3).unwrap();
    let limits = DistanceLimits::default();
    assert_eq!(min_distance(&code, DistanceMode::D, &limits).unwrap(), 3);
    assert_eq!(min_distance(&code, DistanceMode::DN, &limits).unwrap(), 3);
    assert_eq!(
        first_failure_weight(&decoder(DecoderKind::MlNd, &code), 3),
        Some(2)
    );
    assert_eq!(
        first_failure_weight(&decoder(DecoderKind::MlDStar, &code), 3),
        Some(2)
    );
}

#[test]
fn ml_nd_returns_the_lightest_explanation() {
    let code = data("shor9.code");
    for pattern in weight_patterns(9, 1).chain(weight_patterns(9, 2)) {
        let e = PauliVector::from_pattern(9, &pattern);
        let s = code.syndrome(&e).unwrap();
        let out = ml_nd(&code, &s, 3, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(code.syndrome(&out).unwrap(), s);
        assert!(out.weight() <= e.weight());
        let table = SyndromeTable::build(&code, 3, DEFAULT_BUDGET).unwrap();
        let (hit, w) = table.lookup(&s).unwrap();
        assert_eq!((hit, w), (&out, out.weight()));
    }
}

#[test]
fn ml_d_agrees_with_ml_d_star_on_the_five_qubit_code() {
    let code = data("five_qubit.code");
    let mut seen = std::collections::BTreeSet::new();
    for w in 0..=1 {
        for pattern in weight_patterns(5, w) {
            let s = code.pattern_syndrome(&pattern);
            if !seen.insert(s.bits().clone()) {
                continue;
            }
            let star = ml_d_star(&code, &s, 2, DEFAULT_BUDGET).unwrap().unwrap();
            let full = ml_d(
                &code,
                &s,
                1e-3,
                ProbabilityModel::Depolarizing,
                DEFAULT_BUDGET,
            )
            .unwrap();
            assert_eq!(
                code.classify(&full, &star).unwrap(),
                CosetClass::SameCosetOfB,
                "syndrome {s:?}"
            );
        }
    }
    // a perfect code: 1 + 3 * 5 = 16 syndromes, all reached by weight <= 1
    assert_eq!(seen.len(), 16);
}

#[test]
fn coset_masses_favour_the_error_coset() {
    let code = build_toric(3).unwrap();
    let e = PauliVector::single(18, 4, Pauli::Y);
    let s = code.syndrome(&e).unwrap();
    let scores = coset_scores(
        &code,
        &s,
        0.01,
        ProbabilityModel::Depolarizing,
        DEFAULT_BUDGET,
    )
    .unwrap();
    assert_eq!(scores.len(), 16);
    let best = ml_d(
        &code,
        &s,
        0.01,
        ProbabilityModel::Depolarizing,
        DEFAULT_BUDGET,
    )
    .unwrap();
    assert_eq!(best, e);
    for c in &scores {
        assert_eq!(code.syndrome(&c.representative).unwrap(), s);
        assert!(c.mass > 0.0);
    }
}

fn check_witness(code: &StabilizerCode, w: &Witness, expected_distance: usize, degenerate: bool) {
    assert_eq!(w.distance, expected_distance);
    assert_eq!(w.t, (expected_distance - 1) / 2);
    assert_eq!(w.v.weight(), w.distance);
    assert_eq!(w.v2.weight(), w.t + 1);
    assert_eq!(w.v1.weight(), w.distance - w.t - 1);
    assert_eq!(w.v1.add(&w.v2), w.v);
    assert!(code.in_normalizer(&w.v).unwrap());
    if degenerate {
        assert!(!code.in_stabilizer(&w.v).unwrap());
    }
    let s = code.syndrome(&w.v1).unwrap();
    assert_eq!(code.syndrome(&w.v2).unwrap(), s);

    let out = ml_nd(code, &s, w.t + 1, DEFAULT_BUDGET).unwrap().unwrap();
    let wrong = |e: &PauliVector| {
        if degenerate {
            code.classify(&out, e).unwrap() != CosetClass::SameCosetOfB
        } else {
            &out != e
        }
    };
    assert!(wrong(&w.v1) || wrong(&w.v2));
}

#[test]
fn witnesses_on_shor_and_toric() {
    let limits = DistanceLimits::default();
    let shor = data("shor9.code");
    check_witness(
        &shor,
        &failing_witness_nd(&shor, &limits).unwrap(),
        2,
        false,
    );
    check_witness(&shor, &failing_witness_d(&shor, &limits).unwrap(), 3, true);
    let toric = build_toric(5).unwrap();
    check_witness(
        &toric,
        &failing_witness_nd(&toric, &limits).unwrap(),
        4,
        false,
    );
    check_witness(
        &toric,
        &failing_witness_d(&toric, &limits).unwrap(),
        5,
        true,
    );
}

/// The seven plaquettes around vertices (1,1) and (2,2) of a torus and the
/// eight x bits between them: two 4-cycles sharing face (1,1). The
/// syndrome sits on the far corners (0,0) and (2,2), which a length-4 walk
/// joins in four equally short ways.
fn figure_eight() -> (qdecode::spa::TannerGraph, Syndrome) {
    // checks: (0,0) (0,1) (1,0) (1,1) (1,2) (2,1) (2,2)
    let ends = [
        (0, 2),
        (0, 1),
        (1, 3),
        (2, 3),
        (3, 5),
        (3, 4),
        (5, 6),
        (4, 6),
    ];
    let mut h = BitMatrix::zeros(7, ends.len());
    for (i, &(a, b)) in ends.iter().enumerate() {
        h.set(a, i, true);
        h.set(b, i, true);
    }
    (
        build_tanner(&h),
        Syndrome::from_bits(BitVector::from_support(7, &[0, 6])),
    )
}

#[test]
fn twisted_cover_of_the_figure_eight() {
    let (g, s) = figure_eight();
    let mut swaps = vec![false; 8];
    swaps[7] = true;
    let configs = two_cover_analysis(&g, &s, &swaps, DEFAULT_BUDGET).unwrap();
    // 16 variables, 14 checks, one component: 2^3 solutions
    assert_eq!(configs.len(), 8);
    for c in &configs {
        assert!(c
            .projection
            .iter()
            .all(|&w| w == 0.0 || w == 0.5 || w == 1.0));
    }
    let valid: Vec<_> = configs.iter().filter_map(|c| c.to_base()).collect();
    assert_eq!(valid.len(), 4);
    for v in &valid {
        assert_eq!(g.syndrome_of(v), *s.bits());
        assert_eq!(v.count_ones(), 4);
    }
    let fractional: Vec<_> = configs.iter().filter(|c| !c.is_integral()).collect();
    assert_eq!(fractional.len(), 4);
    for c in fractional {
        for round_half_up in [false, true] {
            let hard = BitVector::from_bools(
                &c.projection
                    .iter()
                    .map(|&w| w > 0.5 || (round_half_up && w == 0.5))
                    .collect::<Vec<_>>(),
            );
            assert_ne!(g.syndrome_of(&hard), *s.bits());
        }
    }
}

#[test]
fn trivial_cover_projects_onto_codewords() {
    let (g, _) = figure_eight();
    let s = Syndrome::zeros(7);
    let configs = two_cover_analysis(&g, &s, &[false; 8], DEFAULT_BUDGET).unwrap();
    // two independent cycles per copy
    assert_eq!(configs.len(), 16);
    let integral: Vec<_> = configs.iter().filter_map(|c| c.to_base()).collect();
    assert_eq!(integral.len(), 4);
    for v in integral {
        assert!(g.syndrome_of(&v).is_zero());
    }
}

#[test]
fn enumeration_budget_is_enforced() {
    let code = build_toric(5).unwrap();
    let d = decoder(DecoderKind::Spa, &code);
    assert!(matches!(
        enumerate_failures(&d, 3, 0, 1000),
        Err(qdecode::Error::BudgetExceeded { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ml_outputs_explain_the_syndrome(pattern_index in 0usize..(36 * 9)) {
        let code = data("shor9.code");
        let pattern = weight_patterns(9, 2).nth(pattern_index).unwrap();
        let e = PauliVector::from_pattern(9, &pattern);
        let s = code.syndrome(&e).unwrap();
        let nd = ml_nd(&code, &s, 2, DEFAULT_BUDGET).unwrap().unwrap();
        prop_assert_eq!(&code.syndrome(&nd).unwrap(), &s);
        let d = ml_d(&code, &s, 0.01, ProbabilityModel::Depolarizing, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(&code.syndrome(&d).unwrap(), &s);
        prop_assert!(d.weight() <= e.weight());
    }
}
