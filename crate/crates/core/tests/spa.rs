use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qdecode::channel::ChannelModel;
use qdecode::gf2::BitVector;
use qdecode::imr::{imr_spa_decode, ImrConfig};
use qdecode::spa::*;
use qdecode::stabilizer::*;

fn toric(l: usize) -> (StabilizerCode, TannerGraph) {
    let code = build_toric(l).unwrap();
    let graph = build_tanner(code.parity_check());
    (code, graph)
}

fn llrs(code: &StabilizerCode, p: f64) -> Vec<f64> {
    ChannelModel::new(p).unwrap().llr_vector(code.n()).unwrap()
}

/// X on two horizontal edges at star (2, 2) and the four x variables of
/// that star.
fn symmetric_pair(layout: ToricLayout) -> (PauliVector, Vec<usize>) {
    let edges = layout.star_edges(2, 2);
    let e = PauliVector::from_pattern(
        layout.num_qubits(),
        &[(edges[1], Pauli::X), (edges[0], Pauli::X)],
    );
    (e, edges.iter().map(|&q| ToricLayout::x_var(q)).collect())
}

#[test]
fn toric_variables_have_degree_two() {
    let (_, g) = toric(5);
    assert_eq!(g.num_vars(), 100);
    assert_eq!(g.num_checks(), 50);
    assert!(g.column_weights().iter().all(|&w| w == 2));
    assert!(g.is_cycle_code());
}

#[test]
fn zero_syndrome_positive_priors() {
    let (code, g) = toric(5);
    let r = spa_decode(
        &g,
        &llrs(&code, 0.05),
        &Syndrome::zeros(50),
        &SpaConfig::default(),
    )
    .unwrap();
    assert_eq!(r.iterations_used, 1);
    assert!(r.converged && r.output.is_identity());
}

#[test]
fn every_single_qubit_error_is_corrected() {
    let (code, g) = toric(5);
    let gamma = llrs(&code, 0.01);
    for pattern in weight_patterns(code.n(), 1) {
        let e = PauliVector::from_pattern(code.n(), &pattern);
        let r = spa_decode(
            &g,
            &gamma,
            &code.syndrome(&e).unwrap(),
            &SpaConfig::default(),
        )
        .unwrap();
        assert_eq!(r.status, DecodeStatus::SyndromeMatched, "{e}");
        assert_eq!(
            code.classify(&r.output, &e).unwrap(),
            CosetClass::SameCosetOfB
        );
    }
}

#[test]
fn opposite_edges_of_a_star_stall_symmetrically() {
    let (code, g) = toric(5);
    let (e, cycle) = symmetric_pair(ToricLayout::new(5));
    let s = code.syndrome(&e).unwrap();
    let r = spa_decode(&g, &llrs(&code, 0.01), &s, &SpaConfig::default()).unwrap();
    assert_eq!(r.status, DecodeStatus::SyndromeMismatch);
    assert_eq!(r.iterations_used, DEFAULT_MAX_ITERS);
    let omega = r.pseudocodeword.values();
    let w = omega[cycle[0]];
    assert!(w > 0.0);
    for &v in &cycle {
        assert_eq!(omega[v], w, "variable {v}");
    }
    for &v in &cycle {
        assert!(!r.output.bits().get(v));
    }
}

#[test]
fn adjacent_edges_of_a_star_stall_symmetrically() {
    let (code, g) = toric(6);
    let layout = ToricLayout::new(6);
    let edges = layout.star_edges(3, 3);
    let e = PauliVector::from_pattern(code.n(), &[(edges[0], Pauli::X), (edges[2], Pauli::X)]);
    let r = spa_decode(
        &g,
        &llrs(&code, 0.02),
        &code.syndrome(&e).unwrap(),
        &SpaConfig::default(),
    )
    .unwrap();
    assert_eq!(r.status, DecodeStatus::SyndromeMismatch);
    let omega = r.pseudocodeword.values();
    let w = omega[ToricLayout::x_var(edges[0])];
    for q in edges {
        assert_eq!(omega[ToricLayout::x_var(q)], w);
    }
}

#[test]
fn rr_with_unit_interval_is_plain_spa() {
    let (code, g) = toric(5);
    let gamma = llrs(&code, 0.03);
    let (e, _) = symmetric_pair(ToricLayout::new(5));
    let s = code.syndrome(&e).unwrap();
    let plain = spa_decode(&g, &gamma, &s, &SpaConfig::default()).unwrap();
    let unit = WeightInterval::new(1.0, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let rr = rr_spa_decode(&g, &gamma, &s, &SpaConfig::default(), unit, &mut rng).unwrap();
    assert_eq!(rr, plain);

    let mut a = SpaRun::new(&g, &gamma, &s, 0.0).unwrap();
    let mut b = SpaRun::with_rho(&g, &gamma, &s, 0.0, Some(vec![1.0; g.num_vars()])).unwrap();
    for _ in 0..30 {
        a.step();
        b.step();
        assert_eq!(a.posterior(), b.posterior());
    }
}

#[test]
fn rr_is_seeded_and_mostly_breaks_the_symmetry() {
    let (code, g) = toric(5);
    let gamma = llrs(&code, 0.01);
    let (e, _) = symmetric_pair(ToricLayout::new(5));
    let s = code.syndrome(&e).unwrap();
    let interval = WeightInterval::new(0.8, 1.0).unwrap();
    let cfg = SpaConfig::default();
    let run = |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rr_spa_retry(&g, &gamma, &s, &cfg, interval, 10, &mut rng).unwrap()
    };
    assert_eq!(run(3), run(3));
    let matched = (0..100).filter(|&seed| run(seed).converged).count();
    assert!(matched >= 80, "{matched} of 100 seeds matched");
    assert!(WeightInterval::new(0.0, 1.0)
        .map(|i| rr_spa_decode(&g, &gamma, &s, &cfg, i, &mut ChaCha8Rng::seed_from_u64(0)))
        .unwrap()
        .is_err());
}

#[test]
fn imr_first_pass_success_is_plain_spa() {
    let (code, g) = toric(5);
    let gamma = llrs(&code, 0.01);
    let e = PauliVector::single(code.n(), 17, Pauli::Y);
    let s = code.syndrome(&e).unwrap();
    let plain = spa_decode(&g, &gamma, &s, &SpaConfig::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let imr = imr_spa_decode(&g, &gamma, &s, &ImrConfig::default(), &mut rng).unwrap();
    assert_eq!(imr.trials_used, 0);
    assert_eq!(imr.output, plain.output);
    assert_eq!(imr.pseudocodeword, plain.pseudocodeword);
}

#[test]
fn imr_with_unit_interval_never_recovers() {
    let (code, g) = toric(5);
    let gamma = llrs(&code, 0.01);
    let (e, _) = symmetric_pair(ToricLayout::new(5));
    let s = code.syndrome(&e).unwrap();
    let plain = spa_decode(&g, &gamma, &s, &SpaConfig::default()).unwrap();
    let cfg = ImrConfig {
        interval: WeightInterval::new(1.0, 1.0).unwrap(),
        ..ImrConfig::default()
    };
    let r = imr_spa_decode(&g, &gamma, &s, &cfg, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
    assert_eq!(r.status, DecodeStatus::SyndromeMismatch);
    assert_eq!(r.trials_used, cfg.max_trials);
    assert_eq!(r.pseudocodeword, plain.pseudocodeword);
}

#[test]
fn imr_breaks_the_symmetric_stall() {
    let (code, g) = toric(5);
    let gamma = llrs(&code, 0.01);
    let (e, _) = symmetric_pair(ToricLayout::new(5));
    let s = code.syndrome(&e).unwrap();
    let cfg = ImrConfig::default();
    let matched = (0..100)
        .filter(|&seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = imr_spa_decode(&g, &gamma, &s, &cfg, &mut rng).unwrap();
            assert!(r.trials_used <= cfg.max_trials);
            r.converged
        })
        .count();
    assert!(matched >= 90, "{matched} of 100 seeds matched");
}

fn flip_signs(gamma: &[f64], e: &BitVector) -> Vec<f64> {
    gamma
        .iter()
        .enumerate()
        .map(|(i, &g)| if e.get(i) { -g } else { g })
        .collect()
}

fn random_error(code: &StabilizerCode, p: f64, seed: u64) -> PauliVector {
    ChannelModel::new(p)
        .unwrap()
        .sample_error(code.n(), &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn syndrome_adaptation_is_a_sign_change(seed in any::<u64>(), p in 0.01f64..0.2, iters in 1usize..40) {
        let (code, g) = toric(5);
        let e = random_error(&code, p, seed);
        let gamma = llrs(&code, p);
        let s = code.syndrome(&e).unwrap();
        let mut with_s = SpaRun::new(&g, &gamma, &s, 0.0).unwrap();
        let flipped = flip_signs(&gamma, e.bits());
        let mut zero = SpaRun::new(&g, &flipped, &Syndrome::zeros(g.num_checks()), 0.0).unwrap();
        for _ in 0..iters {
            with_s.step();
            zero.step();
            for i in 0..g.num_vars() {
                let sign = if e.bits().get(i) { -1.0 } else { 1.0 };
                prop_assert_eq!(with_s.posterior()[i], sign * zero.posterior()[i]);
            }
            prop_assert_eq!(with_s.hard_decision(), &zero.hard_decision().xor(e.bits()));
        }
    }

    #[test]
    fn beliefs_stay_in_the_unit_interval(seed in any::<u64>(), p in 0.001f64..0.7) {
        let (code, g) = toric(4);
        let e = random_error(&code, p, seed);
        let r = spa_decode(&g, &llrs(&code, p), &code.syndrome(&e).unwrap(), &SpaConfig::default()).unwrap();
        prop_assert!(r.pseudocodeword.values().iter().all(|w| (0.0..=1.0).contains(w)));
        if r.converged {
            prop_assert_eq!(&code.syndrome(&r.output).unwrap(), &code.syndrome(&e).unwrap());
        }
    }

    #[test]
    fn translation_commutes_with_decoding(seed in any::<u64>(), dr in 0isize..5, dc in 0isize..5) {
        let (code, g) = toric(5);
        let layout = ToricLayout::new(5);
        let gamma = llrs(&code, 0.04);
        let e = random_error(&code, 0.06, seed);
        let mut moved = PauliVector::identity(code.n());
        for q in 0..code.n() {
            moved.apply(layout.translate_qubit(q, dr, dc), e.pauli(q));
        }
        let cfg = SpaConfig { max_iters: 30, damping: 0.0 };
        let a = spa_decode(&g, &gamma, &code.syndrome(&e).unwrap(), &cfg).unwrap();
        let b = spa_decode(&g, &gamma, &code.syndrome(&moved).unwrap(), &cfg).unwrap();
        prop_assert_eq!(a.iterations_used, b.iterations_used);
        for q in 0..code.n() {
            let t = layout.translate_qubit(q, dr, dc);
            prop_assert_eq!(a.output.pauli(q), b.output.pauli(t));
            for bit in 0..2 {
                prop_assert_eq!(
                    a.pseudocodeword.values()[2 * q + bit],
                    b.pseudocodeword.values()[2 * t + bit]
                );
            }
        }
    }
}
