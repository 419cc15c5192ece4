//! Reference oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use rand::Rng;

use qdecode::gf2::BitVector;
use qdecode::pcwd::Path;
use qdecode::stabilizer::{Pauli, PauliVector, Syndrome, ToricLayout};

/// X errors on the staircase h(1,0), v(1,1), h(2,1), v(2,2) of the L = 5
/// torus: a length-4 walk between plaquettes (0,0) and (2,2).
pub fn staircase_error() -> PauliVector {
    let t = ToricLayout::new(5);
    let qubits = [
        t.horizontal(1, 0),
        t.vertical(1, 1),
        t.horizontal(2, 1),
        t.vertical(2, 2),
    ];
    let mut pattern: Vec<_> = qubits.iter().map(|&q| (q, Pauli::X)).collect();
    pattern.sort();
    PauliVector::from_pattern(t.num_qubits(), &pattern)
}

/// Every subset of `paths` that is pairwise variable-disjoint and covers
/// each unsatisfied check exactly once, with its total cost, cheapest first.
pub fn exact_covers(paths: &[Path], s: &Syndrome) -> Vec<(f64, Vec<usize>)> {
    assert!(paths.len() <= 20);
    let open = s.unsatisfied();
    let mut covers = Vec::new();
    'subset: for mask in 0u32..(1 << paths.len()) {
        let chosen: Vec<usize> = (0..paths.len()).filter(|i| mask >> i & 1 == 1).collect();
        let mut hits = vec![0usize; s.len()];
        for &i in &chosen {
            let (a, b) = paths[i].end_checks;
            if !s.get(a) || !s.get(b) {
                continue 'subset;
            }
            hits[a] += 1;
            hits[b] += 1;
            for &k in &chosen {
                if k > i && paths[i].overlaps(&paths[k]) {
                    continue 'subset;
                }
            }
        }
        if open.iter().all(|&j| hits[j] == 1) {
            covers.push((chosen.iter().map(|&i| paths[i].cost).sum::<f64>(), chosen));
        }
    }
    covers.sort_by(|a, b| a.0.total_cmp(&b.0));
    covers
}

/// The cheapest exact cover, when it beats every other one by more than
/// `margin`.
pub fn unique_optimum(paths: &[Path], s: &Syndrome, margin: f64) -> Option<Vec<usize>> {
    let covers = exact_covers(paths, s);
    match covers.as_slice() {
        [] => None,
        [only] => Some(only.1.clone()),
        [best, next, ..] => (next.0 - best.0 > margin).then(|| best.1.clone()),
    }
}

pub fn cover_support(paths: &[Path], chosen: &[usize], num_vars: usize) -> BitVector {
    let mut v = BitVector::zeros(num_vars);
    for &i in chosen {
        for &e in &paths[i].edges {
            v.set(e, true);
        }
    }
    v
}

/// A random selector instance: `2 * pairs` unsatisfied checks out of
/// `2 * pairs + 1`, and up to 8 paths with random ends, random variable
/// sets drawn from a pool of 12, and random weights.
pub fn random_selector_instance<R: Rng>(rng: &mut R) -> (Vec<Path>, Syndrome, usize) {
    let pairs = rng.gen_range(1..=3);
    let m = 2 * pairs + 1;
    let open: Vec<usize> = (0..2 * pairs).collect();
    let pool = 12;
    let count = rng.gen_range(1..=8);
    let paths = (0..count)
        .map(|_| {
            let a = open[rng.gen_range(0..open.len())];
            let mut b = a;
            while b == a {
                b = open[rng.gen_range(0..open.len())];
            }
            let len = rng.gen_range(1..=4);
            let mut edges: Vec<usize> = Vec::new();
            while edges.len() < len {
                let e = rng.gen_range(0..pool);
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
            Path::new(edges, (a, b), rng.gen_range(0.01..1.0))
        })
        .collect();
    (
        paths,
        Syndrome::from_bits(BitVector::from_support(m, &open)),
        pool,
    )
}

/// Smallest weight at or below `max_weight` with a decoding failure.
pub fn first_failure_weight(
    decoder: &qdecode::decoder::Decoder<'_>,
    max_weight: usize,
) -> Option<usize> {
    (1..=max_weight).find(|&w| {
        qdecode::oracle::enumerate_failures(decoder, w, 0, u128::MAX)
            .expect("enumeration")
            .count()
            > 0
    })
}
