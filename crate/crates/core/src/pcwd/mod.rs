//! Path-based post-processing of SPA pseudocodewords for cycle codes.
//!
//! On a cycle code every variable is an edge between two checks, so a set
//! of variables whose syndrome is `{j, j'}` is a walk from `j` to `j'`. A
//! failed SPA run leaves a pseudocodeword that is peeled into such walks,
//! and a cover of the unsatisfied checks is then picked from them either
//! greedily or by an integer program.

mod lp;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::spa::{spa_decode, DecodeResult, Pseudocodeword, SpaConfig, TannerGraph};
use crate::stabilizer::Syndrome;

pub use lp::lp_select;

/// A check-to-check walk extracted from a pseudocodeword.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Path {
    /// Variables in walk order.
    pub edges: Vec<usize>,
    /// Start and end check.
    pub end_checks: (usize, usize),
    /// Smallest pseudocodeword component on the walk when it was extracted.
    pub weight: f64,
    /// `(1 - weight) * edges.len()`.
    pub cost: f64,
}

impl Path {
    pub fn new(edges: Vec<usize>, end_checks: (usize, usize), weight: f64) -> Self {
        let cost = (1.0 - weight) * edges.len() as f64;
        Self {
            edges,
            end_checks,
            weight,
            cost,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn touches(&self, check: usize) -> bool {
        self.end_checks.0 == check || self.end_checks.1 == check
    }

    pub fn overlaps(&self, other: &Path) -> bool {
        self.edges.iter().any(|e| other.edges.contains(e))
    }

    /// Indicator vector of the walk over `num_vars` variables.
    pub fn support(&self, num_vars: usize) -> BitVector {
        BitVector::from_support(num_vars, &self.edges)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Selector {
    Greedy,
    Lp,
}

struct Walk {
    edges: Vec<usize>,
    end: usize,
    weight: f64,
}

/// Follows the largest positive component out of each check, never reusing
/// a variable, until a check in `targets` is reached. Equal components go to
/// the lowest variable index. A walk that runs out of edges has weight 0.
fn walk(graph: &TannerGraph, omega: &[f64], start: usize, targets: &[bool]) -> Walk {
    let mut used = vec![false; graph.num_vars()];
    let mut edges = Vec::new();
    let mut weight = f64::INFINITY;
    let mut at = start;
    loop {
        let mut best: Option<usize> = None;
        for &v in graph.check_vars(at) {
            if used[v] || omega[v] <= 0.0 {
                continue;
            }
            if best.map_or(true, |b| omega[v] > omega[b]) {
                best = Some(v);
            }
        }
        let Some(v) = best else {
            return Walk {
                edges,
                end: at,
                weight: 0.0,
            };
        };
        used[v] = true;
        edges.push(v);
        weight = weight.min(omega[v]);
        at = graph.other_end(v, at).expect("cycle-code variable");
        if targets[at] {
            return Walk {
                edges,
                end: at,
                weight,
            };
        }
    }
}

fn check_inputs(omega: &Pseudocodeword, s: &Syndrome, graph: &TannerGraph) -> Result<()> {
    graph.require_cycle_code()?;
    if omega.len() != graph.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: graph.num_vars(),
            actual: omega.len(),
        });
    }
    if s.len() != graph.num_checks() {
        return Err(Error::DimensionMismatch {
            expected: graph.num_checks(),
            actual: s.len(),
        });
    }
    Ok(())
}

/// Peels `omega` into walks between unsatisfied checks.
///
/// Each round walks out of every remaining unsatisfied check, subtracts the
/// cheapest walk's weight along it, and keeps the walk if it ends at a
/// different check. Checks whose walk had weight 0 leave the active set.
/// Returns the kept paths and what is left of `omega`.
pub fn decompose(
    omega: &Pseudocodeword,
    s: &Syndrome,
    graph: &TannerGraph,
) -> Result<(Vec<Path>, Pseudocodeword)> {
    check_inputs(omega, s, graph)?;
    let mut w = omega.values().to_vec();
    let mut active: BTreeSet<usize> = s.unsatisfied().into_iter().collect();
    let mut in_active = vec![false; graph.num_checks()];
    for &j in &active {
        in_active[j] = true;
    }
    let mut paths = Vec::new();

    while !active.is_empty() {
        let walks: Vec<(usize, Walk)> = active
            .iter()
            .map(|&j| (j, walk(graph, &w, j, &in_active)))
            .collect();

        let mut chosen: Option<(f64, usize)> = None;
        for (idx, (_, wk)) in walks.iter().enumerate() {
            if wk.weight <= 0.0 {
                continue;
            }
            let cost = (1.0 - wk.weight) * wk.edges.len() as f64;
            if chosen.map_or(true, |(c, _)| cost < c) {
                chosen = Some((cost, idx));
            }
        }

        if let Some((_, idx)) = chosen {
            let (start, wk) = &walks[idx];
            for &v in &wk.edges {
                w[v] -= wk.weight;
            }
            if wk.end != *start {
                paths.push(Path::new(wk.edges.clone(), (*start, wk.end), wk.weight));
            }
        }

        for (j, wk) in &walks {
            if wk.weight <= 0.0 {
                active.remove(j);
                in_active[*j] = false;
            }
        }
    }
    Ok((paths, Pseudocodeword::new(w)))
}

/// Repeatedly takes the cheapest remaining path (lowest index on ties),
/// then drops every path that touches a covered check or shares a variable
/// with the output. The flag reports whether every unsatisfied check got
/// covered.
pub fn greedy_select(paths: &[Path], s: &Syndrome, num_vars: usize) -> (BitVector, bool) {
    let mut v = BitVector::zeros(num_vars);
    let mut open: BTreeSet<usize> = s.unsatisfied().into_iter().collect();
    let mut available: Vec<usize> = (0..paths.len()).collect();
    while !open.is_empty() && !available.is_empty() {
        let mut best = available[0];
        for &i in &available[1..] {
            if paths[i].cost < paths[best].cost {
                best = i;
            }
        }
        let p = &paths[best];
        for &e in &p.edges {
            v.set(e, true);
        }
        open.remove(&p.end_checks.0);
        open.remove(&p.end_checks.1);
        available.retain(|&i| {
            let q = &paths[i];
            open.contains(&q.end_checks.0)
                && open.contains(&q.end_checks.1)
                && q.edges.iter().all(|&e| !v.get(e))
        });
    }
    (v, open.is_empty())
}

/// Runs `selector` over `paths` and reports `(v, matched)`.
pub fn select(
    selector: Selector,
    paths: &[Path],
    s: &Syndrome,
    num_vars: usize,
) -> (BitVector, bool) {
    match selector {
        Selector::Greedy => greedy_select(paths, s, num_vars),
        Selector::Lp => lp_select(paths, s, num_vars),
    }
}

/// SPA, falling back to pseudocodeword decomposition when the hard
/// decision misses the syndrome.
pub fn spa_pcwd_decode(
    graph: &TannerGraph,
    llrs: &[f64],
    s: &Syndrome,
    cfg: &SpaConfig,
    selector: Selector,
) -> Result<DecodeResult> {
    graph.require_cycle_code()?;
    let first = spa_decode(graph, llrs, s, cfg)?;
    if first.converged {
        return Ok(first);
    }
    let (paths, _) = decompose(&first.pseudocodeword, s, graph)?;
    let (v, matched) = select(selector, &paths, s, graph.num_vars());
    let result =
        DecodeResult::checked(graph, v, s, first.iterations_used, 1, first.pseudocodeword)?;
    debug_assert!(!matched || result.converged);
    Ok(result)
}
