//! Exact minimum-cost cover of the unsatisfied checks by disjoint paths.
//!
//! The relaxation `min sum cost_i x_i` with one equality per unsatisfied
//! check and `x_i + x_k <= 1` for every pair of paths sharing a variable is
//! solved with `minilp`; fractional optima are resolved by depth-first
//! branch and bound on the lowest-index fractional variable.

use std::collections::BTreeSet;

use minilp::{ComparisonOp, OptimizationDirection, Problem};

use super::Path;
use crate::gf2::BitVector;
use crate::stabilizer::Syndrome;

const INTEGRAL_TOL: f64 = 1e-7;
const COST_TOL: f64 = 1e-9;

struct Instance<'a> {
    paths: &'a [Path],
    open: Vec<usize>,
    conflicts: Vec<(usize, usize)>,
}

impl Instance<'_> {
    /// LP optimum with variable bounds `bounds`, or `None` if infeasible.
    fn relax(&self, bounds: &[(f64, f64)]) -> Option<(f64, Vec<f64>)> {
        let mut lp = Problem::new(OptimizationDirection::Minimize);
        let vars: Vec<_> = self
            .paths
            .iter()
            .zip(bounds)
            .map(|(p, &b)| lp.add_var(p.cost, b))
            .collect();
        for &j in &self.open {
            let terms: Vec<_> = self
                .paths
                .iter()
                .enumerate()
                .filter(|(_, p)| p.touches(j))
                .map(|(i, _)| (vars[i], 1.0))
                .collect();
            lp.add_constraint(terms, ComparisonOp::Eq, 1.0);
        }
        for &(a, b) in &self.conflicts {
            lp.add_constraint([(vars[a], 1.0), (vars[b], 1.0)], ComparisonOp::Le, 1.0);
        }
        let solution = lp.solve().ok()?;
        let x = vars.iter().map(|&v| *solution.var_value(v)).collect();
        Some((solution.objective(), x))
    }

    fn branch(&self, bounds: &mut Vec<(f64, f64)>, best: &mut Option<(f64, Vec<usize>)>) {
        let Some((objective, x)) = self.relax(bounds) else {
            return;
        };
        if let Some((incumbent, _)) = best {
            if objective >= *incumbent - COST_TOL {
                return;
            }
        }
        match x
            .iter()
            .position(|&xi| (xi - xi.round()).abs() > INTEGRAL_TOL)
        {
            None => {
                let chosen: Vec<usize> = (0..x.len()).filter(|&i| x[i] > 0.5).collect();
                let cost = chosen.iter().map(|&i| self.paths[i].cost).sum();
                *best = Some((cost, chosen));
            }
            Some(i) => {
                let saved = bounds[i];
                for fixed in [1.0, 0.0] {
                    bounds[i] = (fixed, fixed);
                    self.branch(bounds, best);
                }
                bounds[i] = saved;
            }
        }
    }
}

/// Cheapest set of pairwise variable-disjoint paths covering every
/// unsatisfied check exactly once. Returns the union of the chosen paths
/// and `true`, or the zero vector and `false` when no such set exists.
pub fn lp_select(paths: &[Path], s: &Syndrome, num_vars: usize) -> (BitVector, bool) {
    let open: BTreeSet<usize> = s.unsatisfied().into_iter().collect();
    if open.is_empty() {
        return (BitVector::zeros(num_vars), true);
    }
    // paths reaching a satisfied check can never be used
    let usable: Vec<Path> = paths
        .iter()
        .filter(|p| open.contains(&p.end_checks.0) && open.contains(&p.end_checks.1))
        .cloned()
        .collect();
    let conflicts = (0..usable.len())
        .flat_map(|a| (a + 1..usable.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| usable[a].overlaps(&usable[b]))
        .collect();
    let instance = Instance {
        paths: &usable,
        open: open.into_iter().collect(),
        conflicts,
    };
    let mut bounds = vec![(0.0, 1.0); usable.len()];
    let mut best = None;
    instance.branch(&mut bounds, &mut best);

    let mut v = BitVector::zeros(num_vars);
    match best {
        None => (v, false),
        Some((_, chosen)) => {
            for i in chosen {
                for &e in &usable[i].edges {
                    v.set(e, true);
                }
            }
            (v, true)
        }
    }
}
