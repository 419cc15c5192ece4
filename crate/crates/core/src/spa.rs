//! Syndrome sum-product decoding on the Tanner graph of `H`.
//!
//! Messages live in the LLR domain and are updated on a flooding schedule.
//! A check `j` with syndrome bit `s_j = 1` flips the sign of everything it
//! sends, so the decoder searches the coset `t(s) + N` rather than `N`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::stabilizer::{PauliVector, Syndrome};

/// Messages are clipped to `[-MESSAGE_CLIP, MESSAGE_CLIP]`.
pub const MESSAGE_CLIP: f64 = 30.0;

/// Default iteration budget.
pub const DEFAULT_MAX_ITERS: usize = 100;

/// Bipartite check/variable graph. Edges are numbered check-major, so the
/// edges of check `j` are `check_start[j]..check_start[j + 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TannerGraph {
    num_vars: usize,
    check_start: Vec<usize>,
    edge_var: Vec<usize>,
    edge_check: Vec<usize>,
    var_edges: Vec<Vec<usize>>,
}

pub fn build_tanner(h: &BitMatrix) -> TannerGraph {
    let mut check_start = Vec::with_capacity(h.rows() + 1);
    let mut edge_var = Vec::new();
    let mut edge_check = Vec::new();
    let mut var_edges = vec![Vec::new(); h.cols()];
    check_start.push(0);
    for (j, row) in h.row_vectors().iter().enumerate() {
        for i in row.iter_ones() {
            var_edges[i].push(edge_var.len());
            edge_var.push(i);
            edge_check.push(j);
        }
        check_start.push(edge_var.len());
    }
    TannerGraph {
        num_vars: h.cols(),
        check_start,
        edge_var,
        edge_check,
        var_edges,
    }
}

impl TannerGraph {
    pub fn num_checks(&self) -> usize {
        self.check_start.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_edges(&self) -> usize {
        self.edge_var.len()
    }

    /// Variables adjacent to check `j`, in increasing order.
    pub fn check_vars(&self, j: usize) -> &[usize] {
        &self.edge_var[self.check_start[j]..self.check_start[j + 1]]
    }

    /// Checks adjacent to variable `i`, in increasing order.
    pub fn var_checks(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.var_edges[i].iter().map(|&e| self.edge_check[e])
    }

    pub fn var_degree(&self, i: usize) -> usize {
        self.var_edges[i].len()
    }

    pub fn column_weights(&self) -> Vec<usize> {
        self.var_edges.iter().map(Vec::len).collect()
    }

    /// True when every variable touches exactly two checks.
    pub fn is_cycle_code(&self) -> bool {
        self.var_edges.iter().all(|e| e.len() == 2)
    }

    /// Fails with [`Error::NotCycleCode`] on the first variable of degree
    /// other than two.
    pub fn require_cycle_code(&self) -> Result<()> {
        match self.var_edges.iter().position(|e| e.len() != 2) {
            None => Ok(()),
            Some(variable) => Err(Error::NotCycleCode {
                variable,
                degree: self.var_edges[variable].len(),
            }),
        }
    }

    /// For a degree-2 variable, the check across from `check`.
    pub fn other_end(&self, var: usize, check: usize) -> Option<usize> {
        let mut ends = self.var_checks(var);
        let (a, b) = (ends.next()?, ends.next()?);
        if a == check {
            Some(b)
        } else if b == check {
            Some(a)
        } else {
            None
        }
    }

    /// `H x^T` computed from the adjacency lists.
    pub fn syndrome_of(&self, x: &BitVector) -> BitVector {
        let mut s = BitVector::zeros(self.num_checks());
        for j in 0..self.num_checks() {
            let parity = self.check_vars(j).iter().filter(|&&i| x.get(i)).count() % 2 == 1;
            s.set(j, parity);
        }
        s
    }

    /// Graph induced by the given checks and every variable they touch.
    /// Returns the subgraph and the original index of each kept variable.
    pub fn subgraph(&self, checks: &[usize]) -> (TannerGraph, Vec<usize>) {
        let mut vars: Vec<usize> = checks
            .iter()
            .flat_map(|&j| self.check_vars(j).iter().copied())
            .collect();
        vars.sort_unstable();
        vars.dedup();
        let mut h = BitMatrix::zeros(checks.len(), vars.len());
        for (r, &j) in checks.iter().enumerate() {
            for i in self.check_vars(j) {
                let c = vars.binary_search(i).expect("variable collected above");
                h.set(r, c, true);
            }
        }
        (build_tanner(&h), vars)
    }

    fn check_sign(&self, s: &Syndrome) -> Vec<f64> {
        (0..self.num_checks())
            .map(|j| if s.get(j) { -1.0 } else { 1.0 })
            .collect()
    }
}

/// Beliefs `b_i(1)` at termination.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pseudocodeword(Vec<f64>);

impl Pseudocodeword {
    /// Panics if any component lies outside `[0, 1]`.
    pub fn new(omega: Vec<f64>) -> Self {
        assert!(
            omega.iter().all(|w| (0.0..=1.0).contains(w)),
            "pseudocodeword components must lie in [0, 1]"
        );
        Self(omega)
    }

    /// `b_i(1) = 1 / (1 + e^{L_i})` for each posterior LLR.
    pub fn from_llrs(posterior: &[f64]) -> Self {
        Self(posterior.iter().map(|&l| 1.0 / (1.0 + l.exp())).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DecodeStatus {
    SyndromeMatched,
    SyndromeMismatch,
}

impl DecodeStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            DecodeStatus::SyndromeMatched => "SYNDROME_MATCHED",
            DecodeStatus::SyndromeMismatch => "SYNDROME_MISMATCH",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeResult {
    pub output: PauliVector,
    pub converged: bool,
    pub iterations_used: usize,
    pub trials_used: usize,
    pub pseudocodeword: Pseudocodeword,
    pub status: DecodeStatus,
}

impl DecodeResult {
    /// Result whose status is decided by re-checking `output` against `s`.
    pub fn checked(
        graph: &TannerGraph,
        output: BitVector,
        s: &Syndrome,
        iterations_used: usize,
        trials_used: usize,
        pseudocodeword: Pseudocodeword,
    ) -> Result<Self> {
        let matched = &graph.syndrome_of(&output) == s.bits();
        Ok(Self {
            output: PauliVector::from_bits(output)?,
            converged: matched,
            iterations_used,
            trials_used,
            pseudocodeword,
            status: if matched {
                DecodeStatus::SyndromeMatched
            } else {
                DecodeStatus::SyndromeMismatch
            },
        })
    }
}

/// Closed interval `[a, b]` for random weighting factors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightInterval {
    lo: f64,
    hi: f64,
}

impl WeightInterval {
    /// Requires `0 <= a <= b`, both finite.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && 0.0 <= a && a <= b) {
            return Err(Error::InvalidParameter(format!(
                "weight interval needs 0 <= a <= b, got [{a}, {b}]"
            )));
        }
        Ok(Self { lo: a, hi: b })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// One uniform draw; a degenerate interval returns `a` without touching
    /// the generator.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            rng.gen_range(self.lo..=self.hi)
        }
    }

    pub fn sample_vec<R: Rng + ?Sized>(&self, len: usize, rng: &mut R) -> Vec<f64> {
        (0..len).map(|_| self.sample(rng)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaConfig {
    pub max_iters: usize,
    /// Fraction of the previous check-to-variable message kept each
    /// iteration; 0 disables damping.
    pub damping: f64,
}

impl Default for SpaConfig {
    fn default() -> Self {
        Self {
            max_iters: DEFAULT_MAX_ITERS,
            damping: 0.0,
        }
    }
}

impl SpaConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.damping) {
            return Err(Error::InvalidParameter(format!(
                "damping must lie in [0, 1), got {}",
                self.damping
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be positive".into()));
        }
        Ok(())
    }
}

fn clip(x: f64) -> f64 {
    x.clamp(-MESSAGE_CLIP, MESSAGE_CLIP)
}

/// A decoder in progress. Each [`SpaRun::step`] performs one flooding
/// iteration: every check updates, then every variable.
#[derive(Clone, Debug)]
pub struct SpaRun<'g> {
    graph: &'g TannerGraph,
    llrs: Vec<f64>,
    rho: Option<Vec<f64>>,
    sign: Vec<f64>,
    target: BitVector,
    damping: f64,
    var_to_check: Vec<f64>,
    check_to_var: Vec<f64>,
    posterior: Vec<f64>,
    hard: BitVector,
    iteration: usize,
    scratch: Scratch,
}

/// Buffers for the leave-one-out products of one check.
#[derive(Clone, Debug, Default)]
struct Scratch {
    magnitude: Vec<f64>,
    order: Vec<usize>,
    prefix: Vec<f64>,
    suffix: Vec<f64>,
}

impl<'g> SpaRun<'g> {
    pub fn new(graph: &'g TannerGraph, llrs: &[f64], s: &Syndrome, damping: f64) -> Result<Self> {
        Self::with_rho(graph, llrs, s, damping, None)
    }

    /// Variable `i` scales its extrinsic sum by `rho[i]`.
    pub fn with_rho(
        graph: &'g TannerGraph,
        llrs: &[f64],
        s: &Syndrome,
        damping: f64,
        rho: Option<Vec<f64>>,
    ) -> Result<Self> {
        if llrs.len() != graph.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: graph.num_vars(),
                actual: llrs.len(),
            });
        }
        if s.len() != graph.num_checks() {
            return Err(Error::DimensionMismatch {
                expected: graph.num_checks(),
                actual: s.len(),
            });
        }
        if let Some(r) = &rho {
            if r.len() != graph.num_vars() {
                return Err(Error::DimensionMismatch {
                    expected: graph.num_vars(),
                    actual: r.len(),
                });
            }
        }
        let var_to_check: Vec<f64> = graph.edge_var.iter().map(|&i| clip(llrs[i])).collect();
        let max_degree = (0..graph.num_checks())
            .map(|j| graph.check_vars(j).len())
            .max()
            .unwrap_or(0);
        Ok(Self {
            graph,
            llrs: llrs.to_vec(),
            rho,
            sign: graph.check_sign(s),
            target: s.bits().clone(),
            damping,
            var_to_check,
            check_to_var: vec![0.0; graph.num_edges()],
            posterior: llrs.to_vec(),
            hard: BitVector::zeros(graph.num_vars()),
            iteration: 0,
            scratch: Scratch {
                magnitude: Vec::with_capacity(max_degree),
                order: Vec::with_capacity(max_degree),
                prefix: Vec::with_capacity(max_degree + 1),
                suffix: Vec::with_capacity(max_degree + 1),
            },
        })
    }

    /// Tanh rule at check `j`. Magnitudes are multiplied in sorted order and
    /// signs handled separately, so the result depends only on the multiset
    /// of incoming messages: permuting a check's edges, or flipping the sign
    /// of an incoming message, changes the outputs exactly as the exact rule
    /// would, with no rounding drift.
    fn check_update(&mut self, j: usize, start: usize, end: usize) {
        let sc = &mut self.scratch;
        let incoming = &self.var_to_check[start..end];
        let degree = incoming.len();
        sc.magnitude.clear();
        sc.magnitude
            .extend(incoming.iter().map(|m| (0.5 * m.abs()).tanh()));
        let negative_parity = incoming.iter().filter(|&&m| m < 0.0).count() % 2 == 1;

        sc.order.clear();
        sc.order.extend(0..degree);
        let magnitude = &sc.magnitude;
        sc.order
            .sort_by(|&a, &b| magnitude[a].total_cmp(&magnitude[b]));

        sc.prefix.clear();
        sc.prefix.push(1.0);
        for r in 0..degree {
            let last = sc.prefix[r];
            sc.prefix.push(last * magnitude[sc.order[r]]);
        }
        sc.suffix.clear();
        sc.suffix.resize(degree + 1, 1.0);
        for r in (0..degree).rev() {
            sc.suffix[r] = magnitude[sc.order[r]] * sc.suffix[r + 1];
        }

        // equal magnitudes all take the product that skips their first copy
        let mut first_equal = 0;
        for r in 0..degree {
            let k = sc.order[r];
            if r == 0 || magnitude[k] != magnitude[sc.order[r - 1]] {
                first_equal = r;
            }
            let product = sc.prefix[first_equal] * sc.suffix[first_equal + 1];
            let flip = negative_parity != (incoming[k] < 0.0);
            let sign = if flip { -self.sign[j] } else { self.sign[j] };
            let fresh = clip(sign * 2.0 * product.atanh());
            let e = start + k;
            self.check_to_var[e] = if self.damping == 0.0 || self.iteration == 0 {
                fresh
            } else {
                self.damping * self.check_to_var[e] + (1.0 - self.damping) * fresh
            };
        }
    }

    /// Runs one iteration and reports whether the hard decision now
    /// satisfies the syndrome.
    pub fn step(&mut self) -> bool {
        let g = self.graph;
        for j in 0..g.num_checks() {
            let (start, end) = (g.check_start[j], g.check_start[j + 1]);
            self.check_update(j, start, end);
        }

        for (i, edges) in g.var_edges.iter().enumerate() {
            let total: f64 = edges.iter().map(|&e| self.check_to_var[e]).sum();
            let rho = self.rho.as_ref().map_or(1.0, |r| r[i]);
            self.posterior[i] = self.llrs[i] + rho * total;
            for &e in edges {
                let extrinsic: f64 = edges
                    .iter()
                    .filter(|&&f| f != e)
                    .map(|&f| self.check_to_var[f])
                    .sum();
                self.var_to_check[e] = clip(self.llrs[i] + rho * extrinsic);
            }
            self.hard.set(i, self.posterior[i] < 0.0);
        }
        self.iteration += 1;
        self.matched()
    }

    pub fn matched(&self) -> bool {
        self.iteration > 0 && self.graph.syndrome_of(&self.hard) == self.target
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn hard_decision(&self) -> &BitVector {
        &self.hard
    }

    pub fn posterior(&self) -> &[f64] {
        &self.posterior
    }

    pub fn pseudocodeword(&self) -> Pseudocodeword {
        Pseudocodeword::from_llrs(&self.posterior)
    }

    /// Steps until the syndrome matches or `max_iters` iterations ran.
    pub fn run(mut self, max_iters: usize) -> Result<DecodeResult> {
        let mut converged = false;
        while self.iteration < max_iters {
            if self.step() {
                converged = true;
                break;
            }
        }
        let result = self.finish(1)?;
        debug_assert_eq!(result.converged, converged);
        Ok(result)
    }

    fn finish(self, trials_used: usize) -> Result<DecodeResult> {
        let omega = self.pseudocodeword();
        DecodeResult::checked(
            self.graph,
            self.hard,
            &Syndrome::from_bits(self.target),
            self.iteration,
            trials_used,
            omega,
        )
    }
}

/// Plain syndrome SPA.
pub fn spa_decode(
    graph: &TannerGraph,
    llrs: &[f64],
    s: &Syndrome,
    cfg: &SpaConfig,
) -> Result<DecodeResult> {
    cfg.validate()?;
    SpaRun::new(graph, llrs, s, cfg.damping)?.run(cfg.max_iters)
}

/// SPA with a fresh per-variable reweighting factor `rho_i ~ U[a, b]`
/// scaling each variable's extrinsic message sum. `a` must be positive.
pub fn rr_spa_decode<R: Rng + ?Sized>(
    graph: &TannerGraph,
    llrs: &[f64],
    s: &Syndrome,
    cfg: &SpaConfig,
    interval: WeightInterval,
    rng: &mut R,
) -> Result<DecodeResult> {
    cfg.validate()?;
    if interval.lo() <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "reweighting interval must be positive, got [{}, {}]",
            interval.lo(),
            interval.hi()
        )));
    }
    let rho = interval.sample_vec(graph.num_vars(), rng);
    SpaRun::with_rho(graph, llrs, s, cfg.damping, Some(rho))?.run(cfg.max_iters)
}

/// Repeats [`rr_spa_decode`] with fresh factors until the syndrome matches,
/// at most `max_trials` times.
pub fn rr_spa_retry<R: Rng + ?Sized>(
    graph: &TannerGraph,
    llrs: &[f64],
    s: &Syndrome,
    cfg: &SpaConfig,
    interval: WeightInterval,
    max_trials: usize,
    rng: &mut R,
) -> Result<DecodeResult> {
    if max_trials == 0 {
        return Err(Error::InvalidParameter(
            "max_trials must be positive".into(),
        ));
    }
    let mut trial = 1;
    loop {
        let mut result = rr_spa_decode(graph, llrs, s, cfg, interval, rng)?;
        result.trials_used = trial;
        if result.converged || trial == max_trials {
            return Ok(result);
        }
        trial += 1;
    }
}
