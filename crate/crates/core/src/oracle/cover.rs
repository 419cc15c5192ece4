use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::spa::TannerGraph;
use crate::stabilizer::Syndrome;

/// A valid configuration of a double cover and its projection.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverConfiguration {
    /// Copy 0 of every variable, then copy 1.
    pub lifted: BitVector,
    /// `(x_i0 + x_i1) / 2` per base variable.
    pub projection: Vec<f64>,
}

impl CoverConfiguration {
    /// True when every component is 0 or 1.
    pub fn is_integral(&self) -> bool {
        self.projection.iter().all(|&w| w == 0.0 || w == 1.0)
    }

    /// The projection as a base-graph vector, if it is integral.
    pub fn to_base(&self) -> Option<BitVector> {
        self.is_integral().then(|| {
            BitVector::from_bools(
                &self
                    .projection
                    .iter()
                    .map(|&w| w == 1.0)
                    .collect::<Vec<_>>(),
            )
        })
    }
}

/// Enumerates every configuration of the double cover of `graph` that
/// satisfies the lifted syndrome (each check copy keeps its base bit).
///
/// Variable `i` connects copy `c` to copy `c` of its first check. When
/// `swaps[i]` is set it connects copy `c` to copy `1 - c` of each later
/// check; otherwise all of its edges stay within a copy.
pub fn two_cover_analysis(
    graph: &TannerGraph,
    s: &Syndrome,
    swaps: &[bool],
    budget: u128,
) -> Result<Vec<CoverConfiguration>> {
    let (m, v) = (graph.num_checks(), graph.num_vars());
    if swaps.len() != v {
        return Err(Error::DimensionMismatch {
            expected: v,
            actual: swaps.len(),
        });
    }
    if s.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            actual: s.len(),
        });
    }
    let mut h = BitMatrix::zeros(2 * m, 2 * v);
    for (i, &swap) in swaps.iter().enumerate() {
        for (slot, j) in graph.var_checks(i).enumerate() {
            let cross = swap && slot > 0;
            for copy in 0..2 {
                let check_copy = if cross { 1 - copy } else { copy };
                h.set(check_copy * m + j, copy * v + i, true);
            }
        }
    }
    let mut lifted_s = BitVector::zeros(2 * m);
    for j in s.unsatisfied() {
        lifted_s.set(j, true);
        lifted_s.set(m + j, true);
    }
    let Some(particular) = h.solve(&lifted_s)? else {
        return Ok(Vec::new());
    };
    let kernel = h.nullspace_basis();
    let dim = kernel.rows();
    if dim >= 127 || (1u128 << dim) > budget {
        return Err(Error::BudgetExceeded {
            needed: if dim >= 127 { u128::MAX } else { 1u128 << dim },
            limit: budget,
        });
    }
    let mut configurations = Vec::with_capacity(1 << dim);
    let mut x = particular;
    for step in 0u64..(1u64 << dim) {
        if step > 0 {
            x.xor_assign(kernel.row(step.trailing_zeros() as usize));
        }
        let projection = (0..v)
            .map(|i| (x.get(i) as u8 + x.get(v + i) as u8) as f64 / 2.0)
            .collect();
        configurations.push(CoverConfiguration {
            lifted: x.clone(),
            projection,
        });
    }
    Ok(configurations)
}
