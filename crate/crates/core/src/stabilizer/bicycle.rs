use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{PauliVector, StabilizerCode};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// MacKay-style bicycle code `[[n, k]]` whose parity-check rows have weight
/// `row_weight`.
///
/// A random `n/2 x n/2` circulant `C` with `row_weight / 2` ones per row is
/// drawn from `seed`, and `H0 = [C | C^T]` is used for both the `X` and the
/// `Z` generators (`C C^T = C^T C` makes them commute). Rows of `H0` are
/// deleted one at a time until `(n - k) / 2` remain: each step removes the
/// row leaving the most even column weights, ties to the lowest index,
/// skipping rows whose removal would drop the rank below the target.
pub fn build_bicycle(n: usize, k: usize, row_weight: usize, seed: u64) -> Result<StabilizerCode> {
    let invalid = |m: String| Err(Error::InvalidParameter(m));
    if n == 0 || n % 2 != 0 {
        return invalid(format!("bicycle length must be even and positive, got {n}"));
    }
    if row_weight == 0 || row_weight % 2 != 0 {
        return invalid(format!(
            "row weight must be even and positive, got {row_weight}"
        ));
    }
    if k >= n || (n - k) % 2 != 0 {
        return invalid(format!("need k < n with n - k even, got n = {n}, k = {k}"));
    }
    let size = n / 2;
    let half_weight = row_weight / 2;
    if half_weight > size {
        return invalid(format!(
            "circulant weight {half_weight} exceeds circulant size {size}"
        ));
    }
    let target = (n - k) / 2;
    if target > size {
        return invalid(format!(
            "{target} checks per type exceed the {size} available rows"
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut support = index::sample(&mut rng, size, half_weight).into_vec();
    support.sort_unstable();

    let mut rows: Vec<BitVector> = (0..size)
        .map(|r| {
            let mut row = BitVector::zeros(n);
            for &s in &support {
                // C[r][(r + s) mod size] = 1, so C^T[r][(r - s) mod size] = 1
                row.set((r + s) % size, true);
                row.set(size + (r + size - s) % size, true);
            }
            row
        })
        .collect();

    let mut col_weights = vec![0i64; n];
    for row in &rows {
        for c in row.iter_ones() {
            col_weights[c] += 1;
        }
    }
    while rows.len() > target {
        let mut order: Vec<(i64, i64, usize)> = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut w = col_weights.clone();
                for c in row.iter_ones() {
                    w[c] -= 1;
                }
                let sq: i64 = w.iter().map(|x| x * x).sum();
                let spread = w.iter().max().unwrap() - w.iter().min().unwrap();
                (sq, spread, i)
            })
            .collect();
        order.sort_unstable();
        let chosen = order.iter().map(|&(_, _, i)| i).find(|&i| {
            let mut rest = rows.clone();
            rest.remove(i);
            BitMatrix::from_rows(rest, n).map(|m| m.rank()).unwrap_or(0) >= target
        });
        let Some(i) = chosen else {
            return invalid(format!(
                "cannot keep {target} independent rows (seed {seed})"
            ));
        };
        for c in rows[i].iter_ones() {
            col_weights[c] -= 1;
        }
        rows.remove(i);
    }
    if BitMatrix::from_rows(rows.clone(), n)?.rank() != target {
        return invalid(format!(
            "circulant from seed {seed} has rank below {target}"
        ));
    }

    let zero = BitVector::zeros(n);
    let mut stabilizers = BitMatrix::zeros(0, 2 * n);
    for row in &rows {
        stabilizers.push_row(PauliVector::from_css(row, &zero)?.into_bits())?;
    }
    for row in &rows {
        stabilizers.push_row(PauliVector::from_css(&zero, row)?.into_bits())?;
    }
    let code = StabilizerCode::from_stabilizers(n, stabilizers)?;
    debug_assert_eq!(code.k(), k);
    Ok(code)
}
