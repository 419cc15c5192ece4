use super::{Pauli, PauliVector, StabilizerCode};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Index conventions of the `L x L` toric code.
///
/// Qubits live on edges, numbered row-major with all horizontal edges first:
/// horizontal edge `(r, c)` joins vertices `(r, c)` and `(r, c+1)` and has
/// index `r L + c`; vertical edge `(r, c)` joins `(r, c)` and `(r+1, c)` and
/// has index `L^2 + r L + c`. Generators (and rows of `H`) list the `L^2`
/// star operators first (`X` on the edges at vertex `(r, c)`, row `r L + c`),
/// then the `L^2` plaquette operators (`Z` on the edges around face `(r, c)`,
/// whose corners are `(r, c)` and `(r+1, c+1)`, row `L^2 + r L + c`).
///
/// Star rows of `H` act on `z` bits and plaquette rows on `x` bits, so the
/// decoding graph splits into two disjoint cycle codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ToricLayout {
    pub size: usize,
}

impl ToricLayout {
    pub fn new(size: usize) -> Self {
        Self { size }
    }

    pub fn num_qubits(&self) -> usize {
        2 * self.size * self.size
    }

    fn wrap(&self, i: isize) -> usize {
        i.rem_euclid(self.size as isize) as usize
    }

    pub fn horizontal(&self, r: isize, c: isize) -> usize {
        self.wrap(r) * self.size + self.wrap(c)
    }

    pub fn vertical(&self, r: isize, c: isize) -> usize {
        self.size * self.size + self.wrap(r) * self.size + self.wrap(c)
    }

    /// Row of `H` of the star at vertex `(r, c)`.
    pub fn star(&self, r: isize, c: isize) -> usize {
        self.wrap(r) * self.size + self.wrap(c)
    }

    /// Row of `H` of the plaquette at face `(r, c)`.
    pub fn plaquette(&self, r: isize, c: isize) -> usize {
        self.size * self.size + self.wrap(r) * self.size + self.wrap(c)
    }

    pub fn star_edges(&self, r: isize, c: isize) -> [usize; 4] {
        [
            self.horizontal(r, c),
            self.horizontal(r, c - 1),
            self.vertical(r, c),
            self.vertical(r - 1, c),
        ]
    }

    pub fn plaquette_edges(&self, r: isize, c: isize) -> [usize; 4] {
        [
            self.horizontal(r, c),
            self.horizontal(r + 1, c),
            self.vertical(r, c),
            self.vertical(r, c + 1),
        ]
    }

    /// Qubit `q` shifted by `(dr, dc)` on the torus.
    pub fn translate_qubit(&self, q: usize, dr: isize, dc: isize) -> usize {
        let l2 = self.size * self.size;
        let (r, c) = ((q % l2 / self.size) as isize, (q % self.size) as isize);
        if q < l2 {
            self.horizontal(r + dr, c + dc)
        } else {
            self.vertical(r + dr, c + dc)
        }
    }

    /// Row of `H` shifted by `(dr, dc)`; stars stay stars.
    pub fn translate_check(&self, row: usize, dr: isize, dc: isize) -> usize {
        // same arithmetic as qubits: two blocks of L^2
        self.translate_qubit(row, dr, dc)
    }

    /// Tanner-graph variable carrying the `x` bit of qubit `q`.
    pub fn x_var(q: usize) -> usize {
        2 * q
    }

    /// Tanner-graph variable carrying the `z` bit of qubit `q`.
    pub fn z_var(q: usize) -> usize {
        2 * q + 1
    }
}

/// The `[[2L^2, 2, L]]` toric code; see [`ToricLayout`] for indexing.
pub fn build_toric(size: usize) -> Result<StabilizerCode> {
    if size < 2 {
        return Err(Error::InvalidParameter(format!(
            "toric code needs L >= 2, got {size}"
        )));
    }
    let layout = ToricLayout::new(size);
    let n = layout.num_qubits();
    let mut stabilizers = BitMatrix::zeros(0, 2 * n);
    for (pauli, edges_of) in [
        (
            Pauli::X,
            ToricLayout::star_edges as fn(&ToricLayout, isize, isize) -> [usize; 4],
        ),
        (Pauli::Z, ToricLayout::plaquette_edges),
    ] {
        for r in 0..size as isize {
            for c in 0..size as isize {
                let pattern: Vec<_> = edges_of(&layout, r, c)
                    .iter()
                    .map(|&q| (q, pauli))
                    .collect();
                stabilizers.push_row(PauliVector::from_pattern(n, &pattern).into_bits())?;
            }
        }
    }
    StabilizerCode::from_stabilizers(n, stabilizers)
}
