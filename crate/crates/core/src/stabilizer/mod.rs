//! Stabilizer codes in the binary symplectic picture.
//!
//! A code is given by its stabilizer generators (rows of length `2n`). The
//! stabilizer label code `B` is their row space; the normalizer label code
//! `N` is its symplectic dual. The parity-check matrix `H` of `N` is the
//! generator list with every qubit's `(x, z)` pair swapped, so `H e^T` is the
//! vector of symplectic products between `e` and the generators. Redundant
//! generators are kept as rows of `H`.

mod bicycle;
mod distance;
mod io;
mod patterns;
mod pauli;
mod toric;

pub use bicycle::build_bicycle;
pub use distance::{min_distance, min_weight_element, DistanceLimits, DistanceMode};
pub use io::{
    css_from_matrices, load_code, load_css_alist, parse_alist, parse_code, read_alist, write_alist,
    write_code,
};
pub use patterns::{pattern_count, weight_patterns, PauliPattern, WeightPatterns};
pub use pauli::{Pauli, PauliVector};
pub use toric::{build_toric, ToricLayout};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{symplectic_product, BitMatrix, BitVector, RowBasis};

/// Syndrome bits, one per row of `H`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Syndrome(BitVector);

impl Syndrome {
    pub fn zeros(len: usize) -> Self {
        Self(BitVector::zeros(len))
    }

    pub fn from_bits(bits: BitVector) -> Self {
        Self(bits)
    }

    pub fn bits(&self) -> &BitVector {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn get(&self, check: usize) -> bool {
        self.0.get(check)
    }

    /// Indices of unsatisfied checks.
    pub fn unsatisfied(&self) -> Vec<usize> {
        self.0.iter_ones().collect()
    }
}

/// Outcome of comparing a decoder output with the actual error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CosetClass {
    SameCosetOfB,
    LogicalError,
    SyndromeMismatch,
}

impl CosetClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CosetClass::SameCosetOfB => "SAME_COSET_OF_B",
            CosetClass::LogicalError => "LOGICAL_ERROR",
            CosetClass::SyndromeMismatch => "SYNDROME_MISMATCH",
        }
    }
}

/// An `[[n, k]]` stabilizer code with its label codes.
#[derive(Clone, Debug)]
pub struct StabilizerCode {
    n: usize,
    k: usize,
    stabilizers: BitMatrix,
    generators_b: BitMatrix,
    parity_check: BitMatrix,
    generators_n: BitMatrix,
    logicals: BitMatrix,
    is_cycle_code: bool,
    // syndromes of X, Y, Z on each qubit
    single_syndromes: Vec<[BitVector; 3]>,
}

impl StabilizerCode {
    /// Validates the generators and derives `H`, `N` and the metadata.
    ///
    /// Rejects generator lists that are not pairwise commuting, naming the
    /// first offending pair.
    pub fn from_stabilizers(n: usize, stabilizers: BitMatrix) -> Result<Self> {
        if stabilizers.cols() != 2 * n {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                actual: stabilizers.cols(),
            });
        }
        let rows = stabilizers.row_vectors();
        for i in 0..rows.len() {
            for j in (i + 1)..rows.len() {
                if symplectic_product(&rows[i], &rows[j])? {
                    return Err(Error::NotSelfOrthogonal {
                        first: i,
                        second: j,
                    });
                }
            }
        }

        let independent = stabilizers.independent_rows();
        let generators_b = stabilizers.select_rows(&independent);
        let k = n - generators_b.rows();

        let parity_check =
            BitMatrix::from_rows(rows.iter().map(BitVector::swap_pairs).collect(), 2 * n)?;
        let generators_n = parity_check.nullspace_basis();

        let mut basis = RowBasis::new(2 * n);
        for row in generators_b.row_vectors() {
            basis.insert(row);
        }
        let mut logicals = Vec::with_capacity(2 * k);
        for row in generators_n.row_vectors() {
            if basis.insert(row) {
                logicals.push(row.clone());
            }
        }
        let logicals = BitMatrix::from_rows(logicals, 2 * n)?;

        let is_cycle_code = (0..2 * n).all(|c| parity_check.column_weight(c) == 2);

        let t = parity_check.transpose();
        let single_syndromes = (0..n)
            .map(|q| {
                let x = t.row(2 * q).clone();
                let z = t.row(2 * q + 1).clone();
                let y = x.xor(&z);
                [x, y, z]
            })
            .collect();

        let code = Self {
            n,
            k,
            stabilizers,
            generators_b,
            parity_check,
            generators_n,
            logicals,
            is_cycle_code,
            single_syndromes,
        };
        debug_assert!(code.check_invariants().is_ok());
        Ok(code)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Generators as supplied, including redundant ones.
    pub fn stabilizers(&self) -> &BitMatrix {
        &self.stabilizers
    }

    /// A basis of `B` (`n - k` rows).
    pub fn generators_b(&self) -> &BitMatrix {
        &self.generators_b
    }

    /// Parity-check matrix of `N`; one row per supplied generator.
    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    /// A basis of `N` (`n + k` rows).
    pub fn generators_n(&self) -> &BitMatrix {
        &self.generators_n
    }

    /// `2k` vectors completing a basis of `B` to a basis of `N`.
    pub fn logicals(&self) -> &BitMatrix {
        &self.logicals
    }

    pub fn is_cycle_code(&self) -> bool {
        self.is_cycle_code
    }

    pub fn num_checks(&self) -> usize {
        self.parity_check.rows()
    }

    /// Re-verifies every structural invariant of the code.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InvalidParameter(m.to_string()));
        let b = self.generators_b.row_vectors();
        for i in 0..b.len() {
            for j in i..b.len() {
                if symplectic_product(&b[i], &b[j])? {
                    return Err(Error::NotSelfOrthogonal {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        if self.generators_b.rank() != self.n - self.k {
            return fail("rank of B basis differs from n - k");
        }
        if self.generators_n.rank() != self.n + self.k {
            return fail("rank of N basis differs from n + k");
        }
        let mut n_basis = RowBasis::new(2 * self.n);
        for row in self.generators_n.row_vectors() {
            n_basis.insert(row);
        }
        if !b.iter().all(|row| n_basis.contains(row)) {
            return fail("B is not contained in N");
        }
        for row in self.generators_n.row_vectors() {
            if !self.parity_check.mul_vec(row)?.is_zero() {
                return fail("H does not annihilate N");
            }
        }
        let cycle = (0..2 * self.n).all(|c| self.parity_check.column_weight(c) == 2);
        if cycle != self.is_cycle_code {
            return fail("cycle-code flag is stale");
        }
        Ok(())
    }

    fn check_len(&self, v: &PauliVector) -> Result<()> {
        if v.num_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.n,
                actual: v.bits().len(),
            });
        }
        Ok(())
    }

    /// `s = H e^T`.
    pub fn syndrome(&self, e: &PauliVector) -> Result<Syndrome> {
        self.check_len(e)?;
        Ok(Syndrome(self.parity_check.mul_vec(e.bits())?))
    }

    /// Syndrome of a sparse pattern, accumulated from per-qubit syndromes.
    pub fn pattern_syndrome(&self, pattern: &[(usize, Pauli)]) -> Syndrome {
        let mut s = BitVector::zeros(self.num_checks());
        for &(q, p) in pattern {
            if let Some(single) = self.single_syndrome(q, p) {
                s.xor_assign(single);
            }
        }
        Syndrome(s)
    }

    pub fn single_syndrome(&self, qubit: usize, pauli: Pauli) -> Option<&BitVector> {
        let slot = match pauli {
            Pauli::I => return None,
            Pauli::X => 0,
            Pauli::Y => 1,
            Pauli::Z => 2,
        };
        Some(&self.single_syndromes[qubit][slot])
    }

    /// Deterministic coset representative `t(s)` from the pivot solver.
    pub fn coset_representative(&self, s: &Syndrome) -> Result<PauliVector> {
        let x = self
            .parity_check
            .solve(s.bits())?
            .ok_or(Error::InconsistentSyndrome)?;
        PauliVector::from_bits(x)
    }

    pub fn in_normalizer(&self, v: &PauliVector) -> Result<bool> {
        Ok(self.syndrome(v)?.is_zero())
    }

    /// Membership in `B`, tested as symplectic orthogonality to all of `N`.
    pub fn in_stabilizer(&self, v: &PauliVector) -> Result<bool> {
        self.check_len(v)?;
        for row in self.generators_n.row_vectors() {
            if symplectic_product(v.bits(), row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Compares decoder output `v` with the actual error `e`.
    pub fn classify(&self, v: &PauliVector, e: &PauliVector) -> Result<CosetClass> {
        self.check_len(v)?;
        self.check_len(e)?;
        let diff = v.add(e);
        if !self.syndrome(&diff)?.is_zero() {
            Ok(CosetClass::SyndromeMismatch)
        } else if self.in_stabilizer(&diff)? {
            Ok(CosetClass::SameCosetOfB)
        } else {
            Ok(CosetClass::LogicalError)
        }
    }

    /// Stabilizer row `r` as a Pauli vector.
    pub fn stabilizer(&self, r: usize) -> PauliVector {
        PauliVector::from_bits(self.stabilizers.row(r).clone()).expect("even length")
    }
}

/// Pauli weight, `Wt(v) = #{i : v_i != (0,0)}`.
pub fn pauli_weight(v: &PauliVector) -> usize {
    v.weight()
}
