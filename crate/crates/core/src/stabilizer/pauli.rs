use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{symplectic_product, BitVector};

const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

/// Single-qubit Pauli operator, mapped onto GF(2)^2 as `I=[0,0] X=[1,0] Y=[1,1] Z=[0,1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// The three non-identity Paulis in enumeration order.
    pub const NONTRIVIAL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Pauli> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Binary image of an `n`-qubit Pauli operator in interleaved layout
/// `[x_1, z_1, ..., x_n, z_n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliVector(BitVector);

impl PauliVector {
    pub fn identity(n: usize) -> Self {
        Self(BitVector::zeros(2 * n))
    }

    pub fn from_bits(bits: BitVector) -> Result<Self> {
        if bits.len() % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "Pauli vectors need an even bit length, got {}",
                bits.len()
            )));
        }
        Ok(Self(bits))
    }

    /// Builds a vector from `(qubit, Pauli)` pairs; later entries on the same
    /// qubit multiply into earlier ones.
    pub fn from_pattern(n: usize, pattern: &[(usize, Pauli)]) -> Self {
        let mut v = Self::identity(n);
        for &(q, p) in pattern {
            v.apply(q, p);
        }
        v
    }

    pub fn single(n: usize, qubit: usize, pauli: Pauli) -> Self {
        Self::from_pattern(n, &[(qubit, pauli)])
    }

    /// Builds `[x-block | z-block]` input into the interleaved layout.
    pub fn from_css(x: &BitVector, z: &BitVector) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                actual: z.len(),
            });
        }
        let n = x.len();
        let mut v = BitVector::zeros(2 * n);
        for q in x.iter_ones() {
            v.set(2 * q, true);
        }
        for q in z.iter_ones() {
            v.set(2 * q + 1, true);
        }
        Ok(Self(v))
    }

    /// Splits into `(x-block, z-block)`.
    pub fn to_css(&self) -> (BitVector, BitVector) {
        let n = self.num_qubits();
        let mut x = BitVector::zeros(n);
        let mut z = BitVector::zeros(n);
        for i in self.0.iter_ones() {
            if i % 2 == 0 {
                x.set(i / 2, true);
            } else {
                z.set(i / 2, true);
            }
        }
        (x, z)
    }

    pub fn num_qubits(&self) -> usize {
        self.0.len() / 2
    }

    pub fn bits(&self) -> &BitVector {
        &self.0
    }

    pub fn into_bits(self) -> BitVector {
        self.0
    }

    pub fn pauli(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(self.0.get(2 * qubit), self.0.get(2 * qubit + 1))
    }

    /// Multiplies `pauli` onto `qubit` (phases are ignored).
    pub fn apply(&mut self, qubit: usize, pauli: Pauli) {
        let (x, z) = pauli.bits();
        if x {
            self.0.flip(2 * qubit);
        }
        if z {
            self.0.flip(2 * qubit + 1);
        }
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.0
            .words()
            .iter()
            .map(|&w| ((w | (w >> 1)) & EVEN_BITS).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_zero()
    }

    /// Qubits acted on non-trivially, increasing.
    pub fn support(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.0.iter_ones().map(|i| i / 2).collect();
        out.dedup();
        out
    }

    pub fn add(&self, other: &PauliVector) -> PauliVector {
        Self(self.0.xor(&other.0))
    }

    pub fn add_assign(&mut self, other: &PauliVector) {
        self.0.xor_assign(&other.0)
    }

    pub fn symplectic(&self, other: &PauliVector) -> Result<bool> {
        symplectic_product(&self.0, &other.0)
    }

    /// Restriction to the given qubits.
    pub fn restrict(&self, qubits: &[usize]) -> PauliVector {
        let mut out = Self::identity(self.num_qubits());
        for &q in qubits {
            out.apply(q, self.pauli(q));
        }
        out
    }

    /// Sparse text form, e.g. `3:X 7:Z 9:Y`; the identity prints as `I`.
    pub fn to_sparse_string(&self) -> String {
        let parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|q| format!("{}:{}", q, self.pauli(q).letter()))
            .collect();
        if parts.is_empty() {
            "I".to_string()
        } else {
            parts.join(" ")
        }
    }

    /// Parses the sparse form produced by [`to_sparse_string`](Self::to_sparse_string).
    pub fn parse_sparse(n: usize, text: &str) -> Result<PauliVector> {
        let mut v = Self::identity(n);
        for token in text.split_whitespace() {
            if token == "I" {
                continue;
            }
            let (q, p) = parse_token(token).map_err(|message| Error::Parse { line: 1, message })?;
            if q >= n {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("qubit index {q} out of range for n = {n}"),
                });
            }
            v.apply(q, p);
        }
        Ok(v)
    }
}

pub(crate) fn parse_token(token: &str) -> std::result::Result<(usize, Pauli), String> {
    let (idx, letter) = token
        .split_once(':')
        .ok_or_else(|| format!("expected `index:P`, found `{token}`"))?;
    let q = usize::from_str(idx).map_err(|_| format!("bad qubit index `{idx}`"))?;
    let mut chars = letter.chars();
    let pauli = match (chars.next(), chars.next()) {
        (Some(c), None) => Pauli::from_letter(c),
        _ => None,
    }
    .ok_or_else(|| format!("bad Pauli letter `{letter}`"))?;
    Ok((q, pauli))
}

impl fmt::Debug for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliVector({})", self.to_sparse_string())
    }
}

impl fmt::Display for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sparse_string())
    }
}
