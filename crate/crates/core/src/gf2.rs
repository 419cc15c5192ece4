//! Bit-packed linear algebra over GF(2).
//!
//! Vectors pack 64 bits per word with bit `i` stored at bit `i % 64` of word
//! `i / 64`. Unused high bits of the last word are always zero so that
//! equality, hashing and popcounts can work word-wise.
//!
//! Row reduction always picks the leftmost available pivot column and the
//! topmost available pivot row, so every derived quantity (solutions,
//! nullspace bases, independent row subsets) is reproducible.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;
const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector from `0`/`1` entries; any nonzero value counts as one.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `self += other`. Panics on length mismatch.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over GF(2). Panics on length mismatch.
    #[inline]
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() & 1 == 1
    }

    /// Indices of the one bits in increasing order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    /// Copies bits `[start, start + len)` into a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        let mut out = BitVector::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    /// Swaps every adjacent bit pair `(2i, 2i+1)`.
    pub fn swap_pairs(&self) -> BitVector {
        assert!(self.len % 2 == 0, "pair swap needs an even length");
        let words = self
            .words
            .iter()
            .map(|&w| ((w & EVEN_BITS) << 1) | ((w >> 1) & EVEN_BITS))
            .collect();
        BitVector {
            words,
            len: self.len,
        }
    }
}

/// Lexicographic order on the bit sequence `b_0, b_1, ...`: at the first
/// differing position the vector holding `0` is smaller. Shorter vectors sort
/// first.
impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words) {
                let diff = a ^ b;
                if diff != 0 {
                    let pos = diff.trailing_zeros();
                    return if (a >> pos) & 1 == 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, "]")
    }
}

/// Symplectic inner product of two interleaved vectors `[x_1, z_1, ..., x_n, z_n]`:
/// `sum_i x_i(u) z_i(v) + z_i(u) x_i(v)` over GF(2).
pub fn symplectic_product(u: &BitVector, v: &BitVector) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            actual: v.len(),
        });
    }
    if u.len() % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "symplectic vectors need even length, got {}",
            u.len()
        )));
    }
    Ok(u.dot(&v.swap_pairs()))
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
    cols: usize,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                actual: bad.len(),
            });
        }
        Ok(Self { rows, cols })
    }

    /// Builds a matrix from dense `0`/`1` rows.
    pub fn from_dense(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| BitVector::from_bits(r)).collect(), cols)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    #[inline]
    pub fn row(&self, r: usize) -> &BitVector {
        &self.rows[r]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Number of ones in column `c`.
    pub fn column_weight(&self, c: usize) -> usize {
        self.rows.iter().filter(|r| r.get(c)).count()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// `M x^T`.
    pub fn mul_vec(&self, x: &BitVector) -> Result<BitVector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: x.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if row.dot(x) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form by leftmost-pivot Gauss-Jordan elimination.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let pivots = m.reduce_in_place(self.cols);
        Echelon { matrix: m, pivots }
    }

    /// Row-reduces over the first `limit` columns; returns the pivot columns.
    fn reduce_in_place(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..limit {
            if next == self.rows.len() {
                break;
            }
            let Some(p) = (next..self.rows.len()).find(|&r| self.rows[r].get(c)) else {
                continue;
            };
            self.rows.swap(next, p);
            let pivot = self.rows[next].clone();
            for r in 0..self.rows.len() {
                if r != next && self.rows[r].get(c) {
                    self.rows[r].xor_assign(&pivot);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Returns some `x` with `M x^T = s^T`, or `None` when the system is
    /// inconsistent. Free variables are set to zero, so `s = 0` yields the zero
    /// vector.
    pub fn solve(&self, s: &BitVector) -> Result<Option<BitVector>> {
        if s.len() != self.rows.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                actual: s.len(),
            });
        }
        let mut aug = BitMatrix::zeros(self.rows.len(), self.cols + 1);
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                aug.set(r, c, true);
            }
            if s.get(r) {
                aug.set(r, self.cols, true);
            }
        }
        let pivots = aug.reduce_in_place(self.cols);
        if aug.rows[pivots.len()..].iter().any(|r| r.get(self.cols)) {
            return Ok(None);
        }
        let mut x = BitVector::zeros(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            if aug.get(r, self.cols) {
                x.set(c, true);
            }
        }
        Ok(Some(x))
    }

    /// Basis of `{x : M x^T = 0}`, one row per free column in increasing order.
    pub fn nullspace_basis(&self) -> BitMatrix {
        let Echelon { matrix, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVector::zeros(self.cols);
            v.set(free, true);
            for (r, &c) in pivots.iter().enumerate() {
                if matrix.get(r, free) {
                    v.set(c, true);
                }
            }
            basis.push(v);
        }
        BitMatrix {
            rows: basis,
            cols: self.cols,
        }
    }

    /// Indices of a maximal linearly independent subset of rows, chosen
    /// greedily in row order.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut basis = RowBasis::new(self.cols);
        (0..self.rows.len())
            .filter(|&r| basis.insert(&self.rows[r]))
            .collect()
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &BitVector) -> bool {
        let mut basis = RowBasis::new(self.cols);
        for row in &self.rows {
            basis.insert(row);
        }
        basis.contains(v)
    }

    /// Sub-matrix made of the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        BitMatrix {
            rows: rows.iter().map(|&r| self.rows[r].clone()).collect(),
            cols: self.cols,
        }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BitMatrix {
            rows,
            cols: self.cols,
        })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows.len(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "{row:?}")?;
        }
        Ok(())
    }
}

/// Incremental echelon basis keyed by leading (lowest-index) bit.
#[derive(Clone, Debug)]
pub struct RowBasis {
    cols: usize,
    // (pivot column, reduced row); rows are reduced against earlier pivots only
    rows: Vec<(usize, BitVector)>,
}

impl RowBasis {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols, "bit vector length mismatch");
        let mut v = v.clone();
        for (pivot, row) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Adds `v` if it is independent of the basis; returns whether it was added.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        let reduced = self.reduce(v);
        let lead = reduced.iter_ones().next();
        match lead {
            Some(pivot) => {
                self.rows.push((pivot, reduced));
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> BitMatrix {
        BitMatrix::from_dense(&[vec![1, 1, 0, 1], vec![0, 1, 1, 0], vec![1, 0, 1, 1]]).unwrap()
    }

    #[test]
    fn rank_of_trivial_matrices() {
        assert_eq!(BitMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(toy().rank(), 2);
    }

    #[test]
    fn solve_identity_and_homogeneous() {
        let id = BitMatrix::identity(3);
        let s = BitVector::from_bits(&[1, 0, 1]);
        assert_eq!(id.solve(&s).unwrap(), Some(s.clone()));
        let zero = BitVector::zeros(3);
        assert_eq!(toy().solve(&zero).unwrap(), Some(BitVector::zeros(4)));
    }

    #[test]
    fn solve_detects_contradiction() {
        let m = BitMatrix::from_dense(&[vec![1, 0], vec![0, 0]]).unwrap();
        let s = BitVector::from_bits(&[0, 1]);
        assert_eq!(m.solve(&s).unwrap(), None);
        assert!(matches!(
            m.solve(&BitVector::zeros(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(BitMatrix::identity(3).nullspace_basis().rows(), 0);
        let parity = BitMatrix::from_dense(&[vec![1, 1]]).unwrap();
        let basis = parity.nullspace_basis();
        assert_eq!(basis.rows(), 1);
        assert_eq!(basis.row(0), &BitVector::from_bits(&[1, 1]));
    }

    #[test]
    fn symplectic_examples() {
        let x = BitVector::from_bits(&[1, 0]);
        let z = BitVector::from_bits(&[0, 1]);
        let y = BitVector::from_bits(&[1, 1]);
        assert!(symplectic_product(&x, &z).unwrap());
        assert!(symplectic_product(&x, &y).unwrap());
        assert!(!symplectic_product(&y, &y).unwrap());
        assert!(symplectic_product(&x, &BitVector::zeros(4)).is_err());
    }

    #[test]
    fn lexicographic_order_starts_at_bit_zero() {
        let a = BitVector::from_bits(&[0, 1, 1]);
        let b = BitVector::from_bits(&[1, 0, 0]);
        assert!(a < b);
        let c = BitVector::from_bits(&[0, 1, 0]);
        assert!(c < a);
    }

    #[test]
    fn iter_ones_crosses_word_boundaries() {
        let v = BitVector::from_support(130, &[0, 63, 64, 129]);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(v.count_ones(), 4);
    }

    #[test]
    fn independent_rows_skip_dependent_ones() {
        let m =
            BitMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1], vec![0, 0, 1]])
                .unwrap();
        assert_eq!(m.independent_rows(), vec![0, 1, 3]);
        assert!(m.row_space_contains(&BitVector::from_bits(&[1, 0, 1])));
    }
}
