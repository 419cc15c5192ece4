use super::Pauli;

/// A sparse Pauli error: `(qubit, Pauli)` pairs with increasing, distinct qubits.
pub type PauliPattern = Vec<(usize, Pauli)>;

/// `C(n, w) * 3^w`, the number of Pauli patterns of weight exactly `w`.
pub fn pattern_count(n: usize, w: usize) -> u128 {
    if w > n {
        return 0;
    }
    let mut binom: u128 = 1;
    for i in 0..w as u128 {
        binom = binom * (n as u128 - i) / (i + 1);
    }
    binom.saturating_mul(3u128.saturating_pow(w as u32))
}

/// Iterator over all weight-`w` patterns on `n` qubits.
///
/// Qubit subsets come in lexicographic order; within a subset the Pauli
/// labels count up in base three (`X < Y < Z`) with the last qubit varying
/// fastest.
pub struct WeightPatterns {
    n: usize,
    qubits: Vec<usize>,
    labels: Vec<u8>,
    done: bool,
}

pub fn weight_patterns(n: usize, w: usize) -> WeightPatterns {
    WeightPatterns {
        n,
        qubits: (0..w).collect(),
        labels: vec![0; w],
        done: w > n,
    }
}

impl WeightPatterns {
    fn advance(&mut self) {
        let w = self.qubits.len();
        for i in (0..w).rev() {
            if self.labels[i] < 2 {
                self.labels[i] += 1;
                return;
            }
            self.labels[i] = 0;
        }
        // labels wrapped around: next qubit subset
        let mut i = w;
        while i > 0 {
            i -= 1;
            if self.qubits[i] < self.n - w + i {
                self.qubits[i] += 1;
                for j in (i + 1)..w {
                    self.qubits[j] = self.qubits[j - 1] + 1;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for WeightPatterns {
    type Item = PauliPattern;

    fn next(&mut self) -> Option<PauliPattern> {
        if self.done {
            return None;
        }
        let item = self
            .qubits
            .iter()
            .zip(&self.labels)
            .map(|(&q, &l)| (q, Pauli::NONTRIVIAL[l as usize]))
            .collect();
        if self.qubits.is_empty() {
            self.done = true;
        } else {
            self.advance();
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_match_enumeration() {
        for n in 0..6 {
            for w in 0..=n + 1 {
                let all: Vec<_> = weight_patterns(n, w).collect();
                assert_eq!(all.len() as u128, pattern_count(n, w), "n={n} w={w}");
                let distinct: HashSet<_> = all.iter().cloned().collect();
                assert_eq!(distinct.len(), all.len());
            }
        }
        assert_eq!(pattern_count(50, 2), 11_025);
        assert_eq!(pattern_count(50, 1), 150);
    }

    #[test]
    fn weight_zero_is_the_identity() {
        let all: Vec<_> = weight_patterns(4, 0).collect();
        assert_eq!(all, vec![vec![]]);
    }

    #[test]
    fn order_is_subset_major() {
        let first: Vec<_> = weight_patterns(3, 2).take(4).collect();
        assert_eq!(first[0], vec![(0, Pauli::X), (1, Pauli::X)]);
        assert_eq!(first[1], vec![(0, Pauli::X), (1, Pauli::Y)]);
        assert_eq!(first[3], vec![(0, Pauli::Y), (1, Pauli::X)]);
    }
}
