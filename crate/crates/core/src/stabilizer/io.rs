//! Text formats for stabilizer codes.
//!
//! Code files start with a header `n k rows` followed by one generator per
//! line, written as whitespace-separated `qubit:Pauli` tokens with 0-based
//! qubit indices (`3:X 7:Z 9:Y`). Everything after `#` is a comment and
//! blank lines are ignored. A generator line holding only `I` is the
//! identity.
//!
//! CSS codes can also be read from a pair of sparse "alist" matrices, one for
//! the `X` generators and one for the `Z` generators.

use std::fmt::Write as _;
use std::path::Path;

use super::pauli::parse_token;
use super::{PauliVector, StabilizerCode};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the code-file format described in the module docs.
pub fn parse_code(text: &str) -> Result<StabilizerCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty code file"))?;
    let fields: Vec<usize> = header
        .split_whitespace()
        .map(|f| f.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| parse_err(hline, format!("bad header `{header}`")))?;
    let [n, k, rows] = fields[..] else {
        return Err(parse_err(hline, "header must be `n k rows`"));
    };

    let mut stabilizers = BitMatrix::zeros(0, 2 * n);
    for (lineno, line) in lines {
        let mut v = PauliVector::identity(n);
        for token in line.split_whitespace() {
            if token == "I" {
                continue;
            }
            let (q, p) = parse_token(token).map_err(|m| parse_err(lineno, m))?;
            if q >= n {
                return Err(parse_err(
                    lineno,
                    format!("qubit {q} out of range for n = {n}"),
                ));
            }
            if v.pauli(q) != super::Pauli::I {
                return Err(parse_err(lineno, format!("qubit {q} listed twice")));
            }
            v.apply(q, p);
        }
        stabilizers.push_row(v.into_bits())?;
    }
    if stabilizers.rows() != rows {
        return Err(parse_err(
            hline,
            format!("header declares {rows} rows, found {}", stabilizers.rows()),
        ));
    }
    let code = StabilizerCode::from_stabilizers(n, stabilizers)?;
    if code.k() != k {
        return Err(parse_err(
            hline,
            format!("header declares k = {k}, generators give k = {}", code.k()),
        ));
    }
    Ok(code)
}

pub fn load_code(path: impl AsRef<Path>) -> Result<StabilizerCode> {
    parse_code(&std::fs::read_to_string(path)?)
}

/// Serializes the supplied generators (redundant rows included).
pub fn write_code(code: &StabilizerCode) -> String {
    let mut out = String::new();
    let rows = code.stabilizers().rows();
    writeln!(out, "{} {} {}", code.n(), code.k(), rows).unwrap();
    for r in 0..rows {
        writeln!(out, "{}", code.stabilizer(r).to_sparse_string()).unwrap();
    }
    out
}

/// Parses a sparse alist matrix.
pub fn parse_alist(text: &str) -> Result<BitMatrix> {
    let mut tokens = text
        .lines()
        .enumerate()
        .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)));
    let mut next = |what: &str| -> Result<usize> {
        let (line, tok) = tokens
            .next()
            .ok_or_else(|| parse_err(0, format!("alist ended while reading {what}")))?;
        tok.parse::<usize>()
            .map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
    };
    let cols = next("column count")?;
    let rows = next("row count")?;
    let max_col = next("max column weight")?;
    let max_row = next("max row weight")?;
    let col_weights = (0..cols)
        .map(|_| next("column weight"))
        .collect::<Result<Vec<_>>>()?;
    let row_weights = (0..rows)
        .map(|_| next("row weight"))
        .collect::<Result<Vec<_>>>()?;

    let mut m = BitMatrix::zeros(rows, cols);
    for (c, &w) in col_weights.iter().enumerate() {
        for slot in 0..max_col {
            let r = next("row index")?;
            if slot < w {
                if r == 0 || r > rows {
                    return Err(parse_err(0, format!("row index {r} out of range")));
                }
                m.set(r - 1, c, true);
            }
        }
    }
    for (r, &w) in row_weights.iter().enumerate() {
        let mut listed = BitVector::zeros(cols);
        for slot in 0..max_row {
            let c = next("column index")?;
            if slot < w {
                if c == 0 || c > cols {
                    return Err(parse_err(0, format!("column index {c} out of range")));
                }
                listed.set(c - 1, true);
            }
        }
        if &listed != m.row(r) {
            return Err(parse_err(
                0,
                format!("row {} disagrees with the column lists", r + 1),
            ));
        }
    }
    Ok(m)
}

pub fn read_alist(path: impl AsRef<Path>) -> Result<BitMatrix> {
    parse_alist(&std::fs::read_to_string(path)?)
}

/// Writes a matrix in alist form (1-based indices, zero padded).
pub fn write_alist(m: &BitMatrix) -> String {
    let t = m.transpose();
    let col_lists: Vec<Vec<usize>> = t
        .row_vectors()
        .iter()
        .map(|r| r.iter_ones().collect())
        .collect();
    let row_lists: Vec<Vec<usize>> = m
        .row_vectors()
        .iter()
        .map(|r| r.iter_ones().collect())
        .collect();
    let max_col = col_lists.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = row_lists.iter().map(Vec::len).max().unwrap_or(0);
    let join = |xs: Vec<String>| xs.join(" ");
    let mut out = String::new();
    writeln!(out, "{} {}", m.cols(), m.rows()).unwrap();
    writeln!(out, "{max_col} {max_row}").unwrap();
    writeln!(
        out,
        "{}",
        join(col_lists.iter().map(|l| l.len().to_string()).collect())
    )
    .unwrap();
    writeln!(
        out,
        "{}",
        join(row_lists.iter().map(|l| l.len().to_string()).collect())
    )
    .unwrap();
    for (lists, width) in [(&col_lists, max_col), (&row_lists, max_row)] {
        for l in lists {
            let mut items: Vec<String> = l.iter().map(|i| (i + 1).to_string()).collect();
            items.resize(width, "0".to_string());
            writeln!(out, "{}", join(items)).unwrap();
        }
    }
    out
}

/// CSS code with `X` generators from `hx` and `Z` generators from `hz`.
pub fn css_from_matrices(hx: &BitMatrix, hz: &BitMatrix) -> Result<StabilizerCode> {
    if hx.cols() != hz.cols() {
        return Err(Error::DimensionMismatch {
            expected: hx.cols(),
            actual: hz.cols(),
        });
    }
    let n = hx.cols();
    let zero = BitVector::zeros(n);
    let mut stabilizers = BitMatrix::zeros(0, 2 * n);
    for row in hx.row_vectors() {
        stabilizers.push_row(PauliVector::from_css(row, &zero)?.into_bits())?;
    }
    for row in hz.row_vectors() {
        stabilizers.push_row(PauliVector::from_css(&zero, row)?.into_bits())?;
    }
    StabilizerCode::from_stabilizers(n, stabilizers)
}

pub fn load_css_alist(hx: impl AsRef<Path>, hz: impl AsRef<Path>) -> Result<StabilizerCode> {
    css_from_matrices(&read_alist(hx)?, &read_alist(hz)?)
}
