use std::fmt;
use std::str::FromStr;

use super::{BinaryMatrix, BinaryVector};
use crate::error::Error;

/// Single-qubit Pauli. The discriminant packs `(x | z)` as `x + 2z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Pauli {
    I = 0,
    X = 1,
    Z = 2,
    Y = 3,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    #[inline]
    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    #[inline]
    pub fn x_bit(self) -> bool {
        (self as u8) & 1 == 1
    }

    #[inline]
    pub fn z_bit(self) -> bool {
        (self as u8) & 2 == 2
    }

    #[inline]
    pub fn commutes_with(self, other: Pauli) -> bool {
        !((self.x_bit() & other.z_bit()) ^ (self.z_bit() & other.x_bit()))
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Reads qubit `j` of a `(x | z)` vector of length `2n`.
#[inline]
pub fn pauli_at(e: &BinaryVector, n: usize, j: usize) -> Pauli {
    Pauli::from_bits(e.get(j), e.get(n + j))
}

/// Parses a Pauli string such as `"IXIY"` into its `(x | z)` vector.
pub fn pauli_string_to_binary(s: &str) -> Result<BinaryVector, Error> {
    let paulis = s
        .chars()
        .map(|c| Pauli::from_char(c).ok_or(Error::InvalidPauliChar(c)))
        .collect::<Result<Vec<_>, _>>()?;
    let n = paulis.len();
    let mut v = BinaryVector::zeros(2 * n);
    for (j, p) in paulis.iter().enumerate() {
        v.set(j, p.x_bit());
        v.set(n + j, p.z_bit());
    }
    Ok(v)
}

/// Renders a `(x | z)` vector as a Pauli string.
pub fn binary_to_pauli_string(e: &BinaryVector) -> String {
    assert!(e.len() % 2 == 0, "odd-length symplectic vector");
    let n = e.len() / 2;
    (0..n).map(|j| pauli_at(e, n, j).to_char()).collect()
}

/// Dense m×n matrix over {I, X, Y, Z}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Pauli>,
}

impl PauliMatrix {
    pub fn identity_filled(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Pauli::I; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<Pauli>]) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedRows {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_strs<S: AsRef<str>>(rows: &[S]) -> Result<Self, Error> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .chars()
                    .map(|c| Pauli::from_char(c).ok_or(Error::InvalidPauliChar(c)))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(&parsed)
    }

    /// CSS matrix: X-type rows from `hx` followed by Z-type rows from `hz`.
    pub fn from_css(hx: &BinaryMatrix, hz: &BinaryMatrix) -> Self {
        assert_eq!(hx.cols(), hz.cols(), "CSS halves disagree on n");
        let n = hx.cols();
        let mut m = Self::identity_filled(hx.rows() + hz.rows(), n);
        for r in 0..hx.rows() {
            for c in hx.row_ones(r) {
                m.set(r, c, Pauli::X);
            }
        }
        for r in 0..hz.rows() {
            for c in hz.row_ones(r) {
                m.set(hx.rows() + r, c, Pauli::Z);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Pauli {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, p: Pauli) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn row(&self, r: usize) -> &[Pauli] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row(r).iter().filter(|&&p| p != Pauli::I).count()
    }

    /// Number of non-identity entries.
    pub fn support_size(&self) -> usize {
        self.entries.iter().filter(|&&p| p != Pauli::I).count()
    }

    /// Maps I, X, Y, Z to (0|0), (1|0), (1|1), (0|1).
    pub fn to_binary(&self) -> BinaryMatrix {
        let n = self.cols;
        let mut b = BinaryMatrix::zeros(self.rows, 2 * n);
        for r in 0..self.rows {
            for c in 0..n {
                let p = self.get(r, c);
                if p.x_bit() {
                    b.set(r, c, true);
                }
                if p.z_bit() {
                    b.set(r, n + c, true);
                }
            }
        }
        b
    }

    pub fn from_binary(b: &BinaryMatrix) -> Result<Self, Error> {
        if b.cols() % 2 != 0 {
            return Err(Error::OddColumnCount(b.cols()));
        }
        let n = b.cols() / 2;
        let mut m = Self::identity_filled(b.rows(), n);
        for r in 0..b.rows() {
            for c in 0..n {
                m.set(r, c, Pauli::from_bits(b.get(r, c), b.get(r, n + c)));
            }
        }
        Ok(m)
    }
}

impl FromStr for PauliMatrix {
    type Err = Error;

    /// One row per line (or `;`-separated); blank lines are skipped.
    fn from_str(s: &str) -> Result<Self, Error> {
        let rows: Vec<&str> = s
            .split(['\n', ';'])
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .collect();
        Self::from_strs(&rows)
    }
}

impl fmt::Display for PauliMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("\n")?;
            }
            for &p in self.row(r) {
                write!(f, "{}", p.to_char())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PauliMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PauliMatrix {}x{}", self.rows, self.cols)?;
        write!(f, "{self}")
    }
}

/// Alias used where the conversion reads better as a free function.
pub fn pauli_to_binary(p: &PauliMatrix) -> BinaryMatrix {
    p.to_binary()
}

pub fn binary_to_pauli(b: &BinaryMatrix) -> Result<PauliMatrix, Error> {
    PauliMatrix::from_binary(b)
}
