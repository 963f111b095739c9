use serde::{Deserialize, Serialize};

use super::{BaseRef, CodeSpec, StabilizerCode};
use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, PauliMatrix};

/// A `j x w` matrix of circulant shifts; `-1` marks an all-zero block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QcBaseMatrix {
    pub m: usize,
    pub shifts: Vec<Vec<i64>>,
}

impl QcBaseMatrix {
    pub fn new(m: usize, shifts: Vec<Vec<i64>>) -> Result<Self> {
        let b = Self { m, shifts };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidCode("circulant size must be positive".into()));
        }
        let w = self.w();
        for row in &self.shifts {
            if row.len() != w {
                return Err(Error::InvalidCode("ragged base matrix".into()));
            }
            if let Some(s) = row.iter().find(|&&s| s < -1 || s >= self.m as i64) {
                return Err(Error::InvalidCode(format!(
                    "shift {s} outside [-1, {})",
                    self.m
                )));
            }
        }
        Ok(())
    }

    pub fn j(&self) -> usize {
        self.shifts.len()
    }

    pub fn w(&self) -> usize {
        self.shifts.first().map_or(0, Vec::len)
    }

    fn ring(&self) -> RingMatrix {
        RingMatrix {
            rows: self.j(),
            cols: self.w(),
            m: self.m,
            entries: self
                .shifts
                .iter()
                .flatten()
                .map(|&s| (s >= 0).then_some(s as usize))
                .collect(),
        }
    }
}

/// Expands every shift `s` to the `m x m` identity whose columns are moved
/// down by `s` rows (entry `(r, c)` set iff `r = c + s mod m`); `-1` gives
/// a zero block.
pub fn expand_qc(base: &QcBaseMatrix) -> BinaryMatrix {
    base.ring().expand()
}

/// Matrix over the ring of `m x m` circulants, each entry a monomial
/// `x^s` or zero.
#[derive(Clone, Debug)]
struct RingMatrix {
    rows: usize,
    cols: usize,
    m: usize,
    entries: Vec<Option<usize>>,
}

impl RingMatrix {
    fn identity(n: usize, m: usize) -> Self {
        let mut entries = vec![None; n * n];
        for i in 0..n {
            entries[i * n + i] = Some(0);
        }
        Self {
            rows: n,
            cols: n,
            m,
            entries,
        }
    }

    fn get(&self, r: usize, c: usize) -> Option<usize> {
        self.entries[r * self.cols + c]
    }

    /// Block transpose with each shift negated mod `m`.
    fn conjugate_transpose(&self) -> Self {
        let mut entries = vec![None; self.rows * self.cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                entries[c * self.rows + r] = self.get(r, c).map(|s| (self.m - s) % self.m);
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            m: self.m,
            entries,
        }
    }

    fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = vec![None; rows * cols];
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let Some(a) = self.get(r1, c1) else { continue };
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        if let Some(b) = other.get(r2, c2) {
                            entries[(r1 * other.rows + r2) * cols + c1 * other.cols + c2] =
                                Some((a + b) % self.m);
                        }
                    }
                }
            }
        }
        Self {
            rows,
            cols,
            m: self.m,
            entries,
        }
    }

    fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            entries.extend_from_slice(&self.entries[r * self.cols..(r + 1) * self.cols]);
            entries.extend_from_slice(&other.entries[r * other.cols..(r + 1) * other.cols]);
        }
        Self {
            rows: self.rows,
            cols,
            m: self.m,
            entries,
        }
    }

    fn expand(&self) -> BinaryMatrix {
        let m = self.m;
        let mut out = BinaryMatrix::zeros(self.rows * m, self.cols * m);
        for br in 0..self.rows {
            for bc in 0..self.cols {
                if let Some(s) = self.get(br, bc) {
                    for c in 0..m {
                        out.set(br * m + (c + s) % m, bc * m + c, true);
                    }
                }
            }
        }
        out
    }
}

/// `(H_X, H_Z)` of the lifted product of `base` with itself:
/// `H_X = [A (x) I_w, I_j (x) A*]`, `H_Z = [I_w (x) A, A* (x) I_j]`.
pub fn lifted_product_matrices(base: &QcBaseMatrix) -> (BinaryMatrix, BinaryMatrix) {
    let a = base.ring();
    let a_star = a.conjugate_transpose();
    let (j, w, m) = (base.j(), base.w(), base.m);
    let iw = RingMatrix::identity(w, m);
    let ij = RingMatrix::identity(j, m);
    let hx = a.kron(&iw).hstack(&ij.kron(&a_star));
    let hz = iw.kron(&a).hstack(&a_star.kron(&ij));
    (hx.expand(), hz.expand())
}

pub fn build_lifted_product(base: &QcBaseMatrix) -> Result<StabilizerCode> {
    base.validate()?;
    let (hx, hz) = lifted_product_matrices(base);
    let rank = hx.rank() + hz.rank();
    let pauli = PauliMatrix::from_css(&hx, &hz);
    let spec = CodeSpec::LiftedProduct {
        base: BaseRef::Explicit(base.clone()),
    };
    let id = spec.default_id();
    Ok(StabilizerCode::with_rank(id, spec, pauli, rank))
}
