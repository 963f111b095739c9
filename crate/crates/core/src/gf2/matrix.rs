use std::fmt;

use super::vector::{parity_and, words_for, BinaryVector, WORD_BITS};

/// Row-major, bit-packed GF(2) matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds from rows of 0/1 values. All rows must have equal length.
    pub fn from_dense(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, &b) in row.iter().enumerate() {
                if b != 0 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Parses rows of `0`/`1` characters separated by `;` or newlines.
    pub fn parse(s: &str) -> Option<Self> {
        let rows: Vec<BinaryVector> = s
            .split([';', '\n'])
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(BinaryVector::parse)
            .collect::<Option<_>>()?;
        let cols = rows.first().map_or(0, BinaryVector::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Self::from_rows(cols, &rows))
    }

    pub fn from_rows(cols: usize, rows: &[BinaryVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols, "row length mismatch");
            m.row_words_mut(r).copy_from_slice(v.words());
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
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        let idx = r * self.stride + c / WORD_BITS;
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        let idx = r * self.stride + c / WORD_BITS;
        self.data[idx] ^= 1u64 << (c % WORD_BITS);
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BinaryVector {
        BinaryVector::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(r).iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn column_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                w[c] += 1;
            }
        }
        w
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_row_zero(&self, r: usize) -> bool {
        self.row_words(r).iter().all(|&w| w == 0)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        let (lo, hi) = (a.min(b), a.max(b));
        let (first, second) = self.data.split_at_mut(hi * s);
        first[lo * s..(lo + 1) * s].swap_with_slice(&mut second[..s]);
    }

    /// Row `dst` ^= row `src`, touching only words from `from_word` on.
    #[inline]
    pub(crate) fn xor_row_into(&mut self, src: usize, dst: usize, from_word: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        if src < dst {
            let (a, b) = self.data.split_at_mut(dst * s);
            let src_row = &a[src * s + from_word..(src + 1) * s];
            for (d, x) in b[from_word..s].iter_mut().zip(src_row) {
                *d ^= *x;
            }
        } else {
            let (a, b) = self.data.split_at_mut(src * s);
            let dst_row = &mut a[dst * s + from_word..(dst + 1) * s];
            for (d, x) in dst_row.iter_mut().zip(&b[from_word..s]) {
                *d ^= *x;
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            let va = self.get(r, a);
            let vb = self.get(r, b);
            if va != vb {
                self.flip(r, a);
                self.flip(r, b);
            }
        }
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix-vector product `A x`.
    pub fn mul_vec(&self, x: &BinaryVector) -> BinaryVector {
        assert_eq!(x.len(), self.cols, "dimension mismatch in mul_vec");
        let mut out = BinaryVector::zeros(self.rows);
        for r in 0..self.rows {
            if parity_and(self.row_words(r), x.words()) {
                out.set(r, true);
            }
        }
        out
    }

    pub fn mul(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = BinaryMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in self.row_ones(r) {
                let src = other.row_words(k);
                let dst = &mut out.data[r * out.stride..(r + 1) * out.stride];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d ^= *s;
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut out = BinaryMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                out.set(r, c, true);
            }
            for c in other.row_ones(r) {
                out.set(r, self.cols + c, true);
            }
        }
        out
    }

    pub fn vstack(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        BinaryMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        }
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            let row = self.row_words(r);
            let dst = &mut out.data[r * out.stride..(r + 1) * out.stride];
            for (k, &c) in cols.iter().enumerate() {
                if (row[c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1 {
                    dst[k / WORD_BITS] |= 1u64 << (k % WORD_BITS);
                }
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(rows.len(), self.cols);
        for (k, &r) in rows.iter().enumerate() {
            out.row_words_mut(k).copy_from_slice(self.row_words(r));
        }
        out
    }

    /// Kronecker product with row index `i1 * rows(B) + i2`.
    pub fn kron(&self, other: &BinaryMatrix) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in self.row_ones(r1) {
                for r2 in 0..other.rows {
                    for c2 in other.row_ones(r2) {
                        out.set(r1 * other.rows + r2, c1 * other.cols + c2, true);
                    }
                }
            }
        }
        out
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_echelon(None).len()
    }

    /// Forward elimination in place, scanning columns left to right and
    /// pivoting on the lowest available row. Returns pivot columns; the
    /// optional right-hand side receives the same row operations.
    pub(crate) fn row_echelon(&mut self, mut rhs: Option<&mut BinaryVector>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let w = col / WORD_BITS;
            let mask = 1u64 << (col % WORD_BITS);
            let Some(r) = (prow..self.rows).find(|&r| self.data[r * self.stride + w] & mask != 0)
            else {
                continue;
            };
            if r != prow {
                self.swap_rows(r, prow);
                if let Some(b) = rhs.as_deref_mut() {
                    let (x, y) = (b.get(r), b.get(prow));
                    b.set(r, y);
                    b.set(prow, x);
                }
            }
            for r2 in prow + 1..self.rows {
                if self.data[r2 * self.stride + w] & mask != 0 {
                    self.xor_row_into(prow, r2, w);
                    if let Some(b) = rhs.as_deref_mut() {
                        if b.get(prow) {
                            b.flip(r2);
                        }
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        pivots
    }
}

/// Solves `a x = b` over GF(2).
///
/// Columns are scanned left to right and the pivot is the lowest remaining
/// row with a one, so the output is reproducible. Free variables are zero.
/// Returns `None` when the system is inconsistent.
pub fn gaussian_solve(a: &BinaryMatrix, b: &BinaryVector) -> Option<BinaryVector> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let mut m = a.clone();
    let mut rhs = b.clone();
    let pivots = m.row_echelon(Some(&mut rhs));
    if (pivots.len()..m.rows()).any(|r| rhs.get(r)) {
        return None;
    }
    let mut x = BinaryVector::zeros(a.cols());
    for (i, &col) in pivots.iter().enumerate().rev() {
        let v = rhs.get(i) ^ parity_and(m.row_words(i), x.words());
        if v {
            x.set(col, true);
        }
    }
    Some(x)
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("\n")?;
            }
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        write!(f, "{self}")
    }
}
