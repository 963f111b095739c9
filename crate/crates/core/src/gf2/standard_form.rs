use super::symplectic::is_self_orthogonal;
use super::vector::WORD_BITS;
use super::{BinaryMatrix, BinaryVector};

/// Column operations applied on the way to standard form.
///
/// Position `p` of the transformed matrix holds original qubit `perm[p]`,
/// with its X and Z columns exchanged when `swapped[p]` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnOps {
    pub perm: Vec<usize>,
    pub swapped: Vec<bool>,
}

impl ColumnOps {
    /// Maps a `(x | z)` vector in transformed coordinates back to the
    /// original qubit order.
    pub fn to_original(&self, v: &BinaryVector) -> BinaryVector {
        let n = self.perm.len();
        assert_eq!(v.len(), 2 * n);
        let mut out = BinaryVector::zeros(2 * n);
        for pos in 0..n {
            let (mut x, mut z) = (v.get(pos), v.get(n + pos));
            if self.swapped[pos] {
                std::mem::swap(&mut x, &mut z);
            }
            let q = self.perm[pos];
            out.set(q, x);
            out.set(n + q, z);
        }
        out
    }

    /// Inverse of [`ColumnOps::to_original`].
    pub fn to_transformed(&self, v: &BinaryVector) -> BinaryVector {
        let n = self.perm.len();
        assert_eq!(v.len(), 2 * n);
        let mut out = BinaryVector::zeros(2 * n);
        for pos in 0..n {
            let q = self.perm[pos];
            let (mut x, mut z) = (v.get(q), v.get(n + q));
            if self.swapped[pos] {
                std::mem::swap(&mut x, &mut z);
            }
            out.set(pos, x);
            out.set(n + pos, z);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct StandardFormResult {
    /// `[I A | B C]` in transformed coordinates, `rank` rows.
    pub h_std: BinaryMatrix,
    /// `2k` logical generators in original coordinates: the first `k` rows
    /// are the X-like family, the next `k` their Z-like partners.
    pub logicals: BinaryMatrix,
    pub col_ops: ColumnOps,
    pub rank: usize,
}

impl StandardFormResult {
    pub fn n(&self) -> usize {
        self.col_ops.perm.len()
    }

    pub fn k(&self) -> usize {
        self.n() - self.rank
    }
}

/// Brings a self-orthogonal `m x 2n` check matrix to `[I_r A | B C]` using
/// row operations, qubit permutations and per-qubit X/Z exchanges, and
/// emits the logical generators `[0 I_k | C^T 0]` and `[0 0 | A^T I_k]`
/// mapped back to the original coordinates.
///
/// Panics if the rows do not pairwise commute.
pub fn standard_form(h: &BinaryMatrix) -> StandardFormResult {
    assert!(h.cols() % 2 == 0, "check matrix needs an even column count");
    assert!(
        is_self_orthogonal(h),
        "standard form requires commuting rows"
    );
    let n = h.cols() / 2;
    let rows = h.rows();
    let mut m = h.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut swapped = vec![false; n];
    let mut piv = 0;

    let move_to = |m: &mut BinaryMatrix,
                   perm: &mut Vec<usize>,
                   swapped: &mut Vec<bool>,
                   q: usize,
                   piv: usize| {
        if q != piv {
            m.swap_cols(q, piv);
            m.swap_cols(n + q, n + piv);
            perm.swap(q, piv);
            swapped.swap(q, piv);
        }
    };

    // X pivots: ascending positions, lowest remaining row.
    for q in 0..n {
        if piv == rows {
            break;
        }
        let Some(r) = (piv..rows).find(|&r| m.get(r, q)) else {
            continue;
        };
        move_to(&mut m, &mut perm, &mut swapped, q, piv);
        m.swap_rows(r, piv);
        eliminate(&mut m, piv, piv);
        piv += 1;
    }

    // Remaining rows have no X bits; pivot on Z bits after an X/Z exchange.
    let mut q = piv;
    while piv < rows && q < n {
        let Some(r) = (piv..rows).find(|&r| m.get(r, n + q)) else {
            q += 1;
            continue;
        };
        m.swap_cols(q, n + q);
        swapped[q] = !swapped[q];
        move_to(&mut m, &mut perm, &mut swapped, q, piv);
        m.swap_rows(r, piv);
        eliminate(&mut m, piv, piv);
        piv += 1;
        q = piv.max(q + 1);
    }

    let rank = piv;
    for r in rank..rows {
        assert!(m.is_row_zero(r), "residual row after standard form");
    }
    let h_std = m.select_rows(&(0..rank).collect::<Vec<_>>());
    let k = n - rank;
    let col_ops = ColumnOps { perm, swapped };

    let mut logicals = BinaryMatrix::zeros(2 * k, 2 * n);
    for a in 0..k {
        let mut l1 = BinaryVector::zeros(2 * n);
        l1.set(rank + a, true);
        let mut l2 = BinaryVector::zeros(2 * n);
        l2.set(n + rank + a, true);
        for i in 0..rank {
            if h_std.get(i, n + rank + a) {
                l1.set(n + i, true);
            }
            if h_std.get(i, rank + a) {
                l2.set(n + i, true);
            }
        }
        let l1 = col_ops.to_original(&l1);
        let l2 = col_ops.to_original(&l2);
        for c in l1.iter_ones() {
            logicals.set(a, c, true);
        }
        for c in l2.iter_ones() {
            logicals.set(k + a, c, true);
        }
    }

    StandardFormResult {
        h_std,
        logicals,
        col_ops,
        rank,
    }
}

/// Clears column `col` in every row except `pivot_row`.
fn eliminate(m: &mut BinaryMatrix, pivot_row: usize, col: usize) {
    let from = col / WORD_BITS;
    for r in 0..m.rows() {
        if r != pivot_row && m.get(r, col) {
            m.xor_row_into(pivot_row, r, from);
        }
    }
}
