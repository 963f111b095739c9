use super::{BinaryMatrix, BinaryVector};

/// Exchanges the X and Z halves of every row: `[A | B] -> [B | A]`.
pub fn swap_halves(h: &BinaryMatrix) -> BinaryMatrix {
    assert!(
        h.cols() % 2 == 0,
        "symplectic matrix needs an even column count"
    );
    let n = h.cols() / 2;
    let order: Vec<usize> = (n..2 * n).chain(0..n).collect();
    h.select_columns(&order)
}

pub fn swap_halves_vec(v: &BinaryVector) -> BinaryVector {
    assert!(v.len() % 2 == 0, "symplectic vector needs even length");
    let n = v.len() / 2;
    let mut out = BinaryVector::zeros(v.len());
    for i in v.iter_ones() {
        out.set(if i < n { i + n } else { i - n }, true);
    }
    out
}

/// `a^X . b^Z + a^Z . b^X` over GF(2); zero iff the Paulis commute.
pub fn symplectic_product(a: &BinaryVector, b: &BinaryVector) -> bool {
    assert_eq!(a.len(), b.len(), "symplectic product of unequal lengths");
    a.dot(&swap_halves_vec(b))
}

/// Syndrome `s_i = <e, h_i>` for every row of `h`.
pub fn syndrome(h: &BinaryMatrix, e: &BinaryVector) -> BinaryVector {
    assert_eq!(h.cols(), e.len(), "syndrome dimension mismatch");
    swap_halves(h).mul_vec(e)
}

/// Gram matrix `G_ij = <a_i, b_j>`.
pub fn symplectic_gram(a: &BinaryMatrix, b: &BinaryMatrix) -> BinaryMatrix {
    assert_eq!(a.cols(), b.cols(), "symplectic gram of unequal widths");
    swap_halves(a).mul(&b.transpose())
}

/// True when every pair of rows commutes.
pub fn is_self_orthogonal(h: &BinaryMatrix) -> bool {
    h.cols() % 2 == 0 && symplectic_gram(h, h).is_zero()
}
