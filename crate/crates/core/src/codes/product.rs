use super::{CodeSpec, StabilizerCode};
use crate::gf2::{BinaryMatrix, PauliMatrix};

/// `H_X = [H1 (x) I_n2, I_r1 (x) H2^T]`, `H_Z = [I_n1 (x) H2, H1^T (x) I_r2]`.
pub fn hypergraph_product_matrices(
    h1: &BinaryMatrix,
    h2: &BinaryMatrix,
) -> (BinaryMatrix, BinaryMatrix) {
    let (r1, n1) = (h1.rows(), h1.cols());
    let (r2, n2) = (h2.rows(), h2.cols());
    let hx = h1
        .kron(&BinaryMatrix::identity(n2))
        .hstack(&BinaryMatrix::identity(r1).kron(&h2.transpose()));
    let hz = BinaryMatrix::identity(n1)
        .kron(h2)
        .hstack(&h1.transpose().kron(&BinaryMatrix::identity(r2)));
    (hx, hz)
}

pub fn build_hypergraph_product(h1: &BinaryMatrix, h2: &BinaryMatrix) -> StabilizerCode {
    let (hx, hz) = hypergraph_product_matrices(h1, h2);
    let rank = hx.rank() + hz.rank();
    let pauli = PauliMatrix::from_css(&hx, &hz);
    let row_strings = |m: &BinaryMatrix| (0..m.rows()).map(|r| m.row(r).to_string()).collect();
    let spec = CodeSpec::HypergraphProduct {
        h1: row_strings(h1),
        h2: row_strings(h2),
    };
    let id = spec.default_id();
    StabilizerCode::with_rank(id, spec, pauli, rank)
}
