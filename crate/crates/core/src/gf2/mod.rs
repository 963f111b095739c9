//! Bit-packed GF(2) and symplectic linear algebra.

mod matrix;
mod pauli;
mod standard_form;
mod symplectic;
mod vector;

pub use matrix::{gaussian_solve, BinaryMatrix};
pub use pauli::{
    binary_to_pauli, binary_to_pauli_string, pauli_at, pauli_string_to_binary, pauli_to_binary,
    Pauli, PauliMatrix,
};
pub use standard_form::{standard_form, ColumnOps, StandardFormResult};
pub use symplectic::{
    is_self_orthogonal, swap_halves, swap_halves_vec, symplectic_gram, symplectic_product, syndrome,
};
pub use vector::BinaryVector;
