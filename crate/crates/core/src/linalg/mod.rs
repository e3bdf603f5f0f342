//! Exact linear algebra over GF(p) and the rationals.

pub mod field;
pub mod matrix;
pub mod subspace;

pub use field::{is_prime, Field, FieldSpec, PrimeField, Rationals};
pub use matrix::Matrix;
pub use subspace::{intersect_subspaces, saturate_subspace, Subspace};

/// Reduced row echelon form of `m` with its pivot columns and rank.
pub fn rref<F: Field>(field: &F, m: &Matrix<F>) -> (Matrix<F>, Vec<usize>, usize) {
    m.rref(field)
}

pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F>) -> Subspace<F> {
    m.kernel_basis(field)
}

pub fn image_basis<F: Field>(field: &F, m: &Matrix<F>) -> Subspace<F> {
    m.image_basis(field)
}
