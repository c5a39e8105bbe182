//! Exact linear algebra over finite fields.

mod classrep;
mod factor;
mod field;
mod matrix;
mod meataxe;
mod poly;
mod regular;

pub use classrep::{
    assign_eigenvalues, eigenspace_dimension, element_order, order_mod_center, random_conjugate, random_invertible,
    random_special_linear, realize_class, representative_matrix,
};
pub use factor::{distinct_degree, equal_degree, factor_poly, roots, squarefree, Factorization};
pub use field::{is_prime, prime_factors, prime_power, FieldElement, GaloisField, MAX_DEGREE};
pub use matrix::FieldMatrix;
pub use meataxe::{irreducibility_test, is_invariant_subspace, spin, ModuleStatus, MEATAXE_ATTEMPTS};
pub use poly::Poly;
pub use regular::{eigenvalues, embedding, is_strongly_regular, SplittingEigenvalues};
