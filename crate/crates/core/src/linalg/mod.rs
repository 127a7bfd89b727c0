//! Exact integer linear algebra.

pub mod int;
pub mod invariants;
pub mod lattice;
pub mod matrix;
pub mod snf;

pub use int::Int;
pub use invariants::AbelianGroupInvariants;
pub use lattice::{
    image_lattice, is_exact_at_middle, is_injective, is_surjective, is_well_defined, kernel_basis, kernel_lattice,
    prefix_intersection, sparse_kernel, subquotient_invariants, AbelianPresentation, Lattice, Subquotient,
};
pub use matrix::{dense_to_sparse, sparse_to_dense, IntMatrix, SparseVec};
pub use snf::{invariant_factors, smith_normal_form, sparse_invariant_factors, SmithForm};
