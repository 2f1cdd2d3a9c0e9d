//! Exact integer linear algebra and finitely generated abelian groups:
//! normal forms, cokernels, subgroups and divisibility.

mod group;
mod matrix;
mod normal_form;

pub use group::{divisibility_index, FgAbGroup, GroupElement, Subgroup};
pub use matrix::{
    big_vec, content, dot, primitive, primitive_from_rational, IntMatrix, RatMatrix,
};
pub use normal_form::{
    echelon_coordinates, hermite_basis, hermite_decompose, kernel_basis, left_kernel_basis,
    right_inverse, saturation, smith_decompose, Smith,
};

/// The group `Z^cols / (row space of m)` together with its projection.
pub fn cokernel(m: &IntMatrix) -> FgAbGroup {
    FgAbGroup::cokernel(m)
}
