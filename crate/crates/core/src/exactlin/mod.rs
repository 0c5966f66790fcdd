//! Exact linear algebra over Z, Q and prime fields.

mod matrix;
mod module;
mod ring;
mod snf;

pub use matrix::{unit_vector, vec_add, vec_is_zero, vec_scale, vec_sub, Matrix};
pub use module::{
    basis_vector, exact_at, induced_map_on_subquotients, quotient_map, subquotient, ModuleMorphism,
    PresentedModule, Subquotient,
};
pub use ring::{parse_scalar, scalar_to_i64, scalar_to_string, CoefficientRing, Scalar};
pub use snf::{
    image_basis, kernel_basis, max_matrix_dim, preimage_basis, rank, same_span, set_max_matrix_dim,
    smith_normal_form, smith_normal_form_with, PivotStrategy, SmithForm, SpanSolver,
    DEFAULT_MAX_MATRIX_DIM,
};
