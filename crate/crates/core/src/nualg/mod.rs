//! Non-unital algebras on a finite basis: path algebras, unitalization and
//! its adjunction, local units, idempotency, opposite and tensor algebras.

mod adjunction;
mod algebra;
mod json;
mod units;

pub use adjunction::{
    check_adjunction_triangles, counit, unit_map, unitalize_morphism, AdjunctionReport,
};
pub use algebra::{
    induced_algebra_morphism, opposite, path_algebra, tensor_unital, unitalize, Algebra,
    AlgebraElement, AlgebraMorphism, BasisElement,
};
pub use json::{algebra_from_json, algebra_to_json, ALGEBRA_SCHEMA};
pub use units::{find_local_unit, is_idempotent, is_local_unit, Side};
