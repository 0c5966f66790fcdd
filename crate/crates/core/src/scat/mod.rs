//! Finite simplicially enriched categories: hom simplicial sets, composition
//! tables, functors, validators and builders.

mod builders;
mod category;
mod functor;
mod json;
mod report;
mod simplicial;

pub use builders::{
    build_from_category, build_from_poset, build_with_homotopies, CategorySpec, Homotopy, Poset,
};
pub use category::{Category1, EnrichedCategory, Morphism};
pub use functor::{
    check_injective_on_objects, full_subcategory, relabel_isomorphism, EnrichedFunctor, Relabeling,
};
pub use json::{
    category_from_json, category_from_str, category_to_json, CATEGORY_SCHEMA, DEFAULT_TRUNCATION,
};
pub use report::{ValidationReport, Violation};
pub use simplicial::SimplicialSet;

pub fn validate_simplicial_set(x: &SimplicialSet) -> ValidationReport {
    x.validate("")
}

pub fn validate_enriched_category(c: &EnrichedCategory) -> ValidationReport {
    c.validate()
}

pub fn underlying_category(c: &EnrichedCategory) -> Category1 {
    c.underlying_category()
}
