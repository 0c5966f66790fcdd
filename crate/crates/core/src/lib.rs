//! Directed homology of finite, truncated simplicially enriched categories.
//!
//! The crate is layered bottom-up:
//!
//! * [`exactlin`] exact Smith normal form, kernels and subquotients over Z, Q, F_p;
//! * [`scat`] the combinatorial model of enriched categories, functors and builders;
//! * [`nualg`] non-unital algebras: path algebras, unitalization, tensor algebras;
//! * [`bimod`] chain bimodules with the translation action, tensor products,
//!   firmness and the transfer map;
//! * [`homology`] chain complexes, homology bimodules, induced maps, relative
//!   homology and the long exact sequence.

pub mod bimod;
pub mod corpus;
pub mod error;
pub mod exactlin;
pub mod homology;
pub mod nualg;
pub mod scat;

pub use error::{Error, Result};
pub use exactlin::{CoefficientRing, Matrix, ModuleMorphism, PresentedModule, Scalar};
pub use scat::{Category1, EnrichedCategory, EnrichedFunctor, SimplicialSet};
