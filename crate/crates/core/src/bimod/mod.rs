//! Chain bimodules over path algebras, generic (bi)modules with their
//! unitalization, tensor products over non-unital algebras, firmness and
//! the transfer map for full subcategories.

mod chains;
mod json;
mod modules;
mod tensor;
mod transfer;

pub use chains::{chain_bimodule, Chain, ChainBasis, ChainBimodule, TranslationAction};
pub use json::{bimodule_from_json, bimodule_to_json, MODULE_SCHEMA};
pub use modules::{
    check_s_unital_bimodule, check_s_unital_module, merge, module_deunitalize, module_unitalize,
    quotient_bimodule, submodule_generated, Bimodule, LeftModule, RightModule, SubBimodule,
};
pub use tensor::{
    alternative_unit, check_firm, extension_of_scalars, factor_balanced, is_balanced,
    tensor_over_algebra, FirmnessReport, TensorProduct,
};
pub use transfer::{transfer_domain, transfer_map, TransferDomain};
