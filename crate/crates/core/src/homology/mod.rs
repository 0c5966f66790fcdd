//! Chain complexes of chain bimodules, homology bimodules with their
//! induced actions, induced maps of functors, relative homology with its
//! long exact sequence, and the kernel of the transfer map.

mod complex;
mod groups;
mod relative;
mod report;

pub use complex::{
    boundary_matrix, chain_complex, chain_map_matrix, check_chain_map,
    verify_boundary_equivariance, ChainComplex, CheckReport,
};
pub use groups::{check_induced_equivariance, homology, induced_map, HomologyBimodule, InducedMap};
pub use relative::{
    extended_chains, relative_complex, relative_complex_for, GroupSummary, LesDegree, LesReport,
    RelativeComplex, SesDegree, TransferKernelReport,
};
pub use report::{homology_summary, HomologySummary, HOMOLOGY_REPORT_SCHEMA};
