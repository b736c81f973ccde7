//! Constructive procedures: dense-subgraph extraction, robust
//! subsets, the resilient bipartite gadget, local absorbers and the
//! absorption-based `K_k` tiling.
//!
//! Every randomised procedure is a deterministic function of its inputs and
//! seed. Outputs are checked before they are returned.

mod absorb;
mod dense;
mod gadget;
mod robust;

pub use absorb::{
    absorption_tiling, absorption_tiling_traced, local_absorber, CertificateError, LocalAbsorber, LocalAbsorberError,
    TilingCertificate, TilingError, TilingParams, TilingTrace,
};
pub use dense::{extract_dense_subgraph, DenseError};
pub use gadget::{
    resilient_bipartite, resilient_bipartite_with, verify_resilience, GadgetError, ResilienceMode, ResilienceReport,
    ResilientGadget, DEFAULT_RESILIENCE_CAP,
};
pub use robust::{robust_subset, robust_subset_with, RobustError, RobustMode, RobustSubset};
