//! Finite-group laboratory: exact groups, irreducible unitary
//! representations, and wavelet-space checkers where every structural claim
//! of the toolkit can be verified without quadrature error.

pub mod group;
pub mod rep;
pub mod wavelet;

pub use group::{build_group, FiniteGroup, GroupSpec};
pub use rep::{decompose_regular, UnitaryRep, MAX_DECOMPOSE_ORDER};
pub use wavelet::{
    admissible_rescale, convexity_check, generic_window, haar_inner, interpolation_failure_demo,
    peter_weyl_completeness, positive_type_matrix, rigidity_check, tensor_product_check,
    wavelet_subspace, wavelet_transform, CompletenessReport, ConvexityReport, FailureDemoReport,
    RigidityReport, WaveletSubspace, WaveletVector,
};
