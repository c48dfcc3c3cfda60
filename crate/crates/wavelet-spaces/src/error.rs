use thiserror::Error;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("phase-space points need at least one coordinate pair")]
    ZeroDimension,

    #[error("non-finite value in input")]
    NonFinite,

    #[error("quadrature needs at least 2 nodes and a positive, finite half-width")]
    InvalidQuadrature,

    #[error("window table needs at least 2 samples and a positive, finite spacing")]
    InvalidTable,

    #[error("window L2 norm {norm} is too far from 1 for admissible use")]
    NotAdmissible { norm: f64 },

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("points {i} and {j} coincide")]
    DuplicatePoint { i: usize, j: usize },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("target values lie outside the image of the Gram matrix (residual {residual:.3e})")]
    Infeasible { residual: f64 },

    #[error("interpolant was built for window {expected}, evaluated with {got}")]
    WindowMismatch { expected: String, got: String },

    #[error("interpolant carries no point set, so kernel evaluation is undefined")]
    MissingPoints,

    #[error("grid contains no cells")]
    EmptyGrid,

    #[error("spacing search needs m >= 2, got {m}")]
    SpacingTooFew { m: usize },

    #[error("spacing search needs finite 0 < step <= r_max")]
    BadSearchGrid,

    #[error("kernel envelope does not drop below 1/(m-1) within r_max = {r_max}")]
    SearchExhausted { r_max: f64 },

    #[error("group spec invalid: {reason}")]
    BadGroupSpec { reason: String },

    #[error("group order {order} exceeds the supported limit {limit}")]
    GroupTooLarge { order: usize, limit: usize },

    #[error("representations act on different groups")]
    GroupMismatch,

    #[error("matrices do not form a unitary representation (defect {defect:.3e})")]
    NotARepresentation { defect: f64 },

    #[error("irreducible decomposition of the regular representation did not converge")]
    DecompositionFailed,

    #[error("wavelet transforms of a basis are rank deficient; expected a full-rank isometry")]
    RankDeficientSubspace,

    #[error("kernel phase conventions disagree at entry ({i},{j}) by {deviation:.3e}")]
    KernelConventionMismatch { i: usize, j: usize, deviation: f64 },

    #[error("wavelet subspaces intersect partially; rigidity demands all or nothing")]
    RigidityViolation,

    #[error("mixing weight t = {t} outside [0, 1]")]
    BadMixingWeight { t: f64 },

    #[error("tau coordinate {tau} outside [0, 1)")]
    BadTau { tau: f64 },

    #[error("dilation index m must be nonzero")]
    ZeroDilation,

    #[error("tau quadrature needs at least {needed} nodes for |m| = {m}, got {got}")]
    TooFewTauNodes { needed: usize, m: u32, got: usize },

    #[error("demo size m = {m} exceeds group order {order}")]
    DemoTooLarge { m: usize, order: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
