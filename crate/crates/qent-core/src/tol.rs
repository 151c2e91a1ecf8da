//! Central tolerance constants.
//!
//! Thresholds used for validation and rank/positivity decisions live here so
//! that every module agrees on what "zero" means.

/// Max entry deviation allowed when validating Hermiticity, unit trace, or
/// unit norm of constructed states and operators.
pub const VALIDATE: f64 = 1e-12;

/// Positivity floor for density-operator eigenvalues.
pub const POSITIVITY: f64 = 1e-10;

/// Relative rank tolerance: a singular value counts as nonzero when it
/// exceeds `RANK_REL` times the largest singular value.
pub const RANK_REL: f64 = 1e-10;

/// Orthonormality tolerance for user-supplied measurement bases.
pub const BASIS_ORTHO: f64 = 1e-10;

/// Probability below which a measurement branch is reported with no
/// post-state rather than renormalized.
pub const ZERO_PROB: f64 = 1e-12;

/// Tangle threshold separating the W class from the GHZ class.
pub const TANGLE_CLASS: f64 = 1e-8;

/// Residual at which an alternating-least-squares rank fit is accepted.
pub const ALS_RESIDUAL: f64 = 1e-8;

/// Minimal reconstruction fidelity for the three-qubit normal form.
pub const ACIN_FIDELITY: f64 = 1.0 - 1e-9;

/// Convergence window for alternating overlap maximization.
pub const OVERLAP_CONVERGENCE: f64 = 1e-12;
