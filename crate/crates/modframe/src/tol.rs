//! Default numerical tolerances.
//!
//! Every tolerance is overridable per call; these are the values the
//! higher-level modules use when none is supplied.

/// Eigendecomposition reconstruction/orthonormality guarantee.
pub const TAU_EIG: f64 = 1e-10;

/// Absolute bound on max entry asymmetry accepted as Hermitian.
/// Inputs passing the check are symmetrized to `(M + M*)/2`.
pub const TAU_HERM: f64 = 1e-10;

/// Positive-semidefiniteness slack: `is_psd ⇔ λ_min ≥ −TAU_PSD·(1 + ‖M‖)`.
pub const TAU_PSD: f64 = 1e-9;

/// Relative singular-value cutoff for ranks and inverses.
pub const TAU_RANK: f64 = 1e-8;

/// Relative frame decision threshold: frame ⇔ `λ_min(S) > TAU_FRAME·max(1, λ_max(S))`.
pub const TAU_FRAME: f64 = 1e-8;

/// Absolute bound on `‖V*U − I‖` for an accepted dual pair.
pub const TAU_DUAL: f64 = 1e-9;

/// Jacobi sweep limit.
pub const SWEEP_LIMIT: usize = 100;

/// Jacobi convergence: off-diagonal Frobenius mass below this multiple of `‖M‖_F`.
pub const JACOBI_REL: f64 = 1e-14;

/// Vectors with module norm at or below this are pruned from extensions.
pub const ZERO_PRUNE: f64 = 1e-10;
