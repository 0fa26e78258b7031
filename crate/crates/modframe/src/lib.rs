//! Frame theory for Hilbert C*-modules at desk scale.
//!
//! The ambient coefficient algebra is a finite-dimensional C*-algebra
//! `A = ⊕_k M_{n_k}(ℂ)`, the module is `X = A^m`, and adjointable operators
//! `A^m → A^N` are `N×m` matrices over `A`. Everything reduces, through an
//! exact block "flattening", to dense complex linear algebra, so frame
//! bounds, canonical duals, Parseval duals, tight approximations and finite
//! extensions are all computable up to floating-point tolerance.
//!
//! The crate is organized bottom-up:
//!
//! * [`linalg`] — self-contained dense complex kernel (Jacobi Hermitian
//!   eigensolver, spectral calculus, norms, ranks, positivity),
//! * [`cstar`] — elements of `⊕_k M_{n_k}(ℂ)`, the C*-order and functional
//!   calculus,
//! * [`module_space`] — module vectors, operators, θ-operators, flattening,
//! * [`frames`] — frame systems, bounds, canonical dual / Parseval frames,
//! * [`duality`] — dual parametrization, oblique projections, Parseval duals,
//! * [`approximation`] — perturbation bounds, best Parseval/tight frames,
//! * [`extension`] — dominated square-root factorization and finite
//!   extensions of Bessel systems,
//! * [`nonunital`] — the commutative non-unital model where outer frames
//!   exist and are decidable,
//! * [`sampling`] — seeded random generators used by the property suites.

pub mod approximation;
pub mod cstar;
pub mod duality;
mod error;
pub mod extension;
pub mod frames;
pub mod linalg;
pub mod module_space;
pub mod nonunital;
pub mod sampling;
pub mod tol;

pub use error::{FrameError, Result};
pub use num_complex::Complex64;
