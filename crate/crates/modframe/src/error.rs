use std::fmt;

/// Unified error type for every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum FrameError {
    /// A square matrix was required.
    NonSquare { rows: usize, cols: usize },
    /// Input failed the Hermiticity check; carries the max entry asymmetry.
    NotHermitian { asymmetry: f64 },
    /// The Jacobi sweep limit was exceeded before reaching the requested tolerance.
    NoConvergence { sweeps: usize },
    /// A spectral function was evaluated outside its domain.
    DomainError { eigenvalue: f64 },
    /// Operands live over different algebra shapes or have incompatible ranks.
    ShapeMismatch(&'static str),
    /// Flattened data does not tile into the requested block layout.
    DimensionError(&'static str),
    /// A positive (semidefinite) input was required; carries the offending minimum eigenvalue.
    NotPositive { min_eig: f64 },
    /// An invertible element/operator was required.
    SingularElement { min_eig: f64 },
    /// The system's optimal lower bound is below the frame threshold.
    NotAFrame { lower: f64 },
    /// The operator is not surjective (some flattened block is row-rank deficient).
    NotSurjective,
    /// A unit chain failed monotonicity at the given stage.
    ChainNotIncreasing { stage: usize },
    /// The final chain element is not the identity; carries `‖E_last − I‖`.
    LastNotIdentity { residual: f64 },
    /// A chain element is not a positive contraction.
    NotContraction { stage: usize, norm: f64 },
    /// The candidate pair is not dual; carries `‖V*U − I‖`.
    NotDual { residual: f64 },
    /// Parseval-dual existence fails: optimal lower bound below one.
    LowerBoundBelowOne { lower: f64 },
    /// Parseval-dual existence fails: rank of `S − I` exceeds the corank of the analysis range.
    InsufficientCorank { needed: usize, available: usize },
    /// The order condition `0 ⪯ a ⪯ ⟨x,x⟩` fails.
    NotDominated,
    /// Index outside the frame system.
    IndexOutOfRange { index: usize, len: usize },
    /// An operation received an empty system or chain.
    EmptySystem,
    /// Parseval extension requires an optimal Bessel bound at most one.
    BesselBoundExceedsOne { upper: f64 },
}

impl fmt::Display for FrameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonSquare { rows, cols } => write!(f, "matrix must be square, got {rows}x{cols}"),
            Self::NotHermitian { asymmetry } => {
                write!(f, "input is not Hermitian (max asymmetry {asymmetry:.3e})")
            }
            Self::NoConvergence { sweeps } => {
                write!(f, "eigensolver did not converge within {sweeps} sweeps")
            }
            Self::DomainError { eigenvalue } => {
                write!(
                    f,
                    "spectral function undefined at eigenvalue {eigenvalue:.6e}"
                )
            }
            Self::ShapeMismatch(what) => write!(f, "shape mismatch: {what}"),
            Self::DimensionError(what) => write!(f, "dimension error: {what}"),
            Self::NotPositive { min_eig } => {
                write!(
                    f,
                    "input is not positive semidefinite (min eigenvalue {min_eig:.6e})"
                )
            }
            Self::SingularElement { min_eig } => {
                write!(f, "element is singular (min eigenvalue {min_eig:.6e})")
            }
            Self::NotAFrame { lower } => {
                write!(f, "system is not a frame (optimal lower bound {lower:.6e})")
            }
            Self::NotSurjective => write!(f, "operator is not surjective"),
            Self::ChainNotIncreasing { stage } => {
                write!(f, "unit chain is not increasing at stage {stage}")
            }
            Self::LastNotIdentity { residual } => {
                write!(
                    f,
                    "final chain element is not the identity (residual {residual:.3e})"
                )
            }
            Self::NotContraction { stage, norm } => {
                write!(
                    f,
                    "chain element {stage} is not a positive contraction (norm {norm:.6})"
                )
            }
            Self::NotDual { residual } => {
                write!(f, "systems are not dual (residual {residual:.3e})")
            }
            Self::LowerBoundBelowOne { lower } => {
                write!(
                    f,
                    "no Parseval dual: lower frame bound {lower:.6} is below one"
                )
            }
            Self::InsufficientCorank { needed, available } => {
                write!(
                    f,
                    "no Parseval dual: rank {needed} exceeds available corank {available}"
                )
            }
            Self::NotDominated => {
                write!(f, "element is not dominated by the vector's Gram element")
            }
            Self::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for system of {len} vectors")
            }
            Self::EmptySystem => write!(f, "empty system"),
            Self::BesselBoundExceedsOne { upper } => {
                write!(
                    f,
                    "no Parseval extension: optimal Bessel bound {upper:.6} exceeds one"
                )
            }
        }
    }
}

impl std::error::Error for FrameError {}

pub type Result<T> = std::result::Result<T, FrameError>;
