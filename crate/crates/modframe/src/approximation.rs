//! Perturbation guarantees and best Parseval/tight approximations.
//!
//! Distances between systems are operator-norm distances of their analysis
//! operators on the flattened blocks. A candidate within the open ball of
//! radius `√A` around a frame is itself a frame with lower bound at least
//! `(√A − ‖U−V‖)²`, the ball radius is sharp, and the closest Parseval
//! (resp. tight) frame is the canonically associated one at distance
//! `max{1−√A, √B−1}` (resp. `(√B−√A)/2`).

use num_complex::Complex64;

use crate::error::{FrameError, Result};
use crate::frames::{FrameReport, FrameSystem};
use crate::tol;

/// Outcome of [`perturb_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbationVerdict {
    /// `‖U − V‖`.
    pub distance: f64,
    /// `√A` of the reference frame.
    pub radius: f64,
    /// `distance < radius`.
    pub within: bool,
    /// `(√A − distance)²`, present when `within`.
    pub guaranteed_lower: Option<f64>,
    /// Per-element guarantee `‖x_n − y_n‖ ≤ distance`.
    pub per_element_bound: f64,
}

/// Outcome of [`removal_check`].
#[derive(Clone, Debug)]
pub struct RemovalCheck {
    pub removable: bool,
    /// Analysis of the system with element `j` removed.
    pub remaining: FrameReport,
}

/// Best Parseval approximation of a frame.
#[derive(Clone, Debug)]
pub struct ParsevalApproximation {
    pub approx: FrameSystem,
    /// Closed form `max{1−√A, √B−1}`.
    pub distance: f64,
    /// Direct `‖U − U·S^{-1/2}‖`; agrees with `distance` up to tolerance.
    pub measured_distance: f64,
}

/// Best tight approximation of a frame.
#[derive(Clone, Debug)]
pub struct TightApproximation {
    pub approx: FrameSystem,
    /// `((√A+√B)/2)²`.
    pub tight_constant: f64,
    /// Closed form `(√B−√A)/2`.
    pub distance: f64,
    /// Direct `‖U − V₀‖`.
    pub measured_distance: f64,
}

/// Operator-norm distance between the analysis operators of two systems.
pub fn analysis_distance(f: &FrameSystem, g: &FrameSystem) -> Result<f64> {
    if f.shape() != g.shape() || f.rank() != g.rank() || f.len() != g.len() {
        return Err(FrameError::ShapeMismatch("systems of different dimensions"));
    }
    Ok(f.analysis().sub(g.analysis())?.norm())
}

/// Perturbation test around a frame: `within ⇔ ‖U−V‖ < √A`, in which case
/// the candidate is a frame with lower bound at least `(√A − ‖U−V‖)²` and
/// `‖x_n − y_n‖ ≤ ‖U−V‖` for every element.
pub fn perturb_check(f: &FrameSystem, candidate: &FrameSystem) -> Result<PerturbationVerdict> {
    let distance = analysis_distance(f, candidate)?;
    let radius = f.analyze().lower.sqrt();
    let within = distance < radius;
    Ok(PerturbationVerdict {
        distance,
        radius,
        within,
        guaranteed_lower: within.then(|| (radius - distance).powi(2)),
        per_element_bound: distance,
    })
}

/// Element removal: `x_j` can be dropped while keeping a frame whenever
/// `‖x_j‖ < √A`.
pub fn removal_check(f: &FrameSystem, j: usize) -> Result<RemovalCheck> {
    let report = f.analyze();
    if !report.is_frame {
        return Err(FrameError::NotAFrame {
            lower: report.lower,
        });
    }
    if j >= f.len() {
        return Err(FrameError::IndexOutOfRange {
            index: j,
            len: f.len(),
        });
    }
    let radius = report.lower.sqrt();
    let removable = f.vectors()[j].norm() < radius - tol::TAU_FRAME;
    let kept: Vec<_> = f
        .vectors()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, v)| v.clone())
        .collect();
    let remaining = if kept.is_empty() {
        // Removing the only vector: grade the empty remainder as the zero system.
        FrameSystem::new(vec![crate::module_space::ModuleVector::zero(
            f.shape(),
            f.rank(),
        )])?
        .analyze()
    } else {
        FrameSystem::new(kept)?.analyze()
    };
    Ok(RemovalCheck {
        removable,
        remaining,
    })
}

/// Closest Parseval frame: the canonically associated one, at distance
/// `max{1−√A, √B−1}`, computed both in closed form and directly.
pub fn best_parseval(f: &FrameSystem) -> Result<ParsevalApproximation> {
    let report = f.analyze();
    if !report.is_frame {
        return Err(FrameError::NotAFrame {
            lower: report.lower,
        });
    }
    let approx = f.canonical_parseval()?;
    let distance = (1.0 - report.lower.sqrt())
        .max(report.upper.sqrt() - 1.0)
        .max(0.0);
    let measured_distance = analysis_distance(f, &approx)?;
    Ok(ParsevalApproximation {
        approx,
        distance,
        measured_distance,
    })
}

/// Closest tight frame: `V₀ = ((√A+√B)/2)·U·S^{-1/2}` with tight constant
/// `((√A+√B)/2)²`, at distance `(√B−√A)/2`.
pub fn best_tight(f: &FrameSystem) -> Result<TightApproximation> {
    let report = f.analyze();
    if !report.is_frame {
        return Err(FrameError::NotAFrame {
            lower: report.lower,
        });
    }
    let half_sum = 0.5 * (report.lower.sqrt() + report.upper.sqrt());
    let parseval = f.canonical_parseval()?;
    let approx = FrameSystem::new(
        parseval
            .vectors()
            .iter()
            .map(|v| v.scale(Complex64::new(half_sum, 0.0)))
            .collect(),
    )?;
    let distance = 0.5 * (report.upper.sqrt() - report.lower.sqrt());
    let measured_distance = analysis_distance(f, &approx)?;
    Ok(TightApproximation {
        approx,
        tight_constant: half_sum * half_sum,
        distance,
        measured_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstar::{AlgebraElement, AlgebraShape};
    use crate::module_space::ModuleVector;

    fn scalar(z: f64) -> AlgebraElement {
        AlgebraElement::scalar(&AlgebraShape::new(vec![1]), Complex64::new(z, 0.0))
    }

    fn scalar_vec(entries: &[f64]) -> ModuleVector {
        ModuleVector::new(entries.iter().map(|&z| scalar(z)).collect()).unwrap()
    }

    fn scalar_frame(vectors: &[&[f64]]) -> FrameSystem {
        FrameSystem::new(vectors.iter().map(|v| scalar_vec(v)).collect()).unwrap()
    }

    #[test]
    fn perturb_identity_candidate() {
        let f = scalar_frame(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let verdict = perturb_check(&f, &f).unwrap();
        assert_eq!(verdict.distance, 0.0);
        assert!(verdict.within);
        assert!((verdict.guaranteed_lower.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn perturb_diagonal_bound_attained() {
        // F = standard basis (A = 1), G = {(1,0),(0,0.5)}: distance 0.5,
        // guaranteed lower 0.25, and actual A(G) = 0.25.
        let f = scalar_frame(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let g = scalar_frame(&[&[1.0, 0.0], &[0.0, 0.5]]);
        let verdict = perturb_check(&f, &g).unwrap();
        assert!((verdict.distance - 0.5).abs() < 1e-12);
        assert!(verdict.within);
        assert!((verdict.guaranteed_lower.unwrap() - 0.25).abs() < 1e-12);
        assert!((g.analyze().lower - 0.25).abs() < 1e-12);
        assert!(verdict.per_element_bound >= 0.5 - 1e-12);
    }

    #[test]
    fn perturb_boundary_witness_not_within() {
        // Dropping a basis vector to zero sits exactly on the ball boundary.
        let f = scalar_frame(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let g = scalar_frame(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let verdict = perturb_check(&f, &g).unwrap();
        assert!((verdict.distance - 1.0).abs() < 1e-12);
        assert!((verdict.radius - 1.0).abs() < 1e-12);
        assert!(!verdict.within);
        assert!(verdict.guaranteed_lower.is_none());
        assert!(!g.analyze().is_frame);
    }

    #[test]
    fn removal_of_zero_vector() {
        let f = scalar_frame(&[&[1.0, 0.0], &[0.0, 1.0], &[0.0, 0.0]]);
        let check = removal_check(&f, 2).unwrap();
        assert!(check.removable);
        assert!(check.remaining.is_frame);
    }

    #[test]
    fn removal_of_short_vector() {
        let f = scalar_frame(&[&[1.0, 0.0], &[0.0, 1.0], &[0.3, 0.0]]);
        let check = removal_check(&f, 2).unwrap();
        assert!(check.removable);
        assert!((check.remaining.lower - 1.0).abs() < 1e-12);
    }

    #[test]
    fn removal_of_basis_vector_refused() {
        let f = scalar_frame(&[&[1.0, 0.0], &[0.0, 1.0]]);
        for j in 0..2 {
            let check = removal_check(&f, j).unwrap();
            assert!(!check.removable);
            assert!(!check.remaining.is_frame);
        }
    }

    #[test]
    fn removal_index_out_of_range() {
        let f = scalar_frame(&[&[1.0]]);
        assert!(matches!(
            removal_check(&f, 5),
            Err(FrameError::IndexOutOfRange { index: 5, len: 1 })
        ));
    }

    #[test]
    fn best_parseval_of_parseval_is_zero() {
        let f = scalar_frame(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let out = best_parseval(&f).unwrap();
        assert!(out.distance < 1e-12);
        assert!(out.measured_distance < 1e-9);
    }

    #[test]
    fn best_parseval_diagonal() {
        // A = 1, B = 4 → distance max{0, 1} = 1.
        let f = scalar_frame(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let out = best_parseval(&f).unwrap();
        assert!((out.distance - 1.0).abs() < 1e-12);
        assert!((out.measured_distance - 1.0).abs() < 1e-9);
        assert!(out.approx.analyze().is_parseval);
    }

    #[test]
    fn best_parseval_short_scalar() {
        // {1/2}: A = B = 1/4 → distance 1 − 1/2 = 1/2.
        let f = scalar_frame(&[&[0.5]]);
        let out = best_parseval(&f).unwrap();
        assert!((out.distance - 0.5).abs() < 1e-12);
        assert!((out.measured_distance - 0.5).abs() < 1e-9);
    }

    #[test]
    fn best_tight_diagonal() {
        // √A = 1, √B = 2 → constant (3/2)² = 2.25, distance 0.5.
        let f = scalar_frame(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let out = best_tight(&f).unwrap();
        assert!((out.tight_constant - 2.25).abs() < 1e-12);
        assert!((out.distance - 0.5).abs() < 1e-12);
        assert!((out.measured_distance - 0.5).abs() < 1e-9);
        let report = out.approx.analyze();
        assert!(report.is_tight);
        assert!((report.tight_constant.unwrap() - 2.25).abs() < 1e-9);
    }

    #[test]
    fn best_tight_of_tight_is_zero() {
        // {1, 2}: A = B = 5 → distance 0, constant 5.
        let f = scalar_frame(&[&[1.0], &[2.0]]);
        let out = best_tight(&f).unwrap();
        assert!(out.distance < 1e-12);
        assert!(out.measured_distance < 1e-9);
        assert!((out.tight_constant - 5.0).abs() < 1e-12);
        for (a, b) in out.approx.vectors().iter().zip(f.vectors()) {
            assert!(a.approx_eq(b, 1e-9));
        }
    }

    #[test]
    fn parseval_and_tight_agree_when_sqrt_sum_is_two() {
        // √A + √B = 2 makes the best tight frame Parseval.
        let f = scalar_frame(&[&[0.5, 0.0], &[0.0, 1.5]]);
        let report = f.analyze();
        assert!((report.lower.sqrt() + report.upper.sqrt() - 2.0).abs() < 1e-12);
        let p = best_parseval(&f).unwrap();
        let t = best_tight(&f).unwrap();
        assert!((p.distance - t.distance).abs() < 1e-12);
        assert!((t.tight_constant - 1.0).abs() < 1e-12);
    }
}
