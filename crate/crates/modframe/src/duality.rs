//! Dual frames: verification, full parametrization, oblique-projection
//! structure, minimality of the canonical dual, Parseval duals, unique-dual
//! detection and pseudoduality.
//!
//! Throughout, `U` is the analysis operator of the primal system, `V` the
//! analysis operator of a candidate dual, `S = U*U`, and duality means
//! `V*U = I` (equivalently `U*V = I`). Every dual arises as
//! `V = U·S^{-1} + P·L` with `P = I − U·S^{-1}·U*` the orthogonal projection
//! onto `R(U)^⊥` and `L` a free parameter.

use num_complex::Complex64;

use crate::error::{FrameError, Result};
use crate::frames::FrameSystem;
use crate::linalg::{self, ComplexMatrix};
use crate::module_space::{unflatten, FlattenedOperator, ModuleOperator};
use crate::tol;

/// An accepted primal/dual pair; `residual = ‖V*U − I‖ ≤ τ_dual`.
#[derive(Clone, Debug)]
pub struct DualPair {
    primal: FrameSystem,
    dual: FrameSystem,
    residual: f64,
}

/// Outcome of [`is_dual`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualCheck {
    pub ok: bool,
    pub residual: f64,
}

/// Cross-operator structure of a dual pair (oblique projection data).
#[derive(Clone, Debug)]
pub struct ObliqueStructure {
    /// `F = U·V*`, the projection onto `R(U)` along `N(V*)`.
    pub cross_projection: ModuleOperator,
    /// `‖F² − F‖`.
    pub idempotency_residual: f64,
    /// `‖F·U − U‖`.
    pub range_residual: f64,
    /// `‖V*·F − V*‖`.
    pub corange_residual: f64,
    /// Max entry asymmetry of `F`; zero exactly for the canonical dual.
    pub hermitian_defect: f64,
}

/// Outcome of [`pseudodual_check`].
#[derive(Clone, Debug)]
pub struct PseudodualCheck {
    /// Whether `V*U` is invertible.
    pub ok: bool,
    /// `((V*U)^{-1} y_n)_n` — a genuine dual of the primal — when `ok`.
    pub corrected_dual: Option<FrameSystem>,
}

fn check_same_dimensions(f: &FrameSystem, g: &FrameSystem) -> Result<()> {
    if f.shape() != g.shape() || f.rank() != g.rank() || f.len() != g.len() {
        return Err(FrameError::ShapeMismatch(
            "frame systems of different dimensions",
        ));
    }
    Ok(())
}

/// Cross operator `V*U` of two same-sized systems.
fn cross_operator(f: &FrameSystem, g: &FrameSystem) -> Result<ModuleOperator> {
    g.synthesis().compose(f.analysis())
}

/// Duality test: `ok ⇔ ‖V*U − I‖ ≤ τ_dual`. Symmetric in its arguments.
pub fn is_dual(f: &FrameSystem, g: &FrameSystem) -> Result<DualCheck> {
    is_dual_with(f, g, tol::TAU_DUAL)
}

pub fn is_dual_with(f: &FrameSystem, g: &FrameSystem, tau_dual: f64) -> Result<DualCheck> {
    check_same_dimensions(f, g)?;
    let identity = ModuleOperator::identity(f.shape(), f.rank());
    let residual = cross_operator(f, g)?.sub(&identity)?.norm();
    Ok(DualCheck {
        ok: residual <= tau_dual,
        residual,
    })
}

impl DualPair {
    /// Accept a candidate pair, rejecting with [`FrameError::NotDual`] when
    /// the residual exceeds `τ_dual`.
    pub fn accept(primal: FrameSystem, dual: FrameSystem) -> Result<Self> {
        let check = is_dual(&primal, &dual)?;
        if !check.ok {
            return Err(FrameError::NotDual {
                residual: check.residual,
            });
        }
        Ok(Self {
            primal,
            dual,
            residual: check.residual,
        })
    }

    pub fn primal(&self) -> &FrameSystem {
        &self.primal
    }

    pub fn dual(&self) -> &FrameSystem {
        &self.dual
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }
}

/// Orthogonal projection `P = I − U·S^{-1}·U*` onto `R(U)^⊥ = N(U*)`.
pub fn range_complement_projection(f: &FrameSystem) -> Result<ModuleOperator> {
    let u = f.analysis();
    let s_inv = f.frame_operator().inv_positive(tol::TAU_RANK)?;
    let projection_onto_range = u.compose(&s_inv)?.compose(&u.adjoint())?;
    ModuleOperator::identity(f.shape(), f.len()).sub(&projection_onto_range)
}

/// The full dual parametrization: for any `L: A^m → A^N` the system with
/// analysis operator `V = U·S^{-1} + (I − U·S^{-1}·U*)·L` is dual to `f`,
/// and every dual arises this way (take `L = V`). `L = 0` gives the
/// canonical dual.
pub fn dual_from_parameter(f: &FrameSystem, l: &ModuleOperator) -> Result<FrameSystem> {
    let report = f.analyze();
    if !report.is_frame {
        return Err(FrameError::NotAFrame {
            lower: report.lower,
        });
    }
    if l.shape() != f.shape() || l.out_rank() != f.len() || l.in_rank() != f.rank() {
        return Err(FrameError::ShapeMismatch(
            "parameter operator of wrong dimensions",
        ));
    }
    let u = f.analysis();
    let s_inv = f.frame_operator().inv_positive(tol::TAU_RANK)?;
    let canonical = u.compose(&s_inv)?;
    let p = range_complement_projection(f)?;
    let v = canonical.add(&p.compose(l)?)?;
    FrameSystem::from_analysis(v)
}

/// Oblique-projection structure of an accepted pair: `F = U·V*` is
/// idempotent, fixes `R(U)`, and is left-absorbed by `V*`; it is Hermitian
/// exactly when the dual is canonical.
pub fn oblique_structure(pair: &DualPair) -> Result<ObliqueStructure> {
    let u = pair.primal.analysis();
    let v_star = pair.dual.synthesis();
    let cross = u.compose(&v_star)?;
    let idempotency_residual = cross.compose(&cross)?.sub(&cross)?.norm();
    let range_residual = cross.compose(u)?.sub(u)?.norm();
    let corange_residual = v_star.compose(&cross)?.sub(&v_star)?.norm();
    let hermitian_defect = cross.hermitian_defect();
    Ok(ObliqueStructure {
        cross_projection: cross,
        idempotency_residual,
        range_residual,
        corange_residual,
        hermitian_defect,
    })
}

/// Canonical-dual minimality: `S^{-1} ⪯ V*V` must hold for every accepted
/// pair, with equality exactly for the canonical dual.
pub fn minimality_check(pair: &DualPair) -> Result<bool> {
    let v = pair.dual.analysis();
    let gram = v.adjoint().compose(v)?;
    let s_inv = pair.primal.frame_operator().inv_positive(tol::TAU_RANK)?;
    gram.sub(&s_inv)?.is_positive(tol::TAU_PSD)
}

/// Parseval-dual construction.
///
/// Per flattened block the two existence conditions are `S − I ⪰ 0` and
/// `rank(S − I) ≤ corank(U)`; both together are equivalent to the abstract
/// factorization `S − I = T*·P_{R(U)^⊥}·T`, which is then realized as
/// `T = Σ_i √λ_i q_i u_i*` from the eigenpairs `(λ_i, u_i)` of `S − I` and
/// an orthonormal basis `(q_i)` of `R(U)^⊥`. The returned system has
/// analysis operator `V = U·S^{-1} + P·T·S^{-1/2}` and is a Parseval frame
/// dual to the input.
pub fn parseval_dual(f: &FrameSystem) -> Result<FrameSystem> {
    let report = f.analyze();
    if !report.is_frame {
        return Err(FrameError::NotAFrame {
            lower: report.lower,
        });
    }
    if report.lower < 1.0 - tol::TAU_PSD {
        return Err(FrameError::LowerBoundBelowOne {
            lower: report.lower,
        });
    }

    let shape = f.shape().clone();
    let m = f.rank();
    let n = f.len();
    let u_flat = f.analysis().flatten();
    let s_flat = f.frame_operator().flatten();

    let mut v_blocks = Vec::with_capacity(u_flat.blocks.len());
    for (u_k, s_k) in u_flat.blocks.iter().zip(&s_flat.blocks) {
        let dim_in = s_k.rows();
        let dim_out = u_k.rows();
        let excess = s_k.sub(&ComplexMatrix::identity(dim_in));
        let excess_eig = linalg::eig_hermitian(&excess, tol::TAU_EIG)?;
        if excess_eig.eigenvalues[0] < -tol::TAU_PSD * (1.0 + linalg::op_norm(s_k)) {
            return Err(FrameError::LowerBoundBelowOne {
                lower: report.lower,
            });
        }
        let excess_scale = excess_eig
            .eigenvalues
            .iter()
            .map(|l| l.abs())
            .fold(0.0, f64::max);
        let kept: Vec<usize> = (0..dim_in)
            .filter(|&i| excess_eig.eigenvalues[i] > tol::TAU_RANK * excess_scale.max(1e-300))
            .collect();

        let u_rank = linalg::numerical_rank(u_k, tol::TAU_RANK);
        let corank = dim_out - u_rank;
        if kept.len() > corank {
            return Err(FrameError::InsufficientCorank {
                needed: kept.len(),
                available: corank,
            });
        }

        let s_inv = linalg::apply_spectral_function(s_k, |t| 1.0 / t, tol::TAU_EIG)?;
        let s_inv_sqrt = linalg::apply_spectral_function(s_k, |t| t.powf(-0.5), tol::TAU_EIG)?;
        let canonical = u_k.mul(&s_inv);
        let projection = ComplexMatrix::identity(dim_out).sub(&u_k.mul(&s_inv).mul(&u_k.dagger()));

        // Orthonormal basis of R(U)^⊥ from the spectral 1-eigenspace of P.
        let proj_eig = linalg::eig_hermitian(&projection, tol::TAU_EIG)?;
        let basis: Vec<usize> = (0..dim_out)
            .filter(|&i| proj_eig.eigenvalues[i] > 0.5)
            .collect();
        debug_assert_eq!(basis.len(), corank);

        let mut correction = ComplexMatrix::zeros(dim_out, dim_in);
        for (slot, &i) in kept.iter().enumerate() {
            let weight = excess_eig.eigenvalues[i].sqrt();
            let q_col = basis[slot];
            for r in 0..dim_out {
                let qr = proj_eig.eigenvectors.get(r, q_col);
                for ccol in 0..dim_in {
                    let ui = excess_eig.eigenvectors.get(ccol, i).conj();
                    let add = qr * ui * Complex64::new(weight, 0.0);
                    correction.set(r, ccol, correction.get(r, ccol) + add);
                }
            }
        }
        let v_k = canonical.add(&projection.mul(&correction).mul(&s_inv_sqrt));
        v_blocks.push(v_k);
    }

    let v = unflatten(&FlattenedOperator { blocks: v_blocks }, &shape, n, m)?;
    FrameSystem::from_analysis(v)
}

/// Unique-dual detection: the canonical dual is the only dual exactly when
/// `U` is surjective onto `A^N`, i.e. every flattened block of the analysis
/// operator has full row rank.
pub fn has_unique_dual(f: &FrameSystem) -> Result<bool> {
    let report = f.analyze();
    if !report.is_frame {
        return Err(FrameError::NotAFrame {
            lower: report.lower,
        });
    }
    Ok(f.analysis().is_surjective(tol::TAU_RANK))
}

/// Pseudoduality: `V*U` invertible. When it is, `((V*U)^{-1} y_n)_n` is a
/// genuine dual of `(x_n)_n` and is returned as the corrected dual.
pub fn pseudodual_check(f: &FrameSystem, g: &FrameSystem) -> Result<PseudodualCheck> {
    check_same_dimensions(f, g)?;
    let cross = cross_operator(f, g)?;
    if !cross.is_invertible(tol::TAU_RANK) {
        return Ok(PseudodualCheck {
            ok: false,
            corrected_dual: None,
        });
    }
    let w = cross.inv_general(tol::TAU_RANK)?;
    let corrected = g
        .vectors()
        .iter()
        .map(|y| w.apply(y))
        .collect::<Result<Vec<_>>>()?;
    Ok(PseudodualCheck {
        ok: true,
        corrected_dual: Some(FrameSystem::new(corrected)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstar::{AlgebraElement, AlgebraShape};
    use crate::module_space::{inner_product, ModuleVector};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn scalar_shape() -> AlgebraShape {
        AlgebraShape::new(vec![1])
    }

    fn scalar(z: f64) -> AlgebraElement {
        AlgebraElement::scalar(&scalar_shape(), c(z, 0.0))
    }

    fn scalar_vec(entries: &[f64]) -> ModuleVector {
        ModuleVector::new(entries.iter().map(|&z| scalar(z)).collect()).unwrap()
    }

    fn scalar_frame(vectors: &[&[f64]]) -> FrameSystem {
        FrameSystem::new(vectors.iter().map(|v| scalar_vec(v)).collect()).unwrap()
    }

    #[test]
    fn parseval_frame_self_dual() {
        let f = scalar_frame(&[&[1.0]]);
        let check = is_dual(&f, &f).unwrap();
        assert!(check.ok && check.residual < 1e-15);
    }

    #[test]
    fn canonical_dual_is_dual_symmetrically() {
        let f = scalar_frame(&[&[1.0], &[2.0]]);
        let g = scalar_frame(&[&[0.2], &[0.4]]);
        assert!(is_dual(&f, &g).unwrap().ok);
        assert!(is_dual(&g, &f).unwrap().ok);
    }

    #[test]
    fn non_dual_detected() {
        let f = scalar_frame(&[&[1.0], &[2.0]]);
        // V*U = 5 here.
        let check = is_dual(&f, &f).unwrap();
        assert!(!check.ok && (check.residual - 4.0).abs() < 1e-12);
    }

    #[test]
    fn parameter_zero_gives_canonical_dual() {
        let f = scalar_frame(&[&[1.0, 0.0], &[0.0, 2.0], &[1.0, 1.0]]);
        let zero = ModuleOperator::zero(f.shape(), f.len(), f.rank());
        let dual = dual_from_parameter(&f, &zero).unwrap();
        let canonical = f.canonical_dual().unwrap();
        for (a, b) in dual.vectors().iter().zip(canonical.vectors()) {
            assert!(a.approx_eq(b, 1e-10));
        }
    }

    #[test]
    fn parameter_u_gives_canonical_dual_again() {
        // P annihilates R(U), so L = U adds nothing.
        let f = scalar_frame(&[&[1.0, 0.0], &[0.0, 2.0], &[1.0, 1.0]]);
        let dual = dual_from_parameter(&f, f.analysis()).unwrap();
        let canonical = f.canonical_dual().unwrap();
        for (a, b) in dual.vectors().iter().zip(canonical.vectors()) {
            assert!(a.approx_eq(b, 1e-10));
        }
    }

    #[test]
    fn parameter_scalar_example() {
        // F = {1,1}: P = I − (1/2)J; L = (1,−1) gives V = (3/2, −1/2), V*U = 1.
        let f = scalar_frame(&[&[1.0], &[1.0]]);
        let l = ModuleOperator::new(scalar_shape(), 2, 1, vec![scalar(1.0), scalar(-1.0)]).unwrap();
        let dual = dual_from_parameter(&f, &l).unwrap();
        assert!(dual.vectors()[0].approx_eq(&scalar_vec(&[1.5]), 1e-12));
        assert!(dual.vectors()[1].approx_eq(&scalar_vec(&[-0.5]), 1e-12));
        assert!(is_dual(&f, &dual).unwrap().ok);
    }

    #[test]
    fn completeness_direction_l_equals_v() {
        let f = scalar_frame(&[&[1.0], &[1.0]]);
        let l = ModuleOperator::new(scalar_shape(), 2, 1, vec![scalar(0.3), scalar(-0.9)]).unwrap();
        let dual = dual_from_parameter(&f, &l).unwrap();
        let regenerated = dual_from_parameter(&f, dual.analysis()).unwrap();
        for (a, b) in dual.vectors().iter().zip(regenerated.vectors()) {
            assert!(a.approx_eq(b, 1e-10));
        }
    }

    #[test]
    fn oblique_structure_canonical_is_hermitian() {
        let f = scalar_frame(&[&[1.0], &[1.0]]);
        let pair = DualPair::accept(f.clone(), f.canonical_dual().unwrap()).unwrap();
        let s = oblique_structure(&pair).unwrap();
        assert!(s.idempotency_residual < 1e-10);
        assert!(s.range_residual < 1e-10);
        assert!(s.corange_residual < 1e-10);
        assert!(s.hermitian_defect < 1e-10);
    }

    #[test]
    fn oblique_structure_noncanonical_is_skew() {
        let f = scalar_frame(&[&[1.0], &[1.0]]);
        let l = ModuleOperator::new(scalar_shape(), 2, 1, vec![scalar(1.0), scalar(-1.0)]).unwrap();
        let dual = dual_from_parameter(&f, &l).unwrap();
        let pair = DualPair::accept(f, dual).unwrap();
        let s = oblique_structure(&pair).unwrap();
        assert!(s.idempotency_residual < 1e-10);
        assert!(s.hermitian_defect > 1e-3, "defect {}", s.hermitian_defect);
    }

    #[test]
    fn invertible_analysis_gives_identity_projection() {
        let f = scalar_frame(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let pair = DualPair::accept(f.clone(), f.canonical_dual().unwrap()).unwrap();
        let s = oblique_structure(&pair).unwrap();
        let id = ModuleOperator::identity(f.shape(), f.len());
        assert!(s.cross_projection.approx_eq(&id, 1e-10));
    }

    #[test]
    fn minimality_canonical_equality() {
        let f = scalar_frame(&[&[1.0], &[2.0]]);
        let pair = DualPair::accept(f.clone(), f.canonical_dual().unwrap()).unwrap();
        assert!(minimality_check(&pair).unwrap());
        // Equality: V*V − S^{-1} = 0.
        let gram = pair
            .dual()
            .analysis()
            .adjoint()
            .compose(pair.dual().analysis())
            .unwrap();
        let s_inv = f.frame_operator().inv_positive(tol::TAU_RANK).unwrap();
        assert!(gram.approx_eq(&s_inv, 1e-12));
    }

    #[test]
    fn minimality_strict_for_effective_parameter() {
        let f = scalar_frame(&[&[1.0], &[1.0]]);
        let l = ModuleOperator::new(scalar_shape(), 2, 1, vec![scalar(1.0), scalar(-1.0)]).unwrap();
        let dual = dual_from_parameter(&f, &l).unwrap();
        let pair = DualPair::accept(f.clone(), dual).unwrap();
        assert!(minimality_check(&pair).unwrap());
        let gram = pair
            .dual()
            .analysis()
            .adjoint()
            .compose(pair.dual().analysis())
            .unwrap();
        let s_inv = f.frame_operator().inv_positive(tol::TAU_RANK).unwrap();
        let gap = gram.sub(&s_inv).unwrap();
        assert!(gap.norm() > 1e-3);
        assert!(gap.is_positive(tol::TAU_PSD).unwrap());
    }

    #[test]
    fn adversarial_pair_refused() {
        let f = scalar_frame(&[&[1.0], &[2.0]]);
        let g = scalar_frame(&[&[1.0], &[2.0]]);
        assert!(matches!(
            DualPair::accept(f, g),
            Err(FrameError::NotDual { .. })
        ));
    }

    #[test]
    fn parseval_dual_two_ones() {
        // {1,1}: S = 2, rank(S−I) = 1 ≤ corank 1 → exists.
        let f = scalar_frame(&[&[1.0], &[1.0]]);
        let dual = parseval_dual(&f).unwrap();
        assert!(dual.analyze().is_parseval);
        assert!(is_dual(&f, &dual).unwrap().ok);
    }

    #[test]
    fn parseval_dual_insufficient_corank() {
        // {√2}: S = 2 but R(U) is the whole space.
        let f = scalar_frame(&[&[2.0f64.sqrt()]]);
        assert!(matches!(
            parseval_dual(&f),
            Err(FrameError::InsufficientCorank {
                needed: 1,
                available: 0
            })
        ));
    }

    #[test]
    fn parseval_dual_lower_bound_below_one() {
        let f = scalar_frame(&[&[0.5], &[0.5]]);
        assert!(matches!(
            parseval_dual(&f),
            Err(FrameError::LowerBoundBelowOne { .. })
        ));
    }

    #[test]
    fn parseval_dual_of_parseval_input() {
        // Standard basis padded with a zero vector: Parseval with N > m.
        let f = scalar_frame(&[&[1.0, 0.0], &[0.0, 1.0], &[0.0, 0.0]]);
        let dual = parseval_dual(&f).unwrap();
        assert!(dual.analyze().is_parseval);
        assert!(is_dual(&f, &dual).unwrap().ok);
    }

    #[test]
    fn unique_dual_standard_basis() {
        let f = scalar_frame(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert!(has_unique_dual(&f).unwrap());
    }

    #[test]
    fn redundant_frame_has_many_duals() {
        let f = scalar_frame(&[&[1.0], &[1.0]]);
        assert!(!has_unique_dual(&f).unwrap());
        let f = scalar_frame(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        assert!(!has_unique_dual(&f).unwrap());
    }

    #[test]
    fn unique_dual_consequences() {
        // U·S^{-1/2} unitary and every ⟨x_n,x_n⟩ invertible.
        let f = scalar_frame(&[&[2.0, 1.0], &[0.0, 3.0]]);
        assert!(has_unique_dual(&f).unwrap());
        let parseval = f.canonical_parseval().unwrap();
        let v = parseval.analysis();
        let vv = v.adjoint().compose(v).unwrap();
        let vv2 = v.compose(&v.adjoint()).unwrap();
        let id = ModuleOperator::identity(f.shape(), f.rank());
        assert!(vv.approx_eq(&id, 1e-9));
        assert!(vv2.approx_eq(&ModuleOperator::identity(f.shape(), f.len()), 1e-9));
        // Orthonormality of the canonical Parseval frame.
        for (n, yn) in parseval.vectors().iter().enumerate() {
            for (mm, ym) in parseval.vectors().iter().enumerate() {
                let ip = inner_product(yn, ym).unwrap();
                let want = if n == mm {
                    AlgebraElement::unit(f.shape())
                } else {
                    AlgebraElement::zero(f.shape())
                };
                assert!(ip.approx_eq(&want, 1e-9));
            }
        }
        for x in f.vectors() {
            assert!(inner_product(x, x).unwrap().inv(tol::TAU_RANK).is_ok());
        }
    }

    #[test]
    fn pseudodual_corrects() {
        let f = scalar_frame(&[&[1.0], &[1.0]]);
        let g = scalar_frame(&[&[1.0], &[1.0]]);
        let out = pseudodual_check(&f, &g).unwrap();
        assert!(out.ok);
        let corrected = out.corrected_dual.unwrap();
        assert!(corrected.vectors()[0].approx_eq(&scalar_vec(&[0.5]), 1e-12));
        assert!(corrected.vectors()[1].approx_eq(&scalar_vec(&[0.5]), 1e-12));
        assert!(is_dual(&f, &corrected).unwrap().ok);
    }

    #[test]
    fn pseudodual_accepts_true_dual_unchanged() {
        let f = scalar_frame(&[&[1.0], &[2.0]]);
        let g = f.canonical_dual().unwrap();
        let out = pseudodual_check(&f, &g).unwrap();
        assert!(out.ok);
        let corrected = out.corrected_dual.unwrap();
        for (a, b) in corrected.vectors().iter().zip(g.vectors()) {
            assert!(a.approx_eq(b, 1e-10));
        }
    }

    #[test]
    fn pseudodual_rejects_singular_cross() {
        let f = scalar_frame(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let g = scalar_frame(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let out = pseudodual_check(&f, &g).unwrap();
        assert!(!out.ok && out.corrected_dual.is_none());
    }

    #[test]
    fn cross_projection_route_reconstructs_dual() {
        // V = F*·U·S^{-1} with F = UV* recovers the dual's analysis operator.
        let f = scalar_frame(&[&[1.0, 0.5], &[0.0, 1.0], &[1.0, -1.0]]);
        let l = ModuleOperator::new(
            scalar_shape(),
            3,
            2,
            vec![
                scalar(0.7),
                scalar(-0.2),
                scalar(0.1),
                scalar(0.4),
                scalar(-0.6),
                scalar(0.9),
            ],
        )
        .unwrap();
        let dual = dual_from_parameter(&f, &l).unwrap();
        let pair = DualPair::accept(f.clone(), dual.clone()).unwrap();
        let oblique = oblique_structure(&pair).unwrap();
        let s_inv = f.frame_operator().inv_positive(tol::TAU_RANK).unwrap();
        let rebuilt = oblique
            .cross_projection
            .adjoint()
            .compose(f.analysis())
            .unwrap()
            .compose(&s_inv)
            .unwrap();
        assert!(rebuilt.approx_eq(dual.analysis(), 1e-9));
    }
}
