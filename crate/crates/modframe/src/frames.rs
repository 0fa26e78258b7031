//! Frame systems in `X = A^m`.
//!
//! A finite family `(x_n)_{n=1}^N` is held together with its analysis
//! operator `U` (row `n` of `U` is `(x_n)*` componentwise, so that
//! `(Ux)_n = ⟨x_n, x⟩`) and the frame operator `S = U*U`, both cached at
//! construction. Every finite family is automatically Bessel; the frame
//! question is whether the optimal lower bound is positive, decided on the
//! spectrum of the flattened blocks of `S`.

use crate::error::{FrameError, Result};
use crate::module_space::{theta, ModuleOperator, ModuleVector};
use crate::tol;

/// Ordered finite family of module vectors with cached analysis and frame
/// operators.
#[derive(Clone, Debug)]
pub struct FrameSystem {
    vectors: Vec<ModuleVector>,
    analysis: ModuleOperator,
    frame_op: ModuleOperator,
}

/// Verdict of [`FrameSystem::analyze`].
#[derive(Clone, Debug, PartialEq)]
pub struct FrameReport {
    /// Finite systems are always Bessel.
    pub is_bessel: bool,
    pub is_frame: bool,
    /// Optimal lower bound `A = λ_min(S)` across flattened blocks.
    pub lower: f64,
    /// Optimal upper bound `B = λ_max(S)` across flattened blocks.
    pub upper: f64,
    pub is_parseval: bool,
    pub is_tight: bool,
    /// Present exactly when `is_tight`.
    pub tight_constant: Option<f64>,
}

/// Output of [`FrameSystem::parseval_from_unit_chain`]: the vectors grouped
/// by the chain stage that produced them, with per-stage residuals
/// `‖P_N − E_N‖` (zero up to floating point, since finite-dimensional
/// positive operators decompose exactly).
#[derive(Clone, Debug)]
pub struct UnitChainParseval {
    pub stages: Vec<Vec<ModuleVector>>,
    pub stage_residuals: Vec<f64>,
    pub system: FrameSystem,
}

impl FrameSystem {
    pub fn new(vectors: Vec<ModuleVector>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(FrameError::EmptySystem);
        }
        let shape = vectors[0].shape().clone();
        let m = vectors[0].rank();
        if vectors.iter().any(|v| v.shape() != &shape || v.rank() != m) {
            return Err(FrameError::ShapeMismatch(
                "frame vectors with inconsistent shapes",
            ));
        }
        let mut analysis = ModuleOperator::zero(&shape, vectors.len(), m);
        for (n, v) in vectors.iter().enumerate() {
            for i in 0..m {
                analysis.set(n, i, v.component(i).star());
            }
        }
        let frame_op = analysis.adjoint().compose(&analysis)?;
        Ok(Self {
            vectors,
            analysis,
            frame_op,
        })
    }

    /// Rebuild a system from its analysis operator: `x_n,i = (U[n,i])*`.
    pub fn from_analysis(analysis: ModuleOperator) -> Result<Self> {
        let vectors = (0..analysis.out_rank())
            .map(|n| {
                let comps = (0..analysis.in_rank())
                    .map(|i| analysis.get(n, i).star())
                    .collect();
                ModuleVector::new(comps)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vectors)
    }

    pub fn vectors(&self) -> &[ModuleVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Module rank `m` of the ambient `A^m`.
    pub fn rank(&self) -> usize {
        self.vectors[0].rank()
    }

    pub fn shape(&self) -> &crate::cstar::AlgebraShape {
        self.vectors[0].shape()
    }

    /// The analysis operator `U: A^m → A^N`.
    pub fn analysis(&self) -> &ModuleOperator {
        &self.analysis
    }

    /// The synthesis operator `U*: A^N → A^m` (columns are the vectors).
    pub fn synthesis(&self) -> ModuleOperator {
        self.analysis.adjoint()
    }

    /// The frame operator `S = U*U`.
    pub fn frame_operator(&self) -> &ModuleOperator {
        &self.frame_op
    }

    pub fn analyze(&self) -> FrameReport {
        self.analyze_with(tol::TAU_FRAME)
    }

    /// Frame decision with an explicit threshold: frame ⇔
    /// `λ_min(S) > tau_frame·max(1, λ_max(S))`; Parseval ⇔ both optimal
    /// bounds within `tau_frame` of one; tight ⇔ relative gap
    /// `(B−A)/max(1,B)` within `tau_frame`.
    pub fn analyze_with(&self, tau_frame: f64) -> FrameReport {
        let spectrum = self
            .frame_op
            .spectrum()
            .expect("frame operator is Hermitian by construction");
        let lower = spectrum[0].max(0.0);
        let upper = spectrum.last().copied().unwrap_or(0.0).max(0.0);
        let is_frame = lower > tau_frame * upper.max(1.0);
        let is_parseval = (lower - 1.0).abs() <= tau_frame && (upper - 1.0).abs() <= tau_frame;
        let is_tight = is_frame && (upper - lower) <= tau_frame * upper.max(1.0);
        FrameReport {
            is_bessel: true,
            is_frame,
            lower,
            upper,
            is_parseval,
            is_tight,
            tight_constant: is_tight.then_some(0.5 * (lower + upper)),
        }
    }

    /// The frame operator recomputed as `Σ_n θ_{x_n,x_n}` — an independent
    /// route from the cached `U*U`, equal to it up to floating point. The
    /// system is Parseval exactly when this sum is the identity.
    pub fn frame_operator_as_theta_sum(&self) -> ModuleOperator {
        let shape = self.shape().clone();
        let m = self.rank();
        let mut acc = ModuleOperator::zero(&shape, m, m);
        for v in &self.vectors {
            let th = theta(v, v).expect("theta of a vector with itself");
            acc = acc.add(&th).expect("theta sum accumulates over one shape");
        }
        acc
    }

    fn require_frame(&self) -> Result<FrameReport> {
        let report = self.analyze();
        if !report.is_frame {
            return Err(FrameError::NotAFrame {
                lower: report.lower,
            });
        }
        Ok(report)
    }

    /// Canonical dual `(S^{-1} x_n)_n`; bounds invert to `(1/B, 1/A)`.
    pub fn canonical_dual(&self) -> Result<FrameSystem> {
        self.require_frame()?;
        let s_inv = self.frame_op.inv_positive(tol::TAU_RANK)?;
        let vectors = self
            .vectors
            .iter()
            .map(|v| s_inv.apply(v))
            .collect::<Result<Vec<_>>>()?;
        FrameSystem::new(vectors)
    }

    /// Canonically associated Parseval frame `(S^{-1/2} x_n)_n`; its
    /// analysis operator is `U·S^{-1/2}`.
    pub fn canonical_parseval(&self) -> Result<FrameSystem> {
        self.require_frame()?;
        let s_inv_sqrt = self.frame_op.inv_sqrt_positive(tol::TAU_RANK)?;
        let vectors = self
            .vectors
            .iter()
            .map(|v| s_inv_sqrt.apply(v))
            .collect::<Result<Vec<_>>>()?;
        FrameSystem::new(vectors)
    }

    /// Reconstruction `Σ_n d_n·⟨x_n, x⟩` of `x` through a dual candidate `d`.
    pub fn reconstruct(&self, dual: &FrameSystem, x: &ModuleVector) -> Result<ModuleVector> {
        if dual.len() != self.len() || dual.rank() != self.rank() {
            return Err(FrameError::ShapeMismatch("dual of different size"));
        }
        let mut acc = ModuleVector::zero(self.shape(), self.rank());
        for (d, v) in dual.vectors.iter().zip(&self.vectors) {
            let coeff = crate::module_space::inner_product(v, x)?;
            acc = acc.add(&d.right_mul(&coeff)?)?;
        }
        Ok(acc)
    }

    /// The frame whose synthesis operator is a given adjointable surjection
    /// `T: A^N → A^m`: vectors are the columns `T e^{(n)}`.
    pub fn from_surjection(t: &ModuleOperator) -> Result<FrameSystem> {
        if !t.is_surjective(tol::TAU_RANK) {
            return Err(FrameError::NotSurjective);
        }
        let system = FrameSystem::new(t.columns())?;
        Ok(system)
    }

    /// Greedy Parseval construction from an increasing unit chain.
    ///
    /// `chain` must be an increasing sequence of positive contractions on
    /// `A^m` ending at the identity. Each increment `E_N − E_{N−1}` is
    /// decomposed exactly into at most `m` rank-one θ-terms via the spectral
    /// square root, so the partial sums `P_N` satisfy `P_N ⪯ E_N` with
    /// residual `‖P_N − E_N‖` at floating-point level, and the assembled
    /// system is Parseval.
    pub fn parseval_from_unit_chain(chain: &[ModuleOperator]) -> Result<UnitChainParseval> {
        if chain.is_empty() {
            return Err(FrameError::EmptySystem);
        }
        let shape = chain[0].shape().clone();
        let m = chain[0].out_rank();
        for (stage, e) in chain.iter().enumerate() {
            if e.shape() != &shape || e.out_rank() != m || e.in_rank() != m {
                return Err(FrameError::ShapeMismatch(
                    "chain elements with inconsistent ranks",
                ));
            }
            let defect = e.hermitian_defect();
            if defect > tol::TAU_HERM {
                return Err(FrameError::NotContraction {
                    stage,
                    norm: f64::INFINITY,
                });
            }
            let norm = e.norm();
            if norm > 1.0 + tol::TAU_PSD {
                return Err(FrameError::NotContraction { stage, norm });
            }
        }
        let identity = ModuleOperator::identity(&shape, m);
        let last_residual = chain.last().unwrap().sub(&identity)?.norm();
        if last_residual > tol::TAU_DUAL {
            return Err(FrameError::LastNotIdentity {
                residual: last_residual,
            });
        }

        let mut stages = Vec::with_capacity(chain.len());
        let mut stage_residuals = Vec::with_capacity(chain.len());
        let mut previous = ModuleOperator::zero(&shape, m, m);
        let mut partial = ModuleOperator::zero(&shape, m, m);
        let mut all_vectors = Vec::new();
        for (stage, e) in chain.iter().enumerate() {
            let increment = e.sub(&previous)?;
            if !increment.is_positive(tol::TAU_PSD)? {
                return Err(FrameError::ChainNotIncreasing { stage });
            }
            let stage_vectors: Vec<ModuleVector> = sqrt_column_vectors(&increment)?
                .into_iter()
                .filter(|v| v.norm() > tol::ZERO_PRUNE)
                .collect();
            for v in &stage_vectors {
                let th = theta(v, v)?;
                partial = partial.add(&th)?;
            }
            stage_residuals.push(partial.sub(e)?.norm());
            all_vectors.extend(stage_vectors.iter().cloned());
            stages.push(stage_vectors);
            previous = e.clone();
        }
        let system = FrameSystem::new(all_vectors)?;
        Ok(UnitChainParseval {
            stages,
            stage_residuals,
            system,
        })
    }
}

/// Decompose a PSD operator `T` on `A^m` as `Σ_{q=1}^m θ_{x^{(q)},x^{(q)}}`:
/// the `q`-th vector collects column `q` of the spectral square root `C`, so
/// `Σ_q θ = C·C* = T` exactly. Returns exactly `m` vectors, zeros included.
pub fn sqrt_column_vectors(t: &ModuleOperator) -> Result<Vec<ModuleVector>> {
    let root = t.sqrt_positive()?;
    Ok(root.columns())
}
