//! Finite-dimensional C*-algebra `A = ⊕_k M_{n_k}(ℂ)`.
//!
//! Elements are tuples of complex matrices, one square block per summand.
//! The involution is the blockwise conjugate transpose, the norm is the max
//! block operator norm, and the order `a ≤ b` means `b − a` is positive
//! semidefinite in every block. Only Hermitian elements admit order
//! comparison; non-Hermitian inputs are an error rather than being silently
//! symmetrized, so modeling mistakes surface early.

use num_complex::Complex64;

use crate::error::{FrameError, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::tol;

/// Block dimensions `[n_1, …, n_K]` of `⊕_k M_{n_k}(ℂ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraShape {
    block_dims: Vec<usize>,
}

impl AlgebraShape {
    /// Shape equality is structural; there is no implicit embedding between shapes.
    pub fn new(block_dims: Vec<usize>) -> Self {
        assert!(
            !block_dims.is_empty(),
            "algebra must have at least one block"
        );
        assert!(
            block_dims.iter().all(|&n| n >= 1),
            "block dimensions must be positive"
        );
        Self { block_dims }
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    pub fn block_count(&self) -> usize {
        self.block_dims.len()
    }

    /// Total complex dimension `Σ n_k²`.
    pub fn dim(&self) -> usize {
        self.block_dims.iter().map(|n| n * n).sum()
    }
}

/// Element of `⊕_k M_{n_k}(ℂ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    shape: AlgebraShape,
    blocks: Vec<ComplexMatrix>,
}

impl AlgebraElement {
    pub fn new(shape: AlgebraShape, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        if blocks.len() != shape.block_count() {
            return Err(FrameError::ShapeMismatch(
                "block count does not match shape",
            ));
        }
        for (b, &n) in blocks.iter().zip(shape.block_dims()) {
            if b.rows() != n || b.cols() != n {
                return Err(FrameError::ShapeMismatch("block size does not match shape"));
            }
        }
        Ok(Self { shape, blocks })
    }

    pub fn zero(shape: &AlgebraShape) -> Self {
        let blocks = shape
            .block_dims()
            .iter()
            .map(|&n| ComplexMatrix::zeros(n, n))
            .collect();
        Self {
            shape: shape.clone(),
            blocks,
        }
    }

    /// The unit `e`.
    pub fn unit(shape: &AlgebraShape) -> Self {
        let blocks = shape
            .block_dims()
            .iter()
            .map(|&n| ComplexMatrix::identity(n))
            .collect();
        Self {
            shape: shape.clone(),
            blocks,
        }
    }

    /// Scalar multiple of the unit.
    pub fn scalar(shape: &AlgebraShape, z: Complex64) -> Self {
        Self::unit(shape).scale(z)
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn block(&self, k: usize) -> &ComplexMatrix {
        &self.blocks[k]
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(FrameError::ShapeMismatch(
                "algebra elements over different shapes",
            ));
        }
        Ok(())
    }

    fn map_blocks(&self, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Self {
        Self {
            shape: self.shape.clone(),
            blocks: self.blocks.iter().map(f).collect(),
        }
    }

    fn zip_blocks(
        &self,
        other: &Self,
        f: impl Fn(&ComplexMatrix, &ComplexMatrix) -> ComplexMatrix,
    ) -> Result<Self> {
        self.check_same_shape(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Self {
            shape: self.shape.clone(),
            blocks,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a.sub(b))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a.mul(b))
    }

    /// Involution: blockwise conjugate transpose.
    pub fn star(&self) -> Self {
        self.map_blocks(|b| b.dagger())
    }

    pub fn scale(&self, z: Complex64) -> Self {
        self.map_blocks(|b| b.scale(z))
    }

    /// C*-norm: max over blocks of the operator norm.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(linalg::op_norm).fold(0.0, f64::max)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.blocks.iter().map(|b| b.max_abs()).fold(0.0, f64::max)
    }

    pub fn hermitian_defect(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| b.hermitian_defect())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_defect() <= tol::TAU_HERM
    }

    pub fn is_zero(&self, tau: f64) -> bool {
        self.max_abs_entry() <= tau
    }

    fn require_hermitian(&self) -> Result<()> {
        let defect = self.hermitian_defect();
        if defect > tol::TAU_HERM {
            return Err(FrameError::NotHermitian { asymmetry: defect });
        }
        Ok(())
    }

    /// Eigenvalues across all blocks, ascending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        self.require_hermitian()?;
        let mut all = Vec::new();
        for b in &self.blocks {
            all.extend(linalg::eig_hermitian(b, tol::TAU_EIG)?.eigenvalues);
        }
        all.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(all)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.spectrum()?[0])
    }

    /// Blockwise spectral function of a Hermitian element.
    pub fn spectral_map(&self, f: impl Fn(f64) -> f64 + Copy) -> Result<Self> {
        self.require_hermitian()?;
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            blocks.push(linalg::apply_spectral_function(b, f, tol::TAU_EIG)?);
        }
        Ok(Self {
            shape: self.shape.clone(),
            blocks,
        })
    }

    /// Square root of a positive element: `sqrt(a)² = a`.
    pub fn sqrt(&self) -> Result<Self> {
        self.require_hermitian()?;
        let min = self.min_eigenvalue()?;
        if min < -tol::TAU_PSD * (1.0 + self.norm()) {
            return Err(FrameError::NotPositive { min_eig: min });
        }
        self.spectral_map(|t| t.max(0.0).sqrt())
    }

    /// Inverse of a positive definite element: `inv(a)·a = e`.
    pub fn inv(&self, tau_rank: f64) -> Result<Self> {
        self.check_invertible(tau_rank)?;
        self.spectral_map(|t| 1.0 / t)
    }

    /// `a^{-1/2}` of a positive definite element.
    pub fn inv_sqrt(&self, tau_rank: f64) -> Result<Self> {
        self.check_invertible(tau_rank)?;
        self.spectral_map(|t| t.powf(-0.5))
    }

    fn check_invertible(&self, tau_rank: f64) -> Result<()> {
        self.require_hermitian()?;
        let min = self.min_eigenvalue()?;
        if min <= tau_rank * self.norm() {
            return Err(FrameError::SingularElement { min_eig: min });
        }
        Ok(())
    }

    /// Spectral pseudo-inverse square root: `t ↦ t^{-1/2}` above the rank
    /// cutoff, zero below it. Total on positive elements.
    pub fn pinv_sqrt(&self, tau_rank: f64) -> Result<Self> {
        self.require_hermitian()?;
        let cutoff = tau_rank * self.norm().max(f64::MIN_POSITIVE);
        self.spectral_map(move |t| if t > cutoff { t.powf(-0.5) } else { 0.0 })
    }

    pub fn approx_eq(&self, other: &Self, tau: f64) -> bool {
        self.shape == other.shape
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a.max_abs_diff(b) <= tau)
    }
}

/// C*-order: `a ≤ b` iff `b − a` is PSD in every block. Both operands must
/// be Hermitian and share a shape.
pub fn leq(a: &AlgebraElement, b: &AlgebraElement, tau_psd: f64) -> Result<bool> {
    a.require_hermitian()?;
    b.require_hermitian()?;
    let diff = b.sub(a)?;
    for block in diff.blocks() {
        if !linalg::psd_check(block, tau_psd)?.is_psd {
            return Ok(false);
        }
    }
    Ok(true)
}
