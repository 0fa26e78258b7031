//! The Hilbert A-module `X = A^m` and its operator calculus.
//!
//! Adjointable operators `A^m → A^N` are exactly the `N×m` matrices over `A`
//! acting by left multiplication, which makes adjoints syntactic: the
//! adjoint of `T` has entries `(T*)[q,p] = (T[p,q])*`. Module vectors are
//! stored as one-column operators so application and adjoints reuse a single
//! code path.
//!
//! All spectral data of an operator is defined via its flattened blocks:
//! `M_m(A) ≅ ⊕_k M_{m·n_k}(ℂ)` identifies matrices over the algebra with
//! block-partitioned complex matrices, and every C*-order statement reduces
//! to PSD checks there.

use num_complex::Complex64;

use crate::cstar::{AlgebraElement, AlgebraShape};
use crate::error::{FrameError, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::tol;

/// Adjointable operator `A^{in_rank} → A^{out_rank}` as a grid over `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleOperator {
    shape: AlgebraShape,
    out_rank: usize,
    in_rank: usize,
    entries: Vec<AlgebraElement>, // row-major out_rank × in_rank
}

/// Element of `X = A^m`, stored as a one-column operator `A → A^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleVector(ModuleOperator);

/// Complexification of an operator: one dense block per algebra summand,
/// block `k` of size `(out_rank·n_k) × (in_rank·n_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlattenedOperator {
    pub blocks: Vec<ComplexMatrix>,
}

impl ModuleOperator {
    pub fn new(
        shape: AlgebraShape,
        out_rank: usize,
        in_rank: usize,
        entries: Vec<AlgebraElement>,
    ) -> Result<Self> {
        if out_rank == 0 || in_rank == 0 {
            return Err(FrameError::DimensionError(
                "operator ranks must be positive",
            ));
        }
        if entries.len() != out_rank * in_rank {
            return Err(FrameError::DimensionError(
                "entry grid does not match ranks",
            ));
        }
        if entries.iter().any(|a| a.shape() != &shape) {
            return Err(FrameError::ShapeMismatch(
                "operator entries over different shapes",
            ));
        }
        Ok(Self {
            shape,
            out_rank,
            in_rank,
            entries,
        })
    }

    pub fn zero(shape: &AlgebraShape, out_rank: usize, in_rank: usize) -> Self {
        let entries = vec![AlgebraElement::zero(shape); out_rank * in_rank];
        Self {
            shape: shape.clone(),
            out_rank,
            in_rank,
            entries,
        }
    }

    pub fn identity(shape: &AlgebraShape, rank: usize) -> Self {
        let mut op = Self::zero(shape, rank, rank);
        for p in 0..rank {
            op.set(p, p, AlgebraElement::unit(shape));
        }
        op
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn out_rank(&self) -> usize {
        self.out_rank
    }

    pub fn in_rank(&self) -> usize {
        self.in_rank
    }

    pub fn get(&self, p: usize, q: usize) -> &AlgebraElement {
        &self.entries[p * self.in_rank + q]
    }

    pub fn set(&mut self, p: usize, q: usize, a: AlgebraElement) {
        assert_eq!(a.shape(), &self.shape);
        self.entries[p * self.in_rank + q] = a;
    }

    /// Adjoint: `(T*)[q,p] = (T[p,q])*`.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(&self.shape, self.in_rank, self.out_rank);
        for p in 0..self.out_rank {
            for q in 0..self.in_rank {
                out.set(q, p, self.get(p, q).star());
            }
        }
        out
    }

    /// Operator composition `self ∘ other`, summing left-to-right.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.shape != other.shape {
            return Err(FrameError::ShapeMismatch(
                "composition over different shapes",
            ));
        }
        if self.in_rank != other.out_rank {
            return Err(FrameError::DimensionError("composition ranks do not match"));
        }
        let mut out = Self::zero(&self.shape, self.out_rank, other.in_rank);
        for p in 0..self.out_rank {
            for q in 0..other.in_rank {
                let mut acc = AlgebraElement::zero(&self.shape);
                for r in 0..self.in_rank {
                    acc = acc.add(&self.get(p, r).mul(other.get(r, q))?)?;
                }
                out.set(p, q, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.sub(b))
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(&AlgebraElement, &AlgebraElement) -> Result<AlgebraElement>,
    ) -> Result<Self> {
        if self.shape != other.shape {
            return Err(FrameError::ShapeMismatch("operators over different shapes"));
        }
        if (self.out_rank, self.in_rank) != (other.out_rank, other.in_rank) {
            return Err(FrameError::DimensionError("operator ranks do not match"));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.shape.clone(), self.out_rank, self.in_rank, entries)
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let entries = self.entries.iter().map(|a| a.scale(z)).collect();
        Self {
            shape: self.shape.clone(),
            out_rank: self.out_rank,
            in_rank: self.in_rank,
            entries,
        }
    }

    /// Apply to a module vector: `(Tx)_p = Σ_q T[p,q]·x_q`.
    pub fn apply(&self, x: &ModuleVector) -> Result<ModuleVector> {
        Ok(ModuleVector(self.compose(&x.0)?))
    }

    /// Columns as module vectors (images of the standard generators).
    pub fn columns(&self) -> Vec<ModuleVector> {
        (0..self.in_rank)
            .map(|q| {
                let comps = (0..self.out_rank).map(|p| self.get(p, q).clone()).collect();
                ModuleVector::new(comps).expect("column of a valid operator")
            })
            .collect()
    }

    pub fn from_columns(cols: &[ModuleVector]) -> Result<Self> {
        if cols.is_empty() {
            return Err(FrameError::EmptySystem);
        }
        let shape = cols[0].shape().clone();
        let out_rank = cols[0].rank();
        let mut op = Self::zero(&shape, out_rank, cols.len());
        for (q, col) in cols.iter().enumerate() {
            if col.shape() != &shape || col.rank() != out_rank {
                return Err(FrameError::ShapeMismatch(
                    "columns with inconsistent shapes",
                ));
            }
            for p in 0..out_rank {
                op.set(p, q, col.component(p).clone());
            }
        }
        Ok(op)
    }

    /// Exact complexification, block by algebra block.
    pub fn flatten(&self) -> FlattenedOperator {
        let blocks = self
            .shape
            .block_dims()
            .iter()
            .enumerate()
            .map(|(k, &nk)| {
                ComplexMatrix::from_fn(self.out_rank * nk, self.in_rank * nk, |r, c| {
                    let (p, i) = (r / nk, r % nk);
                    let (q, j) = (c / nk, c % nk);
                    self.get(p, q).block(k).get(i, j)
                })
            })
            .collect();
        FlattenedOperator { blocks }
    }

    /// Operator norm, computed on the flattened blocks.
    pub fn norm(&self) -> f64 {
        self.flatten()
            .blocks
            .iter()
            .map(linalg::op_norm)
            .fold(0.0, f64::max)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries
            .iter()
            .map(|a| a.max_abs_entry())
            .fold(0.0, f64::max)
    }

    pub fn hermitian_defect(&self) -> f64 {
        if self.out_rank != self.in_rank {
            return f64::INFINITY;
        }
        self.flatten()
            .blocks
            .iter()
            .map(|b| b.hermitian_defect())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_defect() <= tol::TAU_HERM
    }

    fn require_hermitian(&self) -> Result<()> {
        let defect = self.hermitian_defect();
        if defect > tol::TAU_HERM {
            return Err(FrameError::NotHermitian { asymmetry: defect });
        }
        Ok(())
    }

    /// Positivity in `B(A^m)`: PSD in every flattened block.
    pub fn is_positive(&self, tau_psd: f64) -> Result<bool> {
        self.require_hermitian()?;
        for b in &self.flatten().blocks {
            if !linalg::psd_check(b, tau_psd)?.is_psd {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Invertibility: min singular value above `tau_rank · σ_max` in every block.
    pub fn is_invertible(&self, tau_rank: f64) -> bool {
        if self.out_rank != self.in_rank {
            return false;
        }
        self.flatten().blocks.iter().all(|b| {
            let sv = linalg::singular_values(b);
            let max = sv.last().copied().unwrap_or(0.0);
            max > 0.0 && sv[0] > tau_rank * max
        })
    }

    /// Surjectivity onto `A^{out_rank}`: full row rank in every flattened block.
    pub fn is_surjective(&self, tau_rank: f64) -> bool {
        self.flatten()
            .blocks
            .iter()
            .all(|b| linalg::numerical_rank(b, tau_rank) == b.rows())
    }

    /// Spectral data across all flattened blocks, ascending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        self.require_hermitian()?;
        let mut all = Vec::new();
        for b in &self.flatten().blocks {
            all.extend(linalg::eig_hermitian(b, tol::TAU_EIG)?.eigenvalues);
        }
        all.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(all)
    }

    /// Blockwise spectral function of a Hermitian operator.
    pub fn spectral_map(&self, f: impl Fn(f64) -> f64 + Copy) -> Result<Self> {
        self.require_hermitian()?;
        let flat = self.flatten();
        let mut blocks = Vec::with_capacity(flat.blocks.len());
        for b in &flat.blocks {
            blocks.push(linalg::apply_spectral_function(b, f, tol::TAU_EIG)?);
        }
        unflatten(
            &FlattenedOperator { blocks },
            &self.shape,
            self.out_rank,
            self.in_rank,
        )
    }

    /// `T^{-1}` of a positive definite operator.
    pub fn inv_positive(&self, tau_rank: f64) -> Result<Self> {
        self.check_positive_definite(tau_rank)?;
        self.spectral_map(|t| 1.0 / t)
    }

    /// `T^{-1/2}` of a positive definite operator.
    pub fn inv_sqrt_positive(&self, tau_rank: f64) -> Result<Self> {
        self.check_positive_definite(tau_rank)?;
        self.spectral_map(|t| t.powf(-0.5))
    }

    /// `T^{1/2}` of a positive semidefinite operator (negative dust clamped).
    pub fn sqrt_positive(&self) -> Result<Self> {
        self.require_hermitian()?;
        let spectrum = self.spectrum()?;
        let min = spectrum[0];
        let max = spectrum.last().copied().unwrap_or(0.0).abs();
        if min < -tol::TAU_PSD * (1.0 + max) {
            return Err(FrameError::NotPositive { min_eig: min });
        }
        self.spectral_map(|t| t.max(0.0).sqrt())
    }

    fn check_positive_definite(&self, tau_rank: f64) -> Result<()> {
        self.require_hermitian()?;
        let spectrum = self.spectrum()?;
        let min = spectrum[0];
        let max = spectrum.last().copied().unwrap_or(0.0).abs();
        if min <= tau_rank * max.max(f64::MIN_POSITIVE) {
            return Err(FrameError::SingularElement { min_eig: min });
        }
        Ok(())
    }

    /// General inverse through the flattened blocks; requires every block to
    /// be well conditioned, not Hermiticity.
    pub fn inv_general(&self, tau_rank: f64) -> Result<Self> {
        if self.out_rank != self.in_rank {
            return Err(FrameError::NonSquare {
                rows: self.out_rank,
                cols: self.in_rank,
            });
        }
        let flat = self.flatten();
        let mut blocks = Vec::with_capacity(flat.blocks.len());
        for b in &flat.blocks {
            blocks.push(linalg::inverse(b, tau_rank)?);
        }
        unflatten(
            &FlattenedOperator { blocks },
            &self.shape,
            self.out_rank,
            self.in_rank,
        )
    }

    pub fn approx_eq(&self, other: &Self, tau: f64) -> bool {
        self.shape == other.shape
            && (self.out_rank, self.in_rank) == (other.out_rank, other.in_rank)
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.approx_eq(b, tau))
    }
}

/// Inverse of [`ModuleOperator::flatten`]. Block `k` must have dimensions
/// `(out_rank·n_k) × (in_rank·n_k)`.
pub fn unflatten(
    flat: &FlattenedOperator,
    shape: &AlgebraShape,
    out_rank: usize,
    in_rank: usize,
) -> Result<ModuleOperator> {
    if flat.blocks.len() != shape.block_count() {
        return Err(FrameError::DimensionError(
            "flattened block count does not match shape",
        ));
    }
    for (b, &nk) in flat.blocks.iter().zip(shape.block_dims()) {
        if b.rows() != out_rank * nk || b.cols() != in_rank * nk {
            return Err(FrameError::DimensionError(
                "flattened block size does not tile",
            ));
        }
    }
    let mut op = ModuleOperator::zero(shape, out_rank, in_rank);
    for p in 0..out_rank {
        for q in 0..in_rank {
            let blocks = shape
                .block_dims()
                .iter()
                .enumerate()
                .map(|(k, &nk)| {
                    ComplexMatrix::from_fn(nk, nk, |i, j| {
                        flat.blocks[k].get(p * nk + i, q * nk + j)
                    })
                })
                .collect();
            op.set(p, q, AlgebraElement::new(shape.clone(), blocks)?);
        }
    }
    Ok(op)
}

impl ModuleVector {
    pub fn new(components: Vec<AlgebraElement>) -> Result<Self> {
        if components.is_empty() {
            return Err(FrameError::EmptySystem);
        }
        let shape = components[0].shape().clone();
        let m = components.len();
        Ok(Self(ModuleOperator::new(shape, m, 1, components)?))
    }

    pub fn zero(shape: &AlgebraShape, m: usize) -> Self {
        Self(ModuleOperator::zero(shape, m, 1))
    }

    /// Standard generator `e^{(q)}`: unit in component `q`, zero elsewhere.
    pub fn standard_generator(shape: &AlgebraShape, m: usize, q: usize) -> Self {
        let mut v = Self::zero(shape, m);
        v.0.set(q, 0, AlgebraElement::unit(shape));
        v
    }

    pub fn shape(&self) -> &AlgebraShape {
        self.0.shape()
    }

    /// The module rank `m`.
    pub fn rank(&self) -> usize {
        self.0.out_rank()
    }

    pub fn component(&self, i: usize) -> &AlgebraElement {
        self.0.get(i, 0)
    }

    pub fn components(&self) -> Vec<AlgebraElement> {
        (0..self.rank())
            .map(|i| self.component(i).clone())
            .collect()
    }

    pub fn as_operator(&self) -> &ModuleOperator {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.sub(&other.0)?))
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self(self.0.scale(z))
    }

    /// Right module action `x·a`, componentwise right multiplication.
    pub fn right_mul(&self, a: &AlgebraElement) -> Result<Self> {
        let comps = (0..self.rank())
            .map(|i| self.component(i).mul(a))
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps)
    }

    /// Module norm `‖x‖ = ‖⟨x,x⟩‖^{1/2}`.
    pub fn norm(&self) -> f64 {
        inner_product(self, self)
            .expect("self inner product always shape-consistent")
            .norm()
            .sqrt()
    }

    pub fn approx_eq(&self, other: &Self, tau: f64) -> bool {
        self.0.approx_eq(&other.0, tau)
    }
}

/// A-valued inner product `⟨x,y⟩ = Σ_i x_i* y_i`; satisfies `⟨x,y⟩* = ⟨y,x⟩`.
pub fn inner_product(x: &ModuleVector, y: &ModuleVector) -> Result<AlgebraElement> {
    if x.shape() != y.shape() || x.rank() != y.rank() {
        return Err(FrameError::ShapeMismatch(
            "inner product of incompatible vectors",
        ));
    }
    let product = x.0.adjoint().compose(&y.0)?;
    Ok(product.get(0, 0).clone())
}

/// Rank-one operator `θ_{y,x}: z ↦ y⟨x,z⟩`, with entries `θ[p,q] = y_p·(x_q)*`.
pub fn theta(y: &ModuleVector, x: &ModuleVector) -> Result<ModuleOperator> {
    if x.shape() != y.shape() {
        return Err(FrameError::ShapeMismatch("theta over different shapes"));
    }
    y.0.compose(&x.0.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn scalar_shape() -> AlgebraShape {
        AlgebraShape::new(vec![1])
    }

    fn scalar(z: Complex64) -> AlgebraElement {
        AlgebraElement::scalar(&scalar_shape(), z)
    }

    fn scalar_vec(entries: &[Complex64]) -> ModuleVector {
        ModuleVector::new(entries.iter().map(|&z| scalar(z)).collect()).unwrap()
    }

    #[test]
    fn inner_product_unit() {
        let x = scalar_vec(&[c(1.0, 0.0)]);
        let ip = inner_product(&x, &x).unwrap();
        assert!(ip.approx_eq(&scalar(c(1.0, 0.0)), 1e-15));
    }

    #[test]
    fn inner_product_orthogonal_coordinates() {
        let shape = scalar_shape();
        let e0 = ModuleVector::standard_generator(&shape, 2, 0);
        let e1 = ModuleVector::standard_generator(&shape, 2, 1);
        let ip = inner_product(&e0, &e1).unwrap();
        assert!(ip.is_zero(0.0));
    }

    #[test]
    fn inner_product_conjugates() {
        // ⟨(1, 2i), (3, 1)⟩ = 1*·3 + (2i)*·1 = 3 − 2i
        let x = scalar_vec(&[c(1.0, 0.0), c(0.0, 2.0)]);
        let y = scalar_vec(&[c(3.0, 0.0), c(1.0, 0.0)]);
        let ip = inner_product(&x, &y).unwrap();
        assert!(ip.approx_eq(&scalar(c(3.0, -2.0)), 1e-15));
        assert!(ip.star().approx_eq(&inner_product(&y, &x).unwrap(), 1e-15));
    }

    #[test]
    fn apply_identity_and_zero() {
        let shape = scalar_shape();
        let x = scalar_vec(&[c(1.0, 2.0), c(-0.5, 0.0)]);
        let id = ModuleOperator::identity(&shape, 2);
        assert!(id.apply(&x).unwrap().approx_eq(&x, 0.0));
        let zero = ModuleOperator::zero(&shape, 2, 2);
        assert!(zero
            .apply(&x)
            .unwrap()
            .approx_eq(&ModuleVector::zero(&shape, 2), 0.0));
    }

    #[test]
    fn apply_rectangular() {
        // T = [[2],[3]], x = (5) → (10, 15)
        let shape = scalar_shape();
        let t = ModuleOperator::new(
            shape.clone(),
            2,
            1,
            vec![scalar(c(2.0, 0.0)), scalar(c(3.0, 0.0))],
        )
        .unwrap();
        let x = scalar_vec(&[c(5.0, 0.0)]);
        let tx = t.apply(&x).unwrap();
        assert!(tx.approx_eq(&scalar_vec(&[c(10.0, 0.0), c(15.0, 0.0)]), 1e-15));
    }

    #[test]
    fn adjoint_involution_and_scalar_conjugation() {
        let shape = scalar_shape();
        let t = ModuleOperator::new(shape, 1, 1, vec![scalar(c(0.0, 1.0))]).unwrap();
        let star = t.adjoint();
        assert!(star.get(0, 0).approx_eq(&scalar(c(0.0, -1.0)), 0.0));
        assert!(star.adjoint().approx_eq(&t, 0.0));
    }

    #[test]
    fn compose_with_identity() {
        let shape = scalar_shape();
        let t = ModuleOperator::new(
            shape.clone(),
            2,
            2,
            vec![
                scalar(c(1.0, 1.0)),
                scalar(c(2.0, 0.0)),
                scalar(c(0.0, -1.0)),
                scalar(c(3.0, 2.0)),
            ],
        )
        .unwrap();
        let id = ModuleOperator::identity(&shape, 2);
        assert!(t.compose(&id).unwrap().approx_eq(&t, 0.0));
        assert!(id.compose(&t).unwrap().approx_eq(&t, 0.0));
    }

    #[test]
    fn theta_zero_and_projection() {
        let shape = scalar_shape();
        let zero = ModuleVector::zero(&shape, 2);
        let x = scalar_vec(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let th = theta(&zero, &x).unwrap();
        assert!(th.approx_eq(&ModuleOperator::zero(&shape, 2, 2), 0.0));

        // x = y = (1, 0): θ = [[1,0],[0,0]]
        let th = theta(&x, &x).unwrap();
        let mut want = ModuleOperator::zero(&shape, 2, 2);
        want.set(0, 0, AlgebraElement::unit(&shape));
        assert!(th.approx_eq(&want, 1e-15));
    }

    #[test]
    fn theta_acts_as_y_inner_x() {
        let shape = AlgebraShape::new(vec![2]);
        let a = AlgebraElement::new(
            shape.clone(),
            vec![ComplexMatrix::from_rows(&[
                vec![c(1.0, 0.5), c(0.0, 1.0)],
                vec![c(2.0, 0.0), c(-1.0, 0.0)],
            ])],
        )
        .unwrap();
        let b = AlgebraElement::new(
            shape.clone(),
            vec![ComplexMatrix::from_rows(&[
                vec![c(0.0, -1.0), c(1.0, 0.0)],
                vec![c(0.5, 0.5), c(1.0, 1.0)],
            ])],
        )
        .unwrap();
        let y = ModuleVector::new(vec![a.clone(), b.clone()]).unwrap();
        let x = ModuleVector::new(vec![b.clone(), a.clone()]).unwrap();
        let z = ModuleVector::new(vec![a.mul(&b).unwrap(), b.clone()]).unwrap();

        let via_theta = theta(&y, &x).unwrap().apply(&z).unwrap();
        let via_formula = y.right_mul(&inner_product(&x, &z).unwrap()).unwrap();
        assert!(via_theta.approx_eq(&via_formula, 1e-12));
    }

    #[test]
    fn flatten_identity_and_roundtrip() {
        let shape = AlgebraShape::new(vec![1, 2]);
        let id = ModuleOperator::identity(&shape, 3);
        let flat = id.flatten();
        assert!(flat.blocks[0].max_abs_diff(&ComplexMatrix::identity(3)) == 0.0);
        assert!(flat.blocks[1].max_abs_diff(&ComplexMatrix::identity(6)) == 0.0);
        let back = unflatten(&flat, &shape, 3, 3).unwrap();
        assert!(back.approx_eq(&id, 0.0));
    }

    #[test]
    fn flatten_single_entry_layout() {
        // Over shape [2], a 1×1 operator flattens to its single 2×2 block.
        let shape = AlgebraShape::new(vec![2]);
        let a = AlgebraElement::new(
            shape.clone(),
            vec![ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]])],
        )
        .unwrap();
        let t = ModuleOperator::new(shape, 1, 1, vec![a.clone()]).unwrap();
        let flat = t.flatten();
        assert!(flat.blocks[0].max_abs_diff(a.block(0)) == 0.0);
    }

    #[test]
    fn flatten_is_multiplicative() {
        let shape = AlgebraShape::new(vec![2, 1]);
        let mk = |seed: f64| {
            let entries = (0..4)
                .map(|i| {
                    AlgebraElement::new(
                        shape.clone(),
                        vec![
                            ComplexMatrix::from_fn(2, 2, |r, cidx| {
                                c(seed + (i + r) as f64, (cidx as f64) - seed)
                            }),
                            ComplexMatrix::from_fn(1, 1, |_, _| c(seed * 0.5, i as f64)),
                        ],
                    )
                    .unwrap()
                })
                .collect::<Vec<_>>();
            ModuleOperator::new(shape.clone(), 2, 2, entries).unwrap()
        };
        let s = mk(1.3);
        let t = mk(-0.7);
        let lhs = s.compose(&t).unwrap().flatten();
        let rhs_blocks: Vec<_> = s
            .flatten()
            .blocks
            .iter()
            .zip(&t.flatten().blocks)
            .map(|(a, b)| a.mul(b))
            .collect();
        for (l, r) in lhs.blocks.iter().zip(&rhs_blocks) {
            assert!(l.max_abs_diff(r) < 1e-12);
        }
        // Adjoints flatten to conjugate transposes.
        let adj = s.adjoint().flatten();
        for (l, r) in adj.blocks.iter().zip(&s.flatten().blocks) {
            assert!(l.max_abs_diff(&r.dagger()) < 1e-15);
        }
    }

    #[test]
    fn operator_predicates_on_diagonal() {
        let shape = scalar_shape();
        let mut s = ModuleOperator::zero(&shape, 2, 2);
        s.set(0, 0, scalar(c(1.0, 0.0)));
        s.set(1, 1, scalar(c(4.0, 0.0)));
        assert!((s.norm() - 4.0).abs() < 1e-12);
        assert!(s.is_positive(tol::TAU_PSD).unwrap());
        assert!(s.is_invertible(tol::TAU_RANK));

        let id = ModuleOperator::identity(&shape, 2);
        assert!((id.norm() - 1.0).abs() < 1e-12);
        assert!(id.is_positive(tol::TAU_PSD).unwrap());
        assert!(id.is_invertible(tol::TAU_RANK));

        let zero = ModuleOperator::zero(&shape, 2, 2);
        assert!(zero.norm() == 0.0);
        assert!(zero.is_positive(tol::TAU_PSD).unwrap());
        assert!(!zero.is_invertible(tol::TAU_RANK));
    }

    #[test]
    fn positivity_rejects_non_hermitian() {
        let shape = scalar_shape();
        let mut t = ModuleOperator::zero(&shape, 2, 2);
        t.set(0, 1, scalar(c(1.0, 0.0)));
        assert!(matches!(
            t.is_positive(tol::TAU_PSD),
            Err(FrameError::NotHermitian { .. })
        ));
    }

    #[test]
    fn spectral_inverse_of_operator() {
        let shape = scalar_shape();
        let mut s = ModuleOperator::zero(&shape, 2, 2);
        s.set(0, 0, scalar(c(1.0, 0.0)));
        s.set(1, 1, scalar(c(4.0, 0.0)));
        let inv = s.inv_positive(tol::TAU_RANK).unwrap();
        let id = ModuleOperator::identity(&shape, 2);
        assert!(s.compose(&inv).unwrap().approx_eq(&id, 1e-12));
        let inv_sqrt = s.inv_sqrt_positive(tol::TAU_RANK).unwrap();
        let prod = inv_sqrt.compose(&s).unwrap().compose(&inv_sqrt).unwrap();
        assert!(prod.approx_eq(&id, 1e-12));
    }

    #[test]
    fn adjoint_pairing_exact() {
        let shape = AlgebraShape::new(vec![2]);
        let a = AlgebraElement::new(
            shape.clone(),
            vec![ComplexMatrix::from_rows(&[
                vec![c(1.0, 1.0), c(0.0, 2.0)],
                vec![c(-1.0, 0.0), c(0.5, -0.5)],
            ])],
        )
        .unwrap();
        let t = ModuleOperator::new(shape.clone(), 1, 2, vec![a.clone(), a.star()]).unwrap();
        let x = ModuleVector::new(vec![a.clone(), a.mul(&a).unwrap()]).unwrap();
        let y = ModuleVector::new(vec![a.star()]).unwrap();
        let lhs = inner_product(&t.apply(&x).unwrap(), &y).unwrap();
        let rhs = inner_product(&x, &t.adjoint().apply(&y).unwrap()).unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-12));
    }
}
