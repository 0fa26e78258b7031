//! Self-contained dense complex-matrix kernel.
//!
//! Everything upstream (C*-order, operator spectra, frame bounds) reduces to
//! Hermitian eigenproblems of modest size, so the kernel is deliberately
//! small: a cyclic Jacobi eigensolver for complex Hermitian matrices plus
//! spectral functions, operator norms, numerical ranks and positivity tests
//! built on it. No external linear-algebra dependency.

use num_complex::Complex64;

use crate::error::{FrameError, Result};
use crate::tol;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl std::fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Build from a row-major closure.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Build from nested real rows (imaginary parts zero). Test convenience.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        Self::from_fn(r, c, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn all_finite(&self) -> bool {
        self.entries
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) - other.get(i, j)
        })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * s)
    }

    /// Matrix product; sums left-to-right for reproducibility.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Max entry asymmetry `max |a_ij − conj(a_ji)|`; zero iff exactly Hermitian.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// `(M + M*)/2`.
    pub fn symmetrized(&self) -> Self {
        assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * 0.5
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }
}

/// Eigendecomposition of a Hermitian matrix: `M = V · diag(λ) · V*`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Real eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Rebuild `V · diag(f(λ)) · V*`.
    pub fn assemble(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut scaled = ComplexMatrix::zeros(n, n);
        for j in 0..n {
            let fj = Complex64::new(f(self.eigenvalues[j]), 0.0);
            for i in 0..n {
                scaled.set(i, j, v.get(i, j) * fj);
            }
        }
        scaled.mul(&v.dagger())
    }
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// The input must be square and Hermitian up to [`tol::TAU_HERM`] in max
/// entry asymmetry; it is symmetrized before the sweeps. Convergence is
/// declared when the off-diagonal Frobenius mass drops below
/// `1e-14 · ‖M‖_F`; `tau_eig` is the reconstruction tolerance the caller
/// requires and is verified on the result.
pub fn eig_hermitian(m: &ComplexMatrix, tau_eig: f64) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(FrameError::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let defect = m.hermitian_defect();
    if defect > tol::TAU_HERM {
        return Err(FrameError::NotHermitian { asymmetry: defect });
    }
    let sym = m.symmetrized();
    let n = sym.rows();
    let scale = sym.frobenius();
    let mut a = sym.clone();
    let mut v = ComplexMatrix::identity(n);

    if scale > 0.0 {
        let threshold = tol::JACOBI_REL * scale;
        let mut converged = false;
        for _ in 0..tol::SWEEP_LIMIT {
            if off_diagonal_mass(&a) < threshold {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
        if !converged && off_diagonal_mass(&a) >= threshold {
            return Err(FrameError::NoConvergence {
                sweeps: tol::SWEEP_LIMIT,
            });
        }
    }

    // Sort ascending, permuting eigenvector columns alongside.
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));

    let eig = HermitianEigen {
        eigenvalues,
        eigenvectors,
    };
    let recon_defect = eig.assemble(|t| t).max_abs_diff(&sym);
    if recon_defect > tau_eig * scale.max(1.0) {
        return Err(FrameError::NoConvergence {
            sweeps: tol::SWEEP_LIMIT,
        });
    }
    Ok(eig)
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a.get(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One complex Jacobi rotation annihilating the (p, q) entry.
///
/// With `a_pq = |a_pq| ω`, the unitary is `J[p,p] = c`, `J[p,q] = s·ω`,
/// `J[q,p] = −s·ω̄`, `J[q,q] = c` for real `c, s`; the update `A ← J* A J`
/// keeps A Hermitian and V accumulates `V ← V·J`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let abs_apq = apq.norm();
    if abs_apq == 0.0 {
        return;
    }
    let omega = apq / abs_apq;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let theta = (aqq - app) / (2.0 * abs_apq);
    let t = if theta >= 0.0 {
        1.0 / (theta + (1.0 + theta * theta).sqrt())
    } else {
        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let s_omega = omega * s;

    let n = a.rows();
    a.set(p, p, Complex64::new(app - t * abs_apq, 0.0));
    a.set(q, q, Complex64::new(aqq + t * abs_apq, 0.0));
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    for j in 0..n {
        if j == p || j == q {
            continue;
        }
        let ajp = a.get(j, p);
        let ajq = a.get(j, q);
        let new_jp = ajp * c - ajq * s_omega.conj();
        let new_jq = ajp * s_omega + ajq * c;
        a.set(j, p, new_jp);
        a.set(p, j, new_jp.conj());
        a.set(j, q, new_jq);
        a.set(q, j, new_jq.conj());
    }
    for j in 0..n {
        let vjp = v.get(j, p);
        let vjq = v.get(j, q);
        v.set(j, p, vjp * c - vjq * s_omega.conj());
        v.set(j, q, vjp * s_omega + vjq * c);
    }
}

/// `V · diag(f(λ)) · V*` for Hermitian input.
///
/// Fails with [`FrameError::DomainError`] when `f` returns a non-finite
/// value at some eigenvalue. The output is Hermitian for real-valued `f`.
pub fn apply_spectral_function(
    m: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
    tau_eig: f64,
) -> Result<ComplexMatrix> {
    let eig = eig_hermitian(m, tau_eig)?;
    for &lambda in &eig.eigenvalues {
        if !f(lambda).is_finite() {
            return Err(FrameError::DomainError { eigenvalue: lambda });
        }
    }
    // Symmetrize to shed the O(ε) asymmetry of the triple product.
    Ok(eig.assemble(f).symmetrized())
}

/// Largest singular value, `√λ_max(M*M)`.
pub fn op_norm(m: &ComplexMatrix) -> f64 {
    let sv = singular_values(m);
    sv.last().copied().unwrap_or(0.0)
}

/// Singular values, ascending, via the Hermitian spectrum of `M*M`.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let gram = m.dagger().mul(m);
    let eig = eig_hermitian(&gram, tol::TAU_EIG).expect("Gram matrix is Hermitian by construction");
    eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect()
}

/// Result of a positivity test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsdVerdict {
    pub is_psd: bool,
    pub min_eig: f64,
}

/// Positive-semidefiniteness of a Hermitian matrix:
/// `is_psd ⇔ λ_min ≥ −tau_psd·(1 + ‖M‖)`.
pub fn psd_check(m: &ComplexMatrix, tau_psd: f64) -> Result<PsdVerdict> {
    let eig = eig_hermitian(m, tol::TAU_EIG)?;
    let min_eig = eig.eigenvalues.first().copied().unwrap_or(0.0);
    let max_abs = eig.eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max);
    Ok(PsdVerdict {
        is_psd: min_eig >= -tau_psd * (1.0 + max_abs),
        min_eig,
    })
}

/// Number of singular values above `tau_rank · σ_max`; zero for the zero matrix.
pub fn numerical_rank(m: &ComplexMatrix, tau_rank: f64) -> usize {
    let sv = singular_values(m);
    let sigma_max = sv.last().copied().unwrap_or(0.0);
    if sigma_max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tau_rank * sigma_max).count()
}

/// Inverse of a well-conditioned square matrix via the normal equations,
/// `M⁻¹ = (M*M)⁻¹ M*`. Fails when the smallest singular value sits below
/// `tau_rank · σ_max`.
pub fn inverse(m: &ComplexMatrix, tau_rank: f64) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(FrameError::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let sv = singular_values(m);
    let sigma_max = sv.last().copied().unwrap_or(0.0);
    let sigma_min = sv.first().copied().unwrap_or(0.0);
    if sigma_max == 0.0 || sigma_min <= tau_rank * sigma_max {
        return Err(FrameError::SingularElement { min_eig: sigma_min });
    }
    let gram = m.dagger().mul(m);
    let gram_inv = apply_spectral_function(&gram, |t| 1.0 / t, tol::TAU_EIG)?;
    Ok(gram_inv.mul(&m.dagger()))
}
