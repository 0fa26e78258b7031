//! Seeded random generators for property suites and the CLI self-test.
//!
//! Frames are drawn with entries uniform in `[−1,1]²`; Parseval frames come
//! from orthonormalizing the flattened analysis columns (modified
//! Gram–Schmidt with one reorthogonalization pass), tight frames are scaled
//! Parseval frames. All functions take the RNG explicitly so trials can be
//! reproduced from a seed.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cstar::{AlgebraElement, AlgebraShape};
use crate::frames::FrameSystem;
use crate::linalg::ComplexMatrix;
use crate::module_space::{unflatten, FlattenedOperator, ModuleOperator, ModuleVector};
use crate::nonunital::TailSequenceElement;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The four desk-scale shapes the suites sweep.
pub fn standard_shapes() -> Vec<AlgebraShape> {
    vec![
        AlgebraShape::new(vec![1]),
        AlgebraShape::new(vec![2]),
        AlgebraShape::new(vec![1, 2]),
        AlgebraShape::new(vec![3]),
    ]
}

pub fn complex_in_unit_box(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_in_unit_box(rng))
}

pub fn hermitian_matrix(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    matrix(rng, n, n).symmetrized()
}

pub fn psd_matrix(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let a = matrix(rng, n, n);
    a.dagger().mul(&a)
}

pub fn element(rng: &mut impl Rng, shape: &AlgebraShape) -> AlgebraElement {
    let blocks = shape
        .block_dims()
        .iter()
        .map(|&n| matrix(rng, n, n))
        .collect();
    AlgebraElement::new(shape.clone(), blocks).expect("blocks built to shape")
}

pub fn hermitian_element(rng: &mut impl Rng, shape: &AlgebraShape) -> AlgebraElement {
    let blocks = shape
        .block_dims()
        .iter()
        .map(|&n| hermitian_matrix(rng, n))
        .collect();
    AlgebraElement::new(shape.clone(), blocks).expect("blocks built to shape")
}

/// A Hermitian contraction (`‖r‖ ≤ 1`).
pub fn contraction(rng: &mut impl Rng, shape: &AlgebraShape) -> AlgebraElement {
    let h = hermitian_element(rng, shape);
    let norm = h.norm();
    if norm <= 1.0 {
        h
    } else {
        h.scale(Complex64::new(rng.gen_range(0.1..1.0) / norm, 0.0))
    }
}

pub fn vector(rng: &mut impl Rng, shape: &AlgebraShape, m: usize) -> ModuleVector {
    ModuleVector::new((0..m).map(|_| element(rng, shape)).collect())
        .expect("components built to shape")
}

pub fn operator(
    rng: &mut impl Rng,
    shape: &AlgebraShape,
    out_rank: usize,
    in_rank: usize,
) -> ModuleOperator {
    let entries = (0..out_rank * in_rank)
        .map(|_| element(rng, shape))
        .collect();
    ModuleOperator::new(shape.clone(), out_rank, in_rank, entries).expect("entries built to shape")
}

/// A random frame of `n ≥ m` vectors; retries until the frame condition
/// holds (almost surely immediate).
pub fn frame(rng: &mut impl Rng, shape: &AlgebraShape, m: usize, n: usize) -> FrameSystem {
    assert!(n >= m, "need at least m vectors for a frame over A^m");
    loop {
        let candidate =
            FrameSystem::new((0..n).map(|_| vector(rng, shape, m)).collect()).expect("n >= 1");
        if candidate.analyze().is_frame {
            return candidate;
        }
    }
}

/// A random Parseval frame: draw an analysis operator and orthonormalize the
/// columns of every flattened block.
pub fn parseval_frame(rng: &mut impl Rng, shape: &AlgebraShape, m: usize, n: usize) -> FrameSystem {
    assert!(
        n >= m,
        "a Parseval frame needs an isometric analysis operator"
    );
    loop {
        let raw = operator(rng, shape, n, m).flatten();
        let mut ok = true;
        let blocks: Vec<ComplexMatrix> = raw
            .blocks
            .iter()
            .map(|b| match orthonormalize_columns(b) {
                Some(q) => q,
                None => {
                    ok = false;
                    b.clone()
                }
            })
            .collect();
        if !ok {
            continue;
        }
        let analysis = unflatten(&FlattenedOperator { blocks }, shape, n, m)
            .expect("orthonormalization preserves dimensions");
        let system = FrameSystem::from_analysis(analysis).expect("n >= 1");
        debug_assert!(system.analyze().is_parseval);
        return system;
    }
}

/// A random `c`-tight frame (`S = c·I`): scaled Parseval frame.
pub fn tight_frame(
    rng: &mut impl Rng,
    shape: &AlgebraShape,
    m: usize,
    n: usize,
    constant: f64,
) -> FrameSystem {
    let parseval = parseval_frame(rng, shape, m, n);
    let factor = Complex64::new(constant.sqrt(), 0.0);
    FrameSystem::new(parseval.vectors().iter().map(|v| v.scale(factor)).collect())
        .expect("same vector count")
}

/// Modified Gram–Schmidt on columns with a second pass; `None` when the
/// columns are numerically dependent.
fn orthonormalize_columns(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let rows = m.rows();
    let cols = m.cols();
    let mut q: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| (0..rows).map(|i| m.get(i, j)).collect())
        .collect();
    for j in 0..cols {
        for _pass in 0..2 {
            for k in 0..j {
                let proj: Complex64 = (0..rows).map(|i| q[k][i].conj() * q[j][i]).sum();
                let reference = q[k].clone();
                for (entry, base) in q[j].iter_mut().zip(&reference) {
                    *entry -= base * proj;
                }
            }
        }
        let norm = q[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return None;
        }
        for entry in &mut q[j] {
            *entry /= norm;
        }
    }
    Some(ComplexMatrix::from_fn(rows, cols, |i, j| q[j][i]))
}

/// A random multiplier element of the non-unital model.
pub fn tail_element(rng: &mut impl Rng, max_prefix: usize) -> TailSequenceElement {
    let len = rng.gen_range(0..=max_prefix);
    let prefix = (0..len).map(|_| complex_in_unit_box(rng)).collect();
    let tail = if rng.gen_bool(0.5) {
        Complex64::new(0.0, 0.0)
    } else {
        complex_in_unit_box(rng)
    };
    TailSequenceElement::new(prefix, tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_frame_is_frame() {
        let mut rng = rng_from_seed(7);
        for shape in standard_shapes() {
            let f = frame(&mut rng, &shape, 2, 3);
            assert!(f.analyze().is_frame);
        }
    }

    #[test]
    fn random_parseval_is_parseval() {
        let mut rng = rng_from_seed(11);
        for shape in standard_shapes() {
            let f = parseval_frame(&mut rng, &shape, 2, 4);
            let report = f.analyze();
            assert!(report.is_parseval, "{report:?}");
        }
    }

    #[test]
    fn random_tight_has_requested_constant() {
        let mut rng = rng_from_seed(13);
        let shape = AlgebraShape::new(vec![2]);
        let f = tight_frame(&mut rng, &shape, 2, 3, 2.5);
        let report = f.analyze();
        assert!(report.is_tight);
        assert!((report.tight_constant.unwrap() - 2.5).abs() < 1e-9);
    }

    #[test]
    fn contraction_is_contractive() {
        let mut rng = rng_from_seed(17);
        for shape in standard_shapes() {
            for _ in 0..5 {
                assert!(contraction(&mut rng, &shape).norm() <= 1.0 + 1e-12);
            }
        }
    }
}
