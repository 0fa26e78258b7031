//! An exactly representable non-unital setting where outer frames exist.
//!
//! The coefficient algebra `A` is modeled by eventually-zero complex
//! sequences and its multiplier algebra `M(A)` by eventually-constant ones:
//! an element is a finite prefix plus a tail value repeated from the end of
//! the prefix onward, and it lies in `A` exactly when the tail is zero. `X`
//! is `A` as a module over itself, so `M(X) = M(A)` and a finite system is
//! an outer frame precisely when its coordinate sums of squared moduli are
//! bounded away from zero — including the tail coordinate, which is why a
//! system contained in `A` can never be a frame here.
//!
//! Analysis operators are never materialized; every verdict is computed
//! from the finitely many distinct coordinate sums. Because all data is
//! eventually constant, checking the prefix coordinates plus the tail is
//! exact: taking the coordinate index through the constant region turns the
//! frame inequalities into the tail inequality.

use num_complex::Complex64;

use crate::error::{FrameError, Result};

const MODEL_TOL: f64 = 1e-12;

/// Eventually-constant sequence: `value(k) = prefix[k]` for `k < prefix.len()`,
/// `tail` afterwards. Canonical form carries no trailing prefix entries equal
/// to the tail. Membership in `A` means `tail == 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct TailSequenceElement {
    prefix: Vec<Complex64>,
    tail: Complex64,
}

impl TailSequenceElement {
    pub fn new(mut prefix: Vec<Complex64>, tail: Complex64) -> Self {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        Self { prefix, tail }
    }

    pub fn zero() -> Self {
        Self {
            prefix: Vec::new(),
            tail: Complex64::new(0.0, 0.0),
        }
    }

    /// The unit `e` of `M(A)`: constantly one.
    pub fn unit() -> Self {
        Self {
            prefix: Vec::new(),
            tail: Complex64::new(1.0, 0.0),
        }
    }

    pub fn from_reals(prefix: &[f64], tail: f64) -> Self {
        Self::new(
            prefix.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
            Complex64::new(tail, 0.0),
        )
    }

    pub fn prefix(&self) -> &[Complex64] {
        &self.prefix
    }

    pub fn tail(&self) -> Complex64 {
        self.tail
    }

    pub fn value_at(&self, k: usize) -> Complex64 {
        self.prefix.get(k).copied().unwrap_or(self.tail)
    }

    /// Membership in the ideal `A` of eventually-zero sequences.
    pub fn is_in_algebra(&self) -> bool {
        self.tail == Complex64::new(0.0, 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.prefix.is_empty() && self.is_in_algebra()
    }

    pub fn sup_norm(&self) -> f64 {
        self.prefix
            .iter()
            .map(|z| z.norm())
            .fold(self.tail.norm(), f64::max)
    }

    fn zip(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let len = self.prefix.len().max(other.prefix.len());
        let prefix = (0..len)
            .map(|k| f(self.value_at(k), other.value_at(k)))
            .collect();
        Self::new(prefix, f(self.tail, other.tail))
    }

    /// Pointwise sum; tails add.
    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    /// Pointwise product; tails compose.
    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a * b)
    }

    /// Pointwise conjugation (the involution of a commutative C*-algebra).
    pub fn star(&self) -> Self {
        Self::new(
            self.prefix.iter().map(|z| z.conj()).collect(),
            self.tail.conj(),
        )
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self::new(self.prefix.iter().map(|w| w * z).collect(), self.tail * z)
    }

    pub fn approx_eq(&self, other: &Self, tau: f64) -> bool {
        let len = self.prefix.len().max(other.prefix.len());
        (0..len).all(|k| (self.value_at(k) - other.value_at(k)).norm() <= tau)
            && (self.tail - other.tail).norm() <= tau
    }
}

/// How a finite system over the model sits relative to the frame property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemKind {
    /// All members in `A` and a frame — impossible for finite systems here,
    /// kept for API completeness.
    Frame,
    /// Frame condition holds and some member lies in `M(A)\A`.
    OuterFrame,
    /// Bessel with an outer member, but the lower bound vanishes.
    OuterBesselOnly,
    /// Unreachable for finite systems (always Bessel); kept for completeness.
    NotBesselIrrelevant,
    /// Entirely inside `A`; the tail coordinate sum is zero, so never a frame.
    NotFrame,
}

impl SystemKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Frame => "frame",
            Self::OuterFrame => "outer_frame",
            Self::OuterBesselOnly => "outer_bessel_only",
            Self::NotBesselIrrelevant => "not_bessel_irrelevant",
            Self::NotFrame => "not_frame",
        }
    }
}

/// Verdict of [`classify_finite_system`].
#[derive(Clone, Debug, PartialEq)]
pub struct OuterFrameVerdict {
    pub kind: SystemKind,
    /// Optimal lower bound: infimum of the coordinate sums `Σ_n |v_n(k)|²`.
    pub lower: f64,
    /// Optimal upper bound: supremum of the same sums.
    pub upper: f64,
    /// Frame condition quantified over `M(A)` (the strict route); agrees
    /// with the frame verdict quantified over `A`.
    pub strict_check: bool,
}

fn coordinate_sums(vs: &[TailSequenceElement]) -> (Vec<f64>, f64) {
    let p = vs.iter().map(|v| v.prefix.len()).max().unwrap_or(0);
    let sums = (0..p)
        .map(|k| vs.iter().map(|v| v.value_at(k).norm_sqr()).sum())
        .collect();
    let tail_sum = vs.iter().map(|v| v.tail.norm_sqr()).sum();
    (sums, tail_sum)
}

/// Classify a finite system of multiplier elements.
///
/// The frame route quantifies the defining inequalities over `x ∈ A`:
/// testing the coordinates up to the longest prefix plus one probe inside
/// the constant region is exact. The strict route quantifies over `M(A)`,
/// which adds the tail inequality directly; both must agree.
pub fn classify_finite_system(vs: &[TailSequenceElement]) -> Result<OuterFrameVerdict> {
    if vs.is_empty() {
        return Err(FrameError::EmptySystem);
    }
    let (sums, tail_sum) = coordinate_sums(vs);

    // Frame route: coordinates 0..p plus one index past every prefix, where
    // the sum has stabilized to the tail sum.
    let p = vs.iter().map(|v| v.prefix.len()).max().unwrap_or(0);
    let probe: f64 = vs.iter().map(|v| v.value_at(p).norm_sqr()).sum();
    let lower_frame = sums.iter().copied().fold(probe, f64::min);
    let upper_frame = sums.iter().copied().fold(probe, f64::max);

    // Strict route: prefix sums together with the tail sum computed from
    // the tail values themselves.
    let lower_strict = sums.iter().copied().fold(tail_sum, f64::min);
    let upper_strict = sums.iter().copied().fold(tail_sum, f64::max);
    debug_assert!((lower_frame - lower_strict).abs() <= MODEL_TOL);
    debug_assert!((upper_frame - upper_strict).abs() <= MODEL_TOL);

    let threshold = MODEL_TOL * upper_frame.max(1.0);
    let is_frame_condition = lower_frame > threshold;
    let strict_check = lower_strict > threshold;
    let has_outer = vs.iter().any(|v| !v.is_in_algebra());

    let kind = match (is_frame_condition, has_outer) {
        (true, true) => SystemKind::OuterFrame,
        (true, false) => SystemKind::Frame,
        (false, true) => SystemKind::OuterBesselOnly,
        (false, false) => SystemKind::NotFrame,
    };
    Ok(OuterFrameVerdict {
        kind,
        lower: lower_frame,
        upper: upper_frame,
        strict_check,
    })
}

/// Complete a system with Bessel bound at most one to an (outer) Parseval
/// frame by appending the pointwise complement `w` with
/// `|w(k)|² = 1 − s(k)`; `w` lands in `M(A)\A` whenever the tail sum stays
/// below one, and is pruned when the system is already Parseval.
pub fn outer_parseval_complete(vs: &[TailSequenceElement]) -> Result<Vec<TailSequenceElement>> {
    let verdict = classify_finite_system(vs)?;
    if verdict.upper > 1.0 + MODEL_TOL {
        return Err(FrameError::BesselBoundExceedsOne {
            upper: verdict.upper,
        });
    }
    let (sums, tail_sum) = coordinate_sums(vs);
    let prefix = sums
        .iter()
        .map(|&s| Complex64::new((1.0 - s).max(0.0).sqrt(), 0.0))
        .collect();
    let tail = Complex64::new((1.0 - tail_sum).max(0.0).sqrt(), 0.0);
    let w = TailSequenceElement::new(prefix, tail);

    let mut completed = vs.to_vec();
    if !w.is_zero() {
        completed.push(w);
    }
    Ok(completed)
}

/// Duality in the model: `Σ_n d_n(k)·conj(v_n(k)) = 1` at every coordinate
/// including the tail.
pub fn is_pointwise_dual(vs: &[TailSequenceElement], ds: &[TailSequenceElement]) -> bool {
    if vs.len() != ds.len() {
        return false;
    }
    let p = vs
        .iter()
        .chain(ds)
        .map(|v| v.prefix.len())
        .max()
        .unwrap_or(0);
    let one = Complex64::new(1.0, 0.0);
    for k in 0..=p {
        let total: Complex64 = vs
            .iter()
            .zip(ds)
            .map(|(v, d)| d.value_at(k) * v.value_at(k).conj())
            .sum();
        if (total - one).norm() > MODEL_TOL {
            return false;
        }
    }
    let tail_total: Complex64 = vs.iter().zip(ds).map(|(v, d)| d.tail * v.tail.conj()).sum();
    (tail_total - one).norm() <= MODEL_TOL
}

/// Canonical dual in the model: pointwise `d_n(k) = v_n(k)/s(k)`.
fn canonical_pointwise_dual(vs: &[TailSequenceElement]) -> Vec<TailSequenceElement> {
    let (sums, tail_sum) = coordinate_sums(vs);
    vs.iter()
        .map(|v| {
            let prefix = sums
                .iter()
                .enumerate()
                .map(|(k, &s)| v.value_at(k) / s)
                .collect();
            TailSequenceElement::new(prefix, v.tail / tail_sum)
        })
        .collect()
}

/// Per-coordinate dual parametrization, mirroring the operator formula
/// `V = u·(u*u)^{-1} + (I − u·(u*u)^{-1}·u*)·L` at one coordinate: here `u`
/// is the column `(conj v_n(k))_n` and `L` a free complex column.
fn parametrized_pointwise_dual(
    vs: &[TailSequenceElement],
    params: &[TailSequenceElement],
) -> Vec<TailSequenceElement> {
    let n = vs.len();
    let (sums, tail_sum) = coordinate_sums(vs);
    let p = vs
        .iter()
        .chain(params)
        .map(|v| v.prefix.len())
        .max()
        .unwrap_or(0);

    let column_at = |k: Option<usize>| -> (Vec<Complex64>, Vec<Complex64>, f64) {
        let u: Vec<Complex64> = vs
            .iter()
            .map(|v| match k {
                Some(k) => v.value_at(k).conj(),
                None => v.tail.conj(),
            })
            .collect();
        let l: Vec<Complex64> = params
            .iter()
            .map(|q| match k {
                Some(k) => q.value_at(k),
                None => q.tail,
            })
            .collect();
        let s = match k {
            Some(k) => sums.get(k).copied().unwrap_or(tail_sum),
            None => tail_sum,
        };
        (u, l, s)
    };

    // V_n = u_n/s + (L_n − u_n·(u*L)/s), conjugated into dual members.
    let dual_coordinate = |k: Option<usize>| -> Vec<Complex64> {
        let (u, l, s) = column_at(k);
        let u_dot_l: Complex64 = u.iter().zip(&l).map(|(ui, li)| ui.conj() * li).sum();
        (0..n)
            .map(|i| {
                let v_i = u[i] / s + (l[i] - u[i] * u_dot_l / s);
                v_i.conj()
            })
            .collect()
    };

    let tail_vals = dual_coordinate(None);
    let mut members = vec![Vec::with_capacity(p); n];
    for k in 0..p {
        let vals = dual_coordinate(Some(k));
        for i in 0..n {
            members[i].push(vals[i]);
        }
    }
    members
        .into_iter()
        .zip(tail_vals)
        .map(|(prefix, tail)| TailSequenceElement::new(prefix, tail))
        .collect()
}

/// Report of [`unique_dual_witness`].
#[derive(Clone, Debug)]
pub struct UniqueDualWitnessReport {
    /// `{e}`: every parametrized dual collapses to `{e}` (corank zero).
    pub unit_system_unique: bool,
    /// `{e, 0}`: two explicitly distinct duals verified.
    pub padded_system_has_multiple_duals: bool,
    /// `{(prefix [0.5], tail 1)}`: the pointwise reciprocal is the sole dual.
    pub reciprocal_system_unique: bool,
    /// Largest deviation of any verified duality identity from one.
    pub max_residual: f64,
}

impl UniqueDualWitnessReport {
    pub fn all_verified(&self) -> bool {
        self.unit_system_unique
            && self.padded_system_has_multiple_duals
            && self.reciprocal_system_unique
    }
}

/// Exhibit the unique-dual phenomenon at model scale.
///
/// For rank-one systems with every coordinate nonzero the range-complement
/// term of the dual parametrization vanishes, so the canonical dual is the
/// only one; padding with a zero member creates corank and with it multiple
/// duals.
pub fn unique_dual_witness() -> UniqueDualWitnessReport {
    let mut max_residual = 0.0f64;
    let mut residual = |vs: &[TailSequenceElement], ds: &[TailSequenceElement]| -> bool {
        let ok = is_pointwise_dual(vs, ds);
        if ok {
            // Track the worst coordinate deviation for the report.
            let p = vs
                .iter()
                .chain(ds)
                .map(|v| v.prefix().len())
                .max()
                .unwrap_or(0);
            for k in 0..=p {
                let total: Complex64 = vs
                    .iter()
                    .zip(ds)
                    .map(|(v, d)| d.value_at(k) * v.value_at(k).conj())
                    .sum();
                max_residual = max_residual.max((total - Complex64::new(1.0, 0.0)).norm());
            }
        }
        ok
    };

    // {e}: canonical dual is {e}; sampled parameters change nothing.
    let unit = vec![TailSequenceElement::unit()];
    let canonical = canonical_pointwise_dual(&unit);
    let mut unit_unique = residual(&unit, &canonical)
        && canonical[0].approx_eq(&TailSequenceElement::unit(), MODEL_TOL);
    for param in [
        vec![TailSequenceElement::from_reals(&[2.0, -1.0], 0.5)],
        vec![TailSequenceElement::from_reals(&[0.0, 3.0], -2.0)],
    ] {
        let dual = parametrized_pointwise_dual(&unit, &param);
        unit_unique &= dual[0].approx_eq(&canonical[0], MODEL_TOL) && residual(&unit, &dual);
    }

    // {e, 0}: corank one at every coordinate → at least two duals.
    let padded = vec![TailSequenceElement::unit(), TailSequenceElement::zero()];
    let first = vec![TailSequenceElement::unit(), TailSequenceElement::zero()];
    let second = vec![TailSequenceElement::unit(), TailSequenceElement::unit()];
    let padded_multiple = residual(&padded, &first)
        && residual(&padded, &second)
        && !first[1].approx_eq(&second[1], MODEL_TOL);

    // {(prefix [0.5], tail 1)}: corank zero → unique dual, the pointwise
    // reciprocal (normalized conjugate).
    let scalar = vec![TailSequenceElement::from_reals(&[0.5], 1.0)];
    let reciprocal = canonical_pointwise_dual(&scalar);
    let mut scalar_unique = residual(&scalar, &reciprocal)
        && reciprocal[0].approx_eq(&TailSequenceElement::from_reals(&[2.0], 1.0), MODEL_TOL);
    for param in [
        vec![TailSequenceElement::from_reals(&[1.0], 0.0)],
        vec![TailSequenceElement::from_reals(&[-3.0, 2.0], 1.0)],
    ] {
        let dual = parametrized_pointwise_dual(&scalar, &param);
        scalar_unique &= dual[0].approx_eq(&reciprocal[0], MODEL_TOL);
    }

    UniqueDualWitnessReport {
        unit_system_unique: unit_unique,
        padded_system_has_multiple_duals: padded_multiple,
        reciprocal_system_unique: scalar_unique,
        max_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn canonical_form_strips_tail_entries() {
        let v = TailSequenceElement::new(vec![c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)], c(1.0, 0.0));
        assert_eq!(v.prefix().len(), 1);
        assert_eq!(v.value_at(0), c(2.0, 0.0));
        assert_eq!(v.value_at(7), c(1.0, 0.0));
    }

    #[test]
    fn unit_is_multiplicative_identity() {
        let e = TailSequenceElement::unit();
        let v = TailSequenceElement::from_reals(&[3.0, -1.0], 0.5);
        assert_eq!(e.mul(&v), v);
        assert_eq!(v.mul(&e), v);
    }

    #[test]
    fn algebra_elements_multiply_into_algebra() {
        let a = TailSequenceElement::from_reals(&[1.0, 2.0], 0.0);
        let b = TailSequenceElement::from_reals(&[0.0, 5.0, 1.0], 0.0);
        let ab = a.mul(&b);
        assert!(ab.is_in_algebra());
        assert_eq!(ab.value_at(1), c(10.0, 0.0));
    }

    #[test]
    fn pointwise_product_example() {
        // u = (prefix [2], tail 1), v = (prefix [0, 3], tail 1) → uv = (prefix [0, 3], tail 1)
        let u = TailSequenceElement::from_reals(&[2.0], 1.0);
        let v = TailSequenceElement::from_reals(&[0.0, 3.0], 1.0);
        let uv = u.mul(&v);
        assert_eq!(uv, TailSequenceElement::from_reals(&[0.0, 3.0], 1.0));
    }

    #[test]
    fn ideal_closure() {
        let a = TailSequenceElement::from_reals(&[1.0, -2.0], 0.0);
        let m = TailSequenceElement::from_reals(&[0.5], 3.0);
        assert!(a.mul(&m).is_in_algebra());
        assert!(m.mul(&a).is_in_algebra());
    }

    #[test]
    fn classify_unit_is_outer_parseval() {
        let verdict = classify_finite_system(&[TailSequenceElement::unit()]).unwrap();
        assert_eq!(verdict.kind, SystemKind::OuterFrame);
        assert_eq!(verdict.lower, 1.0);
        assert_eq!(verdict.upper, 1.0);
        assert!(verdict.strict_check);
    }

    #[test]
    fn classify_algebra_members_never_frame() {
        let vs = vec![
            TailSequenceElement::from_reals(&[1.0, 0.5], 0.0),
            TailSequenceElement::from_reals(&[0.0, 2.0, 1.0], 0.0),
        ];
        let verdict = classify_finite_system(&vs).unwrap();
        assert_eq!(verdict.kind, SystemKind::NotFrame);
        assert_eq!(verdict.lower, 0.0);
        assert!(!verdict.strict_check);
    }

    #[test]
    fn classify_prefix_dip() {
        let vs = vec![TailSequenceElement::from_reals(&[0.5], 1.0)];
        let verdict = classify_finite_system(&vs).unwrap();
        assert_eq!(verdict.kind, SystemKind::OuterFrame);
        assert!((verdict.lower - 0.25).abs() < 1e-15);
        assert!((verdict.upper - 1.0).abs() < 1e-15);
    }

    #[test]
    fn classify_outer_bessel_only() {
        // Outer member but a zeroed coordinate kills the lower bound.
        let vs = vec![TailSequenceElement::from_reals(&[0.0], 1.0)];
        let verdict = classify_finite_system(&vs).unwrap();
        assert_eq!(verdict.kind, SystemKind::OuterBesselOnly);
        assert!(!verdict.strict_check);
    }

    #[test]
    fn classify_empty_rejected() {
        assert!(matches!(
            classify_finite_system(&[]),
            Err(FrameError::EmptySystem)
        ));
    }

    #[test]
    fn completion_of_zero_is_unit() {
        let vs = vec![TailSequenceElement::zero()];
        let completed = outer_parseval_complete(&vs).unwrap();
        assert_eq!(completed.len(), 2);
        assert_eq!(completed[1], TailSequenceElement::unit());
        let verdict = classify_finite_system(&completed).unwrap();
        assert_eq!((verdict.lower, verdict.upper), (1.0, 1.0));
    }

    #[test]
    fn completion_of_algebra_member_is_outer() {
        // {(prefix [1], tail 0)} → w = (prefix [0], tail 1).
        let vs = vec![TailSequenceElement::from_reals(&[1.0], 0.0)];
        let completed = outer_parseval_complete(&vs).unwrap();
        assert_eq!(completed.len(), 2);
        assert_eq!(completed[1], TailSequenceElement::from_reals(&[0.0], 1.0));
        assert!(!completed[1].is_in_algebra());
        let verdict = classify_finite_system(&completed).unwrap();
        assert_eq!(verdict.kind, SystemKind::OuterFrame);
        assert_eq!((verdict.lower, verdict.upper), (1.0, 1.0));
    }

    #[test]
    fn completion_of_parseval_prunes() {
        let vs = vec![TailSequenceElement::unit()];
        let completed = outer_parseval_complete(&vs).unwrap();
        assert_eq!(completed.len(), 1);
    }

    #[test]
    fn completion_rejects_large_bessel() {
        let vs = vec![TailSequenceElement::from_reals(&[2.0], 1.0)];
        assert!(matches!(
            outer_parseval_complete(&vs),
            Err(FrameError::BesselBoundExceedsOne { .. })
        ));
    }

    #[test]
    fn witness_report_verifies() {
        let report = unique_dual_witness();
        assert!(report.unit_system_unique);
        assert!(report.padded_system_has_multiple_duals);
        assert!(report.reciprocal_system_unique);
        assert!(report.all_verified());
        assert!(report.max_residual <= MODEL_TOL);
    }

    #[test]
    fn parametrized_duals_are_duals() {
        let vs = vec![
            TailSequenceElement::from_reals(&[1.0, 0.5], 1.0),
            TailSequenceElement::from_reals(&[0.5], 0.0),
        ];
        let params = vec![
            TailSequenceElement::from_reals(&[0.3], -1.0),
            TailSequenceElement::from_reals(&[2.0, 1.0], 0.25),
        ];
        let dual = parametrized_pointwise_dual(&vs, &params);
        assert!(is_pointwise_dual(&vs, &dual));
        let canonical = canonical_pointwise_dual(&vs);
        assert!(is_pointwise_dual(&vs, &canonical));
    }
}
