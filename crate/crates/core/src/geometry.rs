//! Exact oracle for `d`-simplices on the moment curve.
//!
//! Everything here is computed over an exact ordered field — no floating
//! point, no pivot tolerances. Given `2d + 2` distinct curve parameters
//! there is a unique affine dependency among the corresponding points; its
//! coefficient signs alternate along the sorted parameters, and two open
//! `d`-simplices meet precisely when the dependency's sign classes separate
//! their parameter sets. This gives a from-first-principles intersection
//! test against which the combinatorial interleaving predicate is validated.

use num_traits::{Num, Signed};

use crate::{Error, Result};

/// Scalar admissible for exact moment-curve computations: an ordered field
/// with exact arithmetic. The crate instantiates it at [`crate::Rat`].
pub trait Scalar: Clone + Num + Signed + PartialOrd {}

impl<T: Clone + Num + Signed + PartialOrd> Scalar for T {}

/// A point `p_t = (t, t², …, t^δ)` on the moment curve, stored by its
/// parameter. Coordinates are generated on demand as exact powers.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentPoint<S> {
    t: S,
}

impl<S: Scalar> MomentPoint<S> {
    pub fn new(t: S) -> Self {
        MomentPoint { t }
    }

    pub fn parameter(&self) -> &S {
        &self.t
    }

    /// The coordinate vector `(t, t², …, t^δ)`.
    pub fn coords(&self, delta: usize) -> Vec<S> {
        let mut out = Vec::with_capacity(delta);
        let mut pow = S::one();
        for _ in 0..delta {
            pow = pow * self.t.clone();
            out.push(pow.clone());
        }
        out
    }
}

/// The unique affine dependency among `2d + 2` distinct moment-curve points
/// in dimension `2d`, written `Σ_even c_i p_i = Σ_odd c_i p_i` with all
/// `c_i > 0`, normalized so both index-class sums equal one.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineDependency<S> {
    coefficients: Vec<S>,
}

impl<S: Scalar> AffineDependency<S> {
    pub fn coefficients(&self) -> &[S] {
        &self.coefficients
    }

    pub fn even_sum(&self) -> S {
        self.class_sum(0)
    }

    pub fn odd_sum(&self) -> S {
        self.class_sum(1)
    }

    fn class_sum(&self, parity: usize) -> S {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(i, _)| i % 2 == parity)
            .fold(S::zero(), |acc, (_, c)| acc + c.clone())
    }
}

/// Compute the unique normalized affine dependency among the moment-curve
/// points of `2d + 2` strictly increasing parameters.
pub fn affine_dependency<S: Scalar>(params: &[S]) -> Result<AffineDependency<S>> {
    let kernel = dependency_kernel(params)?;
    let coefficients = normalize_alternating(kernel);
    Ok(AffineDependency { coefficients })
}

/// Whether the open simplices spanned by the moment points of `a` and `b`
/// intersect. Decided by computing the affine dependency on the union and
/// checking that its sign classes separate the parameters exactly as
/// `a | b`.
pub fn simplices_intersect_interior<S: Scalar>(a: &[S], b: &[S]) -> Result<bool> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::invalid(
            "expected two parameter lists of equal positive length",
        ));
    }
    let mut tagged: Vec<(S, bool)> = a
        .iter()
        .map(|t| (t.clone(), true))
        .chain(b.iter().map(|t| (t.clone(), false)))
        .collect();
    tagged.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("total order on scalars"));
    if tagged.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::invalid("simplices share a curve parameter"));
    }
    let merged: Vec<S> = tagged.iter().map(|(t, _)| t.clone()).collect();
    let kernel = dependency_kernel(&merged)?;
    // positions where the oriented kernel coefficient is positive
    let positive: Vec<bool> = kernel.iter().map(|c| c.is_positive()).collect();
    let from_a: Vec<bool> = tagged.iter().map(|(_, tag)| *tag).collect();
    let complement: Vec<bool> = from_a.iter().map(|t| !t).collect();
    Ok(positive == from_a || positive == complement)
}

/// Kernel of the homogeneous moment-coordinate system for the given
/// parameters, oriented so the first coefficient is positive. The returned
/// vector has strictly alternating signs; any degeneracy is a fatal internal
/// error since the parameters are distinct.
fn dependency_kernel<S: Scalar>(params: &[S]) -> Result<Vec<S>> {
    let n = params.len();
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "an affine dependency needs 2d + 2 >= 4 parameters, got {n}"
        )));
    }
    if !params.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::invalid(
            "parameters must be strictly increasing and distinct",
        ));
    }
    // rows are the homogeneous coordinates (1, t, …, t^(2d)) transposed:
    // row r states Σ_i c_i t_i^r = 0.
    let rows = n - 1;
    let mut mat: Vec<Vec<S>> = Vec::with_capacity(rows);
    let mut row = vec![S::one(); n];
    mat.push(row.clone());
    for _ in 1..rows {
        for (entry, t) in row.iter_mut().zip(params) {
            *entry = entry.clone() * t.clone();
        }
        mat.push(row.clone());
    }
    let mut kernel = one_dimensional_kernel(mat)
        .expect("distinct moment-curve parameters always give a rank-deficiency-one system");
    if kernel[0].is_negative() {
        for c in kernel.iter_mut() {
            *c = -c.clone();
        }
    }
    for (i, c) in kernel.iter().enumerate() {
        assert!(
            !c.is_zero() && c.is_positive() == (i % 2 == 0),
            "affine dependency signs must alternate along sorted parameters"
        );
    }
    Ok(kernel)
}

/// Fraction-free forward elimination (two-row cross-multiplication, no
/// division, no pivot tolerance) followed by exact back-substitution. Returns
/// `None` unless the kernel is exactly one-dimensional.
fn one_dimensional_kernel<S: Scalar>(mut mat: Vec<Vec<S>>) -> Option<Vec<S>> {
    let rows = mat.len();
    let cols = mat[0].len();
    debug_assert_eq!(cols, rows + 1);
    let mut pivot_cols = Vec::with_capacity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        for rr in r + 1..rows {
            if mat[rr][c].is_zero() {
                continue;
            }
            let p = mat[r][c].clone();
            let q = mat[rr][c].clone();
            for cc in c..cols {
                mat[rr][cc] = p.clone() * mat[rr][cc].clone() - q.clone() * mat[r][cc].clone();
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if r != rows {
        return None;
    }
    let free_col = (0..cols).find(|c| !pivot_cols.contains(c))?;
    let mut x = vec![S::zero(); cols];
    x[free_col] = S::one();
    for i in (0..rows).rev() {
        let c = pivot_cols[i];
        let mut sum = S::zero();
        for cc in c + 1..cols {
            if !x[cc].is_zero() {
                sum = sum + mat[i][cc].clone() * x[cc].clone();
            }
        }
        x[c] = -sum / mat[i][c].clone();
    }
    Some(x)
}

/// Fold an alternating-sign kernel vector into the all-positive coefficient
/// tuple of the dependency, scaled so the even-index class sums to one.
fn normalize_alternating<S: Scalar>(kernel: Vec<S>) -> Vec<S> {
    let mut coeffs: Vec<S> = kernel.into_iter().map(|c| c.abs()).collect();
    let even_sum = coeffs
        .iter()
        .step_by(2)
        .fold(S::zero(), |acc, c| acc + c.clone());
    for c in coeffs.iter_mut() {
        *c = c.clone() / even_sum.clone();
    }
    let odd_sum = coeffs
        .iter()
        .skip(1)
        .step_by(2)
        .fold(S::zero(), |acc, c| acc + c.clone());
    assert!(odd_sum == S::one(), "odd class sum must normalize to one");
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn r(n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn dependency_on_consecutive_integers() {
        // kernel (1, -3, 3, -1) normalized to c = (1/4, 3/4, 3/4, 1/4)
        let dep = affine_dependency(&[r(0), r(1), r(2), r(3)]).unwrap();
        assert_eq!(
            dep.coefficients(),
            &[rat(1, 4), rat(3, 4), rat(3, 4), rat(1, 4)]
        );
        assert_eq!(dep.even_sum(), r(1));
        assert_eq!(dep.odd_sum(), r(1));
    }

    #[test]
    fn dependency_on_0124() {
        // hand solve: kernel proportional to (3, -8, 6, -1)
        let dep = affine_dependency(&[r(0), r(1), r(2), r(4)]).unwrap();
        assert_eq!(
            dep.coefficients(),
            &[rat(1, 3), rat(8, 9), rat(2, 3), rat(1, 9)]
        );
    }

    #[test]
    fn symmetric_parameters_give_palindromic_coefficients() {
        let dep = affine_dependency(&[r(-3), r(-1), r(1), r(3)]).unwrap();
        let c = dep.coefficients();
        assert_eq!(c[0], c[3]);
        assert_eq!(c[1], c[2]);
        let dep6 = affine_dependency(&[r(-5), r(-3), r(-1), r(1), r(3), r(5)]).unwrap();
        let c6 = dep6.coefficients();
        for i in 0..6 {
            assert_eq!(c6[i], c6[5 - i]);
        }
    }

    #[test]
    fn segment_crossing() {
        assert!(simplices_intersect_interior(&[r(1), r(3)], &[r(2), r(4)]).unwrap());
        assert!(!simplices_intersect_interior(&[r(1), r(2)], &[r(3), r(4)]).unwrap());
        assert!(simplices_intersect_interior(&[r(1), r(3), r(5)], &[r(2), r(4), r(6)]).unwrap());
        assert!(simplices_intersect_interior(&[r(1), r(3)], &[r(1), r(4)]).is_err());
    }

    #[test]
    fn dependency_annihilates_moment_coordinates() {
        // the two class-weighted barycenters coincide: the Radon point
        for params in [
            vec![r(0), r(1), r(2), r(3)],
            vec![r(-2), r(1), r(3), r(7)],
            vec![rat(1, 2), rat(3, 2), rat(5, 2), r(4), r(5), r(6)],
        ] {
            let d = params.len() / 2 - 1;
            let dep = affine_dependency(&params).unwrap();
            let points: Vec<Vec<Rat>> = params
                .iter()
                .map(|t| MomentPoint::new(t.clone()).coords(2 * d))
                .collect();
            for axis in 0..2 * d {
                let mut even = Rat::from_integer(BigInt::from(0));
                let mut odd = even.clone();
                for (i, point) in points.iter().enumerate() {
                    let term = &dep.coefficients()[i] * &point[axis];
                    if i % 2 == 0 {
                        even += term;
                    } else {
                        odd += term;
                    }
                }
                assert_eq!(even, odd, "axis {axis}");
            }
        }
    }

    #[test]
    fn wrong_parameter_count_is_rejected() {
        assert!(affine_dependency(&[r(0), r(1)]).is_err());
        assert!(affine_dependency(&[r(0), r(1), r(2)]).is_err());
        assert!(affine_dependency(&[r(0), r(0), r(1), r(2)]).is_err());
    }

    proptest! {
        #[test]
        fn positive_scaling_preserves_intersection(
            mut xs in proptest::collection::vec(-40i64..40, 6),
            num in 1i64..20,
            den in 1i64..20,
        ) {
            xs.sort_unstable();
            xs.dedup();
            prop_assume!(xs.len() == 6);
            let scale = rat(num, den);
            let a: Vec<Rat> = [xs[0], xs[2], xs[4]].iter().map(|&v| r(v)).collect();
            let b: Vec<Rat> = [xs[1], xs[3], xs[5]].iter().map(|&v| r(v)).collect();
            let sa: Vec<Rat> = a.iter().map(|v| v * &scale).collect();
            let sb: Vec<Rat> = b.iter().map(|v| v * &scale).collect();
            prop_assert_eq!(
                simplices_intersect_interior(&a, &b).unwrap(),
                simplices_intersect_interior(&sa, &sb).unwrap()
            );
        }

        #[test]
        fn dependency_signs_and_sums(mut xs in proptest::collection::vec(-60i64..60, 4..=8)) {
            xs.sort_unstable();
            xs.dedup();
            prop_assume!(xs.len() >= 4 && xs.len() % 2 == 0);
            let params: Vec<Rat> = xs.iter().map(|&v| r(v)).collect();
            let dep = affine_dependency(&params).unwrap();
            prop_assert!(dep.coefficients().iter().all(|c| c.is_positive()));
            prop_assert_eq!(dep.even_sum(), r(1));
            prop_assert_eq!(dep.odd_sum(), r(1));
        }
    }
}
