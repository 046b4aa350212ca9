//! SU(2) as unit quaternions.
//!
//! Every element is conjugate to `e^{iθ} = cos θ + i sin θ` for a unique
//! `θ = arg(q) ∈ [0, π]`. For two conjugacy classes of angles `θ₁, θ₂` the
//! set of angles reachable by products of their elements is the closed
//! interval `[|θ₁ − θ₂|, min(θ₁ + θ₂, 2π − θ₁ − θ₂)]`; folding this rule
//! over several classes gives the reachable set of a longer product.

use std::ops::{Mul, Neg};

use num_traits::{Float, FloatConst};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

fn c<T: Float>(x: f64) -> T {
    T::from(x).expect("constant representable")
}

/// Unit quaternion `w + x i + y j + z k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitQuaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Copy> From<[T; 4]> for UnitQuaternion<T> {
    fn from([w, x, y, z]: [T; 4]) -> Self {
        Self { w, x, y, z }
    }
}

impl<T> From<UnitQuaternion<T>> for [T; 4] {
    fn from(q: UnitQuaternion<T>) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl<T: Float + FloatConst> UnitQuaternion<T> {
    /// Normalising constructor.
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }.normalized()
    }

    pub fn identity() -> Self {
        Self {
            w: T::one(),
            x: T::zero(),
            y: T::zero(),
            z: T::zero(),
        }
    }

    pub fn minus_one() -> Self {
        -Self::identity()
    }

    /// `±1` as a quaternion.
    pub fn sign(s: i32) -> Self {
        if s < 0 {
            Self::minus_one()
        } else {
            Self::identity()
        }
    }

    /// `e^{iθ}`.
    pub fn exp_i(theta: T) -> Self {
        Self {
            w: theta.cos(),
            x: theta.sin(),
            y: T::zero(),
            z: T::zero(),
        }
    }

    /// `cos θ + sin θ · u` for a unit vector `u`.
    pub fn from_axis_angle(axis: [T; 3], theta: T) -> Self {
        let (s, cth) = theta.sin_cos();
        Self::new(cth, s * axis[0], s * axis[1], s * axis[2])
    }

    /// Exponential of the pure quaternion `v`.
    pub fn exp(v: [T; 3]) -> Self {
        let n = norm3(v);
        if n == T::zero() {
            return Self::identity();
        }
        let (s, cth) = n.sin_cos();
        let k = s / n;
        Self::new(cth, k * v[0], k * v[1], k * v[2])
    }

    /// Inverse of [`exp`](Self::exp) with `|log q| = arg(q) ≤ π`.
    pub fn log(self) -> [T; 3] {
        let vn = norm3(self.vector());
        if vn == T::zero() {
            // ±1: log(−1) has no preferred axis; pick i.
            return if self.w < T::zero() {
                [T::PI(), T::zero(), T::zero()]
            } else {
                [T::zero(); 3]
            };
        }
        let theta = vn.atan2(self.w);
        let k = theta / vn;
        [k * self.x, k * self.y, k * self.z]
    }

    pub fn vector(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm_squared(self) -> T {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn normalized(self) -> Self {
        let n = self.norm_squared().sqrt();
        Self {
            w: self.w / n,
            x: self.x / n,
            y: self.y / n,
            z: self.z / n,
        }
    }

    pub fn conj(self) -> Self {
        Self {
            w: self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    /// Same as [`conj`](Self::conj) for unit quaternions.
    pub fn inverse(self) -> Self {
        self.conj()
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(self, g: Self) -> Self {
        (g * self * g.inverse()).normalized()
    }

    /// Integer power, computed on the one-parameter subgroup through `self`.
    pub fn powi(self, n: i64) -> Self {
        let vn = norm3(self.vector());
        let theta = vn.atan2(self.w);
        let m = c::<T>(n as f64) * theta;
        if vn == T::zero() {
            // ±1
            return if self.w < T::zero() && n.rem_euclid(2) == 1 {
                Self::minus_one()
            } else {
                Self::identity()
            };
        }
        let (s, cm) = m.sin_cos();
        let k = s / vn;
        Self::new(cm, k * self.x, k * self.y, k * self.z)
    }

    /// Largest coordinate difference; a cheap metric on SU(2).
    pub fn max_abs_diff(self, other: Self) -> T {
        (self.w - other.w)
            .abs()
            .max((self.x - other.x).abs())
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    pub fn is_central(self, tol: T) -> bool {
        norm3(self.vector()) <= tol
    }
}

impl<T: Float + FloatConst> Mul for UnitQuaternion<T> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        Self {
            w: self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            x: self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            y: self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            z: self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        }
    }
}

impl<T: Float> Neg for UnitQuaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            w: -self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

pub(crate) fn norm3<T: Float>(v: [T; 3]) -> T {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Conjugacy-class angle in `[0, π]`.
///
/// Computed as `atan2(|v|, w)`, which equals `arccos(w)` for unit
/// quaternions but keeps full precision near `0` and `π`.
pub fn arg<T: Float + FloatConst>(q: UnitQuaternion<T>) -> T {
    norm3(q.vector()).atan2(q.w)
}

/// A 3×3 rotation matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdMatrix<T>(pub [[T; 3]; 3]);

impl<T: Float> AdMatrix<T> {
    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self([[o, z, z], [z, o, z], [z, z, o]])
    }

    pub fn apply(&self, v: [T; 3]) -> [T; 3] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        let mut t = [[T::zero(); 3]; 3];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = m[j][i];
            }
        }
        Self(t)
    }

    pub fn determinant(&self) -> T {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut d = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        d
    }

    /// Orthogonal with determinant one, within `tol`.
    pub fn is_rotation(&self, tol: T) -> bool {
        (*self * self.transpose()).max_abs_diff(&Self::identity()) <= tol
            && (self.determinant() - T::one()).abs() <= tol
    }
}

impl<T: Float> Mul for AdMatrix<T> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let mut out = [[T::zero(); 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..3).fold(T::zero(), |acc, k| acc + self.0[i][k] * r.0[k][j]);
            }
        }
        Self(out)
    }
}

/// The rotation `v ↦ q v q̄` of the imaginary quaternions.
pub fn adjoint<T: Float + FloatConst>(q: UnitQuaternion<T>) -> AdMatrix<T> {
    let UnitQuaternion { w, x, y, z } = q;
    let two = T::one() + T::one();
    let one = T::one();
    AdMatrix([
        [
            one - two * (y * y + z * z),
            two * (x * y - w * z),
            two * (x * z + w * y),
        ],
        [
            two * (x * y + w * z),
            one - two * (x * x + z * z),
            two * (y * z - w * x),
        ],
        [
            two * (x * z - w * y),
            two * (y * z + w * x),
            one - two * (x * x + y * y),
        ],
    ])
}

/// Closed interval `[lo, hi] ⊆ [0, π]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleInterval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Float + FloatConst> AngleInterval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        debug_assert!(lo <= hi, "empty interval");
        Self {
            lo: lo.max(T::zero()),
            hi: hi.min(T::PI()),
        }
    }

    pub fn point(theta: T) -> Self {
        Self::new(theta, theta)
    }

    pub fn contains(&self, theta: T) -> bool {
        self.lo <= theta && theta <= self.hi
    }

    /// Membership with `margin` of clearance from both endpoints.
    pub fn contains_strictly(&self, theta: T, margin: T) -> bool {
        self.lo + margin < theta && theta < self.hi - margin
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Self { lo, hi })
    }
}

/// Reachable angles of `a·b` with `arg a = θ₁`, `arg b = θ₂`.
pub fn product_angle_interval<T: Float + FloatConst>(theta1: T, theta2: T) -> AngleInterval<T> {
    let two_pi = T::PI() + T::PI();
    AngleInterval::new(
        (theta1 - theta2).abs(),
        (theta1 + theta2).min(two_pi - theta1 - theta2),
    )
}

/// Reachable angles after multiplying every element with angle in `interval`
/// by an element of the class of angle `theta`.
pub fn fold_angle_interval<T: Float + FloatConst>(
    interval: AngleInterval<T>,
    theta: T,
) -> AngleInterval<T> {
    let two_pi = T::PI() + T::PI();
    let upper = |s: T| (s + theta).min(two_pi - s - theta);
    let lo = if interval.contains(theta) {
        T::zero()
    } else {
        (interval.lo - theta).abs().min((interval.hi - theta).abs())
    };
    let hi = if interval.contains(T::PI() - theta) {
        T::PI()
    } else {
        upper(interval.lo).max(upper(interval.hi))
    };
    AngleInterval::new(lo, hi)
}

/// Element of the class of angle `class_angle` on the i–j great circle,
/// `cos θ + sin θ (−cos τ · i + sin τ · j)`, `τ ∈ [0, π]`.
pub fn class_element<T: Float + FloatConst>(class_angle: T, tau: T) -> UnitQuaternion<T> {
    let (s, cth) = class_angle.sin_cos();
    UnitQuaternion::new(cth, -s * tau.cos(), s * tau.sin(), T::zero())
}

/// Finds `s` in the class of angle `class_angle` with
/// `arg(e^{iθ₁} · s) = target`.
///
/// Along [`class_element`] the angle of the product increases monotonically
/// from `|θ₁ − θ|` at `τ = 0` to its maximum at `τ = π`, so plain bisection
/// in `τ` converges.
pub fn bisect_to_target<T: Float + FloatConst>(
    theta1: T,
    class_angle: T,
    target: T,
    tol: T,
) -> Result<UnitQuaternion<T>> {
    let range = product_angle_interval(theta1, class_angle);
    let slack = tol;
    if target < range.lo - slack || target > range.hi + slack {
        return Err(Error::TargetOutOfRange {
            target: target.to_f64().unwrap_or(f64::NAN),
            lo: range.lo.to_f64().unwrap_or(f64::NAN),
            hi: range.hi.to_f64().unwrap_or(f64::NAN),
        });
    }
    let base = UnitQuaternion::exp_i(theta1);
    let angle_at = |tau: T| arg(base * class_element(class_angle, tau));

    let (mut a, mut b) = (T::zero(), T::PI());
    if target <= angle_at(a) {
        return Ok(class_element(class_angle, a));
    }
    if target >= angle_at(b) {
        return Ok(class_element(class_angle, b));
    }
    // Run to the resolution of T rather than stopping at `tol`; callers
    // raise the result to high powers.
    for _ in 0..200 {
        let mid = (a + b) / (T::one() + T::one());
        if mid <= a || mid >= b {
            break;
        }
        if angle_at(mid) < target {
            a = mid;
        } else {
            b = mid;
        }
    }
    let (fa, fb) = ((angle_at(a) - target).abs(), (angle_at(b) - target).abs());
    let tau = if fa <= fb { a } else { b };
    let s = class_element(class_angle, tau);
    let err = (angle_at(tau) - target).abs();
    if err > tol {
        return Err(Error::SynthesisFailed(format!(
            "bisection stalled with angle error {:e}",
            err.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(s)
}

/// A unit quaternion `g` with `g · i · g⁻¹ = axis` (for a unit vector).
pub fn rotation_taking_i_to<T: Float + FloatConst>(axis: [T; 3]) -> UnitQuaternion<T> {
    // Half-way rotation: q = (1 + i·axis, i × axis), normalised.
    let dot = axis[0];
    let cross = [T::zero(), -axis[2], axis[1]];
    let w = T::one() + dot;
    if w <= c(1e-12) {
        // axis = −i: rotate by π about j.
        return UnitQuaternion::new(T::zero(), T::zero(), T::one(), T::zero());
    }
    UnitQuaternion::new(w, cross[0], cross[1], cross[2])
}

/// Haar-uniform random element (Shoemake's method).
pub fn random_unit_quaternion<R: rand::Rng + ?Sized>(rng: &mut R) -> UnitQuaternion<f64> {
    use std::f64::consts::TAU;
    let (u1, u2, u3): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
    let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
    UnitQuaternion::new(
        a * (TAU * u2).sin(),
        a * (TAU * u2).cos(),
        b * (TAU * u3).sin(),
        b * (TAU * u3).cos(),
    )
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    type Q = UnitQuaternion<f64>;

    fn random_q(rng: &mut impl Rng) -> Q {
        random_unit_quaternion(rng)
    }

    #[test]
    fn arg_examples() {
        assert_eq!(arg(Q::identity()), 0.0);
        assert!((arg(Q::minus_one()) - PI).abs() < 1e-15);
        assert!((arg(Q::exp_i(PI / 3.0)) - PI / 3.0).abs() < 1e-15);
    }

    #[test]
    fn arg_is_conjugation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let (p, q) = (random_q(&mut rng), random_q(&mut rng));
            assert!((arg(q) - arg(q.conjugate_by(p))).abs() < 1e-12);
        }
    }

    #[test]
    fn adjoint_examples() {
        let tol = 1e-15;
        assert!(adjoint(Q::identity()).max_abs_diff(&AdMatrix::identity()) < tol);
        assert!(adjoint(Q::minus_one()).max_abs_diff(&AdMatrix::identity()) < tol);
        let i = Q::new(0.0, 1.0, 0.0, 0.0);
        let expected = AdMatrix([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]);
        assert!(adjoint(i).max_abs_diff(&expected) < tol);
    }

    #[test]
    fn adjoint_matches_direct_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let q = random_q(&mut rng);
            let v = [rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5];
            let pure = Q { w: 0.0, x: v[0], y: v[1], z: v[2] };
            let direct = q * pure * q.conj();
            let via = adjoint(q).apply(v);
            for (d, w) in direct.vector().iter().zip(via) {
                assert!((d - w).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn adjoint_is_homomorphism_to_so3() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let (p, q) = (random_q(&mut rng), random_q(&mut rng));
            let lhs = adjoint(p * q);
            assert!(lhs.max_abs_diff(&(adjoint(p) * adjoint(q))) < 1e-9);
            assert!(lhs.is_rotation(1e-9));
        }
    }

    #[test]
    fn exp_log_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let q = random_q(&mut rng);
            assert!(Q::exp(q.log()).max_abs_diff(q) < 1e-12);
        }
        assert_eq!(Q::identity().log(), [0.0; 3]);
    }

    #[test]
    fn powers_follow_the_angle() {
        let q = Q::exp_i(PI / 5.0).conjugate_by(Q::new(1.0, 2.0, -1.0, 0.5));
        assert!(q.powi(5).max_abs_diff(Q::minus_one()) < 1e-12);
        assert!(q.powi(10).max_abs_diff(Q::identity()) < 1e-12);
        assert!(q.powi(-1).max_abs_diff(q.inverse()) < 1e-12);
        assert!(Q::minus_one().powi(3).max_abs_diff(Q::minus_one()) < 1e-15);
        assert!(Q::minus_one().powi(-2).max_abs_diff(Q::identity()) < 1e-15);
    }

    #[test]
    fn product_interval_examples() {
        let i = product_angle_interval(PI / 2.0, PI / 3.0);
        assert!((i.lo - PI / 6.0).abs() < 1e-15 && (i.hi - 5.0 * PI / 6.0).abs() < 1e-15);
        let j = product_angle_interval(0.0, 0.7);
        assert!((j.lo - 0.7).abs() < 1e-15 && (j.hi - 0.7).abs() < 1e-15);
        let k = product_angle_interval(PI / 2.0, PI / 2.0);
        assert!(k.lo.abs() < 1e-15 && (k.hi - PI).abs() < 1e-15);
    }

    #[test]
    fn product_interval_by_dense_sampling() {
        // Oracle: sample the conjugacy 2-sphere densely.
        let (t1, t2) = (PI / 2.0, PI / 3.0);
        let a = Q::exp_i(t1);
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        let n = 200;
        for pi in 0..=n {
            let polar = PI * pi as f64 / n as f64;
            for ai in 0..(2 * n) {
                let az = PI * ai as f64 / n as f64;
                let axis = [polar.cos(), polar.sin() * az.cos(), polar.sin() * az.sin()];
                let t = arg(a * Q::from_axis_angle(axis, t2));
                lo = lo.min(t);
                hi = hi.max(t);
            }
        }
        assert!((lo - PI / 6.0).abs() < 1e-6);
        assert!((hi - 5.0 * PI / 6.0).abs() < 1e-6);
    }

    #[test]
    fn product_interval_exact_on_random_classes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let (t1, t2) = (rng.random::<f64>() * PI, rng.random::<f64>() * PI);
            let iv = product_angle_interval(t1, t2);
            let a = Q::exp_i(t1);
            let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
            for _ in 0..1000 {
                let t = arg(a * Q::exp_i(t2).conjugate_by(random_q(&mut rng)));
                assert!(t >= iv.lo - 1e-12 && t <= iv.hi + 1e-12);
                lo = lo.min(t);
                hi = hi.max(t);
            }
            // Endpoints are hit by aligned / anti-aligned axes.
            let aligned = arg(a * class_element(t2, 0.0));
            let anti = arg(a * class_element(t2, PI));
            assert!((aligned - iv.lo).abs() < 1e-3 && (anti - iv.hi).abs() < 1e-3);
            assert!(lo >= iv.lo - 1e-12 && hi <= iv.hi + 1e-12);
        }
    }

    #[test]
    fn fold_examples() {
        let iv = product_angle_interval(PI / 2.0, PI / 3.0);
        let f = fold_angle_interval(iv, PI / 5.0);
        assert!(f.contains_strictly(4.0 * PI / 5.0, 1e-9));
        for &(t1, t2) in &[(0.3, 1.1), (2.9, 2.0), (PI / 2.0, PI / 2.0)] {
            let a = fold_angle_interval(AngleInterval::point(t1), t2);
            let b = product_angle_interval(t1, t2);
            assert!((a.lo - b.lo).abs() < 1e-15 && (a.hi - b.hi).abs() < 1e-15);
        }
        let g = fold_angle_interval(iv, 0.0);
        assert!((g.lo - iv.lo).abs() < 1e-15 && (g.hi - iv.hi).abs() < 1e-15);
    }

    #[test]
    fn fold_matches_monte_carlo() {
        // Oracle: products of random elements of three classes.
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let classes = [PI / 2.0, PI / 3.0, PI / 5.0];
        let folded = fold_angle_interval(product_angle_interval(classes[0], classes[1]), classes[2]);
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for _ in 0..20000 {
            let p = classes
                .iter()
                .map(|&t| Q::exp_i(t).conjugate_by(random_q(&mut rng)))
                .fold(Q::identity(), |acc, q| acc * q);
            let t = arg(p);
            assert!(folded.contains(t) || (t - folded.lo).abs() < 1e-12 || (t - folded.hi).abs() < 1e-12);
            lo = lo.min(t);
            hi = hi.max(t);
        }
        // Haar density vanishes at 0 and π, so endpoints are approached slowly.
        assert!(lo - folded.lo < 0.25 && folded.hi - hi < 0.25);
        assert!(folded.contains_strictly(4.0 * PI / 5.0, 1e-9));
    }

    #[test]
    fn fold_is_order_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let t: Vec<f64> = (0..4).map(|_| rng.random::<f64>() * PI).collect();
            let a = fold_angle_interval(fold_angle_interval(product_angle_interval(t[0], t[1]), t[2]), t[3]);
            let b = fold_angle_interval(fold_angle_interval(product_angle_interval(t[3], t[2]), t[0]), t[1]);
            assert!((a.lo - b.lo).abs() < 1e-12 && (a.hi - b.hi).abs() < 1e-12);
        }
    }

    #[test]
    fn fold_is_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..500 {
            let (a, b, th) = (rng.random::<f64>() * PI, rng.random::<f64>() * PI, rng.random::<f64>() * PI);
            let outer = AngleInterval::new(a.min(b), a.max(b));
            let mid = (outer.lo + outer.hi) / 2.0;
            let inner = AngleInterval::new(mid - outer.width() / 4.0, mid + outer.width() / 4.0);
            let (fo, fi) = (fold_angle_interval(outer, th), fold_angle_interval(inner, th));
            assert!(fo.lo <= fi.lo + 1e-15 && fi.hi <= fo.hi + 1e-15);
        }
    }

    #[test]
    fn bisection_examples() {
        let (t1, cl) = (PI / 2.0, PI / 3.0);
        let base = Q::exp_i(t1);
        let s = bisect_to_target(t1, cl, PI / 6.0, 1e-10).unwrap();
        assert!(s.max_abs_diff(class_element(cl, 0.0)) < 1e-15);
        assert!((arg(base * s) - PI / 6.0).abs() < 1e-10);
        let s = bisect_to_target(t1, cl, 5.0 * PI / 6.0, 1e-10).unwrap();
        assert!(s.max_abs_diff(class_element(cl, PI)) < 1e-15);
        let s = bisect_to_target(t1, cl, PI / 2.0, 1e-10).unwrap();
        assert!((arg(base * s) - PI / 2.0).abs() < 1e-10);
        assert!((arg(s) - cl).abs() < 1e-12);
        assert!(matches!(
            bisect_to_target(t1, cl, 0.1, 1e-10),
            Err(Error::TargetOutOfRange { .. })
        ));
    }

    #[test]
    fn rotation_to_axis() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let i = Q { w: 0.0, x: 1.0, y: 0.0, z: 0.0 };
        for _ in 0..100 {
            let axis = random_q(&mut rng).vector();
            let n = norm3(axis);
            let axis = [axis[0] / n, axis[1] / n, axis[2] / n];
            let g = rotation_taking_i_to(axis);
            let img = (g * i * g.conj()).vector();
            for k in 0..3 {
                assert!((img[k] - axis[k]).abs() < 1e-12);
            }
        }
        let g = rotation_taking_i_to([-1.0, 0.0, 0.0]);
        assert!(((g * i * g.conj()).x + 1.0).abs() < 1e-15);
    }

    #[test]
    fn generic_over_f32() {
        let q = UnitQuaternion::<f32>::exp_i(std::f32::consts::FRAC_PI_3);
        assert!((arg(q) - std::f32::consts::FRAC_PI_3).abs() < 1e-6);
        let iv = product_angle_interval(0.5f32, 0.25f32);
        assert!((iv.lo - 0.25).abs() < 1e-7);
        assert!(adjoint(q * q).max_abs_diff(&(adjoint(q) * adjoint(q))) < 1e-5);
    }
}
