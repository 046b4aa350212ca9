//! SU(2) representations of Seifert fibered homology spheres.
//!
//! A representation sends `h` to `ε = ±1` and each `xᵢ` into the class of
//! `e^{iπℓᵢ/aᵢ}` with `0 ≤ ℓᵢ ≤ aᵢ` and `(−1)^{ℓᵢ} = ε^{bᵢ}`. Central
//! factors (`ℓᵢ ∈ {0, aᵢ}`) drop out of the product relation as a sign, so
//! the remaining `t` factors must multiply to `σ = ε^b · ∏(central values)`.
//! Fixing the first of them as `e^{iθ}`, the products of the middle factors
//! sweep out an interval of angles obtained by folding; the rotation data is
//! realized by an irreducible representation iff the angle forced by the
//! last factor lies strictly inside that interval.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::group::GroupPresentation;
use crate::seifert::SeifertPresentation;
use crate::su2::{
    arg, bisect_to_target, fold_angle_interval, product_angle_interval, rotation_taking_i_to,
    UnitQuaternion,
};
use crate::{AngleInterval, Error, Quaternion, Representation, Result, Tolerances};

/// `ρ(h) = eps` and `arg ρ(xᵢ) = π ℓᵢ / aᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotationData {
    pub eps: i8,
    pub ells: Vec<i64>,
    /// Number of non-central factors, `0 < ℓᵢ < aᵢ`.
    pub t: usize,
}

impl RotationData {
    pub fn new(s: &SeifertPresentation, eps: i8, ells: Vec<i64>) -> Result<Self> {
        if eps != 1 && eps != -1 {
            return Err(Error::Parse("eps must be 1 or -1".into()));
        }
        if ells.len() != s.pairs.len() {
            return Err(Error::PreconditionViolated(format!(
                "{} rotation numbers for {} fibers",
                ells.len(),
                s.pairs.len()
            )));
        }
        for (&l, &(a, bi)) in ells.iter().zip(&s.pairs) {
            if !(0..=a).contains(&l) {
                return Err(Error::PreconditionViolated(format!(
                    "rotation number {l} outside [0, {a}]"
                )));
            }
            if l.rem_euclid(2) != parity(eps, bi) {
                return Err(Error::PreconditionViolated(format!(
                    "rotation number {l} has the wrong parity for eps = {eps}, b = {bi}"
                )));
            }
        }
        let t = count_noncentral(s, &ells);
        Ok(Self { eps, ells, t })
    }

    /// `{"eps":-1,"ells":[1,1,1]}`.
    pub fn to_json(&self) -> Value {
        json!({"eps": self.eps, "ells": self.ells})
    }

    pub fn from_json(s: &SeifertPresentation, v: &Value) -> Result<Self> {
        let eps = v
            .get("eps")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Parse("missing integer field \"eps\"".into()))?;
        let ells: Vec<i64> = serde_json::from_value(
            v.get("ells")
                .cloned()
                .ok_or_else(|| Error::Parse("missing field \"ells\"".into()))?,
        )?;
        Self::new(s, eps as i8, ells)
    }

    pub fn angles(&self, s: &SeifertPresentation) -> Vec<f64> {
        self.ells
            .iter()
            .zip(&s.pairs)
            .map(|(&l, &(a, _))| PI * l as f64 / a as f64)
            .collect()
    }
}

/// Required parity of `ℓ` (0 even, 1 odd): `(−1)^ℓ = ε^{−bᵢ}`.
fn parity(eps: i8, bi: i64) -> i64 {
    if eps < 0 {
        bi.rem_euclid(2)
    } else {
        0
    }
}

fn count_noncentral(s: &SeifertPresentation, ells: &[i64]) -> usize {
    ells.iter()
        .zip(&s.pairs)
        .filter(|(&l, &(a, _))| 0 < l && l < a)
        .count()
}

/// The data the construction needs: non-central indices, the sign `σ`
/// their product must equal, and the target angle `T` of the product of
/// all but the last of them.
struct Layout {
    noncentral: Vec<usize>,
    theta: Vec<f64>,
    sigma: i8,
    target: f64,
}

fn layout(s: &SeifertPresentation, eps: i8, ells: &[i64]) -> Layout {
    let theta: Vec<f64> = ells
        .iter()
        .zip(&s.pairs)
        .map(|(&l, &(a, _))| PI * l as f64 / a as f64)
        .collect();
    let mut noncentral = Vec::new();
    // ε^b with b reduced mod 2.
    let mut sigma: i8 = if eps < 0 && s.b.rem_euclid(2) == 1 { -1 } else { 1 };
    for (i, (&l, &(a, _))) in ells.iter().zip(&s.pairs).enumerate() {
        if 0 < l && l < a {
            noncentral.push(i);
        } else if l == a {
            sigma = -sigma;
        }
    }
    let target = noncentral.last().map_or(0.0, |&j| {
        if sigma > 0 {
            theta[j]
        } else {
            PI - theta[j]
        }
    });
    Layout {
        noncentral,
        theta,
        sigma,
        target,
    }
}

/// Reachable angles of the product of all non-central factors but the last.
fn reachable(l: &Layout) -> Option<AngleInterval> {
    let (first, middle) = l.noncentral.split_first()?;
    let middle = &middle[..middle.len().saturating_sub(1)];
    let start = AngleInterval::point(l.theta[*first]);
    Some(
        middle
            .iter()
            .fold(start, |acc, &j| fold_angle_interval(acc, l.theta[j])),
    )
}

fn admissible(s: &SeifertPresentation, eps: i8, ells: &[i64], margin: f64) -> bool {
    let l = layout(s, eps, ells);
    if l.noncentral.len() < 3 {
        return false;
    }
    reachable(&l).is_some_and(|iv| iv.contains_strictly(l.target, margin))
}

fn candidates(s: &SeifertPresentation, eps: i8) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for &(a, bi) in &s.pairs {
        let p = parity(eps, bi);
        let choices: Vec<i64> = (0..=a).filter(|l| l.rem_euclid(2) == p).collect();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |&l| {
                    let mut v = prefix.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

/// All rotation data of irreducible representations, sorted by
/// `(eps, ells)`.
pub fn enumerate_rotation_data(s: &SeifertPresentation) -> Result<Vec<RotationData>> {
    enumerate_rotation_data_with(s, &Tolerances::default())
}

pub fn enumerate_rotation_data_with(
    s: &SeifertPresentation,
    tol: &Tolerances,
) -> Result<Vec<RotationData>> {
    s.require_homology_sphere()?;
    let mut out = Vec::new();
    for eps in [-1i8, 1] {
        let found: Vec<RotationData> = candidates(s, eps)
            .into_par_iter()
            .filter(|ells| admissible(s, eps, ells, tol.strict_margin))
            .map(|ells| RotationData {
                eps,
                t: count_noncentral(s, &ells),
                ells,
            })
            .collect();
        out.extend(found);
    }
    out.sort();
    Ok(out)
}

/// A representation realizing some rotation data.
#[derive(Clone, Debug, PartialEq)]
pub struct RepWitness {
    pub representation: Representation,
    pub residual: f64,
    pub rotation: RotationData,
}

impl RepWitness {
    pub fn to_json(&self, presentation: &GroupPresentation) -> Value {
        let mut v = self.representation.to_json(presentation);
        v["rotation"] = self.rotation.to_json();
        v
    }
}

/// Greedy construction: the first non-central factor is `e^{iθ}`, each
/// further factor is chosen by bisection so that the partial product lands
/// in the set of angles from which the target is still reachable, and the
/// last factor closes the product relation.
pub fn synthesize_witness(s: &SeifertPresentation, r: &RotationData) -> Result<RepWitness> {
    synthesize_witness_with(s, r, &Tolerances::default())
}

pub fn synthesize_witness_with(
    s: &SeifertPresentation,
    r: &RotationData,
    tol: &Tolerances,
) -> Result<RepWitness> {
    s.require_homology_sphere()?;
    let r = RotationData::new(s, r.eps, r.ells.clone())?;
    if r.t < 3 {
        return Err(Error::ReducibleData(r.t));
    }
    let l = layout(s, r.eps, &r.ells);
    let iv = reachable(&l).expect("t >= 3");
    if !iv.contains_strictly(l.target, tol.strict_margin) {
        return Err(Error::PreconditionViolated(format!(
            "target angle {} not strictly inside [{}, {}]",
            l.target, iv.lo, iv.hi
        )));
    }
    let mut last_err = None;
    for frac in [0.5, 0.3, 0.7, 0.2, 0.8] {
        match build(s, &r, &l, frac, tol) {
            Ok(w) => return Ok(w),
            Err(e) => last_err = Some(e),
        }
    }
    Err(Error::SynthesisFailed(format!(
        "all fold targets failed; last error: {}",
        last_err.map_or_else(String::new, |e| e.to_string())
    )))
}

fn build(
    s: &SeifertPresentation,
    r: &RotationData,
    l: &Layout,
    frac: f64,
    tol: &Tolerances,
) -> Result<RepWitness> {
    let nc = &l.noncentral;
    let t = nc.len();
    // needed[k]: angles of the partial product of factors 0..=k from which
    // the target is reachable.
    let mut needed = vec![AngleInterval::point(l.target); t - 1];
    for k in (0..t - 2).rev() {
        needed[k] = fold_angle_interval(needed[k + 1], l.theta[nc[k + 1]]);
    }

    let n = s.pairs.len();
    let mut images = vec![Quaternion::identity(); n + 1];
    for (i, (&ell, &(a, _))) in r.ells.iter().zip(&s.pairs).enumerate() {
        if ell == a {
            images[i] = Quaternion::minus_one();
        }
    }
    images[n] = Quaternion::sign(r.eps as i32);

    let mut partial = Quaternion::exp_i(l.theta[nc[0]]);
    images[nc[0]] = partial;
    for k in 1..t - 1 {
        let theta = l.theta[nc[k]];
        let phi = arg(partial);
        let range = product_angle_interval(phi, theta)
            .intersect(&needed[k])
            .ok_or_else(|| Error::SynthesisFailed(format!("empty fold window at factor {k}")))?;
        let goal = if k == t - 2 {
            l.target
        } else {
            range.lo + frac * range.width()
        };
        let local = bisect_to_target(phi, theta, goal, tol.bisection)?;
        let g = if partial.is_central(1e-14) {
            Quaternion::identity()
        } else {
            let v = partial.vector();
            let nv = crate::su2::norm3(v);
            rotation_taking_i_to([v[0] / nv, v[1] / nv, v[2] / nv])
        };
        let x = local.conjugate_by(g);
        images[nc[k]] = x;
        partial = (partial * x).normalized();
    }
    let last = (partial.inverse() * Quaternion::sign(l.sigma as i32)).normalized();
    images[nc[t - 1]] = last;

    let presentation = s.fundamental_group();
    let representation = Representation::new(&presentation, images)?;
    let residual = representation.residual();
    if residual >= tol.witness_residual {
        return Err(Error::SynthesisFailed(format!(
            "relator residual {residual:e} above {:e}",
            tol.witness_residual
        )));
    }
    let angle_err = (arg(last) - l.theta[nc[t - 1]]).abs();
    if angle_err > tol.representation {
        return Err(Error::SynthesisFailed(format!(
            "last factor angle off by {angle_err:e}"
        )));
    }
    Ok(RepWitness {
        representation,
        residual,
        rotation: r.clone(),
    })
}

/// `(count, |λ|)` from the number of irreducible classes, for at most three
/// exceptional fibers.
pub fn casson_via_count(s: &SeifertPresentation) -> Result<(usize, BigRational)> {
    s.require_homology_sphere()?;
    match s.exceptional_fiber_count() {
        0..=2 => Ok((0, BigRational::from_integer(BigInt::from(0)))),
        3 => {
            let count = enumerate_rotation_data(s)?.len();
            Ok((
                count,
                BigRational::new(BigInt::from(count), BigInt::from(2)),
            ))
        }
        n => Err(Error::UnsupportedFiberCount(n)),
    }
}

/// `arg ρ(gᵢ)` for every generator, then `arg ρ(gᵢ gⱼ)` for `i < j`.
pub fn trace_coordinates(rho: &Representation) -> Vec<f64> {
    let im = rho.images();
    let mut c: Vec<f64> = im.iter().map(|&q| arg(q)).collect();
    for i in 0..im.len() {
        for j in i + 1..im.len() {
            c.push(arg(im[i] * im[j]));
        }
    }
    c
}

/// One representative per conjugacy class, classes identified by trace
/// coordinates within `tol`, sorted by coordinates.
pub fn cluster_conjugacy_classes(witnesses: &[Representation], tol: f64) -> Vec<Representation> {
    let mut reps: Vec<(Vec<f64>, Representation)> = Vec::new();
    for w in witnesses {
        let c = trace_coordinates(w);
        let close = |d: &Vec<f64>| {
            d.len() == c.len() && d.iter().zip(&c).all(|(x, y)| (x - y).abs() <= tol)
        };
        if !reps.iter().any(|(d, _)| close(d)) {
            reps.push((c, w.clone()));
        }
    }
    reps.sort_by(|a, b| {
        a.0.iter()
            .zip(&b.0)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    reps.into_iter().map(|(_, r)| r).collect()
}

/// Dimension `2t − 6` of the Zariski tangent space.
pub fn tangent_dimension(r: &RotationData) -> Result<usize> {
    if r.t < 3 {
        Err(Error::ReducibleData(r.t))
    } else {
        Ok(2 * r.t - 6)
    }
}

/// Turns a unit quaternion into the class of angle `theta` with the same
/// axis; used by tests and oracles to seed random class elements.
pub fn class_member(axis_source: Quaternion, theta: f64) -> Quaternion {
    let v = axis_source.vector();
    let n = crate::su2::norm3(v);
    if n == 0.0 {
        return UnitQuaternion::exp_i(theta);
    }
    UnitQuaternion::from_axis_angle([v[0] / n, v[1] / n, v[2] / n], theta)
}
